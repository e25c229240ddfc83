"""Pure simplicial complexes: faces, shellings, decompositions.

Complexes are immutable: a frozenset of same-size facets plus the dimension.
Vertex ids are arbitrary integers.  Operations that would produce a
non-pure result (induced subcomplexes of scattered vertex sets) raise
rather than silently change representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .enumerative import ASPParams, FVector, HVector, h_from_f
from .errors import (
    DegeneracyError,
    DomainError,
    NotAFaceError,
    PseudomanifoldError,
    RefinementError,
    ShapeError,
    ShellingError,
)

Face = frozenset


def face_key(face: frozenset) -> tuple[int, ...]:
    """Canonical sort key for faces."""
    return tuple(sorted(face))


@dataclass(frozen=True)
class SimplicialComplex:
    """Pure simplicial complex given by its facets."""

    dim: int
    facets: frozenset[frozenset[int]]

    def __post_init__(self):
        for f in self.facets:
            if len(f) != self.dim + 1:
                raise ShapeError(
                    f"facet {sorted(f)} has {len(f)} vertices, expected {self.dim + 1}"
                )

    @staticmethod
    def from_facets(facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        fs = frozenset(frozenset(f) for f in facets)
        if not fs:
            return SimplicialComplex(-1, frozenset())
        sizes = {len(f) for f in fs}
        if len(sizes) != 1:
            raise ShapeError(f"mixed facet sizes {sorted(sizes)}: complex is not pure")
        return SimplicialComplex(sizes.pop() - 1, fs)

    @property
    def vertex_ids(self) -> tuple[int, ...]:
        return tuple(sorted(set().union(*self.facets))) if self.facets else ()

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    def sorted_facets(self) -> list[frozenset[int]]:
        return sorted(self.facets, key=face_key)

    def has_face(self, face: Iterable[int]) -> bool:
        fs = frozenset(face)
        return any(fs <= g for g in self.facets)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "facets": [sorted(f) for f in self.sorted_facets()],
        }

    @staticmethod
    def from_json(data: dict) -> "SimplicialComplex":
        return SimplicialComplex.from_facets(data["facets"])


@lru_cache(maxsize=256)
def _face_set(c: SimplicialComplex) -> frozenset[frozenset[int]]:
    """All faces of c including the empty face."""
    out: set[frozenset[int]] = set()
    for f in c.facets:
        verts = tuple(f)
        for k in range(len(verts) + 1):
            out.update(frozenset(s) for s in combinations(verts, k))
    return frozenset(out)


def all_faces(c: SimplicialComplex, k: int) -> frozenset[frozenset[int]]:
    """Faces of dimension k (k+1 vertices); k = -1 gives the empty face."""
    if not -1 <= k <= c.dim:
        raise DomainError(f"no faces of dimension {k} in a {c.dim}-complex")
    return frozenset(f for f in _face_set(c) if len(f) == k + 1)


def f_vector(c: SimplicialComplex) -> FVector:
    """Face counts (f_{-1}, ..., f_dim) with parameter d = dim + 1."""
    if not c.facets:
        raise DomainError("empty complex has no f-vector")
    counts = [0] * (c.dim + 2)
    for f in _face_set(c):
        counts[len(f)] += 1
    return FVector(c.dim + 1, tuple(counts))


def link(c: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    """Link of a face: {G - face : face <= G facet}; pure of dim c.dim - |face|."""
    fs = frozenset(face)
    cofacets = [g - fs for g in c.facets if fs <= g]
    if not cofacets:
        raise NotAFaceError(f"{sorted(fs)} is not a face of the complex")
    return SimplicialComplex.from_facets(cofacets)


def star(c: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    """Closed star: the complex generated by all facets containing the face."""
    fs = frozenset(face)
    cofacets = [g for g in c.facets if fs <= g]
    if not cofacets:
        raise NotAFaceError(f"{sorted(fs)} is not a face of the complex")
    return SimplicialComplex.from_facets(cofacets)


def induced(c: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    """Subcomplex of faces with all vertices in the given set.

    Raises if the result is not pure, since the complex type cannot
    represent it; callers needing only the induced graph should intersect
    edge sets directly.
    """
    vs = frozenset(vertices)
    traces = {g & vs for g in c.facets}
    traces.discard(frozenset())
    maximal = [t for t in traces if not any(t < u for u in traces)]
    if not maximal:
        return SimplicialComplex(-1, frozenset())
    sizes = {len(t) for t in maximal}
    if len(sizes) != 1:
        raise DomainError(
            "induced subcomplex is not pure; maximal face sizes " + str(sorted(sizes))
        )
    return SimplicialComplex.from_facets(maximal)


def simplex_join(apex_set: Iterable[int], c: SimplicialComplex) -> SimplicialComplex:
    """Join of a full simplex on apex_set with c (facetwise union)."""
    a = frozenset(apex_set)
    if not a:
        raise DomainError("apex set must be nonempty")
    if c.facets:
        if a & frozenset(c.vertex_ids):
            raise DomainError("join requires disjoint vertex sets")
        return SimplicialComplex.from_facets(a | g for g in c.facets)
    return SimplicialComplex.from_facets([a])


def ridge_incidence(c: SimplicialComplex) -> dict[frozenset[int], list[frozenset[int]]]:
    """Map each ridge (codimension-1 face) to the facets containing it."""
    inc: dict[frozenset[int], list[frozenset[int]]] = {}
    for g in c.sorted_facets():
        for x in g:
            inc.setdefault(g - {x}, []).append(g)
    return inc


def boundary_of_ball(c: SimplicialComplex) -> SimplicialComplex:
    """Subcomplex generated by ridges lying in exactly one facet.

    Raises if some ridge lies in three or more facets, which rules out the
    pseudomanifold-with-boundary structure this operation presumes.
    """
    if not c.facets:
        raise DomainError("empty complex has no boundary")
    boundary = []
    for ridge, fs in ridge_incidence(c).items():
        if len(fs) > 2:
            raise PseudomanifoldError(
                f"ridge {sorted(ridge)} lies in {len(fs)} facets"
            )
        if len(fs) == 1:
            boundary.append(ridge)
    return SimplicialComplex.from_facets(boundary)


def is_closed_pseudomanifold(c: SimplicialComplex) -> bool:
    return all(len(fs) == 2 for fs in ridge_incidence(c).values())


@dataclass(frozen=True)
class ShellingCertificate:
    """A verified shelling order with its restriction faces.

    prefix_h[j] is the h-vector histogram after j+1 steps: entry k counts
    steps whose restriction face has k vertices.  The final histogram is
    the h-vector of the full complex.
    """

    complex: SimplicialComplex
    order: tuple[frozenset[int], ...]
    restriction: tuple[frozenset[int], ...]
    prefix_h: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "order": [sorted(f) for f in self.order],
            "restriction": [sorted(f) for f in self.restriction],
            "prefix_h": [list(row) for row in self.prefix_h],
        }


def verify_shelling(
    c: SimplicialComplex, order: Sequence[Iterable[int]]
) -> ShellingCertificate:
    """Check the shelling condition step by step and certify the order.

    At step j >= 2 every face of the new facet already present must lie in
    an old ridge of that facet; equivalently all maximal intersections with
    earlier facets have codimension 1.  The restriction face is the set of
    vertices whose opposite ridge is old; it is the unique minimal new face.
    """
    seq = [frozenset(f) for f in order]
    if len(seq) != len(c.facets) or set(seq) != set(c.facets) or len(set(seq)) != len(seq):
        raise DomainError("order must list every facet exactly once")
    size = c.dim + 1
    restriction: list[frozenset[int]] = []
    hist = [0] * (size + 1)
    prefix: list[tuple[int, ...]] = []
    for j, fj in enumerate(seq):
        if j == 0:
            rj = frozenset()
        else:
            inters = {fj & seq[i] for i in range(j)}
            big = {x for x in inters if len(x) == size - 1}
            for x in inters:
                if not any(x <= b for b in big):
                    raise ShellingError(
                        j + 1,
                        f"facet {sorted(fj)} meets earlier facets in "
                        f"{sorted(x)}, not inside any old ridge",
                    )
            rj = frozenset(x for x in fj if (fj - {x}) in big)
        restriction.append(rj)
        hist[len(rj)] += 1
        prefix.append(tuple(hist))
    return ShellingCertificate(c, tuple(seq), tuple(restriction), tuple(prefix))


def h_from_shelling(cert: ShellingCertificate) -> HVector:
    """h-vector read off the restriction-face histogram of a full shelling."""
    return HVector(cert.complex.dim + 1, cert.prefix_h[-1])


def missing_faces(c: SimplicialComplex, k: int) -> frozenset[frozenset[int]]:
    """Minimal non-faces of dimension k: not a face, but every proper subset is."""
    if k < 0:
        raise DomainError("missing faces start at dimension 0")
    faces = _face_set(c)
    verts = c.vertex_ids
    out = []
    for cand in combinations(verts, k + 1):
        a = frozenset(cand)
        if a in faces:
            continue
        if all(a - {x} in faces for x in a):
            out.append(a)
    return frozenset(out)


@dataclass(frozen=True)
class PrimeDecomposition:
    """Prime factors of a sphere and the tree of cuts joining them.

    Each tree edge records the indices of the two factors glued along the
    inserted missing facet.
    """

    factors: tuple[SimplicialComplex, ...]
    tree_edges: tuple[tuple[int, int, frozenset[int]], ...]


def _split_along(
    c: SimplicialComplex, a: frozenset[int]
) -> tuple[SimplicialComplex, SimplicialComplex]:
    """Cut a sphere along a missing facet-size face a into two spheres."""
    cut_ridges = {a - {x} for x in a}
    inc = ridge_incidence(c)
    adj: dict[frozenset[int], list[frozenset[int]]] = {g: [] for g in c.facets}
    for ridge, fs in inc.items():
        if len(fs) == 2 and ridge not in cut_ridges:
            adj[fs[0]].append(fs[1])
            adj[fs[1]].append(fs[0])
    seen: set[frozenset[int]] = set()
    components: list[set[frozenset[int]]] = []
    for g in c.sorted_facets():
        if g in seen:
            continue
        comp = {g}
        stack = [g]
        while stack:
            cur = stack.pop()
            for nb in adj[cur]:
                if nb not in comp:
                    comp.add(nb)
                    stack.append(nb)
        seen |= comp
        components.append(comp)
    if len(components) != 2:
        raise DegeneracyError(
            f"cutting along {sorted(a)} produced {len(components)} components"
        )
    side1, side2 = components
    return (
        SimplicialComplex.from_facets(side1 | {a}),
        SimplicialComplex.from_facets(side2 | {a}),
    )


def prime_decomposition(sphere: SimplicialComplex) -> PrimeDecomposition:
    """Recursively split along missing facet-size faces until no more exist.

    Missing faces are processed in lexicographic order; the result is
    order-independent for spheres of dimension at least 2 and the facet
    counts obey sum_i f_top(factor_i) = f_top(sphere) + 2 (number of cuts).
    """
    if sphere.dim < 2:
        raise DomainError("prime decomposition needs dimension at least 2")
    if not is_closed_pseudomanifold(sphere):
        raise PseudomanifoldError("input has boundary or fat ridges")

    factors: list[SimplicialComplex] = []
    edges: list[tuple[int, int, frozenset[int]]] = []

    def decompose(cx: SimplicialComplex) -> list[int]:
        missing = sorted(missing_faces(cx, cx.dim), key=face_key)
        if not missing:
            factors.append(cx)
            return [len(factors) - 1]
        a = missing[0]
        s1, s2 = _split_along(cx, a)
        idx1 = decompose(s1)
        idx2 = decompose(s2)
        i = next(k for k in idx1 if a in factors[k].facets)
        j = next(k for k in idx2 if a in factors[k].facets)
        edges.append((i, j, a))
        return idx1 + idx2

    decompose(sphere)
    total = sum(f.n_facets for f in factors)
    if total != sphere.n_facets + 2 * len(edges) or len(edges) != len(factors) - 1:
        raise DegeneracyError("decomposition bookkeeping violated the cut identity")
    return PrimeDecomposition(tuple(factors), tuple(edges))


def is_simplex_boundary(c: SimplicialComplex) -> bool:
    """True when c is the boundary of a simplex on dim+2 vertices."""
    m = c.dim + 2
    return len(c.vertex_ids) == m and len(c.facets) == m


def is_stacked_sphere(sphere: SimplicialComplex) -> bool:
    """True when every prime factor is a simplex boundary."""
    dec = prime_decomposition(sphere)
    return all(is_simplex_boundary(f) for f in dec.factors)


@dataclass(frozen=True)
class ClassCReport:
    """Outcome of the internal-structure test for triangulated balls."""

    is_member: bool
    reason: str | None
    internal_vertices: frozenset[int]


def class_c_membership(ball: SimplicialComplex) -> ClassCReport:
    """Check the two structural conditions used for minimizer rigidity.

    (i) the subgraph induced on internal vertices (those missing from the
    boundary) is nonempty and connected; (ii) every boundary edge lies in a
    2-face whose third vertex is internal.  A ball without internal
    vertices fails condition (i) by convention.
    """
    bd = boundary_of_ball(ball)
    bd_vertices = frozenset(bd.vertex_ids)
    internal = frozenset(ball.vertex_ids) - bd_vertices
    if not internal:
        return ClassCReport(False, "no internal vertices", internal)
    edges = all_faces(ball, 1)
    adj: dict[int, set[int]] = {v: set() for v in internal}
    for e in edges:
        if e <= internal:
            u, w = tuple(e)
            adj[u].add(w)
            adj[w].add(u)
    start = min(internal)
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for nb in adj[cur]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if seen != internal:
        return ClassCReport(False, "internal vertex graph disconnected", internal)
    if bd.dim >= 1:
        triangles = all_faces(ball, 2) if ball.dim >= 2 else frozenset()
        for e in all_faces(bd, 1):
            if not any(e <= t and (t - e) <= internal for t in triangles):
                return ClassCReport(
                    False,
                    f"boundary edge {sorted(e)} misses an internal 2-face",
                    internal,
                )
    return ClassCReport(True, None, internal)


@dataclass(frozen=True)
class ASPComplex:
    """Combinatorial almost simplicial polytope: a ball plus its special facet.

    ``ball`` is the boundary complex with the special facet removed;
    ``special_facet`` is that facet's vertex set (d+s vertices).  When the
    instance came from a stacking construction, ``f_triangulation`` carries
    the triangulation of the special facet for later refinement.
    """

    params: ASPParams
    ball: SimplicialComplex
    special_facet: frozenset[int]
    f_triangulation: SimplicialComplex | None = None

    def boundary_sphere_facets(self) -> frozenset[frozenset[int]]:
        return self.ball.facets | {self.special_facet}

    def f_polytope(self) -> FVector:
        ent = list(f_vector(self.ball).entries)
        ent[-1] += 1
        return FVector(self.params.d, tuple(ent))

    def to_json(self) -> dict:
        return {
            "d": self.params.d,
            "n": self.params.n,
            "s": self.params.s,
            "ball": self.ball.to_json(),
            "special_facet": sorted(self.special_facet),
            "f_triangulation": (
                self.f_triangulation.to_json() if self.f_triangulation else None
            ),
        }

    @staticmethod
    def from_json(data: dict) -> "ASPComplex":
        tri = data.get("f_triangulation")
        return ASPComplex(
            ASPParams(data["d"], data["n"], data["s"]),
            SimplicialComplex.from_json(data["ball"]),
            frozenset(data["special_facet"]),
            SimplicialComplex.from_json(tri) if tri else None,
        )


def validate_asp(asp: ASPComplex) -> None:
    """Structural checks tying the ball, the special facet, and the parameters.

    The ball must be a pure (d-1)-complex on n vertices whose boundary is
    exactly the induced subcomplex on the special facet's vertices, and the
    carried triangulation, if any, must fill that boundary.
    """
    d, n, s = asp.params.d, asp.params.n, asp.params.s
    if asp.ball.dim != d - 1:
        raise ShapeError(f"ball dimension {asp.ball.dim} != d-1 = {d - 1}")
    if len(asp.ball.vertex_ids) != n:
        raise ShapeError(f"ball has {len(asp.ball.vertex_ids)} vertices, expected {n}")
    if len(asp.special_facet) != d + s:
        raise ShapeError(
            f"special facet has {len(asp.special_facet)} vertices, expected {d + s}"
        )
    if not asp.special_facet <= frozenset(asp.ball.vertex_ids):
        raise ShapeError("special facet vertices must appear in the ball")
    bd = boundary_of_ball(asp.ball)
    ind = induced(asp.ball, asp.special_facet)
    if bd.facets != ind.facets:
        raise ShapeError(
            "boundary of the ball is not the induced complex on the special facet"
        )
    if asp.f_triangulation is not None:
        _check_fills_boundary(asp.f_triangulation, asp.special_facet, bd)


def _check_fills_boundary(
    tri: SimplicialComplex, fv: frozenset[int], bd: SimplicialComplex
) -> None:
    if not frozenset(tri.vertex_ids) <= fv:
        raise RefinementError("triangulation uses vertices outside the special facet")
    if boundary_of_ball(tri).facets != bd.facets:
        raise RefinementError("triangulation boundary does not match the facet boundary")


def refine_by_triangulation(
    asp: ASPComplex, tri_f: SimplicialComplex
) -> SimplicialComplex:
    """Replace the special facet by a triangulation, producing a simplicial sphere."""
    bd = boundary_of_ball(asp.ball)
    _check_fills_boundary(tri_f, asp.special_facet, bd)
    if tri_f.dim != asp.ball.dim:
        raise RefinementError(
            f"triangulation dimension {tri_f.dim} != ball dimension {asp.ball.dim}"
        )
    return SimplicialComplex.from_facets(asp.ball.facets | tri_f.facets)
