"""Exact convex-position geometry: facets, beyond points, line shellings.

Facet enumeration is brute force over d-subsets with integer cofactor
arithmetic; at the supported scale (n <= 16) this stays fast and every
sign decision is exact.  Shelling orders are produced geometrically and
then re-checked by the independent combinatorial verifier, so a bug in
the crossing logic cannot leak an invalid certificate.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .complexes import (
    ASPComplex,
    ShellingCertificate,
    SimplicialComplex,
    all_faces,
    boundary_of_ball,
    f_vector,
    validate_asp,
    verify_shelling,
)
from .curves import PointConfig
from .enumerative import ASPParams, FVector, h_from_f
from .errors import (
    CapExceededError,
    DegeneracyError,
    DomainError,
    NotAFaceError,
    NotASPError,
    RankDeficientError,
    ShapeError,
    ShellingError,
    ShellingSearchError,
)
from .exactnum import RatMatrix, det, format_rational, int_det, int_rank

DEFAULT_POINT_CAP = 16


@dataclass(frozen=True)
class FacetDescriptor:
    """A facet with its supporting hyperplane, oriented inward.

    Every configuration point x satisfies offset + normal.x >= 0, with
    equality exactly for the points listed in vertex_ids.
    """

    vertex_ids: frozenset[int]
    normal: tuple[Fraction, ...]
    offset: Fraction

    def eval_at(self, coords: Sequence[Fraction]) -> Fraction:
        return self.offset + sum(a * x for a, x in zip(self.normal, coords))

    def is_simplex(self) -> bool:
        return len(self.vertex_ids) == len(self.normal)

    def to_json(self) -> dict:
        return {
            "vertices": sorted(self.vertex_ids),
            "normal": [format_rational(a) for a in self.normal],
            "offset": format_rational(self.offset),
        }


@dataclass(frozen=True)
class ASPGeometry:
    """A point configuration together with its enumerated boundary."""

    config: PointConfig
    facets: tuple[FacetDescriptor, ...]
    special: FacetDescriptor | None
    ball: ASPComplex | None

    @property
    def d(self) -> int:
        return self.config.d

    @property
    def is_simplicial(self) -> bool:
        return all(f.is_simplex() for f in self.facets)

    def facet_by_vertices(self, vertex_ids: Iterable[int]) -> FacetDescriptor:
        fs = frozenset(vertex_ids)
        for f in self.facets:
            if f.vertex_ids == fs:
                return f
        raise NotAFaceError(f"{sorted(fs)} is not a facet of this geometry")

    def boundary_complex(self) -> SimplicialComplex:
        if not self.is_simplicial:
            raise ShapeError("boundary complex requires a simplicial geometry")
        return SimplicialComplex.from_facets(f.vertex_ids for f in self.facets)

    def star_facets(self, vid: int) -> list[FacetDescriptor]:
        return [f for f in self.facets if vid in f.vertex_ids]


def orientation(pts: Sequence[Sequence[Fraction]]) -> int:
    """Sign of the determinant with a prepended coordinate of ones."""
    d = len(pts) - 1
    for p in pts:
        if len(p) != d:
            raise ShapeError(f"need d+1 points of dimension d, got {len(p)} != {d}")
    rows = [[Fraction(1), *map(Fraction, p)] for p in pts]
    value = det(RatMatrix.from_rows(rows))
    return (value > 0) - (value < 0)


def _integer_homogeneous(config: PointConfig) -> list[list[int]]:
    """Per point, an integer vector positively proportional to (1, x)."""
    out = []
    for _, coords in config.points:
        scale = math.lcm(*(c.denominator for c in coords)) if coords else 1
        out.append([scale] + [int(c * scale) for c in coords])
    return out


def _minor_det(rows: list[list[int]], drop_col: int) -> int:
    sub = [[r[c] for c in range(len(r)) if c != drop_col] for r in rows]
    return int_det(sub)


def enumerate_facets(
    config: PointConfig, cap: int | None = DEFAULT_POINT_CAP
) -> tuple[FacetDescriptor, ...]:
    """All facets of the convex hull, by testing every spanning d-subset.

    A d-subset's hyperplane normal comes from the d+1 cofactors of its
    homogeneous coordinate matrix; the subset supports a facet exactly
    when one strict side is empty.  Facets are deduplicated by the full
    set of points lying on the hyperplane.
    """
    n, d = config.n, config.d
    if cap is not None and n > cap:
        raise CapExceededError(f"{n} points exceed the cap {cap}; raise it explicitly")
    if n < d + 1:
        raise RankDeficientError("too few points to span the ambient dimension")
    hom = _integer_homogeneous(config)
    if int_rank(hom) != d + 1:
        raise RankDeficientError("points do not affinely span the ambient space")

    found: dict[frozenset[int], tuple[int, ...]] = {}
    for subset in combinations(range(n), d):
        sub_ids = frozenset(i + 1 for i in subset)
        if any(sub_ids <= on for on in found):
            continue
        m = [hom[i] for i in subset]
        w = [(-1) ** (d + c) * _minor_det(m, c) for c in range(d + 1)]
        if all(x == 0 for x in w):
            continue
        dots = [sum(wc * hc for wc, hc in zip(w, h)) for h in hom]
        has_pos = any(x > 0 for x in dots)
        has_neg = any(x < 0 for x in dots)
        if has_pos and has_neg:
            continue
        if has_neg:
            w = [-x for x in w]
        on_ids = frozenset(i + 1 for i, x in enumerate(dots) if x == 0)
        if on_ids not in found:
            g = math.gcd(*w)
            found[on_ids] = tuple(x // g for x in w)

    descriptors = []
    for on_ids in sorted(found, key=lambda f: tuple(sorted(f))):
        w = found[on_ids]
        descriptors.append(
            FacetDescriptor(
                on_ids,
                tuple(Fraction(x) for x in w[1:]),
                Fraction(w[0]),
            )
        )
    return tuple(descriptors)


def detect_asp(
    config: PointConfig, cap: int | None = DEFAULT_POINT_CAP
) -> ASPGeometry:
    """Classify an enumerated boundary as almost simplicial or simplicial.

    With exactly one non-simplex facet the ball complex (all other
    facets) is assembled and validated; with none, the geometry is
    returned unclassified and a caller may designate any facet as
    special via designate_special.
    """
    facets = enumerate_facets(config, cap)
    d, n = config.d, config.n
    big = [f for f in facets if len(f.vertex_ids) > d]
    if len(big) > 1:
        raise NotASPError(
            f"{len(big)} non-simplex facets: "
            + ", ".join(str(sorted(f.vertex_ids)) for f in big)
        )
    if not big:
        return ASPGeometry(config, facets, None, None)
    special = big[0]
    s = len(special.vertex_ids) - d
    ball = SimplicialComplex.from_facets(
        f.vertex_ids for f in facets if f is not special
    )
    asp = ASPComplex(ASPParams(d, n, s), ball, special.vertex_ids)
    validate_asp(asp)
    return ASPGeometry(config, facets, special, asp)


def designate_special(geom: ASPGeometry, vertex_ids: Iterable[int]) -> ASPGeometry:
    """Pick a facet of a simplicial geometry to play the special role (s=0)."""
    if geom.special is not None:
        raise DomainError("geometry already has a non-simplex facet")
    chosen = geom.facet_by_vertices(vertex_ids)
    ball = SimplicialComplex.from_facets(
        f.vertex_ids for f in geom.facets if f is not chosen
    )
    asp = ASPComplex(
        ASPParams(geom.d, geom.config.n, 0), ball, chosen.vertex_ids
    )
    validate_asp(asp)
    return ASPGeometry(geom.config, geom.facets, chosen, asp)


def _centroid(coord_rows: list[tuple[Fraction, ...]]) -> tuple[Fraction, ...]:
    n = len(coord_rows)
    return tuple(sum(col) / n for col in zip(*coord_rows))


def interior_point(geom: ASPGeometry) -> tuple[Fraction, ...]:
    """Centroid of the configuration; interior since points are in convex position."""
    return _centroid([c for _, c in geom.config.points])


def point_beyond(
    geom: ASPGeometry,
    facet: FacetDescriptor,
    toward: int | None = None,
    toward_weight: Fraction = Fraction(1, 2),
    extra_halvings: int = 0,
) -> tuple[Fraction, ...]:
    """Exact point beyond one facet: outside it, strictly inside all others.

    Walks out of the polytope through a relative-interior point of the
    facet and halves the step until the beyond conditions hold.  With
    `toward` the exit point is pulled toward that facet vertex by
    toward_weight (must stay below 1 so the exit point remains in the
    relative interior); extra halvings then bring the result as close to
    the facet as desired without rechecking, since shrinking preserves
    all three conditions.
    """
    if facet not in geom.facets:
        raise NotAFaceError("facet descriptor does not belong to this geometry")
    if not 0 <= toward_weight < 1:
        raise DomainError("toward_weight must lie in [0, 1)")
    b = interior_point(geom)
    exit_pt = _centroid([geom.config.coords(v) for v in sorted(facet.vertex_ids)])
    if toward is not None:
        if toward not in facet.vertex_ids:
            raise DomainError(f"vertex {toward} is not on the chosen facet")
        tv = geom.config.coords(toward)
        w = toward_weight
        exit_pt = tuple((1 - w) * a + w * c for a, c in zip(exit_pt, tv))
    step = tuple(e - a for e, a in zip(exit_pt, b))
    lam = Fraction(1)
    others = [f for f in geom.facets if f is not facet]
    while True:
        y = tuple(e + lam * s for e, s in zip(exit_pt, step))
        if facet.eval_at(y) < 0 and all(f.eval_at(y) > 0 for f in others):
            break
        lam /= 2
    for _ in range(extra_halvings):
        lam /= 2
    y = tuple(e + lam * s for e, s in zip(exit_pt, step))
    if not (facet.eval_at(y) < 0 and all(f.eval_at(y) > 0 for f in others)):
        raise DegeneracyError("beyond-point shrink lost the beyond conditions")
    return y


def extend_config(config: PointConfig, coords: Sequence[Fraction]) -> PointConfig:
    """Append one point with the next vertex id."""
    pts = config.points + ((config.n + 1, tuple(Fraction(c) for c in coords)),)
    return PointConfig(config.d, pts)


def _shelling_from_target(
    geom: ASPGeometry,
    cx: SimplicialComplex,
    base: tuple[Fraction, ...],
    target: tuple[Fraction, ...],
) -> ShellingCertificate:
    """Order facets by line crossings from base through target, then verify.

    Crossing parameter solves value(tau) = 0 along x(tau) = base +
    tau*(target-base): facets hit going out (tau > 0) come first in
    ascending order, then facets hit by the returning line in ascending
    order (most negative first).  Any tie or parallel hyperplane is a
    degeneracy and the caller retries with fresh randomness.
    """
    crossings: list[tuple[Fraction, frozenset[int]]] = []
    for f in geom.facets:
        a = f.eval_at(base)
        if a <= 0:
            raise DegeneracyError("base point is not interior")
        c = f.eval_at(target)
        if c == a:
            raise DegeneracyError("line parallel to a facet hyperplane")
        tau = a / (a - c)
        crossings.append((tau, f.vertex_ids))
    taus = [t for t, _ in crossings]
    if len(set(taus)) != len(taus):
        raise DegeneracyError("line meets two facet hyperplanes at one parameter")
    positive = sorted((t, v) for t, v in crossings if t > 0)
    negative = sorted((t, v) for t, v in crossings if t < 0)
    order = [v for _, v in positive] + [v for _, v in negative]
    if len(order) != len(geom.facets):
        raise DegeneracyError("line passes through the base hyperplane fan")
    try:
        return verify_shelling(cx, order)
    except ShellingError as exc:
        raise DegeneracyError(f"crossing order failed verification: {exc}") from exc


def line_shelling(
    geom: ASPGeometry, seed: int, retries: int = 32
) -> ShellingCertificate:
    """Seeded Bruggesser-Mani shelling of a simplicial boundary."""
    if not geom.is_simplicial:
        raise DomainError("line shelling requires a simplicial boundary")
    cx = geom.boundary_complex()
    base = interior_point(geom)
    rng = random.Random(seed)
    last = None
    for _ in range(retries):
        direction = [Fraction(rng.randint(-(2**30), 2**30)) for _ in range(geom.d)]
        if all(x == 0 for x in direction):
            continue
        target = tuple(b + x for b, x in zip(base, direction))
        try:
            return _shelling_from_target(geom, cx, base, target)
        except DegeneracyError as exc:
            last = exc
    raise DegeneracyError(f"no usable direction after {retries} tries: {last}")


def shelling_prefix_ok(cert: ShellingCertificate, y_id: int, v_id: int) -> bool:
    """Check the two-block prefix: all of st(y), then the rest of st(v)."""
    block1 = {f for f in cert.order if y_id in f}
    block2 = {f for f in cert.order if v_id in f} - block1
    k1, k2 = len(block1), len(block2)
    return set(cert.order[:k1]) == block1 and set(cert.order[k1 : k1 + k2]) == block2


def constrained_line_shelling(
    geom: ASPGeometry, y_id: int, v_id: int, seed: int, retries: int = 64
) -> ShellingCertificate:
    """Shelling whose order starts with st(y) and continues with the rest of st(v).

    The line is shot from the interior centroid through the position of y
    perturbed slightly toward v (seeded rational jiggle, shrinking scale).
    Every candidate order is verified and tested against the prefix
    property; exhausting the retries is reported as inconclusive, not as
    a refutation.
    """
    if not geom.is_simplicial:
        raise DomainError("constrained shelling requires a simplicial boundary")
    cx = geom.boundary_complex()
    ids = {pid for pid, _ in geom.config.points}
    if y_id not in ids or v_id not in ids or y_id == v_id:
        raise DomainError("y and v must be two distinct vertex ids")
    if not any({y_id, v_id} <= f.vertex_ids for f in geom.facets):
        raise DomainError(f"{v_id} is not in the vertex link of {y_id}")
    base = interior_point(geom)
    y = geom.config.coords(y_id)
    v = geom.config.coords(v_id)
    others = [c for pid, c in geom.config.points if pid not in (y_id, v_id)]
    rng = random.Random(seed)
    last = None
    for attempt in range(retries):
        eta = Fraction(1, 2 ** (3 + attempt))
        weights = [rng.randint(1, 1000) for _ in others]
        total = 8 * sum(weights)
        mix = tuple(
            sum(wt * c[k] for wt, c in zip(weights, others)) / total
            for k in range(geom.d)
        )
        m = tuple(Fraction(7, 8) * vc + mc for vc, mc in zip(v, mix))
        target = tuple((1 - eta) * yc + eta * mc for yc, mc in zip(y, m))
        try:
            cert = _shelling_from_target(geom, cx, base, target)
        except DegeneracyError as exc:
            last = exc
            continue
        if shelling_prefix_ok(cert, y_id, v_id):
            return cert
        last = None
    detail = f" (last degeneracy: {last})" if last else ""
    raise ShellingSearchError(
        f"no constrained shelling for y={y_id}, v={v_id} in {retries} tries; "
        f"inconclusive{detail}"
    )


def stack_over_special(
    geom: ASPGeometry,
    toward: int | None = None,
    closeness: int = 2,
    cap: int | None = DEFAULT_POINT_CAP,
) -> ASPGeometry:
    """Extend the configuration with a vertex beyond the special facet.

    With `toward`, the new point is placed near that facet vertex at
    geometric distance shrinking in 2^-closeness, which is what the
    constrained shelling search needs.  The resulting hull is simplicial:
    the special facet is replaced by cones over its boundary.
    """
    if geom.special is None:
        raise DomainError("geometry has no designated special facet to stack over")
    weight = Fraction(0) if toward is None else 1 - Fraction(1, 2**closeness)
    y = point_beyond(
        geom,
        geom.special,
        toward=toward,
        toward_weight=weight,
        extra_halvings=closeness,
    )
    return detect_asp(extend_config(geom.config, y), cap=cap)


def _prefix_h(facet_sets: list[frozenset[int]], parameter: int) -> list[int]:
    """h-vector of the complex generated by the given facets; zeros if empty."""
    if not facet_sets:
        return [0] * (parameter + 1)
    cx = SimplicialComplex.from_facets(facet_sets)
    return list(h_from_f(f_vector(cx)).entries)


def key_shelling_defects(
    cert: ShellingCertificate, y_id: int, v_id: int
) -> tuple[tuple[int, ...], ...]:
    """Per-step, per-k values of (h^j(Q) - h^j(Q/v)) - (h^j(F) - h^j(F/v)).

    h^j means the h-vector of the union of the first j facets.  The F
    complex is read off as the link of y (its facets are the y-facets of
    the prefix with y removed), since stacking beyond the special facet
    makes that link the facet's boundary sphere.
    """
    d = cert.complex.dim + 1
    out = []
    for j in range(1, len(cert.order) + 1):
        pre = list(cert.order[:j])
        hq = _prefix_h(pre, d)
        hqv = _prefix_h([f - {v_id} for f in pre if v_id in f], d - 1)
        hf = _prefix_h([f - {y_id} for f in pre if y_id in f], d - 1)
        hfv = _prefix_h(
            [f - {y_id, v_id} for f in pre if y_id in f and v_id in f], d - 2
        )

        def at(vec: list[int], k: int) -> int:
            return vec[k] if k < len(vec) else 0

        out.append(
            tuple(
                at(hq, k) - at(hqv, k) - at(hf, k) + at(hfv, k) for k in range(d + 1)
            )
        )
    return tuple(out)


def neighborliness(geom: ASPGeometry) -> int:
    """Largest k with every k-subset of vertices a face, measured exactly.

    Faces inside the special facet are faces of its boundary complex (or
    the facet itself); everything else must lie in a simplex facet.
    """
    ids = [pid for pid, _ in geom.config.points]
    simplex_sets = [f.vertex_ids for f in geom.facets if f.is_simplex()]
    special_faces: frozenset[frozenset[int]] = frozenset()
    special_set = None
    if geom.special is not None and geom.ball is not None:
        special_set = geom.special.vertex_ids
        bd = boundary_of_ball(geom.ball.ball)
        special_faces = frozenset().union(
            *(all_faces(bd, k) for k in range(-1, bd.dim + 1))
        )

    def is_face(sub: frozenset[int]) -> bool:
        if any(sub <= s for s in simplex_sets):
            return True
        if special_set is not None and sub <= special_set:
            return sub == special_set or sub in special_faces
        return False

    best = 0
    for k in range(1, len(ids) + 1):
        if all(is_face(frozenset(s)) for s in combinations(ids, k)):
            best = k
        else:
            break
    return best


def simpliciality(geom: ASPGeometry) -> int:
    """Largest k with all k-faces simplices, measured at the ridge level.

    Ridges are facet-pair intersections of affine rank d-1; a ridge is a
    simplex exactly when it has d-1 vertices.  Faces below the ridges
    live in simplex facets or in the simplicial boundary of the special
    facet, so the ridge level decides the answer.
    """
    d = geom.d
    if geom.is_simplicial:
        return d - 1
    hom = _integer_homogeneous(geom.config)
    for f1, f2 in combinations(geom.facets, 2):
        common = f1.vertex_ids & f2.vertex_ids
        if len(common) < d - 1:
            continue
        rows = [hom[i - 1] for i in sorted(common)]
        if int_rank(rows) == d - 1 and len(common) != d - 1:
            raise DegeneracyError(
                "non-simplex ridge; simpliciality below d-2 is out of scope"
            )
    return d - 2


def geometry_f_vector(geom: ASPGeometry) -> FVector:
    """Face numbers of the enumerated polytope."""
    if geom.ball is not None:
        return geom.ball.f_polytope()
    return f_vector(geom.boundary_complex())
