"""Builders and recognizers for the face-minimizing families.

Everything here is purely combinatorial: stacked spheres, pyramids, the
almost-stacked construction (pyramid over a stacked facet, then repeated
stacking), hyperplane stacking which grows the special facet in place,
and the minimizer recognizer built on a prime decomposition that treats
the special facet's prime factors as indivisible polyhedral cells.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .complexes import (
    ASPComplex,
    SimplicialComplex,
    boundary_of_ball,
    face_key,
    prime_decomposition,
    simplex_join,
    validate_asp,
)
from .enumerative import ASPParams
from .errors import (
    DegeneracyError,
    DomainError,
    InvalidMoveError,
    PseudomanifoldError,
    ShapeError,
    UnsupportedRegimeError,
)


@dataclass(frozen=True)
class Move:
    """One script step: kind 'stack' or 'hstack' plus a facet selector.

    The selector is either an index into the sorted current facet list
    (ball facets for stack, special-facet boundary facets for hstack) or
    an explicit vertex tuple that must match a current facet.
    """

    kind: str
    selector: int | tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("stack", "hstack"):
            raise DomainError(f"unknown move kind {self.kind!r}")

    def to_json(self) -> dict:
        sel = (
            {"facet_index": self.selector}
            if isinstance(self.selector, int)
            else {"facet": sorted(self.selector)}
        )
        return {"kind": self.kind, **sel}

    @staticmethod
    def from_json(data: dict) -> "Move":
        if "facet_index" in data:
            return Move(data["kind"], data["facet_index"])
        return Move(data["kind"], tuple(data["facet"]))


@dataclass(frozen=True)
class StackingScript:
    moves: tuple[Move, ...]

    def to_json(self) -> list:
        return [m.to_json() for m in self.moves]

    @staticmethod
    def from_json(data: list) -> "StackingScript":
        return StackingScript(tuple(Move.from_json(m) for m in data))


def _resolve(selector: int | tuple[int, ...], facets: Iterable[frozenset[int]]):
    ordered = sorted(facets, key=face_key)
    if isinstance(selector, int):
        if not 0 <= selector < len(ordered):
            raise InvalidMoveError(
                f"facet index {selector} out of range 0..{len(ordered) - 1}"
            )
        return ordered[selector]
    fs = frozenset(selector)
    if fs not in set(ordered):
        raise InvalidMoveError(f"{sorted(fs)} is not a facet available to this move")
    return fs


def _stack_facets(
    facets: frozenset[frozenset[int]], target: frozenset[int], w: int
) -> frozenset[frozenset[int]]:
    """Replace one facet by the cone from w over its boundary ridges."""
    return (facets - {target}) | {(target - {x}) | {w} for x in target}


def stacked_sphere(d: int, n: int, script: StackingScript) -> SimplicialComplex:
    """Stacked (d-1)-sphere on vertex ids 1..n driven by a stack script."""
    sphere, _ = _stacked_sphere_with_solids(d, n, script)
    return sphere


def _stacked_sphere_with_solids(
    d: int, n: int, script: StackingScript
) -> tuple[SimplicialComplex, SimplicialComplex]:
    """Stacked sphere plus the solid simplices accumulated while stacking."""
    if d < 2:
        raise DomainError("stacked spheres need dimension at least 2")
    if n < d + 1:
        raise DomainError(f"need at least {d + 1} vertices, got {n}")
    if len(script.moves) != n - d - 1:
        raise ShapeError(
            f"script needs exactly {n - d - 1} moves for n={n}, got {len(script.moves)}"
        )
    base = frozenset(range(1, d + 2))
    facets = frozenset(base - {x} for x in base)
    solids = {base}
    next_id = d + 2
    for mv in script.moves:
        if mv.kind != "stack":
            raise InvalidMoveError("stacked spheres accept only stack moves")
        target = _resolve(mv.selector, facets)
        facets = _stack_facets(facets, target, next_id)
        solids.add(target | {next_id})
        next_id += 1
    return SimplicialComplex.from_facets(facets), SimplicialComplex.from_facets(solids)


def pyramid(base: SimplicialComplex, apex: int) -> SimplicialComplex:
    """Cone over a complex with a fresh apex vertex."""
    if apex in base.vertex_ids:
        raise DomainError(f"apex {apex} already occurs in the base")
    return simplex_join({apex}, base)


def almost_stacked(
    p: ASPParams, script_f: StackingScript, script_p: StackingScript
) -> ASPComplex:
    """The face-count minimizing family: pyramid over a stacked facet, then stack.

    script_f drives the stacked (d-2)-sphere bounding the special facet F
    on ids 1..d+s (s moves); the pyramid apex is d+s+1; script_p then
    stacks n-d-s-1 times over ball facets.  F's stacked triangulation is
    carried on the result for later refinement.
    """
    d, n, s = p.d, p.n, p.s
    f_boundary, f_solids = _stacked_sphere_with_solids(d - 1, d + s, script_f)
    apex = d + s + 1
    ball = pyramid(f_boundary, apex)
    asp = ASPComplex(
        ASPParams(d, apex, s), ball, frozenset(range(1, d + s + 1)), f_solids
    )
    for mv in script_p.moves:
        if mv.kind != "stack":
            raise InvalidMoveError("almost_stacked accepts only stack moves here")
        asp = stack_over(asp, mv.selector)
    if asp.params != p:
        raise ShapeError(
            f"script length mismatch: built {asp.params}, requested {p}"
        )
    validate_asp(asp)
    return asp


def _next_vertex_id(asp: ASPComplex) -> int:
    return max(asp.ball.vertex_ids) + 1


def stack_over(asp: ASPComplex, selector: int | tuple[int, ...]) -> ASPComplex:
    """Stack a fresh vertex over one ball facet; F is untouched.

    Only ball facets are selectable, so the special facet can never be
    stacked over through this operation.
    """
    target = _resolve(selector, asp.ball.facets)
    w = _next_vertex_id(asp)
    ball = SimplicialComplex.from_facets(_stack_facets(asp.ball.facets, target, w))
    q = asp.params
    return ASPComplex(
        ASPParams(q.d, q.n + 1, q.s), ball, asp.special_facet, asp.f_triangulation
    )


def h_stack(asp: ASPComplex, selector: int | tuple[int, ...]) -> ASPComplex:
    """Grow the special facet by stacking inside its own hyperplane.

    The selected boundary facet G of F lies in exactly one ball facet T;
    the new vertex w replaces T by cones over T's other ridges, F gains
    w, and the carried triangulation is stacked over G.  Net effect:
    n and s both grow by one and the ball gains d-2 facets.
    """
    bd = boundary_of_ball(asp.ball)
    g = _resolve(selector, bd.facets)
    if not g <= asp.special_facet:
        raise InvalidMoveError(f"{sorted(g)} does not lie on the special facet")
    hosts = [t for t in asp.ball.facets if g <= t]
    if len(hosts) != 1:
        raise InvalidMoveError(
            f"{sorted(g)} lies in {len(hosts)} ball facets, expected exactly 1"
        )
    t = hosts[0]
    w = _next_vertex_id(asp)
    new_facets = (asp.ball.facets - {t}) | {
        (t - {x}) | {w} for x in t if (t - {x}) != g
    }
    q = asp.params
    tri = asp.f_triangulation
    new_tri = None
    if tri is not None:
        new_tri = SimplicialComplex.from_facets(tri.facets | {g | {w}})
    out = ASPComplex(
        ASPParams(q.d, q.n + 1, q.s + 1),
        SimplicialComplex.from_facets(new_facets),
        asp.special_facet | {w},
        new_tri,
    )
    return out


def apply_script(asp: ASPComplex, script: StackingScript) -> ASPComplex:
    for mv in script.moves:
        asp = stack_over(asp, mv.selector) if mv.kind == "stack" else h_stack(
            asp, mv.selector
        )
    return asp


def trivial_asp(d: int) -> ASPComplex:
    """The d-simplex as an ASP: ball = all facets but {1..d}, which plays F."""
    empty = StackingScript(())
    return almost_stacked(ASPParams(d, d + 1, 0), empty, empty)


def random_scripts(p: ASPParams, seed: int) -> tuple[StackingScript, StackingScript]:
    """Seeded scripts for almost_stacked: facet counts are simulated exactly."""
    rng = random.Random(seed)
    d, n, s = p.d, p.n, p.s
    count = d
    moves_f = []
    for _ in range(s):
        moves_f.append(Move("stack", rng.randrange(count)))
        count += d - 2
    moves_p = []
    ball_count = count
    for _ in range(n - d - s - 1):
        moves_p.append(Move("stack", rng.randrange(ball_count)))
        ball_count += d - 1
    return StackingScript(tuple(moves_f)), StackingScript(tuple(moves_p))


def random_minimizer(p: ASPParams, seed: int, style: str = "stack") -> ASPComplex:
    """Seeded minimizer instance, by scripts ('stack') or h-stacking ('hstack')."""
    if style == "stack":
        sf, sp = random_scripts(p, seed)
        return almost_stacked(p, sf, sp)
    if style != "hstack":
        raise DomainError(f"unknown style {style!r}")
    rng = random.Random(seed)
    d, n, s = p.d, p.n, p.s
    kinds = ["hstack"] * s + ["stack"] * (n - d - 1 - s)
    rng.shuffle(kinds)
    asp = trivial_asp(d)
    for kind in kinds:
        pool = (
            asp.ball.facets if kind == "stack" else boundary_of_ball(asp.ball).facets
        )
        mv = Move(kind, rng.randrange(len(pool)))
        asp = apply_script(asp, StackingScript((mv,)))
    validate_asp(asp)
    return asp


@dataclass(frozen=True)
class _Cell:
    """Polyhedral cell: vertex set, boundary ridges, and F-factor origin."""

    vertices: frozenset[int]
    ridges: frozenset[frozenset[int]]
    original_f: bool

    def is_simplex(self, d: int) -> bool:
        return len(self.vertices) == d


def _simplex_cell(vertices: frozenset[int], original_f: bool = False) -> _Cell:
    ridges = frozenset(vertices - {x} for x in vertices)
    return _Cell(vertices, ridges, original_f)


def _cell_has_face(cells: Sequence[_Cell], d: int, a: frozenset[int]) -> bool:
    for c in cells:
        if c.is_simplex(d):
            if a <= c.vertices:
                return True
        elif a == c.vertices or any(a <= r for r in c.ridges):
            return True
    return False


def _cell_missing_simplices(cells: Sequence[_Cell], d: int) -> list[frozenset[int]]:
    verts = sorted(set().union(*(c.vertices for c in cells)))
    out = []
    for cand in combinations(verts, d):
        a = frozenset(cand)
        if _cell_has_face(cells, d, a):
            continue
        if all(_cell_has_face(cells, d, a - {x}) for x in a):
            out.append(a)
    return sorted(out, key=face_key)


def _cell_split(
    cells: Sequence[_Cell], d: int, a: frozenset[int]
) -> tuple[list[_Cell], list[_Cell]]:
    cut = {a - {x} for x in a}
    inc: dict[frozenset[int], list[int]] = {}
    for i, c in enumerate(cells):
        for r in c.ridges:
            inc.setdefault(r, []).append(i)
    adj: dict[int, list[int]] = {i: [] for i in range(len(cells))}
    for r, owners in inc.items():
        if len(owners) > 2:
            raise PseudomanifoldError(f"ridge {sorted(r)} lies in {len(owners)} cells")
        if len(owners) == 2 and r not in cut:
            adj[owners[0]].append(owners[1])
            adj[owners[1]].append(owners[0])
    seen: set[int] = set()
    comps: list[list[int]] = []
    for i in range(len(cells)):
        if i in seen:
            continue
        comp = [i]
        seen.add(i)
        stack = [i]
        while stack:
            cur = stack.pop()
            for nb in adj[cur]:
                if nb not in seen:
                    seen.add(nb)
                    comp.append(nb)
                    stack.append(nb)
        comps.append(comp)
    if len(comps) != 2:
        raise DegeneracyError(
            f"cutting along {sorted(a)} produced {len(comps)} components"
        )
    new = _simplex_cell(a)
    return (
        [cells[i] for i in comps[0]] + [new],
        [cells[i] for i in comps[1]] + [new],
    )


def _cell_prime_factors(cells: Sequence[_Cell], d: int) -> list[tuple[_Cell, ...]]:
    missing = _cell_missing_simplices(cells, d)
    if not missing:
        return [tuple(cells)]
    s1, s2 = _cell_split(cells, d, missing[0])
    return _cell_prime_factors(s1, d) + _cell_prime_factors(s2, d)


@dataclass(frozen=True)
class FactorReport:
    vertices: tuple[int, ...]
    is_simplex: bool
    has_facet_in_f: bool
    is_pyramid_over_f_factor: bool


@dataclass(frozen=True)
class MinimizerVerdict:
    is_minimizer: bool
    regime: str
    factor_reports: tuple[FactorReport, ...]

    def to_json(self) -> dict:
        return {
            "is_minimizer": self.is_minimizer,
            "regime": self.regime,
            "factors": [
                {
                    "vertices": list(r.vertices),
                    "is_simplex": r.is_simplex,
                    "has_facet_in_f": r.has_facet_in_f,
                    "is_pyramid_over_f_factor": r.is_pyramid_over_f_factor,
                }
                for r in self.factor_reports
            ],
        }


def _classify_factor(
    factor: tuple[_Cell, ...], d: int, fset: frozenset[int]
) -> FactorReport:
    verts = frozenset().union(*(c.vertices for c in factor))
    is_simplex = (
        len(verts) == d + 1
        and len(factor) == d + 1
        and all(c.is_simplex(d) for c in factor)
    )
    has_facet_in_f = any(c.vertices <= fset for c in factor)
    pyramid = False
    for c in factor:
        if not c.original_f:
            continue
        apexes = verts - c.vertices
        if len(apexes) != 1:
            continue
        a = next(iter(apexes))
        expected = {r | {a} for r in c.ridges}
        others = {x.vertices for x in factor if x is not c}
        if others == expected and len(factor) == 1 + len(c.ridges):
            pyramid = True
            break
    return FactorReport(tuple(sorted(verts)), is_simplex, has_facet_in_f, pyramid)


def recognize_minimizer(asp: ASPComplex) -> MinimizerVerdict:
    """Decide minimality structurally via the refined prime decomposition.

    The boundary sphere is refined by replacing the special facet with
    the polyhedral cells of its own prime decomposition; the sphere is
    then decomposed along missing facet-size simplices.  For d > 4 every
    factor must be a simplex; for d = 4 each factor must be a simplex
    with no cell inside the special facet, or a pyramid over one of the
    facet's prime factors (any valid apex accepted).  d = 3 is rejected:
    there every instance has the minimal f-vector and the structural
    test carries no information.
    """
    d = asp.params.d
    if d == 3:
        raise UnsupportedRegimeError(
            "every 3-dimensional instance is a minimizer; nothing to recognize"
        )
    validate_asp(asp)
    bd = boundary_of_ball(asp.ball)
    f_factors = prime_decomposition(bd).factors
    cells: list[_Cell] = [
        _Cell(frozenset(s.vertex_ids), s.facets, True) for s in f_factors
    ]
    cells.extend(_simplex_cell(b) for b in asp.ball.facets)
    factors = _cell_prime_factors(cells, d)
    regime = "d4" if d == 4 else "dGT4"

    def factor_key(factor: tuple[_Cell, ...]):
        return face_key(frozenset().union(*(c.vertices for c in factor)))

    reports = tuple(
        _classify_factor(factor, d, asp.special_facet)
        for factor in sorted(factors, key=factor_key)
    )
    if regime == "dGT4":
        ok = all(r.is_simplex for r in reports)
    else:
        ok = all(
            (r.is_simplex and not r.has_facet_in_f) or r.is_pyramid_over_f_factor
            for r in reports
        )
    return MinimizerVerdict(ok, regime, reports)
