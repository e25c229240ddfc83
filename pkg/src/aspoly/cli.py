"""Command line surface: construction, enumeration, verification, tables.

All payloads are JSON with sorted keys and compact separators, so a
fixed seed and configuration produce byte-identical output.  Exit codes:
0 all checks pass, 1 a verification check failed, 2 usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from io import StringIO

from .complexes import (
    ASPComplex,
    boundary_of_ball,
    f_vector,
    h_from_shelling,
)
from .curves import PointConfig, almost_cyclic_points
from .enumerative import (
    ASPParams,
    check_asp_bounds,
    dehn_sommerville_defect,
    f_almost_cyclic,
    f_almost_stacked,
    g_from_h,
    h_from_f,
    ridge_identity_defect,
)
from .errors import AspolyError, UnsupportedRegimeError
from .gale import (
    almost_cyclic_facets,
    interior_tuples,
    simplex_facet_count_even_d,
    special_block,
)
from .hull import (
    designate_special,
    detect_asp,
    enumerate_facets,
    line_shelling,
    stack_over_special,
)
from .rigidity import Graph, g2_of_skeleton, one_skeleton, sample_generic
from .stackgen import random_minimizer, recognize_minimizer

DEFAULT_MAX_N = 16
DEFAULT_MAX_D = 6

ALL_CHECKS = ("bounds", "ds", "gale", "ridge", "shelling", "rigidity", "minimizer")


def _caps() -> tuple[int, int]:
    return (
        int(os.environ.get("ASPOLY_MAX_N", DEFAULT_MAX_N)),
        int(os.environ.get("ASPOLY_MAX_D", DEFAULT_MAX_D)),
    )


def _check_caps(d: int, n: int, unsafe: bool) -> None:
    max_n, max_d = _caps()
    if unsafe:
        return
    if n > max_n or d > max_d:
        raise AspolyError(
            f"requested d={d}, n={n} exceeds caps d<={max_d}, n<={max_n}; "
            "facet enumeration walks C(n,d) subsets, pass --unsafe-large to proceed"
        )


def _emit(payload, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_text(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _params(args) -> ASPParams:
    return ASPParams(args.d, args.n, args.s)


def _summary(asp: ASPComplex) -> dict:
    fp = asp.f_polytope()
    return {
        "f_polytope": list(fp.entries),
        "f_ball": list(f_vector(asp.ball).entries),
        "h_ball": list(h_from_f(f_vector(asp.ball)).entries),
    }


def cmd_construct(args) -> int:
    p = _params(args)
    _check_caps(p.d, p.n, args.unsafe_large)
    if args.kind == "cyclic-asp":
        config = almost_cyclic_points(p)
        geom = detect_asp(config, cap=None)
        if geom.ball is None:
            geom = designate_special(geom, range(1, p.d + 1))
        payload = {
            "kind": "cyclic-asp",
            "params": {"d": p.d, "n": p.n, "s": p.s},
            "points": config.to_json(),
            "facets": [f.to_json() for f in geom.facets],
            "complex": geom.ball.to_json(),
            **_summary(geom.ball),
        }
    else:
        asp = random_minimizer(p, args.seed, style=args.style)
        payload = {
            "kind": "stacked-asp",
            "params": {"d": p.d, "n": p.n, "s": p.s},
            "seed": args.seed,
            "complex": asp.to_json(),
            **_summary(asp),
        }
    _emit(payload, args.out)
    return 0


def cmd_facets(args) -> int:
    if args.input:
        with open(args.input) as fh:
            config = PointConfig.from_json(json.load(fh))
    else:
        if None in (args.d, args.n):
            raise AspolyError("facets needs --input or all of --d/--n/--s")
        config = almost_cyclic_points(_params(args))
    _check_caps(config.d, config.n, args.unsafe_large)
    facets = enumerate_facets(config, cap=None)
    payload = {
        "d": config.d,
        "n": config.n,
        "count": len(facets),
        "simplex_count": sum(1 for f in facets if f.is_simplex()),
        "facets": [f.to_json() for f in facets],
    }
    _emit(payload, args.out)
    return 0


def cmd_gale(args) -> int:
    p = _params(args)
    _check_caps(p.d, p.n, args.unsafe_large)
    facets = almost_cyclic_facets(p)
    payload = {
        "params": {"d": p.d, "n": p.n, "s": p.s},
        "special_block": sorted(special_block(p)),
        "count": len(facets),
        "facets": [sorted(f) for f in facets],
    }
    if p.d % 2 == 0:
        payload["simplex_count_formula"] = simplex_facet_count_even_d(p)
    if args.interior_tuples:
        payload["interior_tuples"] = [sorted(t) for t in interior_tuples(p)]
    _emit(payload, args.out)
    return 0


def _load_artifact(path: str) -> tuple[ASPComplex, PointConfig | None, str]:
    with open(path) as fh:
        data = json.load(fh)
    if "complex" not in data:
        raise AspolyError("artifact has no 'complex' entry; run construct first")
    asp = ASPComplex.from_json(data["complex"])
    config = PointConfig.from_json(data["points"]) if "points" in data else None
    return asp, config, data.get("kind", "unknown")


def _check_bounds(asp: ASPComplex) -> tuple[bool, str]:
    report = check_asp_bounds(asp.f_polytope(), asp.params)
    bad = [v.index for v in report.verdicts if not (v.lower_ok and v.upper_ok)]
    return (not bad, "violations at indices " + str(bad) if bad else "sandwich holds")


def _check_ds(asp: ASPComplex) -> tuple[bool, str]:
    h_ball = h_from_f(f_vector(asp.ball))
    g_bd = g_from_h(h_from_f(f_vector(boundary_of_ball(asp.ball))))
    defect = dehn_sommerville_defect(h_ball, g_bd)
    ok = all(x == 0 for x in defect)
    return (ok, f"defect {list(defect)}")


def _check_gale(asp: ASPComplex, kind: str) -> tuple[bool, str]:
    if kind != "cyclic-asp":
        return (False, "gale check applies to cyclic-asp artifacts only")
    predicted = almost_cyclic_facets(asp.params)
    got = asp.boundary_sphere_facets()
    ok = {frozenset(f) for f in predicted} == set(got)
    return (ok, "facet families agree" if ok else "facet families differ")


def _check_ridge(asp: ASPComplex) -> tuple[bool, str]:
    f_facet = f_vector(boundary_of_ball(asp.ball))
    defect = ridge_identity_defect(asp.f_polytope(), f_facet)
    return (defect == 0, f"defect {defect}")


def _check_shelling(asp: ASPComplex, config: PointConfig | None, seed: int) -> tuple[bool, str]:
    if config is None:
        return (False, "shelling check needs point data in the artifact")
    geom = detect_asp(config, cap=None)
    if geom.ball is None:
        geom = designate_special(geom, sorted(asp.special_facet))
    stacked = stack_over_special(geom)
    cert = line_shelling(stacked, seed)
    fq = f_vector(cert.complex)
    ok1 = h_from_shelling(cert).entries == h_from_f(fq).entries
    hq = h_from_f(fq)
    hp = h_from_f(f_vector(asp.ball))
    hf = h_from_f(f_vector(boundary_of_ball(asp.ball)))
    d = asp.params.d
    ok2 = all(hq.h(k) == hp.h(k) + hf.h(k - 1) for k in range(d + 1))
    return (ok1 and ok2, f"h(Q)={list(hq.entries)}")


def _check_rigidity(asp: ASPComplex, seed: int) -> tuple[bool, str]:
    skel = one_skeleton(asp.ball)
    report = sample_generic(skel, asp.params.d, seed=seed)
    g2 = g2_of_skeleton(asp.params.n, skel.n_edges, asp.params.d)
    if not report.rigid_certified:
        return (False, "rank certificate not reached (inconclusive)")
    ok = report.stress_dim == g2
    return (ok, f"stress_dim={report.stress_dim}, g2={g2}")


def _check_minimizer(asp: ASPComplex) -> tuple[bool, str]:
    if asp.params.d < 4:
        return (False, "minimizer recognition needs d >= 4")
    verdict = recognize_minimizer(asp)
    extremal = asp.f_polytope().entries == f_almost_stacked(asp.params).entries
    ok = verdict.is_minimizer == extremal
    return (ok, f"is_minimizer={verdict.is_minimizer}, regime={verdict.regime}")


def cmd_verify(args) -> int:
    asp, config, kind = _load_artifact(args.input)
    requested = ALL_CHECKS if args.checks == "all" else tuple(args.checks.split(","))
    unknown = [c for c in requested if c not in ALL_CHECKS]
    if unknown:
        raise AspolyError(f"unknown checks {unknown}; valid: {ALL_CHECKS}")
    if args.checks == "all":
        applicable = ["bounds", "ds", "ridge"]
        if kind == "cyclic-asp":
            applicable.append("gale")
        if config is not None:
            applicable.append("shelling")
        if asp.params.d >= 3:
            applicable.append("rigidity")
        if asp.params.d >= 4:
            applicable.append("minimizer")
        requested = tuple(applicable)
    results = {}
    for name in requested:
        if name == "bounds":
            results[name] = _check_bounds(asp)
        elif name == "ds":
            results[name] = _check_ds(asp)
        elif name == "gale":
            results[name] = _check_gale(asp, kind)
        elif name == "ridge":
            results[name] = _check_ridge(asp)
        elif name == "shelling":
            results[name] = _check_shelling(asp, config, args.seed)
        elif name == "rigidity":
            results[name] = _check_rigidity(asp, args.seed)
        elif name == "minimizer":
            results[name] = _check_minimizer(asp)
    all_pass = all(ok for ok, _ in results.values())
    payload = {
        "checks": {k: {"pass": ok, "detail": txt} for k, (ok, txt) in results.items()},
        "all_pass": all_pass,
    }
    _emit(payload, args.out)
    return 0 if all_pass else 1


def _parse_range(text: str) -> range:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return range(int(lo), int(hi) + 1)
    v = int(text)
    return range(v, v + 1)


def _table_cell(cell: tuple[int, int, int]) -> dict:
    d, s, n = cell
    p = ASPParams(d, n, s)
    lo = f_almost_stacked(p)
    hi = f_almost_cyclic(p)
    asp = random_minimizer(p, 0)
    hb = h_from_f(f_vector(asp.ball))
    return {
        "d": d,
        "s": s,
        "n": n,
        "f_stacked": " ".join(map(str, lo.entries)),
        "f_cyclic": " ".join(map(str, hi.entries)),
        "h_ball": " ".join(map(str, hb.entries)),
        "bounds_ok": all(a <= b for a, b in zip(lo.entries, hi.entries)),
        "extremes_touch": lo.entries == hi.entries,
    }


def cmd_table(args) -> int:
    cells = []
    for d in _parse_range(args.d):
        for s in _parse_range(args.s):
            for n in range(d + s + 1, d + s + 1 + args.n_span):
                _check_caps(d, n, args.unsafe_large)
                cells.append((d, s, n))
    with ThreadPoolExecutor(max_workers=min(8, max(1, len(cells)))) as pool:
        rows = list(pool.map(_table_cell, cells))
    if args.format == "json":
        _emit(rows, args.out)
        return 0
    import csv

    buf = StringIO()
    fields = ["d", "s", "n", "f_stacked", "f_cyclic", "h_ball", "bounds_ok", "extremes_touch"]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _emit_text(buf.getvalue(), args.out)
    return 0


def cmd_rigidity(args) -> int:
    with open(args.input) as fh:
        data = json.load(fh)
    if "complex" in data:
        asp = ASPComplex.from_json(data["complex"])
        graph = one_skeleton(asp.ball)
        dim = args.dim or asp.params.d
    else:
        graph = Graph.from_json(data)
        if args.dim is None:
            raise AspolyError("--dim is required for raw graph input")
        dim = args.dim
    report = sample_generic(graph, dim, trials=args.trials, seed=args.seed)
    _emit(report.to_json(), args.out)
    return 0


def cmd_shelling(args) -> int:
    asp, config, _ = _load_artifact(args.input)
    if config is None:
        raise AspolyError("shelling needs an artifact with point data (cyclic-asp)")
    geom = detect_asp(config, cap=None)
    if geom.ball is None:
        geom = designate_special(geom, sorted(asp.special_facet))
    stacked = stack_over_special(geom)
    runs = []
    all_pass = True
    for i in range(args.count):
        cert = line_shelling(stacked, args.seed + i)
        fq = f_vector(cert.complex)
        ok = h_from_shelling(cert).entries == h_from_f(fq).entries
        all_pass = all_pass and ok
        runs.append(
            {
                "seed": args.seed + i,
                "h": list(h_from_shelling(cert).entries),
                "order": [sorted(f) for f in cert.order],
                "matches_f": ok,
            }
        )
    _emit({"runs": runs, "all_pass": all_pass}, args.out)
    return 0 if all_pass else 1


def cmd_recognize(args) -> int:
    asp, _, _ = _load_artifact(args.input)
    verdict = recognize_minimizer(asp)
    _emit(verdict.to_json(), args.out)
    return 0


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="aspoly",
        description="Construct and verify almost simplicial polytopes.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, params=False, seed=False):
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--unsafe-large", action="store_true", help="lift d/n caps")
        if params:
            p.add_argument("--d", type=int, required=True)
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--s", type=int, required=True)
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("construct", help="build an instance and write artifacts")
    p.add_argument("kind", choices=["cyclic-asp", "stacked-asp"])
    p.add_argument("--style", choices=["stack", "hstack"], default="stack")
    common(p, params=True, seed=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("facets", help="enumerate hull facets exactly")
    p.add_argument("--input", default=None, help="PointConfig JSON")
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--unsafe-large", action="store_true")
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser("gale", help="predict facets combinatorially")
    p.add_argument("--interior-tuples", action="store_true")
    common(p, params=True)
    p.set_defaults(func=cmd_gale)

    p = sub.add_parser("verify", help="run checks against an artifact")
    p.add_argument("--input", required=True)
    p.add_argument("--checks", default="all", help="comma list or 'all'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="grid summary of extremal f-vectors")
    p.add_argument("--d", required=True, help="value or a..b range")
    p.add_argument("--s", required=True, help="value or a..b range")
    p.add_argument("--n-span", type=int, default=3, help="n runs d+s+1 .. d+s+span")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None)
    p.add_argument("--unsafe-large", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("rigidity", help="generic rigidity report for a graph")
    p.add_argument("action", nargs="?", default="report", choices=["report"])
    p.add_argument("--input", required=True, help="graph JSON or artifact JSON")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_rigidity)

    p = sub.add_parser("shelling", help="seeded line shellings of the stacked hull")
    p.add_argument("--input", required=True)
    p.add_argument("--count", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_shelling)

    p = sub.add_parser("recognize", help="structural minimizer recognition")
    p.add_argument("--input", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_recognize)

    return top


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedRegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AspolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
