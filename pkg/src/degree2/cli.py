"""Command line entry point: ``degree2 <command> [options]``.

Exit status is 0 on success, 1 when a reproduced claim fails and 2 on bad
usage or invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib.resources import files
from pathlib import Path

from . import continuity as cont
from . import io
from .claims import DEFAULT_SEED, SUITE_GRAPHS, cyclic_ones, run_claims, small2_generators, z2_square
from .decomposition import check_certificate, degree2_certificate
from .errors import Degree2Error
from .gain import (
    derived_graph,
    fiber_cover_gain_graph,
    gm_fiber_graph,
    is_g_acyclic,
    rlm_fiber_graph,
    trivcov_report,
)
from .graphs import SimpleGraph, cycle
from .pfun import PartialFunction
from .rees import graph_rees, is_gm_matrix, rlm, translational_hull
from .semigroup import closure, delta, green, is_aperiodic

REPORT_SCHEMA = "degree2.report/1"


class UsageError(Exception):
    pass


def corpus_dir() -> Path:
    return Path(str(files("degree2") / "corpus"))


def _emit(obj, out: str):
    if out == "json":
        obj = {"schema": REPORT_SCHEMA, **obj} if isinstance(obj, dict) and "schema" not in obj else obj
        sys.stdout.write(io.dumps(obj))
    else:
        for key in sorted(obj):
            value = obj[key]
            if isinstance(value, (list, dict)):
                value = json.dumps(value, sort_keys=True, ensure_ascii=False)
            print(f"{key:<24} {value}")


def _maps_json(maps) -> list:
    return [io.pfun_to_json(f)["table"] for f in maps]


def _graph(args) -> SimpleGraph:
    if not args.graph:
        raise UsageError("--graph FILE is required")
    return io.load_graph(args.graph)


# ---------------------------------------------------------------------------
# commands

def cmd_enumerate(args) -> int:
    g = _graph(args)
    if args.mode == "strict":
        maps = cont.enumerate_strict(g, bound=args.bound)
    elif args.mode == "structured":
        maps = cont.enumerate_structured(g, bound=args.bound)
    else:
        maps = cont.enumerate_continuous(g, bound=args.bound)
    if args.out == "count":
        print(len(maps))
    elif args.out == "json":
        _emit({"mode": args.mode, "n": g.n, "count": len(maps), "maps": _maps_json(maps)}, "json")
    elif args.out == "dot":
        sys.stdout.write(io.to_dot(g))
    else:
        for f in maps:
            print(f.pretty())
    return 0


def cmd_check(args) -> int:
    g = _graph(args)
    if not args.map:
        raise UsageError("--map is required, e.g. --map \"1>3,2>3\"")
    dst = io.load_graph(args.target) if args.target else None
    f = PartialFunction.parse(args.map, g.n, cod_size=dst.n if dst is not None else None)
    r = cont.check_continuity(f, g, dst)
    report = {"map": f.pretty(), "continuous": r.continuous, "strict": r.strict}
    if r.witness is not None:
        report["witness"] = [list(r.witness[0]), list(r.witness[1])]
    if r.strict_witness is not None:
        report["strict_witness"] = [list(r.strict_witness[0]), list(r.strict_witness[1])]
    if args.out == "json":
        _emit(report, "json")
    else:
        print(f"continuous={str(r.continuous).lower()} strict={str(r.strict).lower()}")
    return 0


def cmd_closure(args) -> int:
    if args.gens:
        n, gens = io.load_maps(args.gens)
    elif args.graph:
        g = _graph(args)
        n = g.n
        gens = cont.enumerate_strict(g) if args.mode == "strict" else cont.enumerate_continuous(g)
    else:
        raise UsageError("--gens FILE or --graph FILE is required")
    S = closure(gens, cap=args.cap)
    if args.out == "count":
        print(len(S))
        return 0
    report = {"n": n, "order": len(S), "generators": len(gens), "is_monoid": S.is_monoid}
    if args.report:
        gd = green(S)
        report.update({
            "R_classes": sorted(len(c) for c in gd.R),
            "L_classes": sorted(len(c) for c in gd.L),
            "J_classes": sorted(len(c) for c in gd.J),
            "H_classes": sorted(len(c) for c in gd.H),
            "regular_J": sum(gd.regular_J),
            "idempotents": len(S.idempotents()),
            "delta": delta(S, gd),
            "aperiodic": is_aperiodic(S, gd),
        })
    if args.out == "json":
        report["elements"] = _maps_json(S.elements)
    _emit(report, args.out)
    return 0


def cmd_hull(args) -> int:
    if args.rees:
        S = io.load_rees(args.rees)
    elif args.graph:
        S = graph_rees(_graph(args), strict=args.mode == "strict")
    else:
        raise UsageError("--rees FILE or --graph FILE is required")
    H = translational_hull(S, cap=args.cap)
    if args.out == "count":
        print(len(H))
        return 0
    report = {"group": S.group.label or "1", "rows": len(S.B), "columns": len(S.A), "regular": S.is_regular(),
              "group_mapping": is_gm_matrix(S), "hull_size": len(H)}
    if args.out == "json":
        report["pairs"] = [
            {"row_assign": list(p.row.assign), "row_fun": io.pfun_to_json(p.row.fun)["table"],
             "col_fun": io.pfun_to_json(p.col_fun)["table"], "col_assign": list(p.col_assign)}
            for p in H
        ]
    _emit(report, args.out)
    return 0


def cmd_rlm(args) -> int:
    if not args.rees:
        raise UsageError("--rees FILE is required")
    S = io.load_rees(args.rees)
    R = rlm(S, cap=args.cap)
    fg = rlm_fiber_graph(S)
    if args.out == "dot":
        sys.stdout.write(io.to_dot(fg, "fibers"))
        return 0
    if args.out == "count":
        print(len(R))
        return 0
    report = {"order": len(R), "elements": [f.pretty() for f in R.elements],
              "fiber_graph": io.graph_to_json(fg)}
    _emit(report, args.out)
    return 0


def cmd_cover(args) -> int:
    if args.gain:
        gg = io.load_gain(args.gain)
    elif args.rees:
        gg = fiber_cover_gain_graph(io.load_rees(args.rees))
    else:
        raise UsageError("--gain FILE or --rees FILE is required")
    if not args.derive:
        if args.out == "dot":
            sys.stdout.write(io.gain_to_dot(gg))
        else:
            _emit({"gain_graph": io.gain_to_json(gg), "g_acyclic": is_g_acyclic(gg)}, args.out)
        return 0
    cover, action = derived_graph(gg)
    simple = derived_graph(gg, simple=True)[0]
    if args.out == "dot":
        sys.stdout.write(io.to_dot(simple, "cover"))
    elif args.out == "count":
        print(cover.n)
    else:
        _emit({"vertices": cover.n, "edges": [[e.id, e.tail, e.head] for e in cover.edges],
               "simple": io.graph_to_json(simple), "connected": simple.is_connected(),
               "g_acyclic": is_g_acyclic(gg)}, args.out)
    return 0


def cmd_trivcov(args) -> int:
    if not args.rees:
        raise UsageError("--rees FILE is required")
    S = io.load_rees(args.rees)
    r = trivcov_report(S)
    fg = gm_fiber_graph(S)
    _emit({"trivial_cover": r.trivial_cover, "normalizable": r.normalizable,
           "idempotents_aperiodic": r.idempotents_aperiodic, "agree": r.agree,
           "fiber_graph": io.graph_to_json(fg)}, args.out)
    return 0 if r.agree else 1


def cmd_certify(args) -> int:
    if args.check:
        data = json.loads(Path(args.check).read_text())
        ok = check_certificate(data)
        print("certificate verified" if ok else "certificate REJECTED")
        return 0 if ok else 1
    g = _graph(args)
    gens = io.load_maps(args.gens)[1] if args.gens else None
    c = degree2_certificate(g, gens=gens, singular_only=args.singular_only, cap=args.cap)
    if args.out == "json":
        sys.stdout.write(c.to_json(indent=2) + "\n")
    else:
        d = {k: v for k, v in vars(c).items() if k not in ("source_tables", "cover_tables")}
        _emit(d, "table")
    return 0 if c.rm_valid and c.all_injective else 1


def _corpus_matches() -> list:
    """Names of bundled corpus files that do not match the built-in instances."""
    d = corpus_dir()
    bad = []
    graphs = {"k2": "K2", "k3": "K3", "p3": "P3", "c4": "C4", "k22": "K22", "edgeless3": "N3"}
    for stem, key in graphs.items():
        if io.load_graph(d / f"{stem}.json") != SUITE_GRAPHS[key]:
            bad.append(f"{stem}.json")
    if io.load_graph(d / "c5.json") != cycle(5):
        bad.append("c5.json")
    for stem, S in (("z2_square", z2_square()), ("cyclic_ones", cyclic_ones()), ("cyclic_twist", cyclic_ones(True))):
        if io.load_rees(d / f"{stem}.json") != S:
            bad.append(f"{stem}.json")
    if io.load_maps(d / "small2.json")[1] != small2_generators():
        bad.append("small2.json")
    return bad


def cmd_verify_paper(args) -> int:
    bad = _corpus_matches()
    only = set(args.only) if args.only else None
    claims = run_claims(args.seed, only)
    if args.out == "json":
        _emit({"seed": args.seed, "corpus_mismatches": bad, "claims": [c.as_dict() for c in claims]}, "json")
    else:
        for c in claims:
            print(f"[{c.status.upper():4}] {c.criterion:>2} {c.id:<22} {c.description}")
            if c.status != "pass":
                for key in sorted(c.expected):
                    if c.observed.get(key) != c.expected[key]:
                        print(f"         {key}: expected {c.expected[key]!r}, got {c.observed.get(key)!r}")
        for name in bad:
            print(f"[FAIL]    corpus file {name} differs from the built-in instance")
        passed = sum(c.status == "pass" for c in claims)
        print(f"{passed}/{len(claims)} claims pass")
    return 0 if not bad and all(c.status == "pass" for c in claims) else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="degree2", description="Continuous maps on graphs and degree-2 semigroups.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, outs=("table", "json"), default="table"):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        sp.add_argument("--out", choices=outs, default=default)
        sp.add_argument("--cap", type=int, default=None, help="element cap (default: $DEGREE2_CAP or built-in)")
        return sp

    sp = add("enumerate", cmd_enumerate, "list continuous or strict maps of a graph", ("table", "json", "count", "dot"))
    sp.add_argument("--graph", required=True)
    sp.add_argument("--mode", choices=("continuous", "strict", "structured"), default="continuous")
    sp.add_argument("--bound", type=int, default=None, help="largest vertex count to enumerate")

    sp = add("check", cmd_check, "test one map for continuity and strictness")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--target", help="codomain graph (default: same as --graph)")
    sp.add_argument("--map", required=True, help='1-based, e.g. "1>3,2>3"')

    sp = add("closure", cmd_closure, "close a set of maps under composition", ("table", "json", "count"))
    sp.add_argument("--gens")
    sp.add_argument("--graph")
    sp.add_argument("--mode", choices=("continuous", "strict"), default="continuous")
    sp.add_argument("--report", action="store_true", help="include Green classes, depth and aperiodicity")

    sp = add("hull", cmd_hull, "translational hull of a Rees matrix semigroup", ("table", "json", "count"))
    sp.add_argument("--rees")
    sp.add_argument("--graph", help="use the incidence matrix of a graph")
    sp.add_argument("--mode", choices=("continuous", "strict"), default="continuous")

    sp = add("rlm", cmd_rlm, "right letter mapping image and its fiber graph", ("table", "json", "count", "dot"))
    sp.add_argument("--rees", required=True)

    sp = add("cover", cmd_cover, "gain graphs and their derived covers", ("table", "json", "count", "dot"))
    sp.add_argument("--gain")
    sp.add_argument("--rees", help="use the fiber-graph gain graph of a GM matrix")
    sp.add_argument("--derive", action="store_true", help="build the derived graph")

    sp = add("trivcov", cmd_trivcov, "evaluate the three trivial-cover conditions")
    sp.add_argument("--rees", required=True)

    sp = add("certify", cmd_certify, "degree-2 certificate for M(G) or a generated subsemigroup", default="json")
    sp.add_argument("--graph")
    sp.add_argument("--gens")
    sp.add_argument("--singular-only", action="store_true")
    sp.add_argument("--check", metavar="CERT", help="re-verify a saved certificate instead")

    sp = add("verify-paper", cmd_verify_paper, "reproduce every numeric claim")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--only", action="append", help="claim id or criterion number (repeatable)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"degree2: error: {exc}", file=sys.stderr)
        return 2
    except (Degree2Error, ValueError, OSError) as exc:
        print(f"degree2: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
