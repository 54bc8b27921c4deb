"""Command-line front end.  Every verb prints JSON on stdout.

Exit codes: 0 success, 1 no rainbow / failure report / failed audit,
2 usage or input error, 3 an exact search hit its cap.
"""
from __future__ import annotations

import argparse
import json
import random
import sys

from . import bounds, extract, forest, graph, oracle, sparsity
from .exceptions import CapExceeded, ExtractionError
from .family import IndependentFamily


class _Fail(Exception):
    """Verb finished but with a negative result (exit 1)."""

    def __init__(self, payload):
        self.payload = payload


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _read_json(path: str):
    return json.loads(_read_text(path))


def _graph(args) -> graph.Graph:
    return graph.read_graph(_read_text(args.graph))


def _emit_graph(G: graph.Graph, fmt: str):
    if fmt == "text":
        return graph.write_graph(G)
    return graph.graph_to_json(G)


def _parse_param(tok: str):
    for cast in (int, float):
        try:
            return cast(tok)
        except ValueError:
            pass
    raise ValueError(f"cannot parse generator parameter {tok!r}")


# --- verbs ------------------------------------------------------------------

def cmd_gen(args):
    params = [_parse_param(t) for t in args.params]
    if args.kind == "complete_multipartite":
        G = graph.generate(args.kind, [int(p) for p in params])
    elif args.kind == "gnp":
        G = graph.generate(args.kind, int(params[0]), float(params[1]), args.seed)
    else:
        try:
            G = graph.generate(args.kind, *params)
        except TypeError as exc:
            raise ValueError(f"bad parameters for {args.kind}: {exc}") from None
    return _emit_graph(G, args.format)


def cmd_power(args):
    return _emit_graph(graph.power(_graph(args), args.r), args.format)


def cmd_treedepth(args):
    d, F = forest.treedepth_exact(_graph(args), args.cap)
    if args.forest_text:
        return forest.write_forest(F)
    return {"treedepth": d, "forest": forest.forest_to_json(F)}


def cmd_wcol(args):
    value, order = sparsity.wcol(_graph(args), args.r, args.mode)
    return {"r": args.r, "mode": args.mode, "value": value, **order.to_json()}


def cmd_ltd_color(args):
    return sparsity.low_treedepth_coloring(_graph(args), args.p, args.cap).to_json()


def cmd_closure(args):
    G = _graph(args)
    return {"r": args.r, "set": sorted(args.set),
            "closure": sorted(sparsity.shortest_path_closure(G, args.set, args.r))}


def cmd_refine(args):
    G = _graph(args)
    c = sparsity.ColorAssignment.from_json(_read_json(args.coloring))
    if args.order:
        L = sparsity.LinearOrder.from_json(_read_json(args.order))
    else:
        L = sparsity.wcol(G, args.r, args.mode)[1]
    return sparsity.excellent_refinement(G, c, args.r, L).to_json()


def _family(args, G):
    return IndependentFamily.from_json(_read_json(args.family), graph.power(G, args.r))


def cmd_extract(args):
    G = _graph(args)
    try:
        return extract.extract_treedepth_graph(G, args.r, _family(args, G), args.cap).to_json()
    except ExtractionError as exc:
        raise _Fail(exc.report.to_json())


def cmd_extract_be(args):
    G = _graph(args)
    try:
        sel = extract.extract_bounded_expansion(G, args.r, _family(args, G), args.mode,
                                                args.attempts, args.cap)
    except ExtractionError as exc:
        raise _Fail(exc.report.to_json())
    return sel.to_json()


def cmd_rainbow_oracle(args):
    G = _graph(args)
    found = oracle.find_rainbow_bruteforce(_family(args, G), args.node_cap)
    if found is None:
        raise _Fail(None)
    return found.to_json()


def cmd_f_exact(args):
    return oracle.f_exact(_graph(args), args.n, args.node_cap).to_json()


def cmd_check_chromatic(args):
    report = oracle.check_chromatic_bound(_graph(args), args.n, args.trials, args.seed)
    if not report.passed:
        raise _Fail(report.to_json())
    return report.to_json()


def cmd_matching_rainbow(args):
    G = _graph(args)
    obj = _read_json(args.family)
    try:
        found = extract.rainbow_induced_matching(G, obj["n"], obj["matchings"], args.cap)
    except ExtractionError as exc:
        raise _Fail(exc.report.to_json())
    return {"edges": [{"edge": list(e), "matching_index": i} for e, i in found]}


def cmd_m_bound(args):
    return bounds.m_bound(args.d, args.n, args.p, args.r)


def cmd_audit(args):
    G = _graph(args)
    if args.what == "ltd":
        c = (sparsity.ColorAssignment.from_json(_read_json(args.coloring)) if args.coloring
             else sparsity.low_treedepth_coloring(G, args.p, args.cap))
        report = sparsity.verify_ltd(G, c, args.p, args.bound, args.cap)
        out = report.to_json()
        ok = report.passed
    else:
        budget = sparsity.excellence_budget(G, args.r, args.mode)
        c = sparsity.low_treedepth_coloring(G, max(budget, 1), args.cap)
        mode = args.mode if args.mode != "auto" else (
            "exact" if G.n <= sparsity.WCOL_EXACT_CAP else "heuristic")
        L = sparsity.wcol(G, args.r, mode)[1]
        refined = sparsity.excellent_refinement(G, c, args.r, L)
        rng = random.Random(args.seed)
        samples = [rng.sample(range(G.n), rng.randint(0, G.n)) for _ in range(args.samples)]
        report = sparsity.audit_excellence(G, c, refined, args.r, budget, samples, L)
        out = {"budget": budget, "seed": args.seed, **report.to_json()}
        ok = report.passed
    if not ok:
        raise _Fail(out)
    return out


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rainbowsets", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name, fn, help_, graph_in=True):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        p.add_argument("--verbose", action="store_true", help="summary on stderr")
        if graph_in:
            p.add_argument("-g", "--graph", default="-", help="graph file, '-' for stdin (default)")
        return p

    p = verb("gen", cmd_gen, "generate a graph", graph_in=False)
    p.add_argument("kind", choices=[k for k in graph.GENERATOR_KINDS if k != "disjoint_union"])
    p.add_argument("params", nargs="*", help="generator parameters")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = verb("power", cmd_power, "r-th power of a graph")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = verb("treedepth", cmd_treedepth, "exact tree-depth and witness forest")
    p.add_argument("--cap", type=int, default=forest.TREEDEPTH_CAP)
    p.add_argument("--forest-text", action="store_true", help="print the forest in text format")

    p = verb("wcol", cmd_wcol, "weak r-coloring number")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "heuristic"), default="exact")

    p = verb("ltd-color", cmd_ltd_color, "low tree-depth coloring")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--cap", type=int, default=forest.TREEDEPTH_CAP)

    p = verb("closure", cmd_closure, "r-shortest-path closure of a vertex set")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("--set", type=int, nargs="*", default=[], help="0-indexed vertices")

    p = verb("refine", cmd_refine, "WReach-profile refinement of a coloring")
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-c", "--coloring", required=True, help="coloring JSON file")
    p.add_argument("--order", help="order JSON file (default: wcol witness)")
    p.add_argument("--mode", choices=("exact", "heuristic"), default="exact")

    for name, fn, help_ in (("extract", cmd_extract, "tree-depth extraction"),
                            ("extract-be", cmd_extract_be, "bounded-expansion pipeline")):
        p = verb(name, fn, help_)
        p.add_argument("-f", "--family", required=True, help="family JSON file")
        p.add_argument("-r", type=int, required=True)
        p.add_argument("--cap", type=int, default=forest.TREEDEPTH_CAP)
        if name == "extract-be":
            p.add_argument("--mode", choices=("auto", "exact", "heuristic"), default="auto")
            p.add_argument("--attempts", type=int, default=8)

    p = verb("rainbow-oracle", cmd_rainbow_oracle, "brute-force rainbow search")
    p.add_argument("-f", "--family", required=True)
    p.add_argument("-r", type=int, default=1, help="family lives in G^r (default 1)")
    p.add_argument("--node-cap", type=int, default=oracle.SEARCH_NODE_CAP)

    p = verb("f-exact", cmd_f_exact, "exact f_G(n) on tiny graphs")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--node-cap", "--cap", dest="node_cap", type=int, default=oracle.F_EXACT_NODE_CAP)

    p = verb("check-chromatic", cmd_check_chromatic, "seeded check of the chromatic bound")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)

    p = verb("matching-rainbow", cmd_matching_rainbow, "rainbow induced matching")
    p.add_argument("-f", "--family", required=True, help='JSON {"n": n, "matchings": [[[u, v], ...], ...]}')
    p.add_argument("--cap", type=int, default=forest.TREEDEPTH_CAP)

    p = verb("m-bound", cmd_m_bound, "evaluate M(d, n, p, r)", graph_in=False)
    for flag in ("-d", "-n", "-p", "-r"):
        p.add_argument(flag, type=int, required=True)

    p = verb("audit", cmd_audit, "audit a low tree-depth coloring or the excellence inequality")
    p.add_argument("--what", choices=("ltd", "excellence"), default="excellence")
    p.add_argument("-p", type=int, default=2)
    p.add_argument("-r", type=int, default=2)
    p.add_argument("-c", "--coloring", help="coloring JSON for --what ltd (default: depth coloring)")
    p.add_argument("--bound", choices=("i", "i-1"), default="i")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("auto", "exact", "heuristic"), default="auto")
    p.add_argument("--cap", type=int, default=forest.TREEDEPTH_CAP)
    return parser


def _write(payload) -> None:
    if isinstance(payload, str):
        sys.stdout.write(payload)
    else:
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except _Fail as fail:
        _write(fail.payload)
        if args.verbose:
            print(f"{args.verb}: negative result", file=sys.stderr)
        return 1
    except (CapExceeded, OverflowError) as exc:
        print(f"{args.verb}: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"{args.verb}: {exc}", file=sys.stderr)
        return 2
    _write(payload)
    if args.verbose:
        print(f"{args.verb}: ok", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
