"""Command-line entry point.

Exit codes: 0 success / positive decision, 1 negative decision, 2 usage or
input error, 3 solver limit exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .connectivity import MAX_SEPARATOR_SIZE, enumerate_separators, menger_count
from .decomposition import ordering_to_td, parse_td, validate_td, write_td
from .ghost import DefinitionError, is_ghost_edge, search_counterexamples
from .graph import GraphFormatError, parse_gr, parse_labels, write_gr
from .minors import MinorModel, find_clique_minor, model_violations, parse_branch_sets
from .paper import paper_graph, verify_paper
from .streams import connected_graphs, gr_directory, random_connected_graphs
from .treewidth import SolverLimitError, treewidth_dp

OK, NEGATIVE, USAGE, LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_graph(path):
    path = Path(path)
    try:
        g = parse_gr(path.read_bytes())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    side = path.with_suffix(".labels")
    if side.exists():
        g = g.with_labels(parse_labels(side.read_text(), g.n))
    return g


def resolve(g, token):
    """Accept a label (when the graph has a sidecar) or a 1-based id."""
    if g.labels is not None and token in g.labels:
        return g.labels.index(token)
    try:
        v = int(token)
    except ValueError:
        raise UsageError(f"unknown vertex {token!r}") from None
    if not 1 <= v <= g.n:
        raise UsageError(f"vertex {v} out of range 1..{g.n}")
    return v - 1


def _write_report(path, pairs):
    if path:
        Path(path).write_text("".join(f"{k}: {v}\n" for k, v in pairs))


def _write_certificate(path, td):
    if path:
        Path(path).write_text(write_td(td))


def cmd_tw(args):
    g = load_graph(args.graph)
    tw, order = treewidth_dp(g)
    print(f"treewidth: {tw}")
    td = ordering_to_td(g, order)
    _write_certificate(args.certificate, td)
    _write_report(args.report, [("command", "tw"), ("n", g.n), ("m", g.m), ("treewidth", tw),
                                ("ordering", " ".join(g.name(v) for v in order))])
    return OK


def cmd_ghost(args):
    g = load_graph(args.graph)
    x, y = resolve(g, args.x), resolve(g, args.y)
    try:
        verdict = is_ghost_edge(g, x, y, args.k)
    except DefinitionError as exc:
        raise UsageError(str(exc)) from None
    paths = menger_count(g, x, y).count
    suff = "yes" if paths >= args.k + 1 else "no"
    if verdict.is_ghost:
        print(f"ghost-edge: yes (menger={paths}, sufficient-condition: {suff})")
    else:
        print(f"ghost-edge: no (menger={paths}, sufficient-condition: {suff})")
        print(f"certificate: width-{args.k} decomposition with {len(verdict.excluding_td.bags)} bags, "
              f"{g.name(x)} and {g.name(y)} never share a bag")
        _write_certificate(args.certificate, verdict.excluding_td)
    _write_report(args.report, [
        ("command", "ghost"), ("x", g.name(x)), ("y", g.name(y)), ("k", args.k),
        ("treewidth", verdict.treewidth), ("ghost", "yes" if verdict.is_ghost else "no"),
        ("menger", paths), ("sufficient_condition", suff),
        ("certificate", verdict.certificate),
    ])
    return OK if verdict.is_ghost else NEGATIVE


def cmd_menger(args):
    g = load_graph(args.graph)
    x, y = resolve(g, args.x), resolve(g, args.y)
    system = menger_count(g, x, y)
    print(f"menger: {system.count}")
    for p in system.paths:
        print("path: " + " ".join(g.name(v) for v in p))
    _write_report(args.report, [("command", "menger"), ("x", g.name(x)), ("y", g.name(y)),
                                ("menger", system.count)])
    return OK


def cmd_separators(args):
    g = load_graph(args.graph)
    x, y = resolve(g, args.x), resolve(g, args.y)
    if args.max_size > MAX_SEPARATOR_SIZE:
        raise UsageError(f"--max-size is capped at {MAX_SEPARATOR_SIZE}")
    found = enumerate_separators(g, x, y, args.max_size)
    print(f"separators: {len(found)}")
    for s in found:
        print("separator: " + " ".join(g.name(v) for v in sorted(s)))
    _write_report(args.report, [("command", "separators"), ("max_size", args.max_size),
                                ("count", len(found))])
    return OK if found else NEGATIVE


def cmd_minor(args):
    g = load_graph(args.graph)
    if args.branch_sets:
        sets = parse_branch_sets(Path(args.branch_sets).read_text(), g.n)
        problems = model_violations(g, MinorModel.clique(sets))
        if problems:
            print(f"K{len(sets)} model: invalid")
            for p in problems:
                print(f"problem: {p}")
            return NEGATIVE
        print(f"K{len(sets)} model: valid")
        return OK
    model = find_clique_minor(g, args.t)
    if model is None:
        print(f"K{args.t} minor: absent")
        return NEGATIVE
    print(f"K{args.t} minor: found")
    for b in model.branch_sets:
        print("branch set: " + " ".join(g.name(v) for v in sorted(b)))
    return OK


def cmd_check_td(args):
    g = load_graph(args.graph)
    td = parse_td(Path(args.td).read_bytes())
    if td.host_n != g.n:
        raise UsageError(f"decomposition is for {td.host_n} vertices, graph has {g.n}")
    report = validate_td(g, td)
    for line in report.lines(g.name):
        print(line)
    return OK if report.valid else NEGATIVE


def cmd_verify_paper(args):
    report = verify_paper(paper_graph(check=False))
    for line in report.lines():
        print(line)
    _write_report(args.report, [("command", "verify-paper")]
                  + [(s.name, "pass" if s.ok else "fail") for s in report.stages]
                  + [("overall", "pass" if report.ok else "fail")])
    return OK if report.ok else NEGATIVE


def cmd_search(args):
    if args.dir:
        source = gr_directory(args.dir)
    elif args.random is not None:
        if args.n is None or args.p is None or args.seed is None:
            raise UsageError("--random needs --n, --p and --seed")
        source = random_connected_graphs(args.random, args.n, args.p, args.seed)
    elif args.enumerate_max_n is not None:
        source = connected_graphs(args.enumerate_max_n)
    else:
        raise UsageError("give one of --enumerate-max-n, --random or --dir")
    hits = search_counterexamples(source, args.k_max, jobs=args.jobs)
    for h in hits:
        g = h.graph
        print(f"counterexample: n={g.n} m={g.m} x={g.name(h.x)} y={g.name(h.y)} k={h.k} "
              f"menger={h.menger} tw={h.treewidth} "
              f"bruteforce={'confirmed' if h.rechecked else 'skipped'}")
        print("  graph: " + write_gr(g).replace("\n", "; ").rstrip("; "))
    print(f"counterexamples: {len(hits)}")
    _write_report(args.report, [("command", "search"), ("k_max", args.k_max),
                                ("counterexamples", len(hits))])
    return OK


def build_parser():
    parser = argparse.ArgumentParser(prog="ghostedge",
                                     description="Exact treewidth and ghost-edge certification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("graph", help="PACE .gr file (labels from a .labels sidecar)")
        p.add_argument("--report", help="write key: value report here")
        p.set_defaults(func=fn)
        return p

    def pair(p):
        p.add_argument("--x", required=True, help="vertex label or 1-based id")
        p.add_argument("--y", required=True, help="vertex label or 1-based id")

    p = graph_cmd("tw", cmd_tw, "exact treewidth")
    p.add_argument("--certificate", help="write an optimal decomposition (.td) here")

    p = graph_cmd("ghost", cmd_ghost, "decide whether xy is a k-ghost-edge")
    pair(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--certificate", help="write the excluding decomposition (.td) here")

    pair(graph_cmd("menger", cmd_menger, "internally disjoint x-y paths"))

    p = graph_cmd("separators", cmd_separators, "all x-y separators up to a size")
    pair(p)
    p.add_argument("--max-size", type=int, default=4)

    p = graph_cmd("minor", cmd_minor, "search or verify a clique minor")
    p.add_argument("-t", type=int, default=5)
    p.add_argument("--branch-sets", help="verify this branch-set file instead of searching")

    p = graph_cmd("check-td", cmd_check_td, "validate a .td against a graph")
    p.add_argument("td")

    p = sub.add_parser("verify-paper", help="check the embedded counterexample end to end")
    p.add_argument("--report")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("search", help="search for ghost edges with few disjoint paths")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--enumerate-max-n", type=int)
    src.add_argument("--random", type=int, metavar="COUNT")
    src.add_argument("--dir")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report")
    p.set_defaults(func=cmd_search)
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else USAGE
    try:
        return args.func(args)
    except (UsageError, GraphFormatError, DefinitionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except SolverLimitError as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return LIMIT


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    sys.exit(run(argv))
