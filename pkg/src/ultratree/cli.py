"""Command-line interface.

Exit codes: 0 success or "true", 1 a check answered "false" (or could not
decide), 2 bad input or usage, 3 an internal equivalence failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .constructions import random_space, realize_hamiltonian, realize_min, realize_sphere
from .core import spectrum
from .errors import EquivalenceViolation, ParseError, SizeCapExceeded, UltrametricError
from .extremal import (
    check_chain_balls,
    check_class_U,
    check_injective_internal_labels,
    check_no_equilateral,
    check_sphere_decomposable,
    check_strictly_n_ary,
    check_tsi,
    props_report,
    tsi_counterexample,
)
from .formats import emit_dot, emit_matrix, emit_sexpr, parse_matrix, parse_tree
from .graphs import (
    BRUTE_FORCE_LIMIT,
    constant_weight_hamilton_cycle,
    diametrical_graph,
    diametrical_hamiltonicity_by_parts,
    is_hamiltonian,
    multipartite_parts,
    weighted_clique,
)
from .morphisms import exists_ball_preserving_bijection, is_isometric, is_weakly_similar
from .tree import build_representing_tree, iterate_ballean, space_from_tree

OK, FALSE, INPUT_ERROR, VIOLATION = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_space(path: str, fmt: str | None):
    if fmt is None:
        fmt = "json" if path.endswith(".json") else "csv"
    return parse_matrix(_read(path), fmt)


def _out(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _diametrical_hamiltonian(space) -> bool:
    """Part sizes decide hamiltonicity; brute force confirms up to the limit."""
    graph = diametrical_graph(space)
    by_parts = diametrical_hamiltonicity_by_parts(multipartite_parts(graph))
    if space.n <= BRUTE_FORCE_LIMIT:
        by_search = is_hamiltonian(graph)[0]
        by_weights = constant_weight_hamilton_cycle(weighted_clique(space)) is not None
        if not by_parts == by_search == by_weights:
            raise EquivalenceViolation("hamiltonian diametrical graph", {
                "part_sizes": by_parts, "graph_search": by_search, "constant_weight": by_weights})
    return by_parts


CHECKS = {
    "injective-labels": lambda s, n: check_injective_internal_labels(s),
    "strictly-n-ary": lambda s, n: check_strictly_n_ary(
        s, n if n is not None else max(len(k) for k in build_representing_tree(s).children)),
    "class-u": lambda s, n: check_class_U(s),
    "no-equilateral": lambda s, n: check_no_equilateral(s),
    "sphere": lambda s, n: check_sphere_decomposable(s),
    "chain-balls": lambda s, n: check_chain_balls(s),
    "diametrical-hamiltonian": lambda s, n: _diametrical_hamiltonian(s),
}


def _parse_check_id(text: str):
    name, _, arg = text.partition(":")
    if name not in CHECKS:
        raise UltrametricError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
    n = None
    if arg:
        key, _, val = arg.partition("=")
        if key != "n" or not val.isdigit():
            raise UltrametricError(f"bad check argument {arg!r}; expected n=<int>")
        n = int(val)
    return name, n


def _bool(value: bool) -> int:
    _out("true" if value else "false")
    return OK if value else FALSE


def cmd_validate(args):
    text = _read(args.file)
    fmt = args.format or ("json" if args.file.endswith(".json") else "csv")
    try:
        space = parse_matrix(text, fmt)
    except ParseError:
        raise
    except UltrametricError as exc:
        _out(f"invalid: {exc}")
        return FALSE
    _out(f"valid: {space.n} points")
    return OK


def cmd_spectrum(args):
    _out("\n".join(str(v) for v in spectrum(_load_space(args.file, args.format))))
    return OK


def cmd_tree(args):
    tree = build_representing_tree(_load_space(args.file, args.format))
    _out(emit_dot(tree) if args.dot or args.emit == "dot" else emit_sexpr(tree))
    return OK


def cmd_ballean(args):
    space = _load_space(args.file, args.format)
    tree = build_representing_tree(space)
    for v in tree.preorder:
        members = ",".join(space.points[p] for p in sorted(tree.members[v]))
        _out(f"{{{members}}} {tree.labels[v]}")
    return OK


def cmd_props(args):
    report = props_report(_load_space(args.file, args.format), hamilton_max=args.hamilton_max)
    _out(json.dumps(report.to_dict(), sort_keys=True, indent=2))
    return OK


def cmd_check(args):
    name, n = _parse_check_id(args.check)
    return _bool(CHECKS[name](_load_space(args.file, args.format), n))


def _pair_command(test):
    def run(args):
        a = _load_space(args.a, args.format)
        b = _load_space(args.b, args.format)
        w = test(a, b)
        if w is None:
            _out("false")
            return FALSE
        _out("true")
        for x in sorted(w.point_map):
            _out(f"{a.points[x]} -> {b.points[w.point_map[x]]}")
        if w.spectrum_map is not None:
            for s in sorted(w.spectrum_map):
                _out(f"{s} => {w.spectrum_map[s]}")
        return OK
    return run


def cmd_from_tree(args):
    _out(emit_matrix(space_from_tree(parse_tree(_read(args.file))), args.emit))
    return OK


def cmd_realize(args):
    tree = parse_tree(_read(args.file))
    build = {"min": realize_min, "sphere": realize_sphere, "hamiltonian": realize_hamiltonian}
    result = build[args.kind](tree, args.labels)
    if args.witness:
        _out(emit_sexpr(result.tree_witness))
    _out(emit_matrix(result.space, args.emit))
    return OK if result.target_iso_check else FALSE


def cmd_tsi(args):
    space = _load_space(args.file, args.format)
    if args.oracle:
        other = tsi_counterexample(space)
        if other is None:
            _out("true")
            return OK
        _out("false")
        _out(emit_matrix(other))
        return FALSE
    verdict = check_tsi(space)
    if verdict is None:
        _out("undecided")
        return FALSE
    return _bool(verdict)


def cmd_iterate(args):
    space = _load_space(args.file, args.format)
    try:
        spaces = iterate_ballean(space, args.k, args.cap)
    except SizeCapExceeded as exc:
        for i, s in enumerate(exc.prefix):
            _out(f"step {i}: {s.n} points")
        raise
    for i, s in enumerate(spaces):
        _out(f"step {i}: {s.n} points")
    _out(emit_matrix(spaces[-1], args.emit))
    return OK


def cmd_random(args):
    _out(emit_matrix(random_space(args.n, args.spectrum, args.seed), args.emit))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ultratree", description="Finite ultrametric spaces and their trees.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, func, help_text, before=()):
        sp = sub.add_parser(name, help=help_text)
        for arg, arg_help in before:
            sp.add_argument(arg, help=arg_help)
        sp.add_argument("file", help="matrix file, or - for standard input")
        sp.add_argument("--format", choices=["csv", "json"], help="input format (default: by extension)")
        sp.set_defaults(func=func)
        return sp

    with_file("validate", cmd_validate, "check the ultrametric axioms")
    with_file("spectrum", cmd_spectrum, "list the distinct distances")
    sp = with_file("tree", cmd_tree, "print the representing tree")
    sp.add_argument("--dot", action="store_true", help="emit DOT")
    sp.add_argument("--emit", choices=["sexpr", "dot"], default="sexpr")
    with_file("ballean", cmd_ballean, "list all balls with their diameters")
    sp = with_file("props", cmd_props, "JSON report of every characterization")
    sp.add_argument("--hamilton-max", type=int, default=8,
                    help="largest subset size for the Hamilton cycle side (default 8)")
    with_file("check", cmd_check, "run one characterization",
              before=[("check", f"one of {', '.join(CHECKS)}; strictly-n-ary takes :n=<int>")])
    sp = with_file("tsi", cmd_tsi, "decide whether tree shape and spectrum fix the space")
    sp.add_argument("--oracle", action="store_true", help="enumerate competing labelings")
    sp = with_file("iterate-ballean", cmd_iterate, "iterate the Hausdorff ballean")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--cap", type=int, default=200)
    sp.add_argument("--emit", choices=["csv", "json"], default="csv")

    for name, test, text in (("isometric", is_isometric, "test isometry"),
                             ("weaksim", is_weakly_similar, "test weak similarity"),
                             ("ball-iso", exists_ball_preserving_bijection,
                              "test for a ball-preserving bijection")):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("a")
        sp.add_argument("b")
        sp.add_argument("--format", choices=["csv", "json"])
        sp.set_defaults(func=_pair_command(test))

    sp = sub.add_parser("from-tree", help="the space of a labeled tree")
    sp.add_argument("file")
    sp.add_argument("--emit", choices=["csv", "json"], default="csv")
    sp.set_defaults(func=cmd_from_tree)

    sp = sub.add_parser("realize", help="a space whose tree of nonsingular balls is the given tree")
    sp.add_argument("kind", choices=["min", "sphere", "hamiltonian"])
    sp.add_argument("file")
    sp.add_argument("--labels", choices=["depth", "injective"], default="depth")
    sp.add_argument("--witness", action="store_true", help="also print the labeled tree used")
    sp.add_argument("--emit", choices=["csv", "json"], default="csv")
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("random", help="a seeded random space")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--spectrum", type=int, required=True, help="number of distinct distances, 0 included")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--emit", choices=["csv", "json"], default="csv")
    sp.set_defaults(func=cmd_random)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except EquivalenceViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return VIOLATION
    except (UltrametricError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
