"""Command-line front end.

Exit codes: 0 yes/pass/success, 1 no/fail, 2 usage or input error, 3 time limit.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .constructions import anchored_to_tile, cross_compose, gen_anchored_pair, gen_diag_sep_tile
from .graph import AnchoredGraph, GraphError, Multigraph, expand_weights
from .solver import TimeLimitExceeded, apply_planarization, solve
from .solver.spec import Instance
from .tcx import export_dot, parse_tcx, parse_witness, write_tcx, write_witness
from .tiles import Tile, invert_left, invert_right, join_seq, validate_diag_sep
from .verify import CLAIMS, FAIL, run_suite

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_TIME = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> Instance:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return parse_tcx(text)
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _expect(obj: Instance, kind: type, path: str) -> Instance:
    if not isinstance(obj, kind):
        names = {Multigraph: "graph", Tile: "tile", AnchoredGraph: "anchored graph"}
        raise InputError(f"{path}: expected a {names[kind]} document")
    return obj


def _solve_cmd(label: str, inst: Instance, args: argparse.Namespace) -> int:
    res = solve(inst, args.max_k)
    if res.value is None:
        print(f"{label} > {args.max_k}")
        return EXIT_NO
    print(f"{label} = {res.value}")
    text = write_witness(res.witness)
    sys.stdout.write(text)
    if args.witness_out:
        Path(args.witness_out).write_text(text)
    return EXIT_OK


def cmd_cr(args: argparse.Namespace) -> int:
    obj = _read(args.file)
    g = obj if isinstance(obj, Multigraph) else obj.graph
    return _solve_cmd("cr", g, args)


def cmd_tcr(args: argparse.Namespace) -> int:
    t = _expect(_read(args.file), Tile, args.file)
    if args.invert_right:
        t = invert_right(t)
    if args.invert_left:
        t = invert_left(t)
    return _solve_cmd("tcr", t, args)


def cmd_acr(args: argparse.Namespace) -> int:
    return _solve_cmd("acr", _expect(_read(args.file), AnchoredGraph, args.file), args)


def cmd_join(args: argparse.Namespace) -> int:
    tiles = [_expect(_read(f), Tile, f) for f in args.files]
    _emit(write_tcx(join_seq(tiles)), args.output)
    return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
    obj = _read(args.file)
    g = obj if isinstance(obj, Multigraph) else obj.graph
    ex = expand_weights(g).graph
    _emit(write_tcx(ex if isinstance(obj, Multigraph) else obj.with_graph(ex)), args.output)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    t = _expect(_read(args.file), Tile, args.file)
    report = validate_diag_sep(t)
    if report.witness is None:
        for v in report.violations:
            print(f"violation: {v}")
        return EXIT_NO
    w = report.witness
    print(f"ok: t={w.t} w1={w.w1} w2={w.w2} Q={' '.join(w.q_path)}")
    return EXIT_OK


def cmd_build(args: argparse.Namespace) -> int:
    if args.what == "anchored-to-tile":
        if len(args.files) != 1:
            raise InputError("anchored-to-tile takes exactly one FILE")
        a = _expect(_read(args.files[0]), AnchoredGraph, args.files[0])
        tile, w = anchored_to_tile(a)
        _emit(f"# t={w.t} w1={w.w1} w2={w.w2}\n" + write_tcx(tile), args.output)
        return EXIT_OK
    if args.k is None:
        raise InputError("cross-compose needs --k")
    tiles = [_expect(_read(f), Tile, f) for f in args.files]
    inst = cross_compose(tiles, args.k)
    head = f"# k={inst.k} e1={inst.e1} c0={' '.join(map(str, inst.c0_edges))}\n"
    _emit(head + write_tcx(inst.graph), args.output)
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    if args.size < 1:
        raise InputError("--size must be at least 1")
    if args.what == "anchored":
        obj: Instance = gen_anchored_pair(args.seed, args.size, args.size)
    else:
        obj = gen_diag_sep_tile(args.seed, args.size, args.size)
    _emit(write_tcx(obj), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    reports = run_suite(args.claim, args.seed, args.count, args.max_k)
    for r in reports:
        print(r.to_json())
    return EXIT_NO if any(r.verdict == FAIL for r in reports) else EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    obj = _read(args.file)
    try:
        spec = parse_witness(Path(args.witness).read_text())
    except OSError as exc:
        raise InputError(f"{args.witness}: {exc.strerror}") from None
    g = obj if isinstance(obj, Multigraph) else obj.graph
    _emit(export_dot(apply_planarization(g, spec), obj), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tilecross", description="Exact crossing numbers of graphs, tiles and anchored graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def solver(name: str, fn, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file")
        sp.add_argument("--max-k", type=int, required=True, dest="max_k")
        sp.add_argument("--witness-out", dest="witness_out")
        sp.set_defaults(func=fn)
        return sp

    solver("cr", cmd_cr, "crossing number of a graph")
    tcr = solver("tcr", cmd_tcr, "tile crossing number")
    inv = tcr.add_mutually_exclusive_group()
    inv.add_argument("--invert-right", action="store_true", dest="invert_right")
    inv.add_argument("--invert-left", action="store_true", dest="invert_left")
    solver("acr", cmd_acr, "anchored crossing number")

    sp = sub.add_parser("join", help="join tiles left to right")
    sp.add_argument("files", nargs="+")
    sp.add_argument("-o", dest="output")
    sp.set_defaults(func=cmd_join)

    sp = sub.add_parser("expand", help="replace weighted edges by parallel unit edges")
    sp.add_argument("file")
    sp.add_argument("-o", dest="output")
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("validate-diagsep", help="check diagonal separation of a tile")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("build", help="gadget constructions")
    sp.add_argument("what", choices=["anchored-to-tile", "cross-compose"])
    sp.add_argument("files", nargs="+")
    sp.add_argument("--k", type=int)
    sp.add_argument("-o", dest="output")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("gen", help="seeded instance generators")
    sp.add_argument("what", choices=["anchored", "diagsep"])
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("-o", dest="output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", help="seeded checks of the construction claims")
    sp.add_argument("claim", choices=CLAIMS)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--max-k", type=int, default=3, dest="max_k")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("export", help="render a planarization")
    sp.add_argument("file")
    sp.add_argument("--witness", required=True)
    sp.add_argument("--format", choices=["dot"], default="dot")
    sp.add_argument("-o", dest="output")
    sp.set_defaults(func=cmd_export)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("max_k", "k", "count"):
        if getattr(args, name, None) is not None and getattr(args, name) < 0:
            print(f"tilecross: error: --{name.replace('_', '-')} must be nonnegative", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except TimeLimitExceeded as exc:
        print(f"tilecross: {exc}", file=sys.stderr)
        return EXIT_TIME
    except (InputError, GraphError, ValueError) as exc:
        print(f"tilecross: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
