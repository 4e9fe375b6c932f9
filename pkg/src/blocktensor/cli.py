"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import bench, verify
from .blocking import Blocking, block_unfold
from .contraction import (
    BlockedContractionPlan,
    ContractionPlan,
    contract_blocked,
    contract_naive,
    contract_unfolded,
)
from .errors import BlockingError, PlanError, ShapeError, TensorFormatError
from .figure import figure
from .permutation import perfect_shuffle
from .textio import format_matrix, read_tensor, write_tensor
from .unfolding import unfold


class UsageError(Exception):
    pass


def _modes(text: str) -> list[int]:
    """Parse a mode list such as ``"1 3"`` or ``"1,3"``; empty means no modes."""
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of modes: {text!r}") from None


def _open_out(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w"), True


def cmd_verify(args) -> int:
    results = verify.run_suite(args.seed, scale=args.scale)
    sys.stdout.write(verify.format_report(results, args.seed))
    return 0 if all(r.ok for r in results) else 1


def cmd_unfold(args) -> int:
    A = read_tensor(args.input)
    U = unfold(A, args.r, args.c)
    out, close = _open_out(args.output)
    try:
        out.write(f"# {U.matrix.shape[0]}x{U.matrix.shape[1]} unfolding r={list(U.spec.r)} c={list(U.spec.c)}\n")
        out.write(format_matrix(U.matrix))
    finally:
        if close:
            out.close()
    return 0


def cmd_block_unfold(args) -> int:
    A = read_tensor(args.input)
    M = A.blocking if A.blocking is not None else Blocking.trivial(A.shape)
    bu = block_unfold(A, M, args.r, args.c)
    out, close = _open_out(args.output)
    try:
        out.write("rows: " + " ".join(map(str, bu.layout.row_sizes.tolist())) + "\n")
        out.write("cols: " + " ".join(map(str, bu.layout.col_sizes.tolist())) + "\n")
        out.write(format_matrix(bu.matrix))
    finally:
        if close:
            out.close()
    return 0


def cmd_contract(args) -> int:
    F, G = read_tensor(args.F), read_tensor(args.G)
    p = args.p or list(range(1, F.order + 1))
    q = args.q or list(range(1, G.order + 1))
    plan = ContractionPlan(p, q, args.f)
    if args.method == "naive":
        H = contract_naive(F, G, plan)
    elif args.method == "unfolded":
        H = contract_unfolded(F, G, plan)
    else:
        S = F.blocking if F.blocking is not None else Blocking.trivial(F.shape)
        T = G.blocking if G.blocking is not None else Blocking.trivial(G.shape)
        H = contract_blocked(F, G, BlockedContractionPlan(plan, S, T))
    out, close = _open_out(args.output)
    try:
        write_tensor(H, out)
    finally:
        if close:
            out.close()
    return 0


def cmd_shuffle(args) -> int:
    sys.stdout.write(" ".join(map(str, perfect_shuffle(args.q, args.r).tolist())) + "\n")
    return 0


def cmd_figure(args) -> int:
    A = read_tensor(args.input)
    if A.blocking is None:
        raise UsageError("figure needs a tensor file with blocking lines")
    if not 1 <= args.mode <= A.order:
        raise UsageError(f"--mode must be in 1..{A.order}")
    views = {"plain": [False], "blocked": [True], "both": [False, True]}[args.view]
    sys.stdout.write("\n".join(figure(A, args.mode, blocked) for blocked in views))
    return 0


def cmd_bench(args) -> int:
    cfg = bench.load_config(args.spec) if args.spec else dict(bench.DEFAULTS)
    out, close = _open_out(args.output)
    try:
        bench.write_csv(bench.run(cfg), out)
    finally:
        if close:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="blocktensor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the randomized self-check suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", type=float, default=1.0, help="multiply instance counts")
    p.set_defaults(func=cmd_verify)

    for name, func, helptext in (
        ("unfold", cmd_unfold, "write the r x c unfolding of a tensor file"),
        ("block-unfold", cmd_block_unfold, "write the block unfolding with its block grid"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--r", type=_modes, required=True, help='row modes, e.g. "1 3"')
        p.add_argument("--c", type=_modes, required=True, help='column modes, e.g. "2"')
        p.add_argument("input")
        p.add_argument("output", nargs="?", default="-")
        p.set_defaults(func=func)

    p = sub.add_parser("contract", help="contract two tensor files")
    p.add_argument("--p", type=_modes, default=None, help="mode permutation of F")
    p.add_argument("--q", type=_modes, default=None, help="mode permutation of G")
    p.add_argument("--f", type=int, required=True, help="number of free modes of F")
    p.add_argument("--method", choices=["naive", "unfolded", "blocked"], default="unfolded")
    p.add_argument("F")
    p.add_argument("G")
    p.add_argument("output", nargs="?", default="-")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("shuffle", help="print the (q, r) perfect shuffle vector")
    p.add_argument("q", type=int)
    p.add_argument("r", type=int)
    p.set_defaults(func=cmd_shuffle)

    p = sub.add_parser("figure", help="ASCII map of blocks in a mode-k unfolding")
    p.add_argument("--mode", type=int, default=1)
    p.add_argument("--view", choices=["plain", "blocked", "both"], default="both")
    p.add_argument("input")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("bench", help="CSV timings of the contraction methods")
    p.add_argument("--spec", default=None, help="JSON sweep configuration")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, TensorFormatError, ShapeError, BlockingError, PlanError,
            ValueError, IndexError, OSError) as exc:
        sys.stderr.write(f"blocktensor {args.command}: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
