"""Command line front end for the factorized cosine transforms.

Subcommands: ``transform`` applies a built factorization to vectors read
one per line, ``verify`` cross-checks it against the dense definition
matrices on random inputs, ``count`` tabulates operation counts,
``graph`` writes DOT or listing renderings of the lowered program, and
``bench`` times the factorized apply against a dense matrix-vector
multiply.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from contextlib import ExitStack
from pathlib import Path
from typing import IO, Sequence

import numpy as np

from .chebyshev import ref_matrix
from .factorize import build_dct2, build_dct2_bar
from .flowgraph import emit_dot, emit_listing, lower
from .formula import apply, op_count

__all__ = ["build_parser", "main"]


def _power_of_two(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1 or value & (value - 1):
        raise argparse.ArgumentTypeError(f"{value} is not a power of two")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def format_value(value: float) -> str:
    """Shortest decimal that reads back to the same float; integral values
    drop the trailing '.0'."""
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


def _build(n: int, bar: bool):
    return build_dct2_bar(n) if bar else build_dct2(n)


def _transform_stream(args: argparse.Namespace, fin: IO[str], fout: IO[str]) -> int:
    node = _build(args.n, args.bar)
    dense = ref_matrix("dct2bar" if args.bar else "dct2", args.n) if args.naive else None
    for line_no, line in enumerate(fin, start=1):
        fields = line.split()
        if not fields:
            continue
        try:
            vec = np.array([float(f) for f in fields], dtype=float)
        except ValueError:
            print(f"line {line_no}: cannot parse as numbers: {line.strip()!r}",
                  file=sys.stderr)
            return 1
        if vec.shape[0] != args.n:
            print(f"line {line_no}: expected {args.n} values, got {vec.shape[0]}",
                  file=sys.stderr)
            return 1
        if not np.isfinite(vec).all():
            print(f"line {line_no}: non-finite value", file=sys.stderr)
            return 1
        y = dense @ vec if dense is not None else apply(node, vec)
        fout.write(" ".join(format_value(v) for v in y) + "\n")
    return 0


def _cmd_transform(args: argparse.Namespace) -> int:
    with ExitStack() as stack:
        fin = stack.enter_context(open(args.input)) if args.input else sys.stdin
        fout = stack.enter_context(open(args.output, "w")) if args.output else sys.stdout
        return _transform_stream(args, fin, fout)


def _cmd_verify(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    overall = 0.0
    for k in range(1, args.max_log2 + 1):
        n = 2 ** k
        for kind, bar in (("dct2", False), ("dct2bar", True)):
            node = _build(n, bar)
            dense = ref_matrix(kind, n)
            worst = 0.0
            for _ in range(args.trials):
                x = rng.uniform(-1.0, 1.0, n)
                y_ref = dense @ x
                y_fast = apply(node, x)
                scale = float(np.max(np.abs(y_ref))) or 1.0
                err = float(np.max(np.abs(y_fast - y_ref))) / scale
                worst = max(worst, err)
            print(f"{kind:<8s} n={n:<5d} trials={args.trials:<6d} "
                  f"max_rel_err={worst:.3e}")
            overall = max(overall, worst)
    passed = overall <= args.tolerance
    print(f"overall  max_rel_err={overall:.3e} tolerance={args.tolerance:.3e} "
          f"{'PASS' if passed else 'FAIL'}")
    return 0 if passed else 1


def _count_rows(max_log2: int) -> list[tuple[int, int, int, int, int]]:
    table = []
    for k in range(1, max_log2 + 1):
        n = 2 ** k
        core = op_count(build_dct2_bar(n)).mults
        full = op_count(build_dct2(n))
        table.append((n, core, n - 1, full.mults, full.adds))
    return table


def _cmd_count(args: argparse.Namespace) -> int:
    header = ("n", "core_mults", "scaling_mults", "total_mults", "adds")
    table = _count_rows(args.max_log2)
    if args.format == "csv":
        writer = csv.writer(sys.stdout)
        writer.writerow(header)
        writer.writerows(table)
        return 0
    widths = [max(len(h), *(len(str(row[i])) for row in table))
              for i, h in enumerate(header)]
    print("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    for row in table:
        print("  ".join(str(v).rjust(w) for v, w in zip(row, widths)))
    return 0


def _cmd_graph(args: argparse.Namespace) -> int:
    prog = lower(_build(args.n, args.bar))
    if args.listing:
        text = emit_listing(prog)
    else:
        name = ("dct2bar" if args.bar else "dct2") + str(args.n)
        text = emit_dot(prog, name=name)
    Path(args.out).write_text(text, encoding="ascii")
    return 0


def _time_loop(fn, iters: int) -> float:
    """Best-of-three timing, reported as microseconds per call."""
    fn()
    best = float("inf")
    for _ in range(3):
        start = time.perf_counter()
        for _ in range(iters):
            fn()
        best = min(best, time.perf_counter() - start)
    return best / iters * 1e6


def _cmd_bench(args: argparse.Namespace) -> int:
    node = build_dct2(args.n)
    dense = ref_matrix("dct2", args.n)
    rng = np.random.default_rng(0)
    x = rng.uniform(-1.0, 1.0, args.n)
    fast_us = _time_loop(lambda: apply(node, x), args.iters)
    dense_us = _time_loop(lambda: dense @ x, args.iters)
    print(f"n={args.n} iters={args.iters}")
    print(f"factorized apply:    {fast_us:10.3f} us/op")
    print(f"dense matrix-vector: {dense_us:10.3f} us/op")
    print(f"ratio fast/dense:    {fast_us / dense_us:10.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dctfactor",
        description="Factorized DCT-2 evaluation, verification, op counts and flow graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="apply the transform to vectors, one per line")
    t.add_argument("--n", type=_power_of_two, required=True,
                   help="transform size (power of two)")
    t.add_argument("--bar", action="store_true",
                   help="use the unscaled polynomial transform")
    t.add_argument("--input", metavar="FILE", help="input file (default: stdin)")
    t.add_argument("--output", metavar="FILE", help="output file (default: stdout)")
    t.add_argument("--naive", action="store_true",
                   help="multiply by the dense definition matrix instead")
    t.set_defaults(handler=_cmd_transform)

    v = sub.add_parser("verify", help="compare the factorization against the dense oracle")
    v.add_argument("--max-log2", dest="max_log2", type=_positive_int, required=True,
                   help="verify sizes 2..2^K")
    v.add_argument("--trials", type=_positive_int, required=True,
                   help="random vectors per size")
    v.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    v.add_argument("--tolerance", type=float, default=1e-10,
                   help="max relative error allowed (default 1e-10)")
    v.set_defaults(handler=_cmd_verify)

    c = sub.add_parser("count", help="print operation-count rows for sizes 2..2^K")
    c.add_argument("--max-log2", dest="max_log2", type=_positive_int, required=True)
    c.add_argument("--format", choices=("table", "csv"), default="table")
    c.set_defaults(handler=_cmd_count)

    g = sub.add_parser("graph", help="write the flow graph (DOT) or text listing")
    g.add_argument("--n", type=_power_of_two, required=True)
    g.add_argument("--bar", action="store_true",
                   help="use the unscaled polynomial transform")
    g.add_argument("--out", required=True, metavar="FILE")
    g.add_argument("--listing", action="store_true",
                   help="write the instruction listing instead of DOT")
    g.set_defaults(handler=_cmd_graph)

    b = sub.add_parser("bench", help="time factorized apply vs dense multiply")
    b.add_argument("--n", type=_power_of_two, required=True)
    b.add_argument("--iters", type=_positive_int, required=True)
    b.set_defaults(handler=_cmd_bench)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    raise SystemExit(main())
