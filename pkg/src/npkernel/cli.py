"""``npkernel`` command line.

Exit codes: 0 success, 1 bad input (flags, dataset files), 2 computation failure.
"""
from __future__ import annotations

import argparse
import itertools
import logging
import sys
from pathlib import Path

from . import bench as bench_mod
from .base import BaseKernelSpec
from .engine import WORKERS_ENV, format_csv, gram, resolve_workers, write_gram_binary, write_timing
from .graph import GraphValidationError
from .kernels import KernelConfig, npe_pair, npo_pair
from .nps import nps_pair
from .oracle import OracleReport, brute_npe, brute_npo, brute_nps
from .product import build_product, partition_to_dot, product_to_dot, prune_product
from .synthetic import generate_planted, generate_synthetic
from .tu import TUFormatError, parse_tu_dataset, write_tu_dataset
from .wl import dump_colorings, refine

log = logging.getLogger("npkernel")


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _floats(text):
    return [float(t) for t in text.split(",") if t.strip()]


def _ints(text):
    return [int(t) for t in text.split(",") if t.strip()]


def _add_kernel_flags(p, kernel="np"):
    p.add_argument("--kernel", choices=["npe", "npo", "np", "nps"], default=kernel)
    p.add_argument("--h", type=int, default=2, help="WL refinement rounds (default 2)")
    p.add_argument("--alpha", type=float, default=0.5, help="NPE weight in the NP kernel (default 0.5)")
    p.add_argument("--base", choices=["gaussian", "linear", "unit"], default="gaussian")
    p.add_argument("--beta", type=float, default=None, help="gaussian width (default 1/d)")
    p.add_argument("--scheme", choices=["global", "pairwise"], default="global")
    p.add_argument("--include-level0", action="store_true")
    p.add_argument("--normalize", action="store_true", help="cosine-normalize the Gram matrix")
    p.add_argument("--nps-normalize", action="store_true")
    p.add_argument("--max-path-len", type=int, default=None)
    p.add_argument("--edge-budget", type=int, default=None, help="abort pairwise products above this many edges")
    p.add_argument("--workers", type=int, default=None, help=f"worker processes (default ${WORKERS_ENV} or 1)")


def _config(args) -> KernelConfig:
    try:
        return KernelConfig(
            kernel=args.kernel,
            h=args.h,
            alpha=args.alpha,
            base=BaseKernelSpec(args.base, args.beta),
            include_level0=args.include_level0,
            scheme=args.scheme,
            normalize_gram=args.normalize,
            nps_normalize=args.nps_normalize,
            max_path_len=args.max_path_len,
            edge_budget=args.edge_budget,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _load(args):
    try:
        return parse_tu_dataset(args.dataset, args.name)
    except (OSError, TUFormatError, GraphValidationError) as exc:
        raise InputError(f"cannot read dataset {args.dataset}: {exc}") from None


def cmd_gram(args) -> int:
    config = _config(args)
    ds = _load(args)
    gm = gram(ds, config, workers=args.workers)
    if args.format == "csv":
        text = format_csv(gm)
        if args.output in (None, "-"):
            sys.stdout.write(text)
        else:
            Path(args.output).write_text(text)
    else:
        if args.output in (None, "-"):
            raise InputError("--format binary needs --output")
        write_gram_binary(gm, args.output)
    timing = args.timing or (None if args.output in (None, "-") else f"{args.output}.timing.json")
    if timing:
        write_timing(gm, timing)
    if args.dump_colors:
        with open(args.dump_colors, "w") as fh:
            dump_colorings(ds, refine(ds, config.h), fh)
    return 0


def cmd_bench(args) -> int:
    config = _config(args)
    workers = resolve_workers(args.workers)
    if args.dataset:
        rows = [bench_mod.bench_dataset(_load(args), config, workers=workers, repeats=args.repeats)]
    else:
        if args.seed is None:
            raise InputError("bench on synthetic data needs --seed")
        rows = bench_mod.bench_grid(
            _floats(args.densities), _ints(args.alphabets), args.graphs, args.nodes,
            args.seed, config, attribute_dim=args.dim, workers=workers, repeats=args.repeats,
        )
    if args.output in (None, "-"):
        bench_mod.write_rows(rows, sys.stdout)
    else:
        with open(args.output, "w") as fh:
            bench_mod.write_rows(rows, fh)
    return 0


def cmd_synth(args) -> int:
    try:
        if args.planted_shift is None:
            ds = generate_synthetic(args.graphs, args.nodes, args.density, args.labels, args.dim, args.seed, args.name)
        else:
            ds = generate_planted(
                args.graphs, args.nodes, args.density, args.labels, args.dim, args.planted_shift, args.seed, args.name
            )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    write_tu_dataset(ds, args.out, args.name)
    print(f"wrote {len(ds)} graphs to {args.out}", file=sys.stderr)
    return 0


def cmd_validate(args) -> int:
    config = _config(args)
    if args.dataset:
        ds = _load(args)
    else:
        if args.seed is None:
            raise InputError("validate on synthetic data needs --seed or --dataset")
        ds = generate_synthetic(args.graphs, args.nodes, args.density, args.labels, args.dim, args.seed)
    colors = refine(ds, config.h)
    pairs = list(itertools.combinations_with_replacement(range(len(ds)), 2))[: args.pairs]
    report = OracleReport()
    base = config.base
    for i, j in pairs:
        g, g2, c, c2 = ds[i], ds[j], colors[i], colors[j]
        lv0 = config.include_level0
        if config.kernel == "npo":
            ref, prod = brute_npo(g, g2, config.h, lv0), npo_pair(g, g2, c, c2, config)
        elif config.kernel == "nps":
            ref = brute_nps(g, g2, config.h, base, lv0, config.max_path_len, config.nps_normalize)
            prod = nps_pair(g, g2, c, c2, config)
        elif config.kernel == "npe":
            ref, prod = brute_npe(g, g2, config.h, base, lv0), npe_pair(g, g2, c, c2, config)
        else:
            a = config.alpha
            ref = a * brute_npe(g, g2, config.h, base, lv0) + (1 - a) * brute_npo(g, g2, config.h, lv0)
            prod = a * npe_pair(g, g2, c, c2, config) + (1 - a) * npo_pair(g, g2, c, c2, config)
        report.add((i, j), ref, prod)
    print(report.format())
    return 0 if report.max_error <= args.tol else 2


def cmd_inspect(args) -> int:
    ds = _load(args)
    i, j = args.graphs
    for x in (i, j):
        if not 0 <= x < len(ds):
            raise InputError(f"unknown graph id {x}; dataset has {len(ds)} graphs")
    colors = refine(ds, args.h)
    start = 0 if args.include_level0 else 1
    pg = build_product(ds[i], ds[j], colors[i], colors[j], start)
    parts = []
    for level in range(start, args.h + 1):
        if level > pg.level:
            pg = prune_product(pg, colors[i].colors(level), colors[j].colors(level))
        parts.append(partition_to_dot(pg, f"partition_level{level}"))
        parts.append(product_to_dot(pg, f"product_level{level}"))
    text = "".join(parts)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="npkernel", description="Neighborhood preserving graph kernels")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gram", help="compute a Gram matrix for a TU dataset")
    g.add_argument("--dataset", required=True, help="directory holding the TU files")
    g.add_argument("--name", default=None, help="dataset name (default: inferred from *_A.txt)")
    _add_kernel_flags(g)
    g.add_argument("--format", choices=["csv", "binary"], default="csv")
    g.add_argument("--output", default=None)
    g.add_argument("--timing", default=None, help="timing JSON path (default <output>.timing.json)")
    g.add_argument("--dump-colors", default=None, help="write 'graph level node color' rows here")
    g.set_defaults(func=cmd_gram)

    b = sub.add_parser("bench", help="time the pairwise and global schemes")
    b.add_argument("--dataset", default=None)
    b.add_argument("--name", default=None)
    b.add_argument("--seed", type=int, default=None)
    b.add_argument("--densities", default="0.1,0.2,0.3,0.4")
    b.add_argument("--alphabets", default="2,3,4")
    b.add_argument("--graphs", type=int, default=30)
    b.add_argument("--nodes", type=int, default=60)
    b.add_argument("--dim", type=int, default=1)
    b.add_argument("--repeats", type=int, default=1, help="keep the best of this many runs per scheme")
    b.add_argument("--output", default=None)
    _add_kernel_flags(b)
    b.set_defaults(func=cmd_bench)

    s = sub.add_parser("synth", help="write a synthetic dataset in TU format")
    s.add_argument("--graphs", type=int, required=True)
    s.add_argument("--nodes", type=int, required=True)
    s.add_argument("--density", type=float, required=True)
    s.add_argument("--labels", type=int, default=2)
    s.add_argument("--dim", type=int, default=1)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--planted-shift", type=float, default=None, help="two classes, attributes shifted in class 1")
    s.add_argument("--out", required=True)
    s.add_argument("--name", default="synthetic")
    s.set_defaults(func=cmd_synth)

    v = sub.add_parser("validate", help="compare production kernels with brute-force references")
    v.add_argument("--dataset", default=None)
    v.add_argument("--name", default=None)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--graphs", type=int, default=6)
    v.add_argument("--nodes", type=int, default=10)
    v.add_argument("--density", type=float, default=0.3)
    v.add_argument("--labels", type=int, default=2)
    v.add_argument("--dim", type=int, default=2)
    v.add_argument("--pairs", type=int, default=20)
    v.add_argument("--tol", type=float, default=1e-12)
    _add_kernel_flags(v)
    v.set_defaults(func=cmd_validate)

    n = sub.add_parser("inspect", help="DOT rendering of colorings, product graphs and NP edges of two graphs")
    n.add_argument("--dataset", required=True)
    n.add_argument("--name", default=None)
    n.add_argument("--graphs", type=int, nargs=2, required=True, metavar=("I", "J"))
    n.add_argument("--h", type=int, default=2)
    n.add_argument("--include-level0", action="store_true")
    n.add_argument("--output", default=None)
    n.set_defaults(func=cmd_inspect)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"npkernel: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - any failure past input parsing is a compute error
        print(f"npkernel: computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
