"""Command-line interface.

Commands: validate, dim, scan, cover, bounds, norm-decay.  Exit codes:
0 success, 1 invalid geometry, 2 parse error, 3 refusal (half-plane or
memory-budget guards).  All artifacts land in --out (or $SCHOTTKY_LAB_OUT),
together with a manifest recording inputs, seeds, version and wall time.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .artifacts import (
    BOUNDS_COLUMNS,
    EXPERIMENT_COLUMNS,
    NORM_DECAY_COLUMNS,
    SCAN_COLUMNS,
    ZEROS_COLUMNS,
    RunWriter,
)
from .bergman import BergmanBasis, TransferKernel, trivial_rep
from .dimension import bowen_dim
from .norm_bounds import (
    BlockBudgetError,
    CompressedRegularRep,
    buchholz_bound,
    compressed_limit_norm,
)
from .random_reps import rep0_matrices, sample_hom
from .scanner import ScanConfig, TwistedPower, cover_experiment, scan_zeros
from .schottky import SchottkyDataError, load_schottky, validate_schottky

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_REFUSED = 3


class Refusal(RuntimeError):
    pass


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="schottky-lab",
        description="Transfer-operator numerics for Fuchsian Schottky groups",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("schottky_file", help="JSON Schottky data file")
    common.add_argument(
        "--out",
        default=os.environ.get("SCHOTTKY_LAB_OUT", "out"),
        help="output directory (default $SCHOTTKY_LAB_OUT or ./out)",
    )
    common.add_argument("--jobs", type=int, default=1, help="worker parallelism")
    common.add_argument("--seed", type=int, default=0, help="master random seed")
    common.add_argument(
        "--truncation", type=int, default=16, help="per-disk basis degree M"
    )
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="check the ping-pong conditions")

    d = sub.add_parser("dim", parents=[common], help="limit-set dimension")
    d.add_argument("--tol", type=float, default=1e-10)

    rect = argparse.ArgumentParser(add_help=False)
    rect.add_argument("--re-min", type=float, required=True)
    rect.add_argument("--re-max", type=float, required=True)
    rect.add_argument("--im-min", type=float, default=-1.0)
    rect.add_argument("--im-max", type=float, default=1.0)
    rect.add_argument("--grid", default="", help="cells as N_RExN_IM (default by density)")
    rect.add_argument("--ell", type=int, default=4, help="power for norm certificates")
    rect.add_argument("--refine-tol", type=float, default=1e-8)

    s = sub.add_parser("scan", parents=[common, rect], help="locate determinant zeros")
    s.add_argument("--cover-n", type=int, default=0, help="twist by a sampled degree-n cover")
    s.add_argument(
        "--certify", action="store_true",
        help="try a norm certificate first; a certified window skips the walk",
    )

    c = sub.add_parser("cover", parents=[common, rect], help="random-cover experiment")
    c.add_argument("--n", default="20,50,100", help="comma-separated cover degrees")
    c.add_argument("--trials", type=int, default=50)

    b = sub.add_parser("bounds", parents=[common], help="split-block norm bounds")
    b.add_argument("--s-re", type=float, required=True)
    b.add_argument("--s-im", type=float, default=0.0)
    b.add_argument("--ell-min", type=int, default=2)
    b.add_argument("--ell-max", type=int, default=6)
    b.add_argument("--radius", type=int, default=6, help="compression ball radius")
    b.add_argument("--compressed-max-ell", type=int, default=4)

    nd = sub.add_parser(
        "norm-decay", parents=[common], help="twisted power norms against ell"
    )
    nd.add_argument("--s-re", type=float, required=True)
    nd.add_argument("--s-im", type=float, default=0.0)
    nd.add_argument("--ell-max", type=int, default=8)
    nd.add_argument("--cover-n", type=int, default=100)
    nd.add_argument("--with-bounds", action="store_true")

    return p


def _scan_config(args, delta: float | None = None) -> ScanConfig:
    n_re = n_im = 0
    if args.grid:
        try:
            a, b = args.grid.lower().split("x")
            n_re, n_im = int(a), int(b)
        except ValueError as exc:
            raise Refusal(f"bad --grid {args.grid!r}; expected N_RExN_IM") from exc
    try:
        return ScanConfig(
            re_min=args.re_min,
            re_max=args.re_max,
            im_min=args.im_min,
            im_max=args.im_max,
            n_re=n_re,
            n_im=n_im,
            ell_power=args.ell,
            refine_tol=args.refine_tol,
            seed=args.seed,
        )
    except ValueError as exc:
        raise Refusal(f"half-plane: {exc}") from exc


def cmd_validate(args) -> int:
    data = load_schottky(args.schottky_file)
    report = validate_schottky(data)
    writer = RunWriter(args.out, "validate", {"file": args.schottky_file}, [args.schottky_file])
    writer.json("validation.json", report.to_dict())
    writer.finish()
    print(f"schottky data: rank {report.n_gens}, margin {report.margin:.6g}, "
          f"max mapping residual {report.max_mapping_residual:.3g}")
    if report.ok:
        print("valid: both ping-pong conditions hold")
        return EXIT_OK
    for msg in report.fatal + report.failures:
        print(f"FAIL: {msg}")
    return EXIT_INVALID


def cmd_dim(args) -> int:
    data = load_schottky(args.schottky_file)
    basis = BergmanBasis(data, degree=args.truncation)
    res = bowen_dim(basis, tol=args.tol)
    writer = RunWriter(
        args.out,
        "dim",
        {"file": args.schottky_file, "tol": args.tol, "truncation": args.truncation},
        [args.schottky_file],
    )
    writer.json(
        "dim.json",
        {
            "delta": res.delta,
            "residual": res.residual,
            "degree": res.degree,
            "bracket": list(res.bracket),
        },
    )
    writer.finish()
    print(f"delta = {res.delta:.12f}  (|lambda-1| = {res.residual:.3g}, "
          f"bracket [{res.bracket[0]:.6g}, {res.bracket[1]:.6g}], M = {res.degree})")
    return EXIT_OK


def cmd_scan(args) -> int:
    data = load_schottky(args.schottky_file)
    basis = BergmanBasis(data, degree=args.truncation)
    config = _scan_config(args)
    kernel = TransferKernel(basis, 1)
    if args.cover_n:
        rep = sample_hom(args.cover_n, data.n_gens, args.seed)
        rho = rep0_matrices(rep)
    else:
        rep = None
        rho = trivial_rep(data)
    from .scanner import DetCache, scan_with_certificate

    cache = DetCache(kernel, np.asarray(rho, dtype=complex))
    if args.certify:
        report = scan_with_certificate(config, rep, basis, kernel=kernel)
    else:
        report = scan_zeros(config, rho, basis, kernel=kernel, cache=cache)
    writer = RunWriter(
        args.out,
        "scan",
        {
            "file": args.schottky_file,
            "rect": [config.re_min, config.re_max, config.im_min, config.im_max],
            "grid": list(config.grid),
            "cover_n": args.cover_n,
            "seed": args.seed,
            "truncation": args.truncation,
            "refine_tol": config.refine_tol,
        },
        [args.schottky_file],
    )
    n_re, n_im = config.grid
    rows = []
    for re in np.linspace(config.re_min, config.re_max, n_re + 1):
        for im in np.linspace(config.im_min, config.im_max, n_im + 1):
            det = cache.det(complex(re, im))
            rows.append((float(re), float(im), det.real, det.imag))
    writer.csv("scan.csv", SCAN_COLUMNS, rows)
    writer.csv(
        "zeros.csv",
        ZEROS_COLUMNS,
        [(z.s.real, z.s.imag, z.multiplicity, z.residual) for z in report.zeros],
    )
    writer.json(
        "scan_report.json",
        {
            "zeros": len(report.zeros),
            "winding_total": report.winding_total,
            "det_evals": cache.evals + report.det_evals,
            "certified_empty": report.certified_empty,
            "norm_certificate": list(report.norm_certificate)
            if report.norm_certificate
            else None,
            "failures": report.failures,
        },
    )
    writer.finish()
    for z in report.zeros:
        print(f"zero at {z.s.real:.10f} {z.s.imag:+.10f}i  mult {z.multiplicity}  "
              f"residual {z.residual:.3g}")
    print(f"{len(report.zeros)} zero(s); total winding {report.winding_total}; "
          f"{report.det_evals} determinant evaluations")
    return EXIT_OK


def cmd_cover(args) -> int:
    data = load_schottky(args.schottky_file)
    basis = BergmanBasis(data, degree=args.truncation)
    config = _scan_config(args)
    try:
        n_values = tuple(int(v) for v in args.n.split(","))
    except ValueError as exc:
        raise SchottkyDataError(f"bad --n list {args.n!r}") from exc
    try:
        report = cover_experiment(
            config, basis, n_values, args.trials, args.seed, jobs=args.jobs
        )
    except ValueError as exc:
        raise Refusal(str(exc)) from exc
    writer = RunWriter(
        args.out,
        "cover",
        {
            "file": args.schottky_file,
            "rect": [config.re_min, config.re_max, config.im_min, config.im_max],
            "n": list(n_values),
            "trials": args.trials,
            "seed": args.seed,
            "truncation": args.truncation,
            "ell": config.ell_power,
        },
        [args.schottky_file],
    )
    writer.csv(
        "experiment.csv",
        EXPERIMENT_COLUMNS,
        [
            (r.n, r.trial, r.seed, r.certified, r.ell, r.max_norm, r.new_zero_count)
            for r in report.records
        ],
    )
    writer.json(
        "experiment_summary.json",
        {
            "delta": report.delta,
            "success_fraction": {
                str(n): report.success_fraction(n) for n in report.n_values
            },
        },
    )
    writer.finish()
    for n in report.n_values:
        print(f"n = {n}: success fraction {report.success_fraction(n):.3f}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    data = load_schottky(args.schottky_file)
    basis = BergmanBasis(data, degree=args.truncation)
    s = complex(args.s_re, args.s_im)
    rep = CompressedRegularRep(data.n_gens, args.radius)
    rows = []
    for ell in range(args.ell_min, args.ell_max + 1):
        try:
            bound = buchholz_bound(basis, ell, s)
        except BlockBudgetError as exc:
            raise Refusal(str(exc)) from exc
        lhs = (
            compressed_limit_norm(basis, ell, s, rep)
            if ell <= args.compressed_max_ell
            else float("nan")
        )
        rows.append((ell, s.real, s.imag, bound.value, lhs, bound.hs_fallback))
        print(f"ell {ell}: bound {bound.value:.6g}  compressed {lhs:.6g}  "
              f"fallback {bound.hs_fallback}")
    writer = RunWriter(
        args.out,
        "bounds",
        {
            "file": args.schottky_file,
            "s": [s.real, s.imag],
            "ells": [args.ell_min, args.ell_max],
            "radius": args.radius,
            "truncation": args.truncation,
        },
        [args.schottky_file],
    )
    writer.csv("bounds.csv", BOUNDS_COLUMNS, rows)
    writer.finish()
    return EXIT_OK


def cmd_norm_decay(args) -> int:
    data = load_schottky(args.schottky_file)
    basis = BergmanBasis(data, degree=args.truncation)
    kernel = TransferKernel(basis, 1)
    s = complex(args.s_re, args.s_im)
    rep = sample_hom(args.cover_n, data.n_gens, args.seed) if args.cover_n > 1 else None
    op = TwistedPower(basis, kernel, rep)
    rows = []
    for ell in range(1, args.ell_max + 1):
        norm = op.norm(s, ell, tol=1e-8)
        bound = float("nan")
        if args.with_bounds:
            bound = buchholz_bound(basis, ell, s).value
        rows.append((ell, s.real, s.imag, norm, bound))
        print(f"ell {ell}: norm {norm:.6g}" + (f"  bound {bound:.6g}" if args.with_bounds else ""))
    writer = RunWriter(
        args.out,
        "norm-decay",
        {
            "file": args.schottky_file,
            "s": [s.real, s.imag],
            "cover_n": args.cover_n,
            "seed": args.seed,
            "ell_max": args.ell_max,
            "truncation": args.truncation,
        },
        [args.schottky_file],
    )
    writer.csv("norm_decay.csv", NORM_DECAY_COLUMNS, rows)
    writer.finish()
    return EXIT_OK


_COMMANDS = {
    "validate": cmd_validate,
    "dim": cmd_dim,
    "scan": cmd_scan,
    "cover": cmd_cover,
    "bounds": cmd_bounds,
    "norm-decay": cmd_norm_decay,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (SchottkyDataError, json.JSONDecodeError, FileNotFoundError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Refusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except BlockBudgetError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
