"""Command-line front end: transform, bench, perf, and tolerance subcommands.

Exit codes are fixed so scripts can branch on outcomes:

    0  success
    2  tensor-file format error (bad magic/version, truncated payload)
    3  argument error: unsupported size, invalid flags, under-resolved sigma
    4  calibration error (degenerate or non-physical fit)
    5  tolerance check failed (single vs double energy drifted past the bound)
"""

import argparse
import json
import sys
from dataclasses import asdict

from . import __version__
from .bench import compare_against_fixture, run_bench
from .errors import CalibrationError, FormatError, ResolutionError
from .fft3d import MAX_N, MIN_N, execute, plan
from .layout import TileConfig, default_tile_config
from .perfmodel import (
    FIXTURE_PATH,
    Measurement,
    calibrate,
    load_measurements,
    predict_report,
    save_measurements,
)
from .precision import DOUBLE, SINGLE, PrecisionSpec
from .tensorfile import read_tensor, write_tensor
from .tolerance import GridSpec, precision_sweep
from .validation import is_power_of_two

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_ARGS = 3
EXIT_CALIBRATION = 4
EXIT_TOLERANCE = 5

SINGLE_VS_DOUBLE_TOL = 1e-4


def _parse_sizes(text):
    try:
        sizes = [int(s) for s in str(text).split(",") if s.strip()]
    except ValueError:
        raise ValueError(f"sizes must be a comma-separated integer list, got {text!r}")
    bad = [n for n in sizes if not is_power_of_two(n) or not MIN_N <= n <= MAX_N]
    if bad:
        raise ValueError(
            f"unsupported sizes {bad}: supported sizes are powers of two in [{MIN_N}, {MAX_N}]"
        )
    return sizes


def _spec_from_args(args) -> PrecisionSpec:
    return PrecisionSpec.from_flags(args.precision, args.mantissa_bits)


def _write_report(path, command, params, results):
    doc = {
        "tool_version": __version__,
        "command": command,
        "params": params,
        "results": results,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def _cmd_transform(args):
    tensor, file_spec = read_tensor(args.input)
    spec = _spec_from_args(args) if args.precision else file_spec
    cfg = TileConfig(args.tile, args.buffers) if args.tile else default_tile_config(tensor.shape[0])
    p = plan(tensor.shape[0], spec, cfg)
    out = execute(p, tensor, args.direction, threads=args.threads)
    write_tensor(args.output, out, spec)
    print(f"{args.direction} transform n={p.n} precision={spec} -> {args.output}")
    return EXIT_OK


def _cmd_bench(args):
    sizes = _parse_sizes(args.sizes)
    spec = _spec_from_args(args)
    run = run_bench(sizes, spec=spec, iters=args.iters, seed=args.seed, threads=args.threads)
    for n, message in run.failures:
        print(f"warning: size {n} failed: {message}", file=sys.stderr)

    print(f"{'n':>6} {'iters':>6} {'mean_ms':>10} {'stddev_ms':>10} {'min_ms':>10}")
    for r in run.results:
        print(f"{r.n:>6} {r.iters:>6} {r.mean_ms:>10.4f} {r.stddev_ms:>10.4f} {r.min_ms:>10.4f}")

    rows = [
        {**asdict(r), "precision": str(r.precision)}
        for r in run.results
    ]
    comparison = None
    if args.fixture:
        table = compare_against_fixture(run.results, load_measurements(args.fixture))
        if table.warning:
            print(f"warning: {table.warning}", file=sys.stderr)
        comparison = [asdict(c) for c in table.rows]
        for c in table.rows:
            vs = f"{c.vs_fftw:.2f}x fftw" if c.vs_fftw else "n/a"
            print(f"  n={c.n}: measured {c.mean_ms:.4f} ms, {vs}")

    if args.report:
        results = {"bench": rows} if comparison is None else {"bench": rows, "comparison": comparison}
        _write_report(
            args.report,
            "bench",
            {
                "sizes": sizes,
                "precision": str(spec),
                "iters": args.iters,
                "seed": args.seed,
                "threads": args.threads,
                "warmup_excluded": True,
                "plan_time_excluded": True,
            },
            results,
        )
    if args.csv:
        save_measurements(
            args.csv, [Measurement(n=r.n, kernel_ms=r.mean_ms) for r in run.results]
        )
    return EXIT_OK


def _cmd_perf(args):
    fixture = load_measurements(args.fixture)
    result = calibrate(fixture)
    cfg = result.config
    print("fitted parameters:")
    print(f"  clock        {cfg.clock_hz / 1e6:10.2f} MHz")
    print(f"  overhead     {cfg.kernel_overhead_s * 1e3:10.4f} ms")
    print(f"  link latency {cfg.pcie_latency_s * 1e3:10.4f} ms")
    print(f"  bandwidth    {cfg.pcie_bytes_per_s / 1e9:10.2f} GB/s")
    print("residuals (predicted vs measured):")
    for n in sorted(result.kernel_residuals):
        k = result.kernel_residuals[n]
        p = result.pcie_residuals.get(n)
        link = f"{p * 100:+7.1f}%" if p is not None else "      -"
        print(f"  n={n:<5} kernel {k * 100:+7.1f}%   link {link}")

    sizes = _parse_sizes(args.predict) if args.predict else sorted({m.n for m in fixture})
    fitted_ns = {m.n for m in fixture}
    predictions = predict_report(sizes, cfg)
    print(f"{'n':>6} {'kernel_ms':>12} {'pcie_ms':>12}")
    rows = []
    for m in predictions:
        extrapolated = m.n not in fitted_ns
        tag = "  (extrapolated)" if extrapolated else ""
        print(f"{m.n:>6} {m.kernel_ms:>12.4f} {m.pcie_ms:>12.4f}{tag}")
        rows.append(
            {"n": m.n, "kernel_ms": m.kernel_ms, "pcie_ms": m.pcie_ms, "extrapolated": extrapolated}
        )

    if args.report:
        _write_report(
            args.report,
            "perf",
            {
                "fixture": str(args.fixture),
                "predict": sizes,
                "fitted": {
                    "clock_hz": cfg.clock_hz,
                    "kernel_overhead_s": cfg.kernel_overhead_s,
                    "pcie_latency_s": cfg.pcie_latency_s,
                    "pcie_bytes_per_s": cfg.pcie_bytes_per_s,
                },
                "kernel_residuals": {str(k): v for k, v in result.kernel_residuals.items()},
                "pcie_residuals": {str(k): v for k, v in result.pcie_residuals.items()},
            },
            rows,
        )
    return EXIT_OK


def _cmd_tolerance(args):
    grid = GridSpec(n=args.n, box_length=args.box)
    specs = [DOUBLE, SINGLE]
    if args.sweep:
        for bits in str(args.sweep).split(","):
            specs.append(PrecisionSpec("custom", int(bits)))
    rows = precision_sweep(grid, args.charge, args.sigma, specs)

    print(f"{'precision':>10} {'energy':>18} {'rel_error_vs_double':>20}")
    results = []
    for r in rows:
        print(f"{str(r.precision):>10} {r.energy:>18.12f} {r.rel_error_vs_double:>20.3e}")
        results.append(
            {
                "n": grid.n,
                "box_length": grid.box_length,
                "sigma": args.sigma,
                "precision": str(r.precision),
                "energy": r.energy,
                "rel_error_vs_double": r.rel_error_vs_double,
            }
        )
    if args.report:
        _write_report(
            args.report,
            "tolerance",
            {"n": grid.n, "box": grid.box_length, "sigma": args.sigma, "charge": args.charge},
            results,
        )

    single_err = next(r.rel_error_vs_double for r in rows if r.precision == SINGLE)
    if single_err >= SINGLE_VS_DOUBLE_TOL:
        print(
            f"tolerance FAILED: single vs double rel_error {single_err:.3e} "
            f">= {SINGLE_VS_DOUBLE_TOL:.0e}",
            file=sys.stderr,
        )
        return EXIT_TOLERANCE
    print(f"tolerance ok: single vs double rel_error {single_err:.3e} < {SINGLE_VS_DOUBLE_TOL:.0e}")
    return EXIT_OK


def _build_parser():
    parser = argparse.ArgumentParser(prog="ft3d", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ft3d {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="transform a tensor file")
    t.add_argument("input")
    t.add_argument("output")
    direction = t.add_mutually_exclusive_group()
    direction.add_argument(
        "--forward", dest="direction", action="store_const", const="forward", default="forward"
    )
    direction.add_argument("--inverse", dest="direction", action="store_const", const="inverse")
    t.add_argument("--precision", choices=["double", "single", "custom"], default=None,
                   help="override the input file's precision")
    t.add_argument("--mantissa-bits", type=int, default=None)
    t.add_argument("--tile", type=int, default=None)
    t.add_argument("--buffers", type=int, default=2)
    t.add_argument("--threads", type=int, default=1)
    t.set_defaults(func=_cmd_transform)

    b = sub.add_parser("bench", help="time the forward transform across sizes")
    b.add_argument("--sizes", required=True, help="comma-separated grid edges, e.g. 16,32,64")
    b.add_argument("--precision", choices=["double", "single", "custom"], default="double")
    b.add_argument("--mantissa-bits", type=int, default=None)
    b.add_argument("--iters", type=int, default=100)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--threads", type=int, default=1)
    b.add_argument("--report", default=None, help="write a JSON report here")
    b.add_argument("--csv", default=None, help="write measured times as a fixture-format CSV")
    b.add_argument("--fixture", default=None, help="compare against a measurement CSV")
    b.set_defaults(func=_cmd_bench)

    p = sub.add_parser("perf", help="calibrate the latency model and predict times")
    p.add_argument("--fixture", default=str(FIXTURE_PATH),
                   help="measurement CSV (default: bundled reference timings)")
    p.add_argument("--predict", default=None, help="comma-separated sizes to predict")
    p.add_argument("--report", default=None)
    p.set_defaults(func=_cmd_perf)

    tol = sub.add_parser("tolerance", help="precision sweep of the spectral energy")
    tol.add_argument("--n", type=int, default=32)
    tol.add_argument("--box", type=float, default=10.0)
    tol.add_argument("--sigma", type=float, default=0.5)
    tol.add_argument("--charge", type=float, default=1.0)
    tol.add_argument("--sweep", default=None, help="comma-separated custom mantissa widths")
    tol.add_argument("--report", default=None)
    tol.set_defaults(func=_cmd_tolerance)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except CalibrationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CALIBRATION
    except ResolutionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS


if __name__ == "__main__":
    sys.exit(main())
