"""Wall-clock measurement of the transform, averaged over many iterations.

Timing covers `execute` only: plan construction, input generation, and one
warm-up run happen outside the timed windows.  The clock is injectable so the
exclusion contract is testable.  Reference timings from other systems are
never re-measured here; they join the results as fixture columns only.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from .fft3d import execute, plan
from .layout import TileConfig
from .precision import DOUBLE, PrecisionSpec


@dataclass(frozen=True)
class BenchResult:
    n: int
    precision: PrecisionSpec
    iters: int
    mean_ms: float
    stddev_ms: float
    min_ms: float
    threads: int = 1


@dataclass(frozen=True)
class BenchRun:
    """Results plus per-size failures (a failed size never aborts the rest)."""

    results: list
    failures: list


def _random_tensor(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng([seed, n])
    return rng.standard_normal((n, n, n)) + 1j * rng.standard_normal((n, n, n))


def run_bench(sizes, spec: PrecisionSpec = DOUBLE, iters: int = 100, seed: int = 0,
              tile_cfg: TileConfig = None, threads: int = 1,
              timer=time.perf_counter) -> BenchRun:
    """Time the forward transform at each size; inputs are seeded and reproducible."""
    if iters < 1:
        raise ValueError(f"iters must be >= 1, got {iters}")
    results, failures = [], []
    for n in sizes:
        try:
            p = plan(n, spec, tile_cfg)
            tensor = _random_tensor(p.n, seed)
            execute(p, tensor, "forward", threads=threads)  # warm-up, not recorded
            samples = []
            for _ in range(iters):
                t0 = timer()
                execute(p, tensor, "forward", threads=threads)
                t1 = timer()
                samples.append((t1 - t0) * 1e3)
            results.append(
                BenchResult(
                    n=p.n,
                    precision=spec,
                    iters=iters,
                    mean_ms=float(np.mean(samples)),
                    stddev_ms=float(np.std(samples)),
                    min_ms=float(np.min(samples)),
                    threads=threads,
                )
            )
        except Exception as exc:  # record and continue with remaining sizes
            failures.append((n, f"{type(exc).__name__}: {exc}"))
    return BenchRun(results=results, failures=failures)


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    mean_ms: float
    fftw_ms: float
    kernel_ms: float
    pcie_ms: float
    vs_fftw: float
    vs_kernel: float


@dataclass(frozen=True)
class ComparisonTable:
    rows: list
    skipped: list
    warning: str = None


def compare_against_fixture(results, fixture) -> ComparisonTable:
    """Join measured results with fixture rows on size, emitting speed ratios.

    Ratios are measured/fixture (>1 means the fixture column was faster).
    Purely informational; hosts differ from the fixture's hardware.
    """
    by_n = {r.n: r for r in results}
    rows, skipped = [], []
    for m in fixture:
        r = by_n.get(m.n)
        if r is None:
            skipped.append(m.n)
            continue
        rows.append(
            ComparisonRow(
                n=m.n,
                mean_ms=r.mean_ms,
                fftw_ms=m.fftw_ms,
                kernel_ms=m.kernel_ms,
                pcie_ms=m.pcie_ms,
                vs_fftw=_ratio(r.mean_ms, m.fftw_ms),
                vs_kernel=_ratio(r.mean_ms, m.kernel_ms),
            )
        )
    warning = None
    if not rows:
        warning = "no overlapping sizes between results and fixture"
    elif skipped:
        warning = f"fixture sizes without measurements were skipped: {skipped}"
    return ComparisonTable(rows=rows, skipped=skipped, warning=warning)


def _ratio(measured, reference):
    if reference is None or not math.isfinite(reference) or reference <= 0:
        return None
    return measured / reference
