"""Analytical latency model of the offload pipeline, fitted to measured data.

Kernel model: three FFT phases stream n^3 points at `lanes` points per clock,
so the core costs 3*n^3/lanes cycles; everything else (transpose stages, DDR
traffic, launch) is folded into one fixed overhead term.  Link model: a
round trip moves 2*n^3*bytes_per_sample bytes over a fixed-latency,
fixed-bandwidth link.  Both submodels are affine in their size variable and
are calibrated independently by least squares.
"""

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CalibrationError, ConfigurationError
from .validation import is_power_of_two

LANES = 8
BYTES_PER_SAMPLE = 8  # single-precision complex: two 4-byte floats

FIXTURE_PATH = Path(__file__).parent / "data" / "reference_timings.csv"

_CSV_HEADER = ["n", "kernel_ms", "pcie_ms", "fftw_ms"]


@dataclass(frozen=True)
class PerfConfig:
    """Calibrated latency-model parameters.

    A zero clock or bandwidth marks an uncalibrated config; prediction
    helpers reject it.  Negative values are invalid outright.
    """

    clock_hz: float = 0.0
    kernel_overhead_s: float = 0.0
    pcie_latency_s: float = 0.0
    pcie_bytes_per_s: float = 0.0
    lanes: int = LANES
    bytes_per_sample: int = BYTES_PER_SAMPLE

    def __post_init__(self):
        for name in ("clock_hz", "kernel_overhead_s", "pcie_latency_s", "pcie_bytes_per_s"):
            if getattr(self, name) < 0:
                raise ConfigurationError(f"{name} must be non-negative")
        if self.lanes < 1 or self.bytes_per_sample < 1:
            raise ConfigurationError("lanes and bytes_per_sample must be positive")


@dataclass(frozen=True)
class Measurement:
    """One timing row: size and latencies in milliseconds.

    `fftw_ms` is reference-library data carried along for comparison tables;
    the model never fits it.
    """

    n: int
    kernel_ms: float = None
    pcie_ms: float = None
    fftw_ms: float = None

    def __post_init__(self):
        for name in ("kernel_ms", "pcie_ms", "fftw_ms"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError(f"{name} must be positive, got {v}")


def kernel_cycles(n: int, cfg: PerfConfig = PerfConfig()) -> int:
    """Streaming cycles for the three FFT phases of an n^3 transform."""
    if not is_power_of_two(n) or n < 8:
        raise ValueError(f"n must be a power of two >= 8, got {n!r}")
    return 3 * n**3 // cfg.lanes


def kernel_time(n: int, cfg: PerfConfig) -> float:
    """Predicted kernel execution time in seconds."""
    if cfg.clock_hz <= 0:
        raise ConfigurationError("config is not calibrated (clock_hz is zero)")
    return kernel_cycles(n, cfg) / cfg.clock_hz + cfg.kernel_overhead_s


def pcie_time(n: int, cfg: PerfConfig) -> float:
    """Predicted host<->device round-trip transfer time in seconds."""
    if cfg.pcie_bytes_per_s <= 0:
        raise ConfigurationError("config is not calibrated (pcie_bytes_per_s is zero)")
    round_trip_bytes = 2 * n**3 * cfg.bytes_per_sample
    return cfg.pcie_latency_s + round_trip_bytes / cfg.pcie_bytes_per_s


def _affine_fit(x, y, what):
    """Least-squares slope/intercept via the closed-form normal equations."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    dx = x - x.mean()
    sxx = float(np.dot(dx, dx))
    if sxx == 0.0:
        raise CalibrationError(f"{what}: need measurements at distinct sizes")
    slope = float(np.dot(dx, y - y.mean())) / sxx
    intercept = float(y.mean() - slope * x.mean())
    return slope, intercept


@dataclass(frozen=True)
class CalibrationResult:
    """Fitted config plus signed relative residuals, (predicted-measured)/measured."""

    config: PerfConfig
    kernel_residuals: dict
    pcie_residuals: dict


def calibrate(measurements, lanes: int = LANES, bytes_per_sample: int = BYTES_PER_SAMPLE) -> CalibrationResult:
    """Fit (clock, overhead) to kernel rows and (latency, bandwidth) to link rows.

    Needs at least two measurements at distinct sizes per submodel; a fit
    producing non-positive parameters is rejected as non-physical.
    """
    rows = list(measurements)
    base = PerfConfig(lanes=lanes, bytes_per_sample=bytes_per_sample)

    kern = [(m.n, m.kernel_ms) for m in rows if m.kernel_ms is not None]
    link = [(m.n, m.pcie_ms) for m in rows if m.pcie_ms is not None]
    if len({n for n, _ in kern}) < 2 or len({n for n, _ in link}) < 2:
        raise CalibrationError("need measurements at >= 2 distinct sizes")

    slope, overhead = _affine_fit(
        [kernel_cycles(n, base) for n, _ in kern], [ms * 1e-3 for _, ms in kern], "kernel fit"
    )
    if slope <= 0 or overhead <= 0:
        raise CalibrationError("kernel fit produced non-positive clock or overhead")
    inv_bw, latency = _affine_fit(
        [2 * n**3 * bytes_per_sample for n, _ in link], [ms * 1e-3 for _, ms in link], "link fit"
    )
    if inv_bw <= 0 or latency <= 0:
        raise CalibrationError("link fit produced non-positive bandwidth or latency")

    cfg = PerfConfig(
        clock_hz=1.0 / slope,
        kernel_overhead_s=overhead,
        pcie_latency_s=latency,
        pcie_bytes_per_s=1.0 / inv_bw,
        lanes=lanes,
        bytes_per_sample=bytes_per_sample,
    )
    kres = {n: (kernel_time(n, cfg) - ms * 1e-3) / (ms * 1e-3) for n, ms in kern}
    pres = {n: (pcie_time(n, cfg) - ms * 1e-3) / (ms * 1e-3) for n, ms in link}
    return CalibrationResult(config=cfg, kernel_residuals=kres, pcie_residuals=pres)


def predict_report(sizes, cfg: PerfConfig) -> list:
    """Predicted kernel and transfer times (milliseconds) per size."""
    return [
        Measurement(n=int(n), kernel_ms=kernel_time(n, cfg) * 1e3, pcie_ms=pcie_time(n, cfg) * 1e3)
        for n in sizes
    ]


def load_measurements(path) -> list:
    """Read a measurement table from CSV with header n,kernel_ms,pcie_ms,fftw_ms."""
    out = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in _CSV_HEADER if c not in (reader.fieldnames or [])]
        if missing:
            raise ValueError(f"{path}: missing CSV columns {missing}")
        for row in reader:
            out.append(
                Measurement(
                    n=int(row["n"]),
                    kernel_ms=float(row["kernel_ms"]) if row["kernel_ms"] else None,
                    pcie_ms=float(row["pcie_ms"]) if row["pcie_ms"] else None,
                    fftw_ms=float(row["fftw_ms"]) if row["fftw_ms"] else None,
                )
            )
    return out


def save_measurements(path, rows) -> None:
    """Write a measurement table as CSV with the canonical header."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_CSV_HEADER)
        for m in rows:
            writer.writerow(
                [m.n]
                + ["" if v is None else f"{v:.6g}" for v in (m.kernel_ms, m.pcie_ms, m.fftw_ms)]
            )


def load_fixture() -> list:
    """The bundled reference timings used to calibrate the model."""
    return load_measurements(FIXTURE_PATH)
