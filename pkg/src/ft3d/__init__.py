"""Streaming 3D FFT pipeline model with precision emulation and latency calibration.

The package mirrors an accelerator offload design in software: a radix-2
transform pipeline (three 1D FFT phases intertwined with a tiled plane
transpose and a z-rotation), precision-parameterized arithmetic, an affine
latency model calibrated against measured timings, and a spectral-energy
harness that quantifies how little reduced precision perturbs a physical
total.
"""

from .bench import BenchResult, BenchRun, ComparisonTable, compare_against_fixture, run_bench
from .errors import (
    CalibrationError,
    ConfigurationError,
    FormatError,
    ResolutionError,
    UnsupportedSizeError,
)
from .estimators import PipelineLatencyModel, StreamingFFT3D
from .fft1d import StageSchedule, bit_reverse_permutation, fft1d, make_schedule
from .fft3d import MAX_N, MIN_N, Plan, execute, plan
from .layout import TileConfig, transpose2d, transpose3d_zx, transpose_planes
from .oracle import ErrorReport, dft3d_bruteforce, error_metrics, l2_rel
from .perfmodel import (
    CalibrationResult,
    Measurement,
    PerfConfig,
    calibrate,
    kernel_cycles,
    kernel_time,
    load_fixture,
    load_measurements,
    pcie_time,
    predict_report,
    save_measurements,
)
from .precision import (
    DOUBLE,
    SINGLE,
    PrecisionSpec,
    custom,
    round_complex,
    round_to_precision,
    twiddle,
    twiddle_table,
)
from .tensorfile import read_tensor, write_tensor
from .tolerance import (
    EnergyResult,
    GridSpec,
    SweepRow,
    gaussian_density,
    hartree_energy,
    precision_sweep,
    reference_energy,
)

__version__ = "0.1.0"

__all__ = [
    "BenchResult",
    "BenchRun",
    "CalibrationError",
    "CalibrationResult",
    "ComparisonTable",
    "ConfigurationError",
    "DOUBLE",
    "EnergyResult",
    "ErrorReport",
    "FormatError",
    "GridSpec",
    "MAX_N",
    "MIN_N",
    "Measurement",
    "PerfConfig",
    "PipelineLatencyModel",
    "Plan",
    "PrecisionSpec",
    "ResolutionError",
    "SINGLE",
    "StageSchedule",
    "StreamingFFT3D",
    "SweepRow",
    "TileConfig",
    "UnsupportedSizeError",
    "bit_reverse_permutation",
    "calibrate",
    "compare_against_fixture",
    "custom",
    "dft3d_bruteforce",
    "error_metrics",
    "execute",
    "fft1d",
    "gaussian_density",
    "hartree_energy",
    "kernel_cycles",
    "kernel_time",
    "l2_rel",
    "load_fixture",
    "load_measurements",
    "make_schedule",
    "pcie_time",
    "plan",
    "precision_sweep",
    "predict_report",
    "read_tensor",
    "reference_energy",
    "round_complex",
    "round_to_precision",
    "run_bench",
    "save_measurements",
    "transpose2d",
    "transpose3d_zx",
    "transpose_planes",
    "twiddle",
    "twiddle_table",
    "write_tensor",
]
