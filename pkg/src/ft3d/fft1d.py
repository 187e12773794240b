"""Radix-2 decimation-in-time FFT with the streaming-kernel I/O contract.

The arithmetic path is an ordinary iterative radix-2 transform: gather the
input in bit-reversed order, then log2(n) butterfly stages.  The 8-points-
per-step structure of the hardware kernel is captured by
:class:`StageSchedule` and only drives the performance model; numerical
results are lane-count independent.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedSizeError
from .precision import DOUBLE, PrecisionSpec, _round_complex_inplace, twiddle_table
from .validation import check_direction, check_power_of_two, check_vector, is_power_of_two

POINTS_PER_STEP = 8


@dataclass(frozen=True)
class StageSchedule:
    """Streaming schedule of one n-point transform: n/8 steps of 8 points."""

    n: int
    stages: int
    steps: int
    points_per_step: int = POINTS_PER_STEP

    def __post_init__(self):
        if not is_power_of_two(self.n) or self.n < POINTS_PER_STEP:
            raise UnsupportedSizeError(
                f"schedule needs a power-of-two n >= {POINTS_PER_STEP}, got {self.n}"
            )
        if self.steps * self.points_per_step != self.n:
            raise ValueError("steps * points_per_step must equal n")
        if self.stages != int(math.log2(self.n)):
            raise ValueError("stages must equal log2(n)")


def make_schedule(n: int) -> StageSchedule:
    """Schedule for an n-point streaming transform (n power of two, >= 8)."""
    if not is_power_of_two(n) or n < POINTS_PER_STEP:
        raise UnsupportedSizeError(
            f"streaming kernel consumes {POINTS_PER_STEP} points per step; "
            f"n must be a power of two >= {POINTS_PER_STEP}, got {n}"
        )
    return StageSchedule(n=n, stages=int(math.log2(n)), steps=n // POINTS_PER_STEP)


def bit_reverse_permutation(n: int) -> np.ndarray:
    """Index permutation reversing the log2(n)-bit binary representation.

    The permutation is an involution: applying it twice is the identity.
    """
    n = check_power_of_two(n, minimum=1, what="n")
    bits = n.bit_length() - 1
    idx = np.arange(n, dtype=np.int64)
    rev = np.zeros_like(idx)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    return rev


def _fft_batch(a: np.ndarray, table: np.ndarray, spec: PrecisionSpec, inverse: bool) -> np.ndarray:
    """Transform each row of a (batch, n) complex128 array.

    `table` holds W_n^k for k < n/2 at the target precision.  Every butterfly
    multiply/add result is rounded to the spec before use, with a fixed
    butterfly order, so results are bitwise deterministic.
    """
    n = a.shape[-1]
    a = np.ascontiguousarray(a[:, bit_reverse_permutation(n)])
    w_all = np.conj(table) if inverse else table
    half = 1
    while half < n:
        m = 2 * half
        w = w_all[0 : n // 2 : n // m]
        b = a.reshape(-1, n // m, m)
        even = b[..., :half]
        t = b[..., half:] * w
        _round_complex_inplace(t, spec)
        lo = even + t
        _round_complex_inplace(lo, spec)
        hi = even - t
        _round_complex_inplace(hi, spec)
        b[..., :half] = lo
        b[..., half:] = hi
        half = m
    if inverse:
        a *= 1.0 / n  # power-of-two scale, exact at any mantissa width
    return a


def fft1d(x, direction: str = "forward", spec: PrecisionSpec = DOUBLE) -> np.ndarray:
    """n-point transform of a 1-d signal (n a power of two, n >= 2).

    Forward computes the unnormalized sum over x[j] * W_n^(jk); inverse is the
    conjugate transform scaled by 1/n.  Output is in natural order.
    """
    a = check_vector(x)
    d = check_direction(direction)
    table = twiddle_table(a.shape[0], spec)
    return _fft_batch(a[np.newaxis, :], table, spec, d == "inverse")[0]
