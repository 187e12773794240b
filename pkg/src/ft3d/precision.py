"""Precision policies and reduced-mantissa floating-point emulation.

Values are always stored as binary64; a :class:`PrecisionSpec` constrains the
*value set* by limiting how many fractional significand bits survive each
arithmetic result.  Emulation keeps the binary64 exponent range (no
overflow/underflow narrowing), so only mantissa-width effects are visible.
Rounding is round-to-nearest-even and is applied at operation outputs, never
inside intermediate products: a complex multiply is evaluated at binary64 and
its real/imaginary results are then rounded once, like a fused unit.
"""

import math
from dataclasses import dataclass

import numpy as np

_MANT_BITS = 52
_EXP_FIELD = np.uint64(0x7FF0000000000000)

_MODES = ("double", "single", "custom")
_NATIVE_BITS = {"double": 52, "single": 23}


@dataclass(frozen=True)
class PrecisionSpec:
    """Precision policy: native double, native single, or a custom mantissa width.

    ``mantissa_bits`` is the number of fractional significand bits kept
    (binary64 has 52, binary32 has 23).  It may only be passed explicitly for
    ``custom`` mode and must lie in [1, 52]; the native modes fill it in.
    """

    mode: str
    mantissa_bits: int = None

    def __post_init__(self):
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {self.mode!r}")
        if self.mode == "custom":
            m = self.mantissa_bits
            if not isinstance(m, (int, np.integer)) or not 1 <= m <= 52:
                raise ValueError(f"custom mantissa_bits must be in [1, 52], got {m!r}")
            object.__setattr__(self, "mantissa_bits", int(m))
        else:
            native = _NATIVE_BITS[self.mode]
            if self.mantissa_bits not in (None, native):
                raise ValueError(f"{self.mode} precision fixes mantissa_bits={native}")
            object.__setattr__(self, "mantissa_bits", native)

    @property
    def unit_roundoff(self) -> float:
        """Half the spacing of representable numbers at 1.0 (2^-(m+1))."""
        return 2.0 ** -(self.mantissa_bits + 1)

    @property
    def is_double(self) -> bool:
        return self.mantissa_bits == _MANT_BITS

    @classmethod
    def from_flags(cls, precision: str, mantissa_bits=None) -> "PrecisionSpec":
        """Build a spec from CLI-style flags; mantissa_bits only for custom."""
        p = str(precision).lower()
        if p == "custom":
            if mantissa_bits is None:
                raise ValueError("custom precision requires mantissa_bits")
            return cls("custom", int(mantissa_bits))
        return cls(p)

    def __str__(self):
        if self.mode == "custom":
            return f"custom{self.mantissa_bits}"
        return self.mode


DOUBLE = PrecisionSpec("double")
SINGLE = PrecisionSpec("single")


def custom(mantissa_bits: int) -> PrecisionSpec:
    return PrecisionSpec("custom", mantissa_bits)


def _round_mantissa_inplace(a: np.ndarray, bits: int) -> None:
    """Round binary64 array `a` to `bits` fractional significand bits, in place.

    Operates on the IEEE-754 encoding: the low ``52 - bits`` significand bits
    are rounded away with round-to-nearest-even.  A carry out of the
    significand propagates into the exponent, which is the correct RNE
    behaviour.  NaN and infinity pass through unchanged; a zero tail is
    untouched, so the operation is idempotent.
    """
    drop = _MANT_BITS - bits
    if drop == 0:
        return
    u = a.view(np.uint64)
    orig = u.copy()
    tail_mask = np.uint64((1 << drop) - 1)
    keep_mask = np.uint64(~((1 << drop) - 1) & 0xFFFFFFFFFFFFFFFF)
    half = np.uint64(1 << (drop - 1))
    one = np.uint64(1)
    shift = np.uint64(drop)

    tail = u & tail_mask
    lsb = (u >> shift) & one
    round_up = (tail > half) | ((tail == half) & (lsb == one))
    u &= keep_mask
    u += round_up.astype(np.uint64) << shift

    nonfinite = (orig & _EXP_FIELD) == _EXP_FIELD
    if nonfinite.any():
        u[nonfinite] = orig[nonfinite]


def round_to_precision(v, spec: PrecisionSpec):
    """Round real value(s) to the precision's significand width (RNE).

    Accepts a scalar or an ndarray of binary64 values and returns the same
    kind.  Sign and exponent are preserved unless the rounding carries;
    non-finite inputs propagate unchanged.
    """
    arr = np.array(v, dtype=np.float64)
    if not spec.is_double:
        _round_mantissa_inplace(arr.reshape(-1), spec.mantissa_bits)
    if arr.ndim == 0:
        return float(arr)
    return arr


def round_complex(z, spec: PrecisionSpec) -> np.ndarray:
    """Round the components of a complex array to the spec's width."""
    arr = np.array(z, dtype=np.complex128)
    if not spec.is_double:
        _round_mantissa_inplace(arr.reshape(-1).view(np.float64), spec.mantissa_bits)
    return arr


def _round_complex_inplace(z: np.ndarray, spec: PrecisionSpec) -> None:
    # z must be a C-contiguous complex128 array
    if not spec.is_double:
        _round_mantissa_inplace(z.view(np.float64), spec.mantissa_bits)


def twiddle(n: int, k: int, spec: PrecisionSpec = DOUBLE) -> complex:
    """k-th power of the n-th root of unity, exp(-2*pi*i*k/n).

    Evaluated at binary64 and then rounded to the spec, so tables built at
    different precisions agree bit-for-bit with this reference.
    """
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not 0 <= k < n:
        raise ValueError(f"k must satisfy 0 <= k < n, got k={k}, n={n}")
    ang = -2.0 * math.pi * k / n
    return complex(
        round_to_precision(math.cos(ang), spec),
        round_to_precision(math.sin(ang), spec),
    )


def twiddle_table(n: int, spec: PrecisionSpec = DOUBLE) -> np.ndarray:
    """First half of the twiddle circle, W_n^k for k in [0, n/2).

    That is all a radix-2 transform of size n needs; the table is rounded to
    the spec once so reuse across transforms is deterministic.
    """
    k = np.arange(n // 2)
    ang = -2.0 * math.pi * k / n
    table = np.cos(ang) + 1j * np.sin(ang)
    return round_complex(table, spec)
