"""Ground-truth references: direct triple-sum DFT and error metrics.

The brute-force transform evaluates the defining sum with explicit DFT
matrices at binary64, sharing nothing with the radix-2 pipeline (no butterfly
stages, no transposes, no twiddle tables), so it can arbitrate its results.
"""

from dataclasses import dataclass

import numpy as np

from .validation import check_cube


@dataclass(frozen=True)
class ErrorReport:
    """Difference summary between two grids.

    `l2_rel` is ||a - b|| / ||b||, defined as 0 when the reference norm is
    zero (so degenerate comparisons reduce to `linf_abs`).  `worst_index` is
    the (x, y, z) position of the largest component-wise modulus difference.
    """

    l2_rel: float
    linf_abs: float
    worst_index: tuple


def dft3d_bruteforce(tensor, force: bool = False) -> np.ndarray:
    """Direct evaluation of the triple DFT sum at binary64.

    Cost grows as n^6; sizes above 32 are refused unless `force` is set.
    """
    a = check_cube(tensor)
    n = a.shape[0]
    if n > 32 and not force:
        raise ValueError(
            f"brute-force DFT at n={n} costs O(n^6); pass force=True to run anyway"
        )
    k = np.arange(n)
    m = np.exp(-2j * np.pi * np.outer(k, k) / n)
    # f[z,y,x] * M[kx,x] * M[ky,y] * M[kz,z], summed over x, y, z
    return np.einsum("zyx,Xx,Yy,Zz->ZYX", a, m, m, m, optimize=True)


def error_metrics(a, b) -> ErrorReport:
    """Relative L2 and absolute L-infinity difference of grid a against b."""
    ta = check_cube(a)
    tb = check_cube(b)
    if ta.shape != tb.shape:
        raise ValueError(f"shape mismatch: {ta.shape} vs {tb.shape}")
    diff = ta - tb
    mod = np.abs(diff)
    flat = int(np.argmax(mod))
    z, y, x = np.unravel_index(flat, mod.shape)
    denom = np.linalg.norm(tb)
    l2 = float(np.linalg.norm(diff) / denom) if denom > 0 else 0.0
    return ErrorReport(l2_rel=l2, linf_abs=float(mod[z, y, x]), worst_index=(int(x), int(y), int(z)))


def l2_rel(a, b) -> float:
    """Shorthand for error_metrics(a, b).l2_rel."""
    return error_metrics(a, b).l2_rel
