"""Input validation helpers shared across the package.

All transform entry points funnel their array arguments through these, so
shape/dtype rules live in one place and error messages stay uniform.
"""

import numpy as np


def is_power_of_two(n) -> bool:
    return isinstance(n, (int, np.integer)) and n >= 1 and (n & (n - 1)) == 0


def check_power_of_two(n, minimum=1, what="n"):
    if not is_power_of_two(n):
        raise ValueError(f"{what} must be a power of two, got {n!r}")
    if n < minimum:
        raise ValueError(f"{what} must be >= {minimum}, got {n}")
    return int(n)


def check_vector(x, what="x"):
    """Validate a 1-d power-of-two-length signal; return it as complex128."""
    a = np.asarray(x)
    if a.ndim != 1:
        raise ValueError(f"{what} must be 1-d, got shape {a.shape}")
    check_power_of_two(a.shape[0], minimum=2, what=f"len({what})")
    return np.ascontiguousarray(a, dtype=np.complex128)


def check_square(plane, what="plane"):
    """Validate an n-by-n plane; return it as complex128."""
    a = np.asarray(plane)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{what} must be square 2-d, got shape {a.shape}")
    return np.ascontiguousarray(a, dtype=np.complex128)


def check_cube(t, minimum=2, what="tensor"):
    """Validate an n-by-n-by-n grid with power-of-two edge; return complex128.

    Arrays are indexed ``[z, y, x]`` so the flat (C-order) layout runs x
    fastest: ``flat[x + n*y + n*n*z]``.
    """
    a = np.asarray(t)
    if a.ndim != 3 or len(set(a.shape)) != 1:
        raise ValueError(f"{what} must be a cube, got shape {a.shape}")
    check_power_of_two(a.shape[0], minimum=minimum, what=f"{what} edge")
    return np.ascontiguousarray(a, dtype=np.complex128)


def check_direction(direction) -> str:
    d = str(direction).lower()
    if d not in ("forward", "inverse"):
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    return d
