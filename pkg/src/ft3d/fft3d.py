"""Full 3D transform pipeline: three 1D FFT phases and two transposes.

The forward transform of an n^3 grid f is the unnormalized triple sum

    F(kx, ky, kz) = sum_z sum_y sum_x f(x,y,z) W^(x*kx) W^(y*ky) W^(z*kz),

with W = exp(-2*pi*i/n), computed as: FFTs over all x-pencils, a tiled 2D
transpose of every plane, FFTs over the former y-pencils, the 3D rotation
that makes z fastest, FFTs over the former z-pencils, and a final axis
restoration so the output is indexed (kx, ky, kz) like the input.  The
inverse applies conjugate twiddles and a global 1/n^3 scale.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, UnsupportedSizeError
from .fft1d import StageSchedule, _fft_batch, make_schedule
from .layout import TileConfig, default_tile_config, transpose3d_zx, transpose_planes
from .precision import DOUBLE, PrecisionSpec, twiddle_table
from .validation import check_cube, check_direction, is_power_of_two

MIN_N = 4
MAX_N = 1024

THREADS_ENV = "FT3D_THREADS"


@dataclass(frozen=True)
class Plan:
    """Immutable transform descriptor: size, precision, twiddles, blocking.

    Plans are shareable across threads; concurrent executes against one plan
    are safe.  `schedule` is the streaming schedule for sizes the 8-lane
    kernel contract covers (n >= 8) and None for the small oracle sizes.
    """

    n: int
    spec: PrecisionSpec
    schedule: StageSchedule
    twiddles: np.ndarray
    tile_cfg: TileConfig


def plan(n: int, spec: PrecisionSpec = DOUBLE, tile_cfg: TileConfig = None) -> Plan:
    """Build an immutable plan with precomputed twiddles for an n^3 transform."""
    if not is_power_of_two(n) or not MIN_N <= n <= MAX_N:
        raise UnsupportedSizeError(
            f"supported sizes are powers of two in [{MIN_N}, {MAX_N}], got {n!r}"
        )
    n = int(n)
    cfg = tile_cfg or default_tile_config(n)
    if n % cfg.tile != 0:
        raise ConfigurationError(f"tile {cfg.tile} does not divide n={n}")
    schedule = make_schedule(n) if n >= 8 else None
    table = twiddle_table(n, spec)
    table.setflags(write=False)
    return Plan(n=n, spec=spec, schedule=schedule, twiddles=table, tile_cfg=cfg)


def _resolve_threads(threads) -> int:
    t = 1 if threads is None else int(threads)
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            t = min(t, int(cap))
        except ValueError:
            pass
    return max(1, t)


def _fft_phase(a: np.ndarray, p: Plan, inverse: bool, threads: int) -> np.ndarray:
    """FFT every pencil along the fastest axis; pencils are independent."""
    n = p.n
    flat = a.reshape(-1, n)
    if threads <= 1 or flat.shape[0] < 2 * threads:
        out = _fft_batch(flat, p.twiddles, p.spec, inverse)
        return out.reshape(n, n, n)
    out = np.empty_like(flat)
    bounds = np.linspace(0, flat.shape[0], threads + 1, dtype=int)

    def run(lo, hi):
        out[lo:hi] = _fft_batch(flat[lo:hi], p.twiddles, p.spec, inverse)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(lambda b: run(*b), zip(bounds[:-1], bounds[1:])))
    return out.reshape(n, n, n)


def execute(p: Plan, tensor, direction: str = "forward", threads: int = None) -> np.ndarray:
    """Run the plan on an n^3 grid and return the transformed grid.

    Input and output are indexed ``[z, y, x]`` / ``[kz, ky, kx]`` with the
    last axis fastest; output is in natural (not bit-reversed) order.
    """
    d = check_direction(direction)
    a = check_cube(tensor, minimum=MIN_N)
    if a.shape[0] != p.n:
        raise ValueError(f"tensor edge {a.shape[0]} does not match plan n={p.n}")
    inverse = d == "inverse"
    nthreads = _resolve_threads(threads)

    a = np.array(a)  # own the buffer; never mutate caller data
    a = _fft_phase(a, p, inverse, nthreads)          # x-pencils -> kx
    a = transpose_planes(a, p.tile_cfg)              # per-plane swap: y fastest
    a = _fft_phase(a, p, inverse, nthreads)          # y-pencils -> ky
    a = transpose3d_zx(a)                            # rotate: z fastest
    a = _fft_phase(a, p, inverse, nthreads)          # z-pencils -> kz
    return np.ascontiguousarray(a.transpose(2, 1, 0))  # restore (kx, ky, kz) indexing
