"""Data reorganization between FFT phases: tiled 2D transpose and 3D rotation.

Grids are numpy cubes indexed ``[z, y, x]`` (x fastest in memory, matching
the flat layout ``x + n*y + n*n*z``).  Both transposes are value-exact
permutations; the tile edge and staging-buffer count change the copy
schedule only, never the values.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .validation import check_cube, check_square


@dataclass(frozen=True)
class TileConfig:
    """Blocking of the plane transpose: tile edge and staging-buffer count.

    Two or more buffers mirror the double-buffered hardware pipeline that
    keeps the stream from stalling while a tile drains.
    """

    tile: int = 8
    buffers: int = 2

    def __post_init__(self):
        if self.tile < 1:
            raise ConfigurationError(f"tile must be >= 1, got {self.tile}")
        if self.buffers < 2:
            raise ConfigurationError(f"buffers must be >= 2, got {self.buffers}")


def default_tile_config(n: int) -> TileConfig:
    """Default blocking for an n-point grid: 8-wide tiles, double buffered."""
    return TileConfig(tile=min(8, n), buffers=2)


def _check_tile(n: int, cfg: TileConfig) -> TileConfig:
    if n % cfg.tile != 0:
        raise ConfigurationError(f"tile {cfg.tile} does not divide n={n}")
    return cfg


def transpose2d(plane, cfg: TileConfig = None) -> np.ndarray:
    """Transpose an n-by-n plane tile-by-tile through staging buffers.

    out[i][j] = in[j][i]; an involution.
    """
    a = check_square(plane)
    n = a.shape[0]
    cfg = _check_tile(n, cfg or default_tile_config(n))
    t = cfg.tile
    out = np.empty_like(a)
    staging = [np.empty((t, t), dtype=a.dtype) for _ in range(cfg.buffers)]
    turn = 0
    for i0 in range(0, n, t):
        for j0 in range(0, n, t):
            buf = staging[turn]
            turn = (turn + 1) % cfg.buffers
            buf[...] = a[i0 : i0 + t, j0 : j0 + t]
            out[j0 : j0 + t, i0 : i0 + t] = buf.T
    return out


def transpose_planes(cube, cfg: TileConfig = None) -> np.ndarray:
    """Apply the tiled 2D transpose to every plane along the slowest axis."""
    a = check_cube(cube)
    n = a.shape[-1]
    cfg = _check_tile(n, cfg or default_tile_config(n))
    t = cfg.tile
    out = np.empty_like(a)
    staging = [np.empty((n, t, t), dtype=a.dtype) for _ in range(cfg.buffers)]
    turn = 0
    for i0 in range(0, n, t):
        for j0 in range(0, n, t):
            buf = staging[turn]
            turn = (turn + 1) % cfg.buffers
            buf[...] = a[:, i0 : i0 + t, j0 : j0 + t]
            out[:, j0 : j0 + t, i0 : i0 + t] = buf.swapaxes(1, 2)
    return out


def transpose3d_zx(tensor) -> np.ndarray:
    """Rotate axes so the z-dimension becomes the fastest-varying one.

    The element at (x, y, z) moves to (z, x, y); applying the rotation three
    times restores the original tensor bit-for-bit.
    """
    a = check_cube(tensor)
    return np.ascontiguousarray(a.transpose(1, 2, 0))
