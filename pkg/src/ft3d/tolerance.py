"""Precision-tolerance harness: spectral Hartree energy of a Gaussian charge.

The electrostatic self-energy of a periodic charge density is the simplest
plane-wave quantity that routes every sample through the 3D transform and
still has an analytic cross-check, which makes it a good probe for how FFT
rounding error propagates into a physical total.  The reciprocal-space sum

    E = (2*pi/L^3) * sum_{k != 0} |rho_hat(k)|^2 / |k|^2

uses wavevectors k = 2*pi*m/L with signed integers m in [-n/2, n/2) mapped
from FFT bins; the k = 0 term is dropped (neutralizing background).  Only
the transform runs at the precision under test; the reduction stays at
binary64, mirroring an accelerator offload under a double-precision host.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ResolutionError
from .fft3d import Plan, execute, plan
from .layout import TileConfig
from .precision import DOUBLE, PrecisionSpec
from .validation import check_cube, check_power_of_two

# Coarsest tolerated sampling of the Gaussian, in grid spacings.  1.5 keeps
# the spectral tail at the grid's Nyquist edge below exp(-(1.5*pi)^2) ~ 2e-10.
MIN_SIGMA_OVER_SPACING = 1.5


@dataclass(frozen=True)
class GridSpec:
    """Cubic periodic box sampled on an n^3 grid."""

    n: int
    box_length: float

    def __post_init__(self):
        check_power_of_two(self.n, minimum=4, what="n")
        if not self.box_length > 0:
            raise ValueError(f"box_length must be positive, got {self.box_length}")

    @property
    def spacing(self) -> float:
        return self.box_length / self.n


@dataclass(frozen=True)
class EnergyResult:
    energy: float
    precision: PrecisionSpec
    k0_dropped: bool = True


@dataclass(frozen=True)
class SweepRow:
    precision: PrecisionSpec
    energy: float
    rel_error_vs_double: float


def gaussian_density(grid: GridSpec, q: float, sigma: float, center=None) -> np.ndarray:
    """Sample a normalized periodic Gaussian of charge q and width sigma.

    Distances use the minimum-image convention, so the density is smooth
    across the periodic boundary.  Result is a complex grid with zero
    imaginary part, indexed [z, y, x].
    """
    if sigma < MIN_SIGMA_OVER_SPACING * grid.spacing:
        raise ResolutionError(
            f"sigma={sigma} under-resolved: need sigma >= "
            f"{MIN_SIGMA_OVER_SPACING} * spacing = {MIN_SIGMA_OVER_SPACING * grid.spacing:.4g}"
        )
    L = grid.box_length
    if center is None:
        center = (L / 2, L / 2, L / 2)
    if len(center) != 3 or not all(0 <= c <= L for c in center):
        raise ValueError(f"center must lie inside the box [0, {L}]^3, got {center}")
    cx, cy, cz = center

    coords = np.arange(grid.n) * grid.spacing

    def min_image(c):
        return (coords - c + L / 2) % L - L / 2

    dx, dy, dz = min_image(cx), min_image(cy), min_image(cz)
    r2 = (
        dz[:, np.newaxis, np.newaxis] ** 2
        + dy[np.newaxis, :, np.newaxis] ** 2
        + dx[np.newaxis, np.newaxis, :] ** 2
    )
    rho = q * (2 * np.pi * sigma**2) ** -1.5 * np.exp(-r2 / (2 * sigma**2))
    return rho.astype(np.complex128)


def hartree_energy(rho, grid: GridSpec, p: Plan) -> EnergyResult:
    """Electrostatic self-energy of a real periodic density, via the plan's FFT."""
    a = check_cube(rho)
    if a.shape[0] != grid.n or p.n != grid.n:
        raise ValueError("density, grid, and plan sizes must agree")
    norm = np.linalg.norm(a)
    if norm > 0 and np.linalg.norm(a.imag) > 1e-12 * norm:
        raise ValueError("density must be real-valued")

    rho_hat = execute(p, a, "forward") * grid.spacing**3
    k = 2 * np.pi * np.fft.fftfreq(grid.n, d=grid.spacing)
    k2 = (
        k[:, np.newaxis, np.newaxis] ** 2
        + k[np.newaxis, :, np.newaxis] ** 2
        + k[np.newaxis, np.newaxis, :] ** 2
    )
    weight = (rho_hat.real**2 + rho_hat.imag**2).astype(np.float64)
    k2[0, 0, 0] = 1.0
    weight[0, 0, 0] = 0.0
    energy = 2 * np.pi / grid.box_length**3 * float(np.sum(weight / k2))
    return EnergyResult(energy=energy, precision=p.spec, k0_dropped=True)


def precision_sweep(grid: GridSpec, q: float, sigma: float, specs, center=None,
                    tile_cfg: TileConfig = None) -> list:
    """Energy at each precision, with relative deviation from the double run."""
    specs = list(specs)
    if not specs:
        raise ValueError("specs must be non-empty")
    rho = gaussian_density(grid, q, sigma, center)
    reference = hartree_energy(rho, grid, plan(grid.n, DOUBLE, tile_cfg)).energy
    rows = []
    for spec in specs:
        e = hartree_energy(rho, grid, plan(grid.n, spec, tile_cfg)).energy
        rel = abs(e - reference) / abs(reference) if reference != 0 else 0.0
        rows.append(SweepRow(precision=spec, energy=e, rel_error_vs_double=rel))
    return rows


def reference_energy(q: float, sigma: float, box_length: float) -> float:
    """FFT-free analytic reference for the periodic Gaussian self-energy.

    Sums the closed-form Fourier coefficients rho_hat(k) = q*exp(-sigma^2*k^2/2)
    directly over the reciprocal lattice until the Gaussian tail is exhausted.
    Agrees with the closed form

        q^2/(2*sqrt(pi)*sigma) + xi*q^2/(2*L) + 2*pi*sigma^2*q^2/L^3,

    xi = -2.837297479... (simple-cubic Wigner constant), to machine precision
    for well-separated images.
    """
    L = box_length
    # keep terms until exp(-sigma^2 G^2) < 1e-20
    mmax = int(math.ceil(L * math.sqrt(math.log(1e20)) / (2 * math.pi * sigma))) + 1
    m = np.arange(-mmax, mmax + 1)
    m2 = (
        m[:, np.newaxis, np.newaxis] ** 2
        + m[np.newaxis, :, np.newaxis] ** 2
        + m[np.newaxis, np.newaxis, :] ** 2
    ).astype(np.float64)
    g2 = (2 * np.pi / L) ** 2 * m2
    mask = m2 > 0
    s = float(np.sum(np.exp(-sigma**2 * g2[mask]) / g2[mask]))
    return 2 * np.pi * q**2 / L**3 * s
