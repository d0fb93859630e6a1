"""Band structure of the periodized sample, Floquet matrices and the
measure-style estimates tied to them (Thouless conductance, Bloch-phase
sublevel sets, transfer-norm exceedance sets).

Band edges come from the two real-symmetric Floquet eigenproblems (periodic
and antiperiodic boundary phases).  For strongly localized samples the band
widths drop below what eigenvalue differences can resolve in doubles; those
widths are refined from the discriminant slope, 4 / |d tr T / dE| at the
band center, which stays accurate to relative rounding no matter how thin
the band is.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .numerics import (
    BandedCornerMatrix,
    BracketError,
    ValidationError,
    banded_corner_det,
    brent_root,
    eig_hermitian,
)
from .sample import Potential, periodize
from .transfer import (
    discriminant,
    discriminant_derivative,
    discriminant_value,
    transfer_norm,
    transfer_norm_grid,
)

THIN_BAND = 1e-6  # below this, eigenvalue differences are replaced by slope widths


@dataclass(frozen=True)
class Band:
    """One closed spectral band [lo, hi] with a separately tracked width.

    ``width`` equals hi - lo for ordinary bands; for bands thinner than the
    eigensolver can resolve it carries the slope-refined value, which may be
    far below the floating-point spacing of the edges themselves.
    """

    lo: float
    hi: float
    width: float
    lo_origin: str
    hi_origin: str

    @property
    def center(self) -> float:
        return 0.5 * (self.lo + self.hi)


@dataclass(frozen=True)
class BandStructure:
    bands: tuple

    def total_measure(self) -> float:
        return sum(b.width for b in self.bands)

    def measure_in(self, lo: float, hi: float) -> float:
        """Lebesgue measure of (spectrum intersect (lo, hi)), exact interval arithmetic."""
        total = 0.0
        for band in self.bands:
            if band.hi <= lo or band.lo >= hi:
                continue
            if band.lo >= lo and band.hi <= hi:
                total += band.width
            else:
                total += max(min(band.hi, hi) - max(band.lo, lo), 0.0)
        return total

    def to_json_dict(self) -> dict:
        return {"bands": [[b.lo, b.hi] for b in self.bands]}


def _interval_bounds(interval) -> tuple:
    if hasattr(interval, "mu_l"):
        lo, hi = float(interval.mu_l), float(interval.mu_r)
    else:
        lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise ValidationError(f"degenerate interval ({lo}, {hi})")
    return lo, hi


def floquet_matrix(p: Potential, k: float, offset: int = 0) -> np.ndarray:
    """L x L Bloch-reduced Hamiltonian: diagonal v_per(offset + j), hopping -1,
    and corner phases -exp(-+ i k L).  For L <= 2 the corner terms land on
    band slots and are summed in, which reproduces the scalar v - 2 cos k
    at L = 1."""
    L = len(p)
    h = np.zeros((L, L), dtype=complex)
    for j in range(L):
        h[j, j] = periodize(p, offset + j + 1)
    for j in range(L - 1):
        h[j, j + 1] += -1.0
        h[j + 1, j] += -1.0
    phase = cmath.exp(-1j * k * L)
    if L == 1:
        h[0, 0] += -phase - phase.conjugate()
    else:
        h[0, L - 1] += -phase
        h[L - 1, 0] += -phase.conjugate()
    return h


@lru_cache(maxsize=256)
def band_edges(p: Potential) -> BandStructure:
    """Spectral bands of the periodized sample, via the k = 0 and k = pi/L
    eigenvalue interleaving."""
    L = len(p)
    per = eig_hermitian(floquet_matrix(p, 0.0).real)
    anti = eig_hermitian(floquet_matrix(p, math.pi / L).real)
    bands = []
    prev_hi = -math.inf
    for e0, epi in zip(per, anti):
        lo, hi = (e0, epi) if e0 <= epi else (epi, e0)
        lo_origin = "periodic" if e0 <= epi else "antiperiodic"
        hi_origin = "antiperiodic" if e0 <= epi else "periodic"
        # eigenvalue rounding can overlap neighbors by ~1e-14; keep them ordered
        if lo < prev_hi:
            lo = prev_hi
        if hi < lo:
            hi = lo
        width = hi - lo
        if width < THIN_BAND:
            width = _slope_width(p, 0.5 * (lo + hi), width)
        bands.append(Band(lo, hi, width, lo_origin, hi_origin))
        prev_hi = hi
    return BandStructure(tuple(bands))


def _slope_width(p: Potential, center: float, raw_width: float) -> float:
    """Band width as 4 / |d(tr T)/dE| at the band center.

    Exact to relative rounding when the band is much thinner than the level
    spacing; exactly right whenever the discriminant slope is constant.
    """
    tr, dtr, ls = discriminant_derivative(p, center)
    if dtr == 0.0:
        return raw_width
    log_width = math.log(4.0) - (math.log(abs(dtr)) + ls)
    if log_width < -745.0:
        return 0.0
    return math.exp(min(log_width, 709.0))


def spectrum_measure(bs: BandStructure, interval) -> float:
    lo, hi = _interval_bounds(interval)
    return bs.measure_in(lo, hi)


def thouless_conductance(p: Potential, interval) -> float:
    """|spectrum intersect I| / (2 pi |I|); always within [0, 1/(2 pi)]."""
    lo, hi = _interval_bounds(interval)
    return band_edges(p).measure_in(lo, hi) / (2.0 * math.pi * (hi - lo))


def dispersion(p: Potential, k: float) -> np.ndarray:
    """Ascending Floquet eigenvalues E_1(k) .. E_L(k)."""
    return eig_hermitian(floquet_matrix(p, k))


@dataclass(frozen=True)
class CharacteristicCheck:
    lhs: complex
    rhs: complex
    gap: float


def characteristic_check(p: Potential, k: float, z: complex, offset: int = 0) -> CharacteristicCheck:
    """Cross-validates det(H(k, offset) - z) against tr T(L, z) - 2 cos(kL).

    The determinant comes from the banded solver (log-magnitude + phase), the
    trace from the renormalized transfer product: two fully independent
    computations.  The reported gap is relative to max(1, |lhs|).
    """
    L = len(p)
    z = complex(z)
    diag = np.array([periodize(p, offset + j + 1) - z for j in range(L)], dtype=complex)
    off = np.full(max(L - 1, 0), -1.0, dtype=complex)
    phase = cmath.exp(-1j * k * L)
    a = BandedCornerMatrix(diag, off, off, corner_top=-phase, corner_bot=-phase.conjugate())
    log_mag, det_phase = banded_corner_det(a)
    lhs = math.exp(min(log_mag, 709.0)) * cmath.exp(1j * det_phase)
    mant, ls = discriminant(p, z)
    rhs = mant * math.exp(min(ls, 709.0)) - 2.0 * math.cos(k * L)
    gap = abs(lhs - rhs) / max(1.0, abs(lhs))
    return CharacteristicCheck(lhs, rhs, gap)


def dispersion_slope_check(p: Potential, k_grid: int) -> float:
    """Max |dE_l/dk| over (0, pi/L) by central differences on sorted branches."""
    if k_grid < 16:
        raise ValidationError("k_grid must be at least 16")
    L = len(p)
    ks = np.linspace(0.0, math.pi / L, k_grid + 1)
    levels = np.empty((k_grid + 1, L))
    for i, k in enumerate(ks):
        levels[i] = dispersion(p, float(k))
    dk = ks[1] - ks[0]
    slopes = np.abs(levels[2:] - levels[:-2]) / (2.0 * dk)
    return float(slopes.max())


@lru_cache(maxsize=256)
def _band_zero_energies(p: Potential) -> tuple:
    """Per band, the energy where the discriminant crosses zero (None if thin)."""
    zeros = []
    for band in band_edges(p).bands:
        if band.hi - band.lo < THIN_BAND:
            zeros.append(None)
            continue
        f = lambda e: discriminant_value(p, e)
        try:
            zeros.append(brent_root(f, band.lo, band.hi, 1e-13))
        except BracketError:
            zeros.append(band.center)
    return tuple(zeros)


def theta_sublevel_measure(p: Potential, eps: float) -> float:
    """Measure of {E in spectrum : |sin theta(L, E)| <= eps}.

    Inside each band this set is two edge layers cut out by
    |tr T| >= 2 sqrt(1 - eps^2); their boundaries are located by bracketed
    root finding on the discriminant.  Bands too thin to resolve use the
    frozen-slope layer fraction 1 - sqrt(1 - eps^2) of their width.
    """
    if not (0.0 <= eps <= 1.0):
        raise ValidationError("eps must lie in [0, 1]")
    if eps == 0.0:
        return 0.0
    bs = band_edges(p)
    if eps >= 1.0:
        return bs.total_measure()
    thr2 = 4.0 * (1.0 - eps * eps)
    thin_fraction = 1.0 - math.sqrt(1.0 - eps * eps)
    total = 0.0
    for band, e0 in zip(bs.bands, _band_zero_energies(p)):
        if band.hi - band.lo < THIN_BAND:
            total += band.width * thin_fraction
            continue
        g = lambda e: discriminant_value(p, e) ** 2 - thr2
        left = band.lo
        try:
            left = brent_root(g, band.lo, e0, 1e-13)
        except BracketError:
            pass
        right = band.hi
        try:
            right = brent_root(g, e0, band.hi, 1e-13)
        except BracketError:
            pass
        total += (left - band.lo) + (band.hi - right)
    return total


@dataclass(frozen=True)
class GridMeasure:
    """A grid-estimated measure together with the largest grid cell used."""

    measure: float
    resolution: float


def norm_exceedance_measure(p: Potential, eps: float, grid: int) -> GridMeasure:
    """Grid estimate of |{E in spectrum : ||T(L, E)|| > 8 pi / eps^2}|.

    ``grid`` is the number of sample points per band.  Bands too thin to grid
    are classified whole by the norm at their center (the norm is essentially
    constant across such a band).
    """
    if not (eps > 0.0):
        raise ValidationError("eps must be positive")
    if grid < 1000:
        raise ValidationError("need at least 1000 grid points per band")
    thr_log = math.log(8.0 * math.pi / (eps * eps))
    total = 0.0
    resolution = 0.0
    for band in band_edges(p).bands:
        if band.width <= 0.0:
            continue
        if band.hi - band.lo < THIN_BAND:
            _, log_norm = transfer_norm(p, band.center)
            if log_norm > thr_log:
                total += band.width
            continue
        span = band.hi - band.lo
        energies = band.lo + (np.arange(grid) + 0.5) * (span / grid)
        log_norms = transfer_norm_grid(p, energies)
        total += span * float(np.count_nonzero(log_norms > thr_log)) / grid
        resolution = max(resolution, span / grid)
    return GridMeasure(total, resolution)
