"""Parametric reservoir models and their Herglotz boundary functions.

Three families cover everything the transport formulas need: the free
semi-infinite lead (transparent on (-2, 2)), a flat wide-band coupling
(transparent everywhere), and the matched reservoir whose boundary function
reproduces the sample's own m-function, which is the reflectionless choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .numerics import ValidationError
from .sample import Potential
from .transfer import (
    BandEdgeDegenerateError,
    OutsideSpectrumError,
    _scan_scalar,
    bloch_data,
)


@dataclass(frozen=True)
class EnergyInterval:
    """Chemical-potential window (mu_l, mu_r) with mu_l < mu_r."""

    mu_l: float
    mu_r: float

    def __post_init__(self):
        if not (math.isfinite(self.mu_l) and math.isfinite(self.mu_r)):
            raise ValidationError("interval endpoints must be finite")
        if not self.mu_l < self.mu_r:
            raise ValidationError("require mu_l < mu_r")

    @property
    def width(self) -> float:
        return self.mu_r - self.mu_l


@dataclass(frozen=True)
class Reservoir:
    """One reservoir attached to a sample endpoint.

    model: "free_lead" | "wide_band" | "matched"
    side:  "l" or "r"; only the matched model cares, since it must reproduce
           the m-function of the half-line it replaces.
    """

    model: str
    side: str = "l"
    gamma: float = 0.0
    base: Potential | None = None
    kappa: float = 1.0

    def __post_init__(self):
        if self.model not in ("free_lead", "wide_band", "matched"):
            raise ValidationError(f"unknown reservoir model {self.model!r}")
        if self.side not in ("l", "r"):
            raise ValidationError("side must be 'l' or 'r'")
        if self.model == "wide_band" and not (self.gamma > 0):
            raise ValidationError("wide_band requires gamma > 0")
        if self.model == "matched":
            if self.base is None:
                raise ValidationError("matched reservoir needs its sample potential")
            if self.kappa == 0:
                raise ValidationError("matched reservoir needs kappa != 0")


def free_lead(side: str = "l") -> Reservoir:
    return Reservoir("free_lead", side=side)


def wide_band(gamma: float, side: str = "l") -> Reservoir:
    return Reservoir("wide_band", side=side, gamma=float(gamma))


def matched(base: Potential, kappa: float, side: str) -> Reservoir:
    return Reservoir("matched", side=side, base=base, kappa=float(kappa))


def _free_lead_value(energy: float) -> complex:
    # boundary value of the decaying branch of (-E + sqrt(E^2 - 4)) / 2
    if abs(energy) <= 2.0:
        return complex(-0.5 * energy, 0.5 * math.sqrt(4.0 - energy * energy))
    root = math.sqrt(energy * energy - 4.0)
    return complex(0.5 * (-energy + root) if energy > 2.0 else 0.5 * (-energy - root), 0.0)


def _matched_value(r: Reservoir, energy: float) -> complex:
    """kappa^-2 times the sample m-function; real (outside the support) when
    the energy falls in a spectral gap."""
    inv_k2 = 1.0 / (r.kappa * r.kappa)
    try:
        bd = bloch_data(r.base, energy)
        return inv_k2 * (bd.m_left if r.side == "l" else bd.m_right)
    except BandEdgeDegenerateError:
        raise
    except OutsideSpectrumError:
        pass
    # gap energy: real boundary value from the real Floquet multipliers
    t11, t12, t21, t22, ls = _scan_scalar(r.base.values, float(energy))
    tr = t11 + t22
    det_scaled = math.exp(-2.0 * ls)
    disc = math.sqrt(max(tr * tr - 4.0 * det_scaled, 0.0))
    lam_big = 0.5 * (tr + math.copysign(disc, tr))
    if r.side == "l":
        m = _eigvec_ratio(t11, t12, t21, t22, lam_big)
    else:
        lam_small = det_scaled / lam_big
        w = _eigvec_ratio(t11, t12, t21, t22, lam_small)
        m = math.inf if w == 0.0 else 1.0 / w
    return complex(inv_k2 * m, 0.0)


def _eigvec_ratio(t11, t12, t21, t22, lam):
    """Second component w of the (1, w) eigenvector for eigenvalue lam."""
    if abs(t12) >= abs(lam - t22):
        return (lam - t11) / t12
    return t21 / (lam - t22)


def reservoir_F(r: Reservoir, energy: float) -> complex:
    """Boundary value F(E) of the reservoir's Herglotz function (Im F >= 0)."""
    if not math.isfinite(energy):
        raise ValidationError("energy must be finite")
    if r.model == "wide_band":
        return complex(0.0, r.gamma)
    if r.model == "free_lead":
        return _free_lead_value(energy)
    return _matched_value(r, energy)


@dataclass(frozen=True)
class TransparencyResult:
    ok: bool
    delta: float
    bound: float  # max of |F| over the window, the constant usually called M


def transparency_check(
    left: Reservoir, right: Reservoir, interval: EnergyInterval, grid: int
) -> TransparencyResult:
    """Grid scan of both reservoirs over the window.

    delta is the smallest Im F seen, bound the largest |F|; ok means the
    window sits inside both supports (delta > 0 on every grid point).  The
    grid estimate is optimistic for delta and pessimistic coverage for the
    max, so downstream inequality checks keep an explicit tolerance.
    """
    if grid < 100:
        raise ValidationError("transparency grid must have at least 100 points")
    delta = math.inf
    bound = 0.0
    step = interval.width / (grid - 1)
    for j in range(grid):
        e = interval.mu_l + j * step
        for r in (left, right):
            try:
                f = reservoir_F(r, e)
            except BandEdgeDegenerateError:
                delta = 0.0
                continue
            delta = min(delta, f.imag)
            bound = max(bound, abs(f))
    return TransparencyResult(ok=delta > 0.0, delta=delta, bound=bound)
