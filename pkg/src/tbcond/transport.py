"""Transmission coefficients and conductances.

The two-reservoir problem is reduced exactly to the sample: eliminating the
reservoir degrees of freedom (Schur complement of the coupled resolvent)
leaves an L x L tridiagonal system whose endpoint diagonal entries acquire
the complex shifts -kappa^2 F_{l/r}(E).  See docs/effective_hamiltonian.md
for the two-line derivation.  The crystalline transmission is evaluated from
the m-functions instead, and the N-fold repetition sequence ties the two
together numerically.

All per-energy evaluations are pure; the conductance integrals refine
deterministically, so results are bit-identical run to run.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .numerics import (
    AccuracyError,
    BandedCornerMatrix,
    NumericsError,
    ValidationError,
    integrate_adaptive,
    solve_banded_corner,
)
from .periodic import THIN_BAND, band_edges
from .reservoirs import (
    EnergyInterval,
    Reservoir,
    TransparencyResult,
    reservoir_F,
    transparency_check,
)
from .sample import Potential, repeat
from .transfer import (
    BandEdgeDegenerateError,
    OutsideSpectrumError,
    _scan_scalar,
    bloch_data,
    discriminant_derivative,
    discriminant_value,
    transfer_norm,
)

EDGE_INSET = 1e-12  # quadrature keeps this far away from band edges
_THIN_INTEGRATE = 1e-10  # bands thinner than the edge accuracy take the theta path


class TransparencyError(NumericsError):
    """The energy window is not inside both reservoir supports."""


@dataclass(frozen=True)
class EBBConfig:
    """Finite sample coupled at both endpoints to two reservoirs."""

    sample: Potential
    kappa: float
    left: Reservoir
    right: Reservoir

    def __post_init__(self):
        if self.kappa == 0 or not math.isfinite(self.kappa):
            raise ValidationError("coupling kappa must be finite and nonzero")


def _interval(iv) -> EnergyInterval:
    if isinstance(iv, EnergyInterval):
        return iv
    return EnergyInterval(float(iv[0]), float(iv[1]))


def _green_corner(cfg: EBBConfig, energy: float, f_left: complex, f_right: complex) -> complex:
    n = len(cfg.sample)
    k2 = cfg.kappa * cfg.kappa
    diag = cfg.sample.as_array().astype(complex)
    diag -= energy
    diag[0] -= k2 * f_left
    diag[n - 1] -= k2 * f_right
    off = np.full(n - 1, -1.0, dtype=complex)
    rhs = np.zeros(n, dtype=complex)
    rhs[n - 1] = 1.0
    sol = solve_banded_corner(BandedCornerMatrix(diag, off, off), rhs)
    return complex(sol.x[0])


def effective_green_corner(cfg: EBBConfig, energy: float) -> complex:
    """Corner entry (1, L) of the inverse effective sample operator
    h_S - E - kappa^2 F_l |1><1| - kappa^2 F_r |L><L|."""
    return _green_corner(cfg, energy, reservoir_F(cfg.left, energy), reservoir_F(cfg.right, energy))


def lb_transmission(cfg: EBBConfig, energy: float) -> float:
    """Two-reservoir transmission probability at one energy; zero off the
    joint reservoir support, clamped against ~1e-12 unitarity rounding."""
    try:
        f_left = reservoir_F(cfg.left, energy)
        f_right = reservoir_F(cfg.right, energy)
    except BandEdgeDegenerateError:
        return 0.0
    if f_left.imag <= 0.0 or f_right.imag <= 0.0:
        return 0.0
    g = _green_corner(cfg, energy, f_left, f_right)
    k2 = cfg.kappa * cfg.kappa
    t = 4.0 * k2 * k2 * (g.real * g.real + g.imag * g.imag) * f_left.imag * f_right.imag
    if t > 1.0 + 1e-9:
        raise NumericsError(f"transmission {t} exceeds the unitarity bound at E={energy}")
    return min(max(t, 0.0), 1.0)


def _clb_from_m(m_left: complex, m_right: complex, z_left: complex, z_right: complex) -> float:
    num_r = abs(m_right - z_right) ** 2
    num_l = abs(m_left - z_left) ** 2
    den_r = m_right.imag * z_right.imag
    den_l = m_left.imag * z_left.imag
    if den_r <= 0.0 or den_l <= 0.0:
        return 1.0 if num_r == 0.0 and num_l == 0.0 else 0.0
    q = 0.25 * (num_r / den_r + num_l / den_l)
    return 1.0 / (1.0 + q)


def clb_transmission(cfg: EBBConfig, energy: float) -> float:
    """Crystalline transmission: zero off spectrum-and-supports, otherwise the
    m-function mismatch formula, always in [0, 1]."""
    try:
        bd = bloch_data(cfg.sample, energy)
    except OutsideSpectrumError:
        return 0.0
    try:
        f_left = reservoir_F(cfg.left, energy)
        f_right = reservoir_F(cfg.right, energy)
    except BandEdgeDegenerateError:
        return 0.0
    if f_left.imag <= 0.0 or f_right.imag <= 0.0:
        return 0.0
    k2 = cfg.kappa * cfg.kappa
    return _clb_from_m(bd.m_left, bd.m_right, k2 * f_left, k2 * f_right)


def _integrate_segments(f, segments, abs_tol, total_len):
    """Adaptive integral over disjoint segments with a shared error budget.

    Returns (value, exhausted): quadrature that ran out of depth contributes
    its best estimate and flips the flag instead of aborting the whole sweep.
    """
    total = 0.0
    exhausted = False
    for a, b in segments:
        if b <= a:
            continue
        seg_tol = max(abs_tol * (b - a) / total_len, 1e-16)
        try:
            total += integrate_adaptive(f, a, b, seg_tol)
        except AccuracyError as exc:
            total += exc.estimate
            exhausted = True
    return total, exhausted


def lb_conductance(cfg: EBBConfig, interval, tol: float) -> float:
    """Window-averaged transmission (2 pi |I|)^-1 Int_I T_LB(E) dE."""
    iv = _interval(interval)
    if not (tol > 0.0):
        raise ValidationError("tol must be positive")
    # cut at the free-lead support edges so each piece is smooth
    cuts = [iv.mu_l]
    for c in (-2.0, 2.0):
        if iv.mu_l < c < iv.mu_r:
            cuts.append(c)
    cuts.append(iv.mu_r)
    segments = list(zip(cuts[:-1], cuts[1:]))
    abs_tol = tol * 2.0 * math.pi * iv.width
    value, exhausted = _integrate_segments(
        lambda e: lb_transmission(cfg, e), segments, abs_tol, iv.width
    )
    g = value / (2.0 * math.pi * iv.width)
    if exhausted:
        raise AccuracyError(f"LB conductance quadrature did not reach tol={tol}", g)
    return g


def _thin_band_clb(cfg: EBBConfig, center: float, width: float) -> float:
    """Crystalline band integral for a band far below edge resolution.

    Across such a band the transfer product and the reservoir functions are
    constant to rounding; only the Bloch eigenvalue sweeps the unit circle.
    Parametrizing by theta with dE = 2 sin(theta) / |d tr T / dE| dtheta turns
    the integral into a smooth fixed quadrature regardless of the width.
    """
    try:
        f_left = reservoir_F(cfg.left, center)
        f_right = reservoir_F(cfg.right, center)
    except BandEdgeDegenerateError:
        return 0.0
    if f_left.imag <= 0.0 or f_right.imag <= 0.0:
        return 0.0
    tr, dtr, ls = discriminant_derivative(cfg.sample, center)
    if dtr == 0.0:
        return 0.0
    log_pref = math.log(2.0) - (math.log(abs(dtr)) + ls)
    if log_pref < -700.0:
        return 0.0
    pref = math.exp(log_pref)
    t11, t12, t21, t22, ls2 = _scan_scalar(cfg.sample.values, float(center))
    if t12 == 0.0:
        return 0.0
    sign = 1 if t12 > 0.0 else -1
    scale = math.exp(-ls2) if ls2 < 745.0 else 0.0
    k2 = cfg.kappa * cfg.kappa
    z_left = k2 * f_left
    z_right = k2 * f_right

    def integrand(theta: float) -> float:
        lam = scale * complex(math.cos(theta), sign * math.sin(theta))
        w = (lam - t11) / t12
        if w.imag <= 0.0:
            return 0.0
        return _clb_from_m(w, 1.0 / w.conjugate(), z_left, z_right) * math.sin(theta)

    panels = 256
    h = math.pi / panels
    acc = integrand(0.0) + integrand(math.pi)
    for j in range(1, panels):
        acc += integrand(j * h) * (4.0 if j % 2 else 2.0)
    return pref * acc * h / 3.0


def _band_segments(cfg: EBBConfig, iv: EnergyInterval):
    """Split the window at band edges; yields ('wide', a, b) pieces with the
    edge inset applied and ('thin', center, width) pieces for bands below
    edge resolution whose center falls inside the window."""
    for band in band_edges(cfg.sample).bands:
        if band.hi - band.lo < _THIN_INTEGRATE:
            if iv.mu_l < band.center < iv.mu_r:
                yield ("thin", band.center, band.width)
            continue
        a = max(band.lo, iv.mu_l) + EDGE_INSET
        b = min(band.hi, iv.mu_r) - EDGE_INSET
        if b > a:
            yield ("wide", a, b)


def clb_conductance(cfg: EBBConfig, interval, tol: float) -> float:
    """(2 pi |I|)^-1 Int_I T_CLB(E) dE with band-aware segmentation."""
    iv = _interval(interval)
    if not (tol > 0.0):
        raise ValidationError("tol must be positive")
    abs_tol = tol * 2.0 * math.pi * iv.width
    total = 0.0
    exhausted = False
    wide = []
    for kind, x, y in _band_segments(cfg, iv):
        if kind == "thin":
            total += _thin_band_clb(cfg, x, y)
        else:
            wide.append((x, y))
    part, exhausted = _integrate_segments(
        lambda e: clb_transmission(cfg, e), wide, abs_tol, iv.width
    )
    total += part
    g = total / (2.0 * math.pi * iv.width)
    if exhausted:
        raise AccuracyError(f"CLB conductance quadrature did not reach tol={tol}", g)
    return g


def repeated_lb_conductance(cfg: EBBConfig, n_copies: int, interval, tol: float) -> float:
    """LB conductance of the N-fold repeated sample, reservoirs unchanged."""
    if n_copies < 1:
        raise ValidationError("repetition count must be at least 1")
    return lb_conductance(replace(cfg, sample=repeat(cfg.sample, n_copies)), interval, tol)


@dataclass(frozen=True)
class LowerBoundCheck:
    lhs: float
    rhs: float
    ok: bool
    delta: float
    bound: float
    constant: float


def clb_lower_bound_check(cfg: EBBConfig, interval, tol: float) -> LowerBoundCheck:
    """Tests G_CLB >= (2 pi |I|)^-1 Int [1 + C ||T|| / |sin theta|]^-1 dE with
    the explicit constant C = 2 max(kappa^2 M^2 / delta, 1 / (kappa^2 delta)),
    where delta and M bound Im F and |F| over the window.
    """
    iv = _interval(interval)
    tc = transparency_check(cfg.left, cfg.right, iv, grid=512)
    if not tc.ok:
        raise TransparencyError(
            f"window ({iv.mu_l}, {iv.mu_r}) is not inside both reservoir supports"
        )
    k2 = cfg.kappa * cfg.kappa
    const = 2.0 * max(k2 * tc.bound * tc.bound / tc.delta, 1.0 / (k2 * tc.delta))
    log_const = math.log(const)
    p = cfg.sample

    def integrand(e: float) -> float:
        delta = discriminant_value(p, e)
        s2 = 1.0 - 0.25 * delta * delta
        if s2 <= 0.0:
            return 0.0
        _, log_norm = transfer_norm(p, e)
        ln = log_const + log_norm - 0.5 * math.log(s2)
        if ln > 36.0:
            return math.exp(-ln)
        return 1.0 / (1.0 + math.exp(ln))

    lhs = clb_conductance(cfg, iv, tol)
    abs_tol = tol * 2.0 * math.pi * iv.width
    wide = [(a, b) for kind, a, b in _band_segments(cfg, iv) if kind == "wide"]
    value, _ = _integrate_segments(integrand, wide, abs_tol, iv.width)
    rhs = value / (2.0 * math.pi * iv.width)
    return LowerBoundCheck(
        lhs=lhs, rhs=rhs, ok=lhs >= rhs - tol, delta=tc.delta, bound=tc.bound, constant=const
    )
