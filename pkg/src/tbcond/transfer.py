"""Transfer matrices, the discriminant, Bloch phases and Weyl m-functions.

The product T(L, E) = A(L)...A(1) with A(n) = [[v(n)-E, -1], [1, 0]] is kept
in renormalized form: a stored matrix with max-entry magnitude 1 plus a
log-scale, so products stay finite deep into localized regimes where entries
grow like exp(gamma * L).

Two independent routes to the m-functions are provided: the eigenvector
method on T (``bloch_data``) and a truncated half-line resolvent evaluated
at E + i*eta (``m_oracle``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .numerics import (
    BandedCornerMatrix,
    NumericsError,
    SingularMatrixError,
    ValidationError,
    solve_banded_corner,
)
from .sample import Potential

EDGE_EXCLUSION = 1e-12  # |discriminant| >= 2 - this is treated as a band edge

_LOG2 = math.log(2.0)


class OutsideSpectrumError(NumericsError):
    """Requested a band-interior quantity at an energy off the spectrum."""


class BandEdgeDegenerateError(OutsideSpectrumError):
    """Transfer matrix is (numerically) parabolic: band edge, m-functions degenerate."""


class TruncationError(NumericsError):
    """Half-line truncation came out singular; retry with a larger depth."""

    def __init__(self, message: str, suggested_depth: int):
        super().__init__(message)
        self.suggested_depth = suggested_depth


@dataclass(frozen=True)
class TransferMatrix:
    """Renormalized transfer matrix: true T = matrix * exp(log_scale)."""

    matrix: np.ndarray
    log_scale: float

    def true_matrix(self) -> np.ndarray:
        return self.matrix * math.exp(self.log_scale)

    def det_scaled(self) -> float:
        """det of the true matrix, evaluated via the log scale (should be 1)."""
        m = self.matrix
        return float((m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]) * math.exp(2.0 * self.log_scale))


@dataclass(frozen=True)
class BlochData:
    """Bloch phase and m-functions at a band-interior energy.

    ``sign`` records the realized eigenvalue pairing: T (1, m_left)^T equals
    exp(sign * i * theta) (1, m_left)^T.  The pairing is energy dependent and
    is needed to reassemble T from (theta, m_left).
    """

    theta: float
    m_left: complex
    m_right: complex
    sign: int


def _scan_scalar(values, energy):
    """Renormalized product over the chain at one (possibly complex) energy."""
    t11, t12, t21, t22 = 1.0, 0.0, 0.0, 1.0
    if isinstance(energy, complex):
        t11, t12, t21, t22 = 1 + 0j, 0j, 0j, 1 + 0j
    log_scale = 0.0
    for v in values:
        a = v - energy
        n11 = a * t11 - t21
        n12 = a * t12 - t22
        s = max(abs(n11), abs(n12), abs(t11), abs(t12))
        log_scale += math.log(s)
        inv = 1.0 / s
        t11, t12, t21, t22 = n11 * inv, n12 * inv, t11 * inv, t12 * inv
    return t11, t12, t21, t22, log_scale


def _scan_grid(values, energies: np.ndarray):
    """Vectorized renormalized product over a whole energy grid."""
    shape = energies.shape
    dtype = complex if np.iscomplexobj(energies) else float
    t11 = np.ones(shape, dtype=dtype)
    t12 = np.zeros(shape, dtype=dtype)
    t21 = np.zeros(shape, dtype=dtype)
    t22 = np.ones(shape, dtype=dtype)
    log_scale = np.zeros(shape, dtype=float)
    for v in values:
        a = v - energies
        n11 = a * t11 - t21
        n12 = a * t12 - t22
        s = np.maximum(
            np.maximum(np.abs(n11), np.abs(n12)), np.maximum(np.abs(t11), np.abs(t12))
        )
        log_scale += np.log(s)
        inv = 1.0 / s
        t11, t12, t21, t22 = n11 * inv, n12 * inv, t11 * inv, t12 * inv
    return t11, t12, t21, t22, log_scale


def _scan_scalar_with_derivative(values, energy):
    """Product and its energy derivative, sharing one log scale.

    dA/dE = [[-1, 0], [0, 0]], so the derivative rows follow the same
    two-term recurrence with an extra -T contribution in the first row.
    """
    t11, t12, t21, t22 = 1.0, 0.0, 0.0, 1.0
    d11, d12, d21, d22 = 0.0, 0.0, 0.0, 0.0
    log_scale = 0.0
    for v in values:
        a = v - energy
        n11 = a * t11 - t21
        n12 = a * t12 - t22
        m11 = a * d11 - d21 - t11
        m12 = a * d12 - d22 - t12
        s = max(abs(n11), abs(n12), abs(t11), abs(t12))
        log_scale += math.log(s)
        inv = 1.0 / s
        t11, t12, t21, t22 = n11 * inv, n12 * inv, t11 * inv, t12 * inv
        d11, d12, d21, d22 = m11 * inv, m12 * inv, d11 * inv, d12 * inv
    return (t11, t12, t21, t22), (d11, d12, d21, d22), log_scale


def transfer_matrix(p: Potential, energy: float) -> TransferMatrix:
    """T(L, E) in renormalized form; det * exp(2 log_scale) = 1."""
    if not math.isfinite(energy):
        raise ValidationError("energy must be finite")
    t11, t12, t21, t22, ls = _scan_scalar(p.values, float(energy))
    return TransferMatrix(np.array([[t11, t12], [t21, t22]]), ls)


def discriminant(p: Potential, energy) -> tuple:
    """tr T(L, E) as a (mantissa, log_scale) pair; true value = mantissa * e^ls.

    Accepts complex energies (needed by the Floquet characteristic identity).
    """
    e = complex(energy)
    if e.imag == 0.0:
        e = e.real
    t11, _, _, t22, ls = _scan_scalar(p.values, e)
    return t11 + t22, ls


def discriminant_value(p: Potential, energy: float) -> float:
    """tr T(L, E) as a plain float; returns +-inf when it overflows."""
    t11, _, _, t22, ls = _scan_scalar(p.values, float(energy))
    tr = t11 + t22
    if tr == 0.0:
        return 0.0
    mag = math.log(abs(tr)) + ls
    if mag > 709.0:
        return math.copysign(math.inf, tr)
    return math.copysign(math.exp(mag), tr)


def in_spectrum(p: Potential, energy: float) -> bool:
    """Membership test |tr T(L, E)| <= 2, compared in log space."""
    mant, ls = discriminant(p, energy)
    if mant == 0.0:
        return True
    return math.log(abs(mant)) + ls <= _LOG2


def discriminant_derivative(p: Potential, energy: float):
    """(tr T, d/dE tr T, log_scale): both mantissas share the log scale."""
    t, d, ls = _scan_scalar_with_derivative(p.values, float(energy))
    return t[0] + t[3], d[0] + d[3], ls


def bloch_data(p: Potential, energy: float) -> BlochData:
    """Bloch phase theta and the m-functions by the eigenvector method.

    Requires |discriminant| < 2 (strictly inside a band); the branch is fixed
    by Im m_left > 0 and m_right = 1 / conj(m_left).
    """
    t11, t12, t21, t22, ls = _scan_scalar(p.values, float(energy))
    tr = t11 + t22
    if tr == 0.0:
        delta = 0.0
    else:
        log_delta = math.log(abs(tr)) + ls
        if log_delta > 1.0:  # |tr T| > e, comfortably off the spectrum
            raise OutsideSpectrumError(f"E={energy} is outside the spectrum")
        delta = math.copysign(math.exp(log_delta), tr)
    if abs(delta) >= 2.0 - EDGE_EXCLUSION:
        if abs(delta) <= 2.0 + EDGE_EXCLUSION:
            raise BandEdgeDegenerateError(f"E={energy} sits at a band edge")
        raise OutsideSpectrumError(f"E={energy} is outside the spectrum (|tr|={abs(delta)})")
    theta = math.acos(0.5 * delta)
    if t12 == 0.0:
        raise BandEdgeDegenerateError(f"E={energy}: transfer matrix is triangular")
    sign = 1 if t12 > 0.0 else -1
    lam_scaled = math.exp(-ls) * complex(math.cos(theta), sign * math.sin(theta))
    w = (lam_scaled - t11) / t12
    if not (w.imag > 0.0):
        raise BandEdgeDegenerateError(f"E={energy}: eigenvector came out real")
    return BlochData(theta=theta, m_left=w, m_right=1.0 / w.conjugate(), sign=sign)


def transfer_norm(p: Potential, energy: float) -> tuple:
    """Spectral norm of T(L, E) as (norm, log_norm); norm >= 1 for det 1.

    Computed from the singular values of the renormalized matrix so that
    log_norm stays exact when the norm itself overflows a double.
    """
    t11, t12, t21, t22, ls = _scan_scalar(p.values, float(energy))
    tau = t11 * t11 + t12 * t12 + t21 * t21 + t22 * t22
    b = 4.0 * math.exp(-4.0 * ls) if ls < 186.0 else 0.0
    sigma2 = 0.5 * (tau + math.sqrt(max(tau * tau - b, 0.0)))
    log_norm = ls + 0.5 * math.log(sigma2)
    norm = math.exp(log_norm) if log_norm < 709.0 else math.inf
    return norm, log_norm


def transfer_norm_grid(p: Potential, energies: np.ndarray) -> np.ndarray:
    """log of the spectral norm of T(L, E) over a whole energy grid."""
    t11, t12, t21, t22, ls = _scan_grid(p.values, np.asarray(energies, dtype=float))
    tau = t11 * t11 + t12 * t12 + t21 * t21 + t22 * t22
    b = np.where(ls < 186.0, 4.0 * np.exp(-4.0 * np.minimum(ls, 186.0)), 0.0)
    sigma2 = 0.5 * (tau + np.sqrt(np.maximum(tau * tau - b, 0.0)))
    return ls + 0.5 * np.log(sigma2)


def _half_line_diagonals(p: Potential, depth: int):
    vals = p.as_array()
    L = len(p)
    j = np.arange(depth)
    # left half-line: sites 0, -1, -2, ... listed from the edge inward;
    # right half-line: sites 1, 2, 3, ...
    return vals[(-j - 1) % L], vals[j % L]


def m_oracle(p: Potential, energy: float, eta: float, depth: int) -> tuple:
    """(m_left, m_right) from truncated half-line resolvents at E + i*eta.

    Independent of ``bloch_data``: builds the two Dirichlet half-lines of the
    periodized potential, truncates them to ``depth`` sites and solves the
    tridiagonal systems directly.  Error budget: O(eta) from the regularized
    boundary value plus a truncation reflection ~ exp(-eta * depth).
    """
    if not (eta > 0.0):
        raise ValidationError("eta must be positive")
    L = len(p)
    if depth < 10 * L:
        raise ValidationError(f"depth must be at least 10 L = {10 * L}")
    z = complex(energy, eta)
    left, right = _half_line_diagonals(p, depth)
    off = np.full(depth - 1, -1.0, dtype=complex)
    rhs = np.zeros(depth, dtype=complex)
    rhs[0] = 1.0
    out = []
    for diag_vals in (left, right):
        a = BandedCornerMatrix(diag_vals - z, off, off)
        try:
            sol = solve_banded_corner(a, rhs)
        except SingularMatrixError:
            raise TruncationError(
                f"singular truncation at depth {depth}", suggested_depth=2 * depth
            ) from None
        out.append(complex(sol.x[0]))
    return out[0], out[1]


def m_oracle_grid(p: Potential, energies, eta: float, depth: int) -> tuple:
    """Vectorized m_oracle over a whole energy grid: (m_left[], m_right[]).

    Same truncated system as ``m_oracle``; the tridiagonal elimination is
    written out as the edge-ratio recurrence and swept once for all energies.
    With Im z = eta > 0 every pivot satisfies Im(pivot) <= -eta, so the
    unpivoted sweep is stable and never divides by zero.
    """
    if not (eta > 0.0):
        raise ValidationError("eta must be positive")
    if depth < 10 * len(p):
        raise ValidationError(f"depth must be at least 10 L = {10 * len(p)}")
    z = np.asarray(energies, dtype=float) + 1j * eta
    left, right = _half_line_diagonals(p, depth)
    out = []
    for diag_vals in (left, right):
        shifted = diag_vals - 0j  # keep the scalar loop below in complex
        s = np.zeros(z.shape, dtype=complex)
        for v in shifted[:0:-1]:
            s = 1.0 / (v - z - s)
        out.append(1.0 / (shifted[0] - z - s))
    return out[0], out[1]


# ---------------------------------------------------------------------------
# identity checks reused by the verification suite and the tests


def eigen_relation_residual(p: Potential, energy: float) -> float:
    """Residual of T (1, m_left)^T = exp(sign i theta) (1, m_left)^T, scaled."""
    t11, t12, t21, t22, ls = _scan_scalar(p.values, float(energy))
    bd = bloch_data(p, energy)
    lam = math.exp(-ls) * cmath.exp(1j * bd.sign * bd.theta)
    r1 = t11 + t12 * bd.m_left - lam
    r2 = t21 + t22 * bd.m_left - lam * bd.m_left
    return max(abs(r1), abs(r2))


def reconstruction_residual(p: Potential, energy: float) -> float:
    """Entrywise residual of rebuilding T from (theta, m_left), renormalized.

    The rebuilt matrix uses theta_eff = -sign * theta so that the role of the
    two eigenvalues matches the realized pairing.
    """
    t11, t12, t21, t22, ls = _scan_scalar(p.values, float(energy))
    bd = bloch_data(p, energy)
    th = -bd.sign * bd.theta
    m = bd.m_left
    im = m.imag
    r11 = (cmath.exp(1j * th) * m).imag / im
    r12 = -math.sin(th) / im
    r21 = abs(m) ** 2 * math.sin(th) / im
    r22 = (cmath.exp(-1j * th) * m).imag / im
    scale = math.exp(-ls)
    return max(
        abs(r11 * scale - t11),
        abs(r12 * scale - t12),
        abs(r21 * scale - t21),
        abs(r22 * scale - t22),
    )


def norm_lower_bound_slack(p: Potential, energy: float) -> float:
    """||T|| minus (1/2) |sin theta| (1 + |m_left|^2) / Im m_left (>= 0)."""
    norm, log_norm = transfer_norm(p, energy)
    bd = bloch_data(p, energy)
    bound = 0.5 * math.sin(bd.theta) * (1.0 + abs(bd.m_left) ** 2) / bd.m_left.imag
    if math.isinf(norm):
        return math.inf
    return norm - bound
