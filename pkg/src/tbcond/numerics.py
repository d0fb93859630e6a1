"""Self-contained numeric kernels used by the rest of the package.

Nothing in here knows about chains, bands, or reservoirs: eigensolves,
banded linear algebra, bracketed root finding, adaptive quadrature and a
portable deterministic RNG.  All functions are pure and reentrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import get_lapack_funcs
from scipy.optimize import brentq as _scipy_brentq


class NumericsError(Exception):
    """Base class for numeric-kernel failures."""


class ValidationError(NumericsError):
    """An input violates a kernel precondition."""


class SingularMatrixError(NumericsError):
    """A factorization hit a pivot below the singularity threshold."""


class BracketError(NumericsError):
    """Root bracket endpoints do not enclose a sign change."""


class AccuracyError(NumericsError):
    """Adaptive refinement exhausted its depth budget.

    The best available estimate is carried in ``estimate``.
    """

    def __init__(self, message: str, estimate: float):
        super().__init__(message)
        self.estimate = estimate


PIVOT_FLOOR = 1e-300

_GBTRF, _GBTRS = get_lapack_funcs(
    ("gbtrf", "gbtrs"), (np.empty((4, 2), dtype=complex), np.empty(2, dtype=complex))
)


# ---------------------------------------------------------------------------
# hermitian eigensolver


def eig_hermitian(a, vectors: bool = False):
    """Eigenvalues (ascending) of a hermitian matrix, optionally with vectors.

    Raises ValidationError if the matrix is not square or departs from
    hermiticity by more than 1e-12 relative to its largest entry.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.abs(a).max()) if a.size else 0.0)
    if float(np.abs(a - a.conj().T).max()) > 1e-12 * scale:
        raise ValidationError("matrix is not hermitian within 1e-12")
    if vectors:
        w, v = np.linalg.eigh(a)
        return w, v
    return np.linalg.eigvalsh(a)


# ---------------------------------------------------------------------------
# tridiagonal-plus-corners solver


@dataclass(frozen=True)
class BandedCornerMatrix:
    """Tridiagonal matrix with optional (0, n-1) and (n-1, 0) corner entries.

    ``sub[i]`` is entry (i+1, i), ``sup[i]`` is entry (i, i+1).  When n <= 2
    the corners land on existing slots and are summed into them, which is the
    convention the periodized Floquet matrices need.
    """

    diag: np.ndarray
    sub: np.ndarray
    sup: np.ndarray
    corner_top: complex = 0.0
    corner_bot: complex = 0.0

    @property
    def n(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        n = self.n
        a = np.zeros((n, n), dtype=complex)
        a[np.arange(n), np.arange(n)] = self.diag
        if n > 1:
            a[np.arange(1, n), np.arange(n - 1)] += self.sub
            a[np.arange(n - 1), np.arange(1, n)] += self.sup
        if n == 1:
            a[0, 0] += self.corner_top + self.corner_bot
        else:
            a[0, n - 1] += self.corner_top
            a[n - 1, 0] += self.corner_bot
        return a


@dataclass(frozen=True)
class BandedSolution:
    x: np.ndarray
    det_log_mag: float
    det_phase: float

    def det(self) -> complex:
        return math.exp(self.det_log_mag) * complex(
            math.cos(self.det_phase), math.sin(self.det_phase)
        )


def _wrap_phase(phi: float) -> float:
    return math.remainder(phi, 2.0 * math.pi)


def _solve_tridiag(diag, sub, sup, b):
    """LAPACK banded LU (partial pivoting) for the pure tridiagonal case."""
    n = len(diag)
    ab = np.zeros((4, n), dtype=complex)
    ab[1, 1:] = sup
    ab[2, :] = diag
    ab[3, : n - 1] = sub
    lu, ipiv, info = _GBTRF(ab, 1, 1)
    if info != 0:
        raise SingularMatrixError(f"banded factorization failed (info={info})")
    udiag = lu[2, :]
    if np.abs(udiag).min() < PIVOT_FLOOR:
        raise SingularMatrixError("pivot below 1e-300 in tridiagonal solve")
    x, info = _GBTRS(lu, 1, 1, np.asarray(b, dtype=complex).reshape(n, 1), ipiv)
    if info != 0:
        raise SingularMatrixError(f"banded back-substitution failed (info={info})")
    log_mag = float(np.log(np.abs(udiag)).sum())
    phase = float(np.angle(udiag).sum())
    # scipy's gbtrf reports 0-based pivots; a swap at column j flips the sign
    swaps = int(np.count_nonzero(ipiv != np.arange(n)))
    if swaps % 2:
        phase += math.pi
    return BandedSolution(x[:, 0], log_mag, _wrap_phase(phase))


def _solve_dense(a: BandedCornerMatrix, b):
    dense = a.to_dense()
    sign, log_mag = np.linalg.slogdet(dense)
    if not np.isfinite(log_mag) or sign == 0:
        raise SingularMatrixError("dense corner solve: matrix is singular")
    try:
        x = np.linalg.solve(dense, np.asarray(b, dtype=complex))
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(str(exc)) from None
    return BandedSolution(x, float(log_mag), _wrap_phase(float(np.angle(sign))))


def _solve_bordered(a: BandedCornerMatrix, b):
    """O(n) bordered elimination for tridiagonal + corners, partial pivoting.

    Every active row is kept in a uniform 5-slot sparse form over columns
    (k, k+1, k+2, n-2, n-1): the current row, the incoming tridiagonal row
    and the wrap-around row all fit, and the pattern is closed under one
    elimination step.  The sweep runs k = 0..n-5 and a dense 4x4 block on
    the trailing columns finishes the factorization.
    """
    n = a.n
    diag = np.asarray(a.diag, dtype=complex)
    sub = np.asarray(a.sub, dtype=complex)
    sup = np.asarray(a.sup, dtype=complex)
    rhs = np.asarray(b, dtype=complex)

    # rows are 6-lists: slots (k, k+1, k+2, n-2, n-1, rhs)
    cur = [complex(diag[0]), complex(sup[0]), 0j, 0j, complex(a.corner_top), complex(rhs[0])]
    last = [complex(a.corner_bot), 0j, 0j, complex(sub[n - 2]), complex(diag[n - 1]), complex(rhs[n - 1])]

    log_mag = 0.0
    phase = 0.0
    stored = []  # (k, pivot row) for back substitution

    for k in range(n - 4):
        nxt = [complex(sub[k]), complex(diag[k + 1]), complex(sup[k + 1]), 0j, 0j, complex(rhs[k + 1])]
        mags = (abs(cur[0]), abs(nxt[0]), abs(last[0]))
        best = mags.index(max(mags))
        if best == 1:
            cur, nxt = nxt, cur
            phase += math.pi
        elif best == 2:
            cur, last = last, cur
            phase += math.pi
        pivot = cur[0]
        if abs(pivot) < PIVOT_FLOOR:
            raise SingularMatrixError("pivot below 1e-300 in bordered solve")
        log_mag += math.log(abs(pivot))
        phase += math.atan2(pivot.imag, pivot.real)

        f = nxt[0] / pivot
        g = last[0] / pivot
        nxt = [nxt[i] - f * cur[i] for i in range(1, 6)]
        last = [last[i] - g * cur[i] for i in range(1, 6)]
        stored.append((k, cur))
        # shift both survivors to the next step's slot frame; their old k+3
        # column is untouched tridiagonal territory, hence slot2 entering as 0
        cur = [nxt[0], nxt[1], 0j, nxt[2], nxt[3], nxt[4]]
        last = [last[0], last[1], 0j, last[2], last[3], last[4]]

    # dense finish on columns n-4..n-1; cur's slot2 (col n-2) merges with slot3
    k = n - 4
    block = np.array(
        [
            [cur[0], cur[1], cur[2] + cur[3], cur[4]],
            [sub[k], diag[k + 1], sup[k + 1], 0.0],
            [0.0, sub[k + 1], diag[k + 2], sup[k + 2]],
            [last[0], last[1], last[2] + last[3], last[4]],
        ],
        dtype=complex,
    )
    brhs = np.array([cur[5], rhs[k + 1], rhs[k + 2], last[5]], dtype=complex)
    sign, block_log = np.linalg.slogdet(block)
    if not np.isfinite(block_log) or sign == 0:
        raise SingularMatrixError("bordered solve: trailing block is singular")
    try:
        tail = np.linalg.solve(block, brhs)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError(str(exc)) from None
    log_mag += float(block_log)
    phase += float(np.angle(sign))

    x = np.zeros(n, dtype=complex)
    x[n - 4 :] = tail
    for k, row in reversed(stored):
        acc = row[5] - row[1] * x[k + 1] - row[2] * x[k + 2]
        acc -= row[3] * x[n - 2] + row[4] * x[n - 1]
        x[k] = acc / row[0]
    return BandedSolution(x, log_mag, _wrap_phase(phase))


def solve_banded_corner(a: BandedCornerMatrix, b) -> BandedSolution:
    """Solve ``a x = b`` and report det(a) as a (log-magnitude, phase) pair.

    Pure tridiagonal input takes the LAPACK banded path; corner entries are
    handled by O(n) bordered elimination (dense below n = 5, where the corner
    slots collide with the band).
    """
    b = np.asarray(b, dtype=complex)
    n = a.n
    if b.shape != (n,):
        raise ValidationError(f"rhs has length {b.shape}, expected ({n},)")
    if n == 0:
        raise ValidationError("empty system")
    if n == 1:
        d = complex(a.diag[0]) + complex(a.corner_top) + complex(a.corner_bot)
        if abs(d) < PIVOT_FLOOR:
            raise SingularMatrixError("1x1 system is singular")
        return BandedSolution(
            np.array([b[0] / d]), math.log(abs(d)), _wrap_phase(math.atan2(d.imag, d.real))
        )
    if a.corner_top == 0 and a.corner_bot == 0:
        return _solve_tridiag(a.diag, a.sub, a.sup, b)
    if n <= 4:
        return _solve_dense(a, b)
    return _solve_bordered(a, b)


def banded_corner_det(a: BandedCornerMatrix) -> tuple[float, float]:
    """det(a) as (log-magnitude, phase) without needing a right-hand side."""
    e1 = np.zeros(a.n, dtype=complex)
    e1[0] = 1.0
    sol = solve_banded_corner(a, e1)
    return sol.det_log_mag, sol.det_phase


# ---------------------------------------------------------------------------
# root finding


def brent_root(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    """Brent root of f on [a, b]; requires a sign change over the bracket."""
    if not (tol > 0):
        raise ValidationError("tol must be positive")
    if a > b:
        a, b = b, a
    fa = f(a)
    fb = f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise BracketError(f"no sign change on [{a}, {b}]: f(a)={fa}, f(b)={fb}")
    return float(_scipy_brentq(f, a, b, xtol=tol, maxiter=200))


# ---------------------------------------------------------------------------
# adaptive quadrature


def integrate_adaptive(
    f: Callable[[float], float], a: float, b: float, tol: float, max_depth: int = 48
) -> float:
    """Adaptive Simpson integration with Richardson error control.

    Bisects until the Richardson estimate of each panel meets its share of
    ``tol``; integrable square-root edge behavior is handled by the depth of
    refinement.  Raises AccuracyError (carrying the best estimate) if any
    panel runs out of depth.
    """
    if not (a < b):
        raise ValidationError("integration interval must satisfy a < b")
    if not (tol > 0):
        raise ValidationError("tol must be positive")
    fa = f(a)
    fm = f(0.5 * (a + b))
    fb = f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    stack = [(a, b, fa, fm, fb, whole, tol, 0)]
    total = 0.0
    forced_err = 0.0  # error estimates of panels accepted only by depth/width limits
    while stack:
        a0, b0, f0, fm0, f1, s0, t0, depth = stack.pop()
        m = 0.5 * (a0 + b0)
        flm = f(0.5 * (a0 + m))
        frm = f(0.5 * (m + b0))
        sl = (m - a0) / 6.0 * (f0 + 4.0 * flm + fm0)
        sr = (b0 - m) / 6.0 * (fm0 + 4.0 * frm + f1)
        s2 = sl + sr
        err = (s2 - s0) / 15.0
        width_floor = (b0 - a0) <= 1e-15 * (abs(a0) + abs(b0)) + 1e-300
        if abs(err) <= t0:
            total += s2 + err
        elif width_floor or depth >= max_depth:
            # a panel this size cannot be split usefully; keep its estimate and
            # account for the unmet error instead of refining forever (this is
            # how isolated jump points, e.g. excluded band touchings, resolve)
            total += s2 + err
            forced_err += abs(err)
        else:
            h = 0.5 * t0
            stack.append((m, b0, fm0, frm, f1, sr, h, depth + 1))
            stack.append((a0, m, f0, flm, fm0, sl, h, depth + 1))
    if forced_err > tol:
        raise AccuracyError(
            f"adaptive quadrature exhausted depth {max_depth} with residual error "
            f"~{forced_err:.3e} > tol={tol}",
            total,
        )
    return total


# ---------------------------------------------------------------------------
# deterministic RNG
#
# The generator is fixed for reproducibility across runs and languages:
#   state  = splitmix64(seed)            (one scrambling round, never zero)
#   step   : xorshift64*  x ^= x >> 12; x ^= x << 25; x ^= x >> 27
#   output : (x * 0x2545F4914F6CDD1D) >> 11, scaled by 2^-53 into [0, 1)

_M64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _M64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _M64
    return x ^ (x >> 31)


def rng_uniform(seed: int, n: int, a: float, b: float) -> list[float]:
    """n deterministic uniforms on [a, b) from the repo-fixed generator."""
    if not (a < b):
        raise ValidationError("require a < b")
    if n < 0:
        raise ValidationError("n must be nonnegative")
    state = _splitmix64(int(seed) & _M64)
    if state == 0:
        state = 0x9E3779B97F4A7C15
    span = b - a
    out = []
    for _ in range(n):
        state ^= state >> 12
        state = (state ^ (state << 25)) & _M64
        state ^= state >> 27
        word = (state * 0x2545F4914F6CDD1D) & _M64
        out.append(a + (word >> 11) * 1.1102230246251565e-16 * span)  # 2^-53
    return out
