"""Experiment orchestration: run configs, scaling scans, verification suite
and CSV/JSON emission.

Scans are deterministic given the config (all randomness flows from explicit
seeds through the repo-fixed RNG), and rows are independent pure functions,
so serial and parallel execution produce byte-identical output.  Wall times
are recorded only when ``record_timings`` is set, precisely so that default
outputs stay reproducible byte for byte.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .numerics import AccuracyError, ValidationError, eig_hermitian, rng_uniform
from .periodic import (
    band_edges,
    characteristic_check,
    dispersion_slope_check,
    norm_exceedance_measure,
    theta_sublevel_measure,
    thouless_conductance,
)
from .reservoirs import (
    EnergyInterval,
    Reservoir,
    free_lead,
    matched,
    reservoir_F,
    transparency_check,
    wide_band,
)
from .sample import Potential, anderson, make_potential, periodize
from .transfer import (
    bloch_data,
    discriminant_value,
    eigen_relation_residual,
    norm_lower_bound_slack,
    reconstruction_residual,
    transfer_matrix,
)
from .transport import (
    EBBConfig,
    clb_conductance,
    clb_lower_bound_check,
    clb_transmission,
    lb_conductance,
    lb_transmission,
)

CSV_HEADER = "L,G_LB,G_CLB,G_Th,bands,sp_measure,delta,M,wall_ms"


# ---------------------------------------------------------------------------
# run configuration


@dataclass(frozen=True)
class RunConfig:
    """Everything a scan needs, mirroring the JSON config schema."""

    potential: dict
    kappa: float = 1.0
    left: dict = field(default_factory=lambda: {"model": "free_lead"})
    right: dict = field(default_factory=lambda: {"model": "free_lead"})
    interval: tuple = (-1.0, 1.0)
    lengths: dict | None = None
    tol: float = 1e-6
    seed: int = 1
    jobs: int = 1
    record_timings: bool = False

    def __post_init__(self):
        if not self.interval[0] < self.interval[1]:
            raise ValidationError("interval must satisfy mu_l < mu_r")
        if not (self.tol > 0):
            raise ValidationError("tol must be positive")
        if self.jobs < 1:
            raise ValidationError("jobs must be at least 1")
        object.__setattr__(self, "interval", (float(self.interval[0]), float(self.interval[1])))

    @staticmethod
    def from_dict(d: dict) -> "RunConfig":
        known = {}
        reservoirs = d.get("reservoirs", {})
        known["potential"] = d.get("potential", {"kind": "zero"})
        known["kappa"] = float(d.get("kappa", 1.0))
        known["left"] = reservoirs.get("left", d.get("left", {"model": "free_lead"}))
        known["right"] = reservoirs.get("right", d.get("right", {"model": "free_lead"}))
        known["interval"] = tuple(d.get("interval", (-1.0, 1.0)))
        known["lengths"] = d.get("lengths")
        known["tol"] = float(d.get("tol", 1e-6))
        known["seed"] = int(d.get("seed", 1))
        known["jobs"] = int(d.get("jobs", 1))
        known["record_timings"] = bool(d.get("record_timings", False))
        return RunConfig(**known)

    def to_dict(self) -> dict:
        return {
            "potential": dict(self.potential),
            "kappa": self.kappa,
            "reservoirs": {"left": dict(self.left), "right": dict(self.right)},
            "interval": list(self.interval),
            "lengths": dict(self.lengths) if self.lengths else None,
            "tol": self.tol,
            "seed": self.seed,
            "jobs": self.jobs,
            "record_timings": self.record_timings,
        }

    @staticmethod
    def load(path) -> "RunConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return RunConfig.from_dict(json.load(fh))


def resolve_lengths(cfg: RunConfig) -> list:
    """Materialize the length sequence; must come out strictly increasing."""
    spec = cfg.lengths
    if spec is None:
        L = cfg.potential.get("L")
        if L is None:
            raise ValidationError("config has neither a lengths spec nor a potential L")
        return [int(L)]
    kind = spec.get("kind", "list")
    if kind == "list":
        seq = [int(v) for v in spec["values"]]
    elif kind == "geometric":
        start = int(spec["start"])
        factor = float(spec["factor"])
        count = int(spec["count"])
        seq = []
        value = float(start)
        for _ in range(count):
            candidate = int(round(value))
            if seq and candidate <= seq[-1]:
                candidate = seq[-1] + 1
            seq.append(candidate)
            value *= factor
    elif kind == "period_multiples":
        pattern = cfg.potential.get("pattern")
        if not pattern:
            raise ValidationError("period_multiples needs a periodic potential pattern")
        period = len(pattern)
        seq = [period * k for k in range(1, int(spec["count"]) + 1)]
    else:
        raise ValidationError(f"unknown lengths kind {kind!r}")
    if any(b <= a for a, b in zip(seq, seq[1:])) or any(v < 1 for v in seq):
        raise ValidationError("length sequence must be strictly increasing and positive")
    return seq


def build_potential(cfg: RunConfig, length: int) -> Potential:
    desc = dict(cfg.potential)
    if desc.get("kind") == "anderson" and "seed" not in desc:
        desc["seed"] = cfg.seed
    return make_potential(desc, length)


def build_reservoir(desc: dict, side: str, sample: Potential, kappa: float) -> Reservoir:
    model = desc.get("model", "free_lead")
    if model == "free_lead":
        return free_lead(side)
    if model == "wide_band":
        return wide_band(float(desc.get("gamma", 1.0)), side)
    if model == "matched":
        return matched(sample, kappa, side)
    raise ValidationError(f"unknown reservoir model {model!r}")


# ---------------------------------------------------------------------------
# scaling scan


@dataclass(frozen=True)
class Row:
    L: int
    g_lb: float
    g_clb: float
    g_th: float
    bands: int
    sp_measure: float
    delta: float
    m_bound: float
    wall_ms: int = 0
    error: str | None = None

    def csv_line(self) -> str:
        cells = [
            str(self.L),
            _fmt(self.g_lb),
            _fmt(self.g_clb),
            _fmt(self.g_th),
            str(self.bands),
            _fmt(self.sp_measure),
            _fmt(self.delta),
            _fmt(self.m_bound),
            str(self.wall_ms),
        ]
        return ",".join(cells)

    def to_dict(self) -> dict:
        d = {
            "L": self.L,
            "G_LB": self.g_lb,
            "G_CLB": self.g_clb,
            "G_Th": self.g_th,
            "bands": self.bands,
            "sp_measure": self.sp_measure,
            "delta": self.delta,
            "M": self.m_bound,
            "wall_ms": self.wall_ms,
        }
        if self.error:
            d["error"] = self.error
        return d

    @staticmethod
    def from_dict(d: dict) -> "Row":
        return Row(
            L=int(d["L"]),
            g_lb=float(d["G_LB"]),
            g_clb=float(d["G_CLB"]),
            g_th=float(d["G_Th"]),
            bands=int(d["bands"]),
            sp_measure=float(d["sp_measure"]),
            delta=float(d["delta"]),
            m_bound=float(d["M"]),
            wall_ms=int(d.get("wall_ms", 0)),
            error=d.get("error"),
        )


@dataclass(frozen=True)
class ConductanceReport:
    config: RunConfig
    rows: tuple

    @property
    def ok(self) -> bool:
        return all(r.error is None for r in self.rows)


def _fmt(x: float) -> str:
    return repr(float(x))


def compute_row(cfg: RunConfig, length: int) -> Row:
    started = time.perf_counter()
    sample = build_potential(cfg, length)
    left = build_reservoir(cfg.left, "l", sample, cfg.kappa)
    right = build_reservoir(cfg.right, "r", sample, cfg.kappa)
    iv = EnergyInterval(*cfg.interval)
    ebb = EBBConfig(sample, cfg.kappa, left, right)

    bs = band_edges(sample)
    sp_measure = bs.measure_in(iv.mu_l, iv.mu_r)
    g_th = sp_measure / (2.0 * math.pi * iv.width)
    bands_in = sum(
        1
        for b in bs.bands
        if (b.hi > iv.mu_l and b.lo < iv.mu_r) or (iv.mu_l < b.center < iv.mu_r)
    )
    tc = transparency_check(left, right, iv, grid=256)

    note = None
    try:
        g_lb = lb_conductance(ebb, iv, cfg.tol)
    except AccuracyError as exc:
        g_lb = exc.estimate
        note = "lb quadrature at accuracy floor"
    try:
        g_clb = clb_conductance(ebb, iv, cfg.tol)
    except AccuracyError as exc:
        g_clb = exc.estimate
        note = (note + "; " if note else "") + "clb quadrature at accuracy floor"

    wall = int(round((time.perf_counter() - started) * 1000.0)) if cfg.record_timings else 0
    return Row(
        L=length,
        g_lb=g_lb,
        g_clb=g_clb,
        g_th=g_th,
        bands=bands_in,
        sp_measure=sp_measure,
        delta=tc.delta,
        m_bound=tc.bound,
        wall_ms=wall,
        error=note,
    )


def _row_worker(args) -> Row:
    cfg, length = args
    try:
        return compute_row(cfg, length)
    except Exception as exc:  # per-row failures are recorded, the scan goes on
        return Row(
            L=length,
            g_lb=math.nan,
            g_clb=math.nan,
            g_th=math.nan,
            bands=0,
            sp_measure=math.nan,
            delta=math.nan,
            m_bound=math.nan,
            wall_ms=0,
            error=f"{type(exc).__name__}: {exc}",
        )


def scaling_scan(cfg: RunConfig) -> ConductanceReport:
    """One row per length; rows are independent and order-preserving."""
    lengths = resolve_lengths(cfg)
    tasks = [(cfg, L) for L in lengths]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = tuple(pool.map(_row_worker, tasks))
    else:
        rows = tuple(_row_worker(t) for t in tasks)
    return ConductanceReport(cfg, rows)


# ---------------------------------------------------------------------------
# emission


def report_csv(report: ConductanceReport) -> str:
    lines = [CSV_HEADER]
    lines.extend(row.csv_line() for row in report.rows)
    return "\n".join(lines) + "\n"


def report_json(report: ConductanceReport) -> str:
    payload = {"config": report.config.to_dict(), "rows": [r.to_dict() for r in report.rows]}
    return json.dumps(payload, indent=2) + "\n"


def emit(report: ConductanceReport, fmt: str, path) -> None:
    """Write the report; CSV columns are fixed, JSON mirrors config + rows."""
    if fmt == "csv":
        text = report_csv(report)
    elif fmt == "json":
        text = report_json(report)
    else:
        raise ValidationError(f"unknown output format {fmt!r}")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ValidationError(f"cannot write report to {path}: {exc}") from None


def parse_report(text: str) -> ConductanceReport:
    payload = json.loads(text)
    cfg = RunConfig.from_dict(payload["config"])
    rows = tuple(Row.from_dict(r) for r in payload["rows"])
    return ConductanceReport(cfg, rows)


# ---------------------------------------------------------------------------
# verification suite


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst: float
    detail: str


def _sample_potentials(seed: int, count: int, max_len: int, w_lo=0.2, w_hi=1.2):
    meta = rng_uniform(seed, 2 * count, 0.0, 1.0)
    out = []
    for i in range(count):
        length = 1 + int(meta[2 * i] * max_len)
        width = w_lo + meta[2 * i + 1] * (w_hi - w_lo)
        out.append(anderson(width, seed * 1009 + i, min(length, max_len)))
    return out


def _interior_energies(p: Potential, seed: int, count: int, dmax: float = 1.75):
    """Band-interior energies with |discriminant| <= dmax, rejection sampled."""
    bs = band_edges(p)
    lo, hi = bs.bands[0].lo, bs.bands[-1].hi
    out = []
    for e in rng_uniform(seed, 200 * count, lo, hi):
        if len(out) == count:
            break
        if abs(discriminant_value(p, e)) <= dmax:
            out.append(e)
    return out


def _check_trivial(seed: int) -> CheckResult:
    worst = 0.0
    w = eig_hermitian(np.eye(2))
    worst = max(worst, abs(w[0] - 1.0), abs(w[1] - 1.0))
    w = eig_hermitian(np.array([[0.0, 1.0], [1.0, 0.0]]))
    worst = max(worst, abs(w[0] + 1.0), abs(w[1] - 1.0))
    p = Potential((1.0, 2.0, 3.0))
    worst = max(worst, abs(periodize(p, 5) - 2.0), abs(periodize(p, 0) - 3.0))
    tm = transfer_matrix(Potential((0.0,)), 0.0)
    worst = max(worst, float(np.abs(tm.true_matrix() - np.array([[0.0, -1.0], [1.0, 0.0]])).max()))
    worst = max(worst, abs(theta_sublevel_measure(Potential((0.0,)), 0.0)))
    return CheckResult("trivial-only", worst == 0.0, worst, "exact closed-form identities")


def _check_det_transfer(seed: int) -> CheckResult:
    # extracting det from the stored entries loses exp(2 log_scale) * eps to
    # cancellation, so the identity is only measurable where that is < 1e-8
    worst = 0.0
    checked = 0
    for i, p in enumerate(_sample_potentials(seed, 20, 50)):
        for e in rng_uniform(seed + 71 * i, 8, -3.0, 3.0):
            tm = transfer_matrix(p, e)
            if tm.log_scale > 7.0:
                continue
            checked += 1
            worst = max(worst, abs(tm.det_scaled() - 1.0))
    passed = worst <= 1e-8 and checked >= 40
    return CheckResult(
        "det-transfer", passed, worst, f"|det T - 1| via log scaling ({checked} pts)"
    )


def _check_m_consistency(seed: int) -> CheckResult:
    worst = 0.0
    for i, p in enumerate(_sample_potentials(seed, 15, 50)):
        for e in _interior_energies(p, seed + 13 * i, 20):
            bd = bloch_data(p, e)
            worst = max(worst, abs(bd.m_right * bd.m_left.conjugate() - 1.0))
            if bd.m_left.imag <= 0 or bd.m_right.imag <= 0:
                worst = math.inf
    return CheckResult("m-consistency", worst <= 1e-10, worst, "m_r conj(m_l) = 1, Im m > 0")


def _check_reconstruction(seed: int) -> CheckResult:
    worst = 0.0
    for i, p in enumerate(_sample_potentials(seed, 15, 50)):
        for e in _interior_energies(p, seed + 17 * i, 15):
            worst = max(worst, reconstruction_residual(p, e))
    return CheckResult("reconstruction", worst <= 1e-7, worst, "T rebuilt from (theta, m_l)")


def _check_eigen_relation(seed: int) -> CheckResult:
    worst = 0.0
    for i, p in enumerate(_sample_potentials(seed, 15, 50)):
        for e in _interior_energies(p, seed + 19 * i, 15):
            worst = max(worst, eigen_relation_residual(p, e))
    return CheckResult("eigen-relation", worst <= 1e-9, worst, "T psi = exp(+-i theta) psi")


def _check_norm_bound(seed: int) -> CheckResult:
    worst = math.inf  # smallest slack seen
    for i, p in enumerate(_sample_potentials(seed, 15, 40)):
        for e in _interior_energies(p, seed + 23 * i, 15):
            worst = min(worst, norm_lower_bound_slack(p, e))
    return CheckResult(
        "norm-bound", worst >= -1e-9, worst, "||T|| >= |sin theta| (1+|m|^2) / (2 Im m)"
    )


def _check_lemma_theta(seed: int) -> CheckResult:
    worst = -math.inf
    for i, p in enumerate(_sample_potentials(seed, 10, 40)):
        for eps in (0.01, 0.05, 0.1, 0.3, 0.5):
            excess = theta_sublevel_measure(p, eps) - 2.0 * math.pi * eps
            worst = max(worst, excess)
    free = abs(
        theta_sublevel_measure(Potential((0.0,)), 0.3) - 4.0 * (1.0 - math.sqrt(1.0 - 0.09))
    )
    passed = worst <= 0.0 and free <= 1e-8
    return CheckResult("lemma-theta", passed, max(worst, free), "sublevel measure <= 2 pi eps")


def _check_dispersion_slope(seed: int) -> CheckResult:
    worst = -math.inf  # largest excess over the bound
    grid = 1000
    for p in _sample_potentials(seed, 6, 12, w_lo=0.5, w_hi=4.0):
        dk = math.pi / (len(p) * grid)
        slope = dispersion_slope_check(p, grid)
        worst = max(worst, slope - (2.0 + 10.0 * dk * dk))
    return CheckResult("dispersion-slope", worst <= 0.0, worst, "|dE/dk| <= 2 + O(dk^2)")


def _check_norm_exceedance(seed: int) -> CheckResult:
    worst = -math.inf
    for p in [anderson(2.0, 3, 30)] + _sample_potentials(seed, 4, 30, w_lo=0.5, w_hi=2.0):
        for eps in (0.1, 0.2, 0.5):
            gm = norm_exceedance_measure(p, eps, 1000)
            slack = 2.0 * len(p) * gm.resolution
            worst = max(worst, gm.measure - ((1.0 + math.pi) * eps + slack))
    return CheckResult("norm-exceedance", worst <= 0.0, worst, "|{||T|| > 8 pi/eps^2}| bound")


def _check_characteristic(seed: int) -> CheckResult:
    worst = 0.0
    minv = 0.0
    us = rng_uniform(seed + 5, 200, -1.0, 1.0)
    for i, p in enumerate(_sample_potentials(seed, 12, 12, w_lo=0.5, w_hi=3.0)):
        z = complex(3.0 * us[4 * i], 2.0 * us[4 * i + 1])
        k = math.pi * us[4 * i + 2]
        m = int(abs(us[4 * i + 3]) * 10)
        cc = characteristic_check(p, k, z, offset=m)
        worst = max(worst, cc.gap)
        cc0 = characteristic_check(p, k, z, offset=0)
        minv = max(minv, abs(cc.lhs - cc0.lhs) / max(1.0, abs(cc0.lhs)))
    passed = worst <= 1e-8 and minv <= 1e-10
    return CheckResult("characteristic", passed, max(worst, minv), "det(H - z) = tr T - 2 cos kL")


def _check_herglotz(seed: int) -> CheckResult:
    worst = 0.0
    es = rng_uniform(seed + 9, 2000, -5.0, 5.0)
    for r in (free_lead("l"), wide_band(0.5, "l")):
        for e in es:
            worst = max(worst, -reservoir_F(r, e).imag)
    fixed = 0.0
    for e in rng_uniform(seed + 10, 200, -1.999, 1.999):
        f = reservoir_F(free_lead("l"), e)
        fixed = max(fixed, abs(f - 1.0 / (-e - f)))
    zero_chain = Potential((0.0,))
    match_err = 0.0
    for e in rng_uniform(seed + 11, 100, -1.9, 1.9):
        match_err = max(
            match_err,
            abs(reservoir_F(matched(zero_chain, 1.0, "l"), e) - reservoir_F(free_lead("l"), e)),
        )
    passed = worst <= 1e-12 and fixed <= 1e-12 and match_err <= 1e-10
    return CheckResult(
        "herglotz", passed, max(worst, fixed, match_err), "Im F >= 0, fixed point, matching"
    )


def _cfg_for(p: Potential, seed: int) -> EBBConfig:
    u = rng_uniform(seed, 2, 0.4, 1.6)
    return EBBConfig(p, u[0], free_lead("l"), wide_band(u[1], "r"))


def _check_lb_unitarity(seed: int) -> CheckResult:
    worst = 0.0
    for i, p in enumerate(_sample_potentials(seed, 10, 30)):
        cfg = _cfg_for(p, seed + 29 * i)
        for e in rng_uniform(seed + 31 * i, 40, -2.5, 2.5):
            t = lb_transmission(cfg, e)
            worst = max(worst, t - 1.0, -t)
            tc = clb_transmission(cfg, e)
            worst = max(worst, tc - 1.0, -tc)
    return CheckResult("lb-unitarity", worst <= 1e-9, worst, "0 <= T <= 1")


def _check_lb_symmetry(seed: int) -> CheckResult:
    worst = 0.0
    for i, p in enumerate(_sample_potentials(seed, 8, 25)):
        u = rng_uniform(seed + 41 * i, 2, 0.4, 1.6)
        fwd = EBBConfig(p, u[0], free_lead("l"), wide_band(u[1], "r"))
        rev = EBBConfig(
            Potential(tuple(reversed(p.values))), u[0], wide_band(u[1], "l"), free_lead("r")
        )
        for e in rng_uniform(seed + 43 * i, 25, -2.2, 2.2):
            worst = max(worst, abs(lb_transmission(fwd, e) - lb_transmission(rev, e)))
    return CheckResult("lb-symmetry", worst <= 1e-9, worst, "reversal + swap invariance")


def _check_domination(seed: int) -> CheckResult:
    worst = -math.inf
    tol = 1e-6
    iv = EnergyInterval(-1.0, 1.0)
    for i, p in enumerate(_sample_potentials(seed, 6, 16)):
        cfg = _cfg_for(p, seed + 47 * i)
        excess = clb_conductance(cfg, iv, tol) - thouless_conductance(p, (-1.0, 1.0)) - 2.0 * tol
        worst = max(worst, excess)
    return CheckResult("domination", worst <= 0.0, worst, "G_CLB <= G_Th + 2 tol")


def _check_matched_optimality(seed: int) -> CheckResult:
    worst_t = 0.0
    worst_gap = 0.0
    tol = 1e-6
    for i, p in enumerate(_sample_potentials(seed, 8, 8)):
        kappa = 0.5 + rng_uniform(seed + 53 * i, 1, 0.0, 1.0)[0]
        cfg = EBBConfig(p, kappa, matched(p, kappa, "l"), matched(p, kappa, "r"))
        for e in _interior_energies(p, seed + 59 * i, 10):
            worst_t = max(worst_t, abs(clb_transmission(cfg, e) - 1.0))
        gap = abs(clb_conductance(cfg, (-1.0, 1.0), tol) - thouless_conductance(p, (-1.0, 1.0)))
        worst_gap = max(worst_gap, gap)
    passed = worst_t <= 1e-10 and worst_gap <= 2.0 * tol
    return CheckResult(
        "matched-optimality", passed, max(worst_t, worst_gap), "T_CLB = 1, G_CLB = G_Th"
    )


def _check_clb_lower_bound(seed: int) -> CheckResult:
    ok = True
    worst = -math.inf
    for i, p in enumerate(_sample_potentials(seed, 5, 20)):
        u = rng_uniform(seed + 61 * i, 2, 0.5, 1.5)
        cfg = EBBConfig(p, u[0], free_lead("l"), wide_band(u[1], "r"))
        res = clb_lower_bound_check(cfg, (-1.0, 1.0), 1e-6)
        ok = ok and res.ok
        worst = max(worst, res.rhs - res.lhs)
    return CheckResult("clb-lower-bound", ok, worst, "explicit-constant lower bound")


_CHECKS = {
    "trivial-only": _check_trivial,
    "det-transfer": _check_det_transfer,
    "m-consistency": _check_m_consistency,
    "reconstruction": _check_reconstruction,
    "eigen-relation": _check_eigen_relation,
    "norm-bound": _check_norm_bound,
    "lemma-theta": _check_lemma_theta,
    "dispersion-slope": _check_dispersion_slope,
    "norm-exceedance": _check_norm_exceedance,
    "characteristic": _check_characteristic,
    "herglotz": _check_herglotz,
    "lb-unitarity": _check_lb_unitarity,
    "lb-symmetry": _check_lb_symmetry,
    "domination": _check_domination,
    "matched-optimality": _check_matched_optimality,
    "clb-lower-bound": _check_clb_lower_bound,
}


def verify_suite(scope: str = "all", seed: int = 1, jobs: int = 1) -> list:
    """Run the named invariant checks; failures are results, not exceptions."""
    if scope == "all":
        names = list(_CHECKS)
    else:
        names = [s.strip() for s in scope.split(",") if s.strip()]
        unknown = [n for n in names if n not in _CHECKS]
        if unknown:
            raise ValidationError(f"unknown verify scope(s): {', '.join(unknown)}")
    tasks = [(n, seed) for n in names]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_verify_worker, tasks))
    return [_verify_worker(t) for t in tasks]


def _verify_worker(args) -> CheckResult:
    name, seed = args
    try:
        return _CHECKS[name](seed)
    except Exception as exc:
        return CheckResult(name, False, math.inf, f"{type(exc).__name__}: {exc}")
