"""Averaged test functions: negativity checks, maximal support extension,
and the resulting code and packing bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import mpmath as mp
import numpy as np

from .density import MEASURES, code_x
from .errors import ParameterError
from .extremal import Extremal
from .geometry import derive_angles, strip_mass, theta_star
from .orthopoly import PrecisionConfig
from .quadrature import composite, graded_breaks
from .reports import BoundReport

LN10 = math.log(10)


@dataclass(frozen=True)
class CheckConfig:
    """Quadrature and grid settings for the negativity checks."""

    nodes: int = 16
    first_panel: float = 0.02  # scaled by 1/n
    inner_panel: float = 0.25
    margin: float = 10.0
    coarse_grid: int = 8
    cert_grid: int = 64
    refine_width: float = 1e-6
    delta_rel_tol: float = 1e-8
    safety: float = 1e-9
    measure: str = "arclength"

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise ParameterError(f"measure must be one of {MEASURES}")
        if self.nodes < 4 or self.coarse_grid < 1 or self.cert_grid < 2:
            raise ParameterError("grids too small")
        if not (self.margin > 0 and self.refine_width > 0 and self.delta_rel_tol > 0):
            raise ParameterError("tolerances must be positive")

    def doubled(self) -> "CheckConfig":
        return replace(self, nodes=2 * self.nodes, coarse_grid=2 * self.coarse_grid,
                       cert_grid=2 * self.cert_grid)


@dataclass(frozen=True)
class SweepConfig:
    theta_lo_deg: float = 60.0
    theta_hi_deg: float = 90.0
    step_deg: float = 0.25
    refine_tol_rad: float = 1e-4
    digits: int = 60

    def grid(self) -> np.ndarray:
        k = int(round((self.theta_hi_deg - self.theta_lo_deg) / self.step_deg))
        return np.linspace(self.theta_lo_deg, self.theta_hi_deg, k + 1)


@dataclass
class NegativityResult:
    max_value: float  # largest I / sum|integrand| seen on the grid
    worst: float  # T (packing) or t (codes) where it occurs
    certified: bool
    error: float = 0.0
    grid_size: int = 0


@dataclass
class DeltaResult:
    delta_star: float
    base: float
    certified: bool
    bracket: tuple
    at_cap: bool = False
    meta: dict = field(default_factory=dict)


def _extremal(alpha, s, n, digits=60):
    return Extremal(alpha, s, PrecisionConfig(working_digits=digits), n=n)


def _golden_max(f, a, b, tol):
    """Golden-section search for a maximum of f on [a, b]."""
    gr = (math.sqrt(5) - 1) / 2
    c, d = b - gr * (b - a), a + gr * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = f(d)
    return (c, fc) if fc > fd else (d, fd)


# ---------------------------------------------------------------- packing

def packing_integral(ex: Extremal, n: int, rho: float, T: float, cfg: CheckConfig,
                     nodes: int | None = None) -> tuple[float, float]:
    """Scaled integral of g against the packing density at center distance T.

    Returns (I, A) where A is the integral of |integrand|; both carry the same
    fixed scale (UV)^(n-2) <= rho^(2(n-2)).
    """
    m = nodes or cfg.nodes
    xmax = 1 - T * T / (2 * rho * rho)
    if xmax <= -1:
        return 0.0, 0.0
    z, wz = composite(graded_breaks(xmax + 1, cfg.first_panel / n), m)
    x = xmax - z
    r1 = x * rho + np.sqrt(np.maximum(T * T - (1 - x * x) * rho * rho, 0.0))
    q, wq = composite(graded_breaks(1.0, cfg.inner_panel), m)
    X = x[:, None]
    V = r1[:, None] + (rho - r1)[:, None] * q[None, :]
    W = (wz * (rho - r1))[:, None] * wq[None, :]
    disc = np.sqrt(np.maximum(T * T - (1 - X * X) * V * V, 1e-300))
    U = X * V + disc
    if cfg.measure == "arclength":
        J = np.sqrt(1 + (X - (1 - X * X) * V / disc) ** 2)
    else:
        J = np.abs(V + X * V * V / disc)
    with np.errstate(divide="ignore"):
        lw = (n - 2) * (np.log(U * V) - 2 * math.log(rho)) + (n - 3) / 2 * np.log1p(-X * X)
    vals = W * J * np.exp(lw)
    g = ex.g_np(np.broadcast_to(X, V.shape))
    return float(np.sum(vals * g)), float(np.sum(vals * np.abs(g)))


def _T_grid(rho, k):
    u = np.linspace(0, 1, k, endpoint=False)
    return 1 + (2 * rho - 1) * u * u


def _packing_ok_coarse(ex, n, rho, cfg):
    for T in _T_grid(rho, cfg.coarse_grid):
        I, A = packing_integral(ex, n, rho, T, cfg)
        if A > 0 and I >= 0:
            return False
    return True


def _certify(fun, grid, lo, hi, cfg: CheckConfig) -> NegativityResult:
    """Check sign of fun on grid, refine around the worst point, apply margins.

    Points where the support is empty (A = 0) hold trivially and are skipped.
    """
    def rel(p):
        I, A = fun(p, None)
        return I / A if A > 0 else -np.inf

    vals = [rel(p) for p in grid]
    k = int(np.argmax(vals))
    if vals[k] == -np.inf:
        return NegativityResult(-1.0, float(grid[0]), True, 0.0, len(grid))
    a = grid[max(k - 1, 0)]
    b = grid[k + 1] if k + 1 < len(grid) else hi
    a, b = max(a, lo), min(b, hi)

    worst, wv = grid[k], vals[k]
    if b - a > cfg.refine_width:
        p, v = _golden_max(rel, a, b, cfg.refine_width)
        if v > wv:
            worst, wv = p, v
    I1, A1 = fun(worst, None)
    I2, _ = fun(worst, cfg.nodes + cfg.nodes // 2)
    err = abs(I1 - I2) / A1 if A1 > 0 else 0.0
    ok = wv < 0 and I2 < 0 and abs(wv) > cfg.margin * err
    return NegativityResult(float(wv), float(worst), bool(ok), float(err), len(grid))


def negativity_packing(n: int, theta_prime: float, delta: float, cfg: CheckConfig | None = None,
                       ex: Extremal | None = None) -> NegativityResult:
    """Certify that the averaged packing function is negative for all T >= 1."""
    cfg = cfg or CheckConfig()
    s = math.cos(theta_prime)
    rb = 1 / math.sqrt(2 * (1 - s))
    rho = rb + delta
    if delta < 0 or rho > 1 + 1e-12:
        raise ParameterError("need delta >= 0 and rbar + delta <= 1")
    ex = ex or _extremal((n - 3) / 2, s, n)
    grid = _T_grid(rho, cfg.cert_grid)
    fun = lambda T, m: packing_integral(ex, n, rho, T, cfg, m)
    return _certify(fun, grid, 1.0, 2 * rho, cfg)


def _bisect(ok, cap, tol):
    lo, hi = 0.0, cap
    if ok(cap):
        return cap, (cap, cap), True
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo, (lo, hi), False


def max_delta_packing(n: int, theta_prime: float, cfg: CheckConfig | None = None,
                      ex: Extremal | None = None, certify: bool = True) -> DeltaResult:
    """Largest extension delta (with rbar + delta <= 1) keeping negativity."""
    cfg = cfg or CheckConfig()
    s = math.cos(theta_prime)
    rb = 1 / math.sqrt(2 * (1 - s))
    if rb > 1 + 1e-12:
        raise ParameterError("angle below 60 degrees leaves no room for the support")
    ex = ex or _extremal((n - 3) / 2, s, n)
    cap = max(1 - rb, 0.0)
    d, bracket, at_cap = _bisect(lambda d: _packing_ok_coarse(ex, n, rb + d, cfg), cap,
                                 cfg.delta_rel_tol * rb)
    res = DeltaResult(d, rb, False, bracket, at_cap)
    if certify:
        _finalize(res, lambda d: negativity_packing(n, theta_prime, d, cfg, ex), cfg)
    return res


def _finalize(res: DeltaResult, check, cfg: CheckConfig):
    """Shrink, then run the full certification; fall back to a certified bisection."""
    d = res.delta_star * (1 - cfg.safety)
    r = check(d)
    if not r.certified:
        lo, hi = 0.0, d
        while hi - lo > cfg.delta_rel_tol * res.base:
            mid = (lo + hi) / 2
            if check(mid).certified:
                lo = mid
            else:
                hi = mid
        d = lo
        r = check(d) if d > 0 else NegativityResult(r.max_value, r.worst, True)
        res.meta["fallback"] = True
    res.delta_star = d
    res.certified = r.certified
    res.meta.update(worst=r.worst, max_value=r.max_value, error=r.error, grid=r.grid_size)


def improvement_factor(n: int, delta: float, base: float) -> float:
    return (1 + delta / base) ** (-n)


def table2_cell(n: int, theta_deg: float, cfg: CheckConfig | None = None) -> DeltaResult:
    res = max_delta_packing(n, math.radians(theta_deg), cfg)
    res.meta["factor"] = improvement_factor(n, res.delta_star, res.base)
    return res


def _cz_value(n, theta, digits):
    ex = _extremal((n - 3) / 2, math.cos(theta), n, digits)
    return float(ex.L_log) + n * math.log(math.sin(theta / 2)), ex


def _sweep_min(f, grid_deg, step, tol, keep=3):
    """Minimize f over a degree grid, then refine the best few by golden section."""
    vals = [(f(math.radians(t)), math.radians(t)) for t in grid_deg]
    best = min(vals)
    order = sorted(range(len(vals)), key=lambda i: vals[i][0])[:keep]
    h = math.radians(step)
    lo_all, hi_all = math.radians(grid_deg[0]), math.radians(grid_deg[-1])
    for i in order:
        c = vals[i][1]
        p, v = _golden_max(lambda t: -f(t), max(c - h, lo_all), min(c + h, hi_all), tol)
        if -v < best[0]:
            best = (-v, p)
    return best


def cz_l79_bound(n: int, sweep: SweepConfig | None = None) -> BoundReport:
    """min over theta of n log sin(theta/2) + log L(g_theta) (Cohn-Zhao with Levenshtein)."""
    sweep = sweep or SweepConfig()
    if n < 4:
        raise ParameterError("n must be at least 4")
    val, th = _sweep_min(lambda t: _cz_value(n, t, sweep.digits)[0], sweep.grid(), sweep.step_deg,
                         sweep.refine_tol_rad)
    return BoundReport(n, "CZ+L79", val / LN10, theta_used=th,
                       metadata={"step_deg": sweep.step_deg, "theta_range_deg":
                                 (sweep.theta_lo_deg, sweep.theta_hi_deg), "digits": sweep.digits})


def new_packing_bound(n: int, sweep: SweepConfig | None = None, cfg: CheckConfig | None = None) -> BoundReport:
    """min over theta of log L(g_theta) - n log(2(rbar + delta*)), certified at the optimum."""
    sweep = sweep or SweepConfig()
    cfg = cfg or CheckConfig()
    if n < 5:
        raise ParameterError("n must be at least 5")
    cache = {}

    def f(t):
        if t not in cache:
            cz, ex = _cz_value(n, t, sweep.digits)
            rb = 1 / math.sqrt(2 * (1 - math.cos(t)))
            dr = max_delta_packing(n, t, cfg, ex, certify=False)
            cache[t] = (cz + n * math.log(rb / (rb + dr.delta_star)), ex)
        return cache[t][0]

    _, th = _sweep_min(f, sweep.grid(), sweep.step_deg, sweep.refine_tol_rad)
    cz, ex = _cz_value(n, th, sweep.digits)
    dr = max_delta_packing(n, th, cfg, ex, certify=True)
    factor = improvement_factor(n, dr.delta_star, dr.base)
    val = cz + math.log(factor)
    meta = {"measure": cfg.measure, "rigorous": cfg.measure == "pushforward",
            "rbar": dr.base, "at_cap": dr.at_cap, "cz_l79_log10_at_theta": cz / LN10,
            "step_deg": sweep.step_deg, "nodes": cfg.nodes, "cert_grid": cfg.cert_grid, **dr.meta}
    return BoundReport(n, "NEW_PACKING", val / LN10, theta_used=th, theta_prime_used=th,
                       delta_star=dr.delta_star, improvement_factor=factor,
                       certified=dr.certified, metadata=meta)


# ---------------------------------------------------------------- codes

def code_integral(ex: Extremal, n: int, t: float, lo: float, hi: float, cfg: CheckConfig,
                  nodes: int | None = None) -> tuple[float, float]:
    """Scaled integral of g(x(u, v)) over the window box at pair inner product t."""
    m = nodes or cfg.nodes
    u, w = composite(graded_breaks(hi - lo, cfg.first_panel / n), m)
    u = u + lo
    U, V = np.meshgrid(u, u, indexing="ij")
    W = np.outer(w, w)
    X = code_x(t, U, V)
    umin2 = 0.0 if lo < 0 < hi else min(lo * lo, hi * hi)
    with np.errstate(divide="ignore"):
        lw = (n - 4) / 2 * (np.log1p(-U * U) + np.log1p(-V * V) - 2 * math.log1p(-umin2)
                            + np.log1p(-np.minimum(X * X, 1.0)))
    vals = W * np.exp(lw)
    if cfg.measure == "arclength":
        dxdu = (t * U - V) / (np.sqrt(1 - V * V) * (1 - U * U) ** 1.5)
        dxdv = (t * V - U) / (np.sqrt(1 - U * U) * (1 - V * V) ** 1.5)
        vals = vals * np.hypot(dxdu, dxdv)
    g = ex.g_np(X)
    return float(np.sum(vals * g)), float(np.sum(vals * np.abs(g)))


def _t_grid(s, k):
    u = np.linspace(0, 1, k, endpoint=False)
    return s - (1 + s) * u * u


def negativity_codes(n: int, theta: float, theta_prime: float, delta: float,
                     cfg: CheckConfig | None = None, ex: Extremal | None = None) -> NegativityResult:
    """Certify that the averaged code function is negative for t in [-1, cos theta]."""
    cfg = cfg or CheckConfig()
    ap = derive_angles(theta, theta_prime)
    r, R = float(ap.r), float(ap.R)
    if not 0 <= delta < r + 1:
        raise ParameterError("need 0 <= delta and r - delta > -1")
    s = float(ap.s)
    ex = ex or _extremal((n - 4) / 2, float(ap.s_prime), n - 1)
    grid = _t_grid(s, cfg.cert_grid)[::-1]
    fun = lambda t, m: code_integral(ex, n, t, r - delta, R, cfg, m)
    return _certify(fun, grid, -1.0, s, cfg)


def _codes_ok_coarse(ex, n, s, lo, hi, cfg):
    for t in _t_grid(s, cfg.coarse_grid):
        I, A = code_integral(ex, n, t, lo, hi, cfg)
        if A > 0 and I >= 0:
            return False
    return True


def max_delta_codes(n: int, theta: float, theta_prime: float, cfg: CheckConfig | None = None,
                    ex: Extremal | None = None, certify: bool = True) -> DeltaResult:
    """Largest window extension below r keeping the code function negative."""
    cfg = cfg or CheckConfig()
    ap = derive_angles(theta, theta_prime)
    r, R, s = float(ap.r), float(ap.R), float(ap.s)
    ex = ex or _extremal((n - 4) / 2, float(ap.s_prime), n - 1)
    cap = r * (1 - 1e-9)
    d, bracket, at_cap = _bisect(lambda d: _codes_ok_coarse(ex, n, s, r - d, R, cfg), cap,
                                 cfg.delta_rel_tol * r)
    res = DeltaResult(d, r, False, bracket, at_cap)
    if certify:
        _finalize(res, lambda d: negativity_codes(n, theta, theta_prime, d, cfg, ex), cfg)
    return res


def code_bound_at(n: int, theta: float, theta_prime: float, cfg: CheckConfig | None = None,
                  certify: bool = True) -> BoundReport:
    cfg = cfg or CheckConfig()
    ap = derive_angles(theta, theta_prime)
    ex = _extremal((n - 4) / 2, float(ap.s_prime), n - 1)
    dr = max_delta_codes(n, theta, theta_prime, cfg, ex, certify)
    base = strip_mass(n, ap, 0)
    strip = strip_mass(n, ap, dr.delta_star)
    val = float(ex.L_log - strip)
    meta = {"measure": cfg.measure, "rigorous": cfg.measure == "pushforward",
            "log_strip": float(strip), "baseline_log10": float(ex.L_log - base) / LN10, **dr.meta}
    return BoundReport(n, "NEW_CODES", val / LN10, theta_used=theta, theta_prime_used=theta_prime,
                       delta_star=dr.delta_star, improvement_factor=float(mp.exp(base - strip)),
                       certified=dr.certified if certify else False, metadata=meta)


def new_code_bound(n: int, theta: float, theta_primes=None, cfg: CheckConfig | None = None) -> BoundReport:
    """Best NEW_CODES bound over a grid of comparison angles theta' > theta."""
    cfg = cfg or CheckConfig()
    if theta_primes is None:
        top = min(theta + math.radians(40), math.radians(120))
        theta_primes = np.linspace(theta + math.radians(1), top, 40)
    best = None
    for tp in theta_primes:
        try:
            rep = code_bound_at(n, theta, float(tp), cfg, certify=False)
        except ParameterError:
            continue
        if best is None or rep.log10_bound < best.log10_bound:
            best = rep
    if best is None:
        raise ParameterError("no admissible comparison angle")
    return code_bound_at(n, theta, best.theta_prime_used, cfg, certify=True)


# ---------------------------------------------------------------- large-n constants

def _sigma_root():
    return mp.findroot(lambda x: 2 - mp.expm1(x) / x, mp.mpf("1.25"))


def _codes_nlambda(sp):
    k = sp / (1 - sp * sp)
    c = 1 / (1 - sp * sp)
    top = _sigma_root() / k

    def lhs(X):
        return mp.quad(lambda v: v * (2 - mp.expm1(k * v) / (k * v)) ** 2 * (1 + v / X) * mp.exp(-c * v), [0, top])

    def rhs(X):
        return mp.quad(lambda v: v * (mp.expm1(k * v) / (k * v)) ** 2 * (1 - v / X) * mp.exp(c * v), [0, X])

    return mp.findroot(lambda X: lhs(X) - rhs(X), mp.mpf("0.9")), top, k, c


def _packing_c1():
    top = _sigma_root()

    def lhs(c1):
        return mp.quad(lambda v: v * (2 - mp.expm1(v) / v) ** 2 * mp.exp(-3 * v) * (1 + 3 * v / (2 * c1)), [0, top])

    def rhs(c1):
        return mp.quad(lambda v: v * (mp.expm1(v) / v) ** 2 * mp.exp(3 * v) * (1 - 3 * v / (2 * c1)), [0, 2 * c1 / 3])

    return mp.findroot(lambda c1: lhs(c1) - rhs(c1), mp.mpf("0.66"))


def asymptotic_constants(digits: int = 30) -> dict:
    """Large-n improvement constants from the one-dimensional v-integral balances."""
    with mp.workdps(digits):
        th = theta_star(digits + 10)
        sp = mp.cos(th)
        X, top, k, c = _codes_nlambda(sp)
        ell = X / (2 * (1 - sp))
        c1 = _packing_c1()
        s_range = [mp.mpf(1) / 3, mp.mpf(1) / 2]
        universal = max(mp.exp(-c1 * mp.sqrt(2 * (1 - x))) for x in s_range)
        return {
            "theta_star_deg": float(mp.degrees(th)),
            "sigma_root": float(_sigma_root()),
            "codes_upper_limit": float(top),
            "codes_rate": float(k),
            "codes_decay": float(c),
            "nLambda_codes": float(X),
            "ell_limit": float(ell),
            "code_factor": float(mp.exp(-ell)),
            "c1_packing": float(c1),
            "packing_factor_universal": float(universal),
            "packing_factor_star": float(mp.exp(-ell)),
        }
