"""Generalized Levenshtein extremal functions g = (t - s) eta f^2.

Expansions of f live in the orthonormal family p~ of eta dmu_alpha.  The
working representation is the two-column form

    f = sum_{j<d} p~_j(t) (p~_d(s) p~_j(1) - p~_d(1) p~_j(s)),

which stays defined when some p~_i(s) vanishes.  The lambda^c form, the 3x3
determinant and the base-basis r/b forms are kept as cross-checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import mpmath as mp
import numpy as np

from .errors import CertificateError, DegenerateError, ParameterError, RangeError
from .orthopoly import (DEFAULT, OrthoFamily, PrecisionConfig, basis_for, eta_value,
                        largest_roots, modify_measure)
from .reports import BoundReport

ONE, ONE_PLUS_T, POLY = "one", "one_plus_t", "poly"


@dataclass(frozen=True)
class MeasureSpec:
    alpha: float
    s: float
    eta_roots: tuple = ()

    def __post_init__(self):
        if self.alpha <= -1:
            raise ParameterError("alpha must exceed -1")
        if not -1 < float(self.s) < 1:
            raise ParameterError("s must lie in (-1, 1)")

    @property
    def eta_kind(self) -> str:
        if not self.eta_roots:
            return ONE
        if tuple(self.eta_roots) == (-1,):
            return ONE_PLUS_T
        return POLY

    @property
    def h(self) -> int:
        return len(self.eta_roots)

    @classmethod
    def of_kind(cls, alpha, s, kind: str):
        return cls(alpha, s, () if kind == ONE else (-1,))


@dataclass
class PolyExpansion:
    basis_tag: str
    coeffs: list
    family: OrthoFamily = field(repr=False)
    spec: MeasureSpec | None = None

    def __call__(self, t):
        vals = self.family.values(t, len(self.coeffs) - 1)
        with mp.workdps(self.family.dps):
            return mp.fsum(c * v for c, v in zip(self.coeffs, vals))

    def eval_np(self, t):
        return self.family.series_np([float(c) for c in self.coeffs], t)


@dataclass
class ExtremalCertificate:
    spec: MeasureSpec
    d: int
    lambda_c: list | None
    d1: int | None
    d2: int | None
    g0: object
    g0_positive: bool
    krein_ok: bool
    positivity_ok: bool
    L_log: object
    details: dict = field(default_factory=dict)

    @property
    def globally_minimal(self) -> bool:
        return (self.d1 is not None and self.d2 is not None
                and self.d1 <= self.d < self.d2 and self.g0_positive)

    def to_json(self) -> dict:
        f = lambda x: None if x is None else mp.nstr(x, 30)
        return {"d": self.d, "eta": self.spec.eta_kind, "s": str(self.spec.s),
                "alpha": self.spec.alpha, "lambda_c": None if self.lambda_c is None else [f(x) for x in self.lambda_c],
                "d1": self.d1, "d2": self.d2, "g0": f(self.g0), "g0_positive": self.g0_positive,
                "krein_ok": self.krein_ok, "positivity_ok": self.positivity_ok, "L_log": f(self.L_log)}


def _digits(cfg):
    return (cfg or DEFAULT).working_digits


def base_family(alpha, degree: int, cfg: PrecisionConfig | None = None):
    return basis_for(float(alpha), float(alpha), degree, _digits(cfg))


def family(ms: MeasureSpec, d: int, cfg: PrecisionConfig | None = None) -> OrthoFamily:
    """p~ for eta dmu_alpha, reaching degree d + 1 at least."""
    deg = d + 2
    if ms.eta_kind == ONE:
        return base_family(ms.alpha, deg, cfg)
    if ms.eta_kind == ONE_PLUS_T:
        # (1+t) dmu_alpha is already the probability Jacobi (alpha, alpha+1) measure
        return basis_for(float(ms.alpha), float(ms.alpha) + 1, deg, _digits(cfg))
    base = base_family(ms.alpha, deg + 2 * ms.h + 4, cfg)
    return modify_measure(base, ms.eta_roots, deg)


# ---------------------------------------------------------------- selection

@dataclass(frozen=True)
class DegreeChoice:
    d: int
    eta_kind: str
    alpha: float
    lo: object
    hi: object

    @property
    def degree(self) -> int:
        return 2 * self.d - 1 if self.eta_kind == ONE else 2 * self.d


def _tie_tol(cfg):
    return mp.mpf(10) ** (-(_digits(cfg) - 10))


def select_degree(n: int, s, cfg: PrecisionConfig | None = None, alpha=None) -> DegreeChoice:
    """Levenshtein interval containing s; both interval kinds are left-closed."""
    if n < 3 and alpha is None:
        raise ParameterError("n must be at least 3")
    a = (n - 3) / 2 if alpha is None else alpha
    cfg = cfg or DEFAULT
    cap = cfg.degree_cap
    dig = cfg.working_digits
    with mp.workdps(dig):
        s = mp.mpf(s)
        tol = _tie_tol(cfg)
        fsym = basis_for(a + 1.0, a + 1.0, cap + 1, dig)
        fasym = basis_for(a + 1.0, float(a), cap + 1, dig)
        lo = mp.mpf(-1)
        chunk = 8
        for d in range(1, cap + 1):
            if d % chunk == 1:
                top = min(cap, d + chunk - 1)
                rs = largest_roots(fsym, top)
                ra = largest_roots(fasym, top)
            hi_odd = ra[d - 1]
            if s + tol < hi_odd and s + tol >= lo:
                return DegreeChoice(d, ONE, a, lo, hi_odd)
            hi_even = rs[d - 1]
            if s + tol < hi_even:
                return DegreeChoice(d, ONE_PLUS_T, a, hi_odd, hi_even)
            lo = hi_even
    raise RangeError(f"s = {s} beyond the degree cap {cap}")


# ---------------------------------------------------------------- f forms

def _vals(fam, d, s):
    return fam.values(s, d + 1), fam.ones


def tilde_coeffs(fam: OrthoFamily, s, d: int) -> list:
    ps, p1 = _vals(fam, d, s)
    with mp.workdps(fam.dps):
        return [ps[d] * p1[j] - p1[d] * ps[j] for j in range(d)]


def lambda_c(fam: OrthoFamily, s, d: int) -> list:
    ps, p1 = _vals(fam, d, s)
    with mp.workdps(fam.dps):
        tiny = mp.mpf(10) ** (-(fam.dps - 10))
        for i in range(d + 1):
            if abs(ps[i]) <= tiny * abs(p1[i]):
                raise DegenerateError(f"p~_{i}(s) vanishes; lambda^c undefined")
        return [(p1[i] / ps[i] - p1[i + 1] / ps[i + 1]) / fam.a(i + 1) for i in range(d)]


def coeffs_from_lambda(fam: OrthoFamily, s, lam: Sequence) -> list:
    d = len(lam)
    ps = fam.values(s, d)
    with mp.workdps(fam.dps):
        out = []
        tail = mp.mpf(0)
        for j in range(d - 1, -1, -1):
            tail += fam.a(j + 1) * lam[j]
            out.append(ps[j] * tail)
        return out[::-1]


def f_det3(fam: OrthoFamily, s, d: int, t):
    """3x3 determinant form, unnormalized, at a point t not in {1, s}."""
    with mp.workdps(fam.dps):
        t = mp.mpf(t)
        pt, ps, p1 = fam.values(t, d + 1), fam.values(s, d + 1), fam.ones
        M = mp.matrix([[pt[k], ps[k], p1[k]] for k in (d + 1, d, d - 1)])
        return mp.det(M) / ((t - 1) * (t - s))


def _root_rows(base, s, roots, degs):
    cols = [base.values(s, max(degs)), base.ones] + [base.values(r, max(degs)) for r in roots]
    return [[c[k] for c in cols] for k in degs]


def r_form_coeffs(base: OrthoFamily, s, roots: Sequence, d: int) -> list:
    """Coefficients of r in the base family (degree d - 1)."""
    h = len(roots)
    with mp.workdps(base.dps):
        top = _root_rows(base, s, roots, list(range(d + h, d - 1, -1)))
        low = _root_rows(base, s, roots, list(range(d)))
        return [mp.det(mp.matrix(top + [low[i]])) for i in range(d)]


def b_form(base: OrthoFamily, s, roots: Sequence, d: int, t):
    h = len(roots)
    with mp.workdps(base.dps):
        t = mp.mpf(t)
        degs = list(range(d + h + 1, d - 2, -1))
        pt = base.values(t, d + h + 1)
        rows = _root_rows(base, s, roots, degs)
        M = mp.matrix([[pt[k]] + row for k, row in zip(degs, rows)])
        return mp.det(M) / ((t - 1) * (t - s) * eta_value(roots, t))


def f_extremal(ms: MeasureSpec, d: int, cfg: PrecisionConfig | None = None,
               cross_check: bool = False, require_g0: bool = True) -> PolyExpansion:
    """Critical f of degree d-1 in the p~ family, scaled so f(1) > 0.

    With ``require_g0`` a nonpositive zeroth coefficient of g is an error.
    """
    if d < 1:
        raise ParameterError("d must be at least 1")
    fam = family(ms, d, cfg)
    with mp.workdps(fam.dps):
        c = tilde_coeffs(fam, ms.s, d)
        f1 = mp.fsum(cj * pj for cj, pj in zip(c, fam.ones))
        if f1 == 0:
            raise DegenerateError("f(1) = 0")
        sgn = 1 if f1 > 0 else -1
        c = [sgn * x for x in c]
        exp = PolyExpansion("p~", c, fam, ms)
        if cross_check:
            _cross_check(exp, ms, d, cfg)
        g0 = g0_quadratic(fam, ms.s, c)
        if require_g0 and g0 <= 0:
            raise CertificateError(f"g_0 = {mp.nstr(g0, 8)} is not positive")
    return exp


def _cross_check(exp: PolyExpansion, ms: MeasureSpec, d: int, cfg):
    fam = exp.family
    base = base_family(ms.alpha, d + ms.h + 4, cfg)
    pts = [mp.mpf("-0.71"), mp.mpf("0.13"), mp.mpf("0.47")]
    forms = []
    try:
        lam = lambda_c(fam, ms.s, d)
        le = PolyExpansion("p~", coeffs_from_lambda(fam, ms.s, lam), fam)
        forms.append(("lambda", le))
    except DegenerateError:
        pass
    forms.append(("det3", lambda t: f_det3(fam, ms.s, d, t)))
    rc = r_form_coeffs(base, ms.s, ms.eta_roots, d)
    forms.append(("r", PolyExpansion("p", rc, base)))
    forms.append(("b", lambda t: b_form(base, ms.s, ms.eta_roots, d, t)))
    with mp.workdps(fam.dps):
        ref = [exp(t) for t in pts]
        for name, fn in forms:
            vals = [fn(t) for t in pts]
            k = vals[0] / ref[0]
            for v, r in zip(vals, ref):
                if abs(v - k * r) > mp.mpf(10) ** (-(fam.dps - 20)) * (abs(v) + abs(k * r)):
                    raise CertificateError(f"{name} form is not proportional to the working form")


# ---------------------------------------------------------------- g_0 and L

def g0_quadratic(fam: OrthoFamily, s, c: Sequence):
    """Zeroth coefficient of (t-s) eta f^2 in the base family, exactly."""
    with mp.workdps(fam.dps):
        d = len(c)
        tot = mp.fsum(c[i] ** 2 * (fam.D[i] - s) for i in range(d))
        tot += 2 * mp.fsum(c[i] * c[i + 1] * fam.E[i] for i in range(d - 1))
        return tot


def g0_diagonal(ms: MeasureSpec, d: int, lam: Sequence, cfg: PrecisionConfig | None = None):
    fam = family(ms, d, cfg)
    ps = fam.values(ms.s, d)
    with mp.workdps(fam.dps):
        return -mp.fsum(fam.a(j + 1) * ps[j] * ps[j + 1] * lam[j] ** 2 for j in range(len(lam)))


def g_at_one(exp: PolyExpansion, ms: MeasureSpec):
    with mp.workdps(exp.family.dps):
        f1 = mp.fsum(c * p for c, p in zip(exp.coeffs, exp.family.ones))
        return (1 - ms.s) * eta_value(ms.eta_roots, mp.mpf(1)) * f1 ** 2


def functional_direct(ms: MeasureSpec, d: int, cfg: PrecisionConfig | None = None):
    """log L = log g(1) - log g_0 from the working expansion."""
    exp = f_extremal(ms, d, cfg)
    with mp.workdps(exp.family.dps):
        return mp.log(g_at_one(exp, ms)) - mp.log(g0_quadratic(exp.family, ms.s, exp.coeffs))


def functional_value(ms: MeasureSpec, d: int, cfg: PrecisionConfig | None = None, check: bool = True):
    """log L via the determinant ratio with the derivative-at-1 column."""
    roots = list(ms.eta_roots)
    h = len(roots)
    base = base_family(ms.alpha, d + h + 3, cfg)
    with mp.workdps(base.dps):
        degs = list(range(d + h + 1, d - 2, -1))
        p1, dp1 = base.values_and_derivs(1, d + h + 1)
        rows = _root_rows(base, ms.s, roots, degs)
        num = mp.det(mp.matrix([[dp1[k]] + row for k, row in zip(degs, rows)]))
        first = []
        for k in degs:
            if k == d - 1:
                first.append(mp.mpf(0))
            else:
                first.append(p1[k] * mp.fsum(base.a(l + 1) / (p1[l] * p1[l + 1]) for l in range(d - 1, k)))
        den = mp.det(mp.matrix([[fk] + row for fk, row in zip(first, rows)]))
        if den == 0:
            raise DegenerateError("denominator determinant vanishes")
        ratio = num / den
        if ratio <= 0:
            raise CertificateError("determinant ratio is not positive")
        val = mp.log(ratio)
        if check:
            other = functional_direct(ms, d, cfg)
            if abs(val - other) > mp.mpf(10) ** -20 * max(1, abs(val)):
                raise CertificateError("determinant-ratio L disagrees with g(1)/g_0")
        return val


# ---------------------------------------------------------------- signatures / positivity

def d1_d2(ms: MeasureSpec, cap: int = 400, cfg: PrecisionConfig | None = None):
    """First two i >= 1 with p~_i(s) p~_{i+1}(s) < 0; exact zeros are not sign changes."""
    fam = family(ms, cap + 1, cfg)
    ps = fam.values(ms.s, cap + 1)
    found = []
    for i in range(1, cap + 1):
        if ps[i] * ps[i + 1] < 0:
            found.append(i)
            if len(found) == 2:
                return found[0], found[1]
    raise RangeError("degree cap reached before two sign changes")


def gamma_ij(basis: OrthoFamily, i: int, j: int):
    if j >= i:
        return mp.mpf(0)
    p1 = basis.ones
    with mp.workdps(basis.dps):
        return p1[i] * p1[j] * mp.fsum(basis.a(l + 1) / (p1[l] * p1[l + 1]) for l in range(j, i))


@dataclass
class PositivityResult:
    krein_ok: bool
    positivity_ok: bool
    indeterminate: bool
    kappa: int
    corollary_ok: bool | None
    dets1: list
    dets2: list


def positivity_check(ms: MeasureSpec, d: int, cfg: PrecisionConfig | None = None) -> PositivityResult:
    roots = list(ms.eta_roots)
    h = len(roots)
    base = base_family(ms.alpha, d + h + 3, cfg)
    with mp.workdps(base.dps):
        top = _root_rows(base, ms.s, roots, list(range(d + h, d - 1, -1)))
        low = _root_rows(base, ms.s, roots, list(range(d)))
        dets1 = [mp.det(mp.matrix(top + [low[i]])) for i in range(d)]
        degs = list(range(d + h + 1, d - 2, -1))
        rows = _root_rows(base, ms.s, roots, degs)
        dets2 = []
        for j in range(d - 1, d + h + 1):
            M = mp.matrix([[gamma_ij(base, k, j)] + row for k, row in zip(degs, rows)])
            dets2.append(mp.det(M))
        scale = max(abs(x) for x in dets1 + dets2) or mp.mpf(1)
        thr = mp.mpf(10) ** (-(base.dps - 20)) * scale
        kappa = 1 if dets1[d - 1] >= 0 else -1
        indeterminate = any(abs(x) < thr for x in dets1 + dets2)
        ok = all(kappa * x >= -thr for x in dets1 + dets2)
        cor = None
        if ms.eta_kind == ONE:
            ps, p1 = base.values(ms.s, d), base.ones
            cor = ps[d] < 0 and all(ps[d] / p1[d] - ps[i] / p1[i] <= 0 for i in range(d + 1))
        elif ms.eta_kind == ONE_PLUS_T:
            fam = family(ms, d, cfg)
            ps, p1 = fam.values(ms.s, d), fam.ones
            cor = ps[d] < 0 and all(ps[j] / p1[j] - ps[j + 1] / p1[j + 1] >= 0 for j in range(d))
        if cor and not ok:
            raise CertificateError("corollary conditions hold but determinant test fails")
        return PositivityResult(True, bool(ok), bool(indeterminate), kappa, cor, dets1, dets2)


def certificate(ms: MeasureSpec, d: int, cfg: PrecisionConfig | None = None, full: bool = True) -> ExtremalCertificate:
    fam = family(ms, d, cfg)
    exp = f_extremal(ms, d, cfg, cross_check=full)
    try:
        lam = lambda_c(fam, ms.s, d)
    except DegenerateError:
        lam = None
    with mp.workdps(fam.dps):
        g0 = g0_quadratic(fam, ms.s, exp.coeffs)
        L = mp.log(g_at_one(exp, ms)) - mp.log(g0)
        d1 = d2 = None
        details = {}
        if full:
            try:
                d1, d2 = d1_d2(ms, cap=max(4 * d + 8, 40), cfg=cfg)
            except RangeError:
                pass
            pos = positivity_check(ms, d, cfg)
            details = {"kappa": pos.kappa, "indeterminate": pos.indeterminate, "corollary_ok": pos.corollary_ok}
            krein, posok = pos.krein_ok, pos.positivity_ok
        else:
            krein, posok = True, None
    return ExtremalCertificate(ms, d, lam, d1, d2, g0, g0 > 0, krein, posok, L, details)


# ---------------------------------------------------------------- Levenshtein bound

class Extremal:
    """Levenshtein extremal g for (alpha, s) with a fast double-precision evaluator."""

    def __init__(self, alpha, s, cfg: PrecisionConfig | None = None, n: int | None = None):
        self.alpha = alpha
        self.s = s
        nn = n if n is not None else int(round(2 * alpha + 3))
        self.choice = select_degree(nn, s, cfg, alpha=alpha)
        self.d = self.choice.d
        self.kind = self.choice.eta_kind
        self.spec = MeasureSpec.of_kind(alpha, s, self.kind)
        self.expansion = f_extremal(self.spec, self.d, cfg)
        fam = self.expansion.family
        with mp.workdps(fam.dps):
            self.g0 = g0_quadratic(fam, self.spec.s, self.expansion.coeffs)
            self.L_log = mp.log(g_at_one(self.expansion, self.spec)) - mp.log(self.g0)
        self._cf = [float(c) for c in self.expansion.coeffs]
        self._sf = float(s)
        self._g0f = float(self.g0)

    def f_np(self, x):
        return self.expansion.family.series_np(self._cf, x)

    def g_np(self, x):
        """g(x)/g_0, so that the normalized zeroth coefficient is 1."""
        x = np.asarray(x, dtype=float)
        eta = 1.0 if self.kind == ONE else (1.0 + x)
        return (x - self._sf) * eta * self.f_np(x) ** 2 / self._g0f


@lru_cache(maxsize=4096)
def extremal_for(alpha: float, s: float, digits: int = 60) -> Extremal:
    return Extremal(alpha, s, PrecisionConfig(working_digits=digits))


def levenshtein_log_bound(n: int, s, cfg: PrecisionConfig | None = None):
    """Natural log of the Levenshtein bound on M(n, arccos s)."""
    return Extremal((n - 3) / 2, s, cfg, n=n).L_log


def levenshtein_code_bound(n: int, theta: float, cfg: PrecisionConfig | None = None) -> BoundReport:
    if n < 3:
        raise ParameterError("n must be at least 3")
    if not 0 < theta <= math.pi / 2 + 1e-15:
        raise ParameterError("theta must lie in (0, pi/2]")
    s = mp.cos(theta) if abs(theta - math.pi / 2) > 1e-15 else mp.mpf(0)
    ex = Extremal((n - 3) / 2, s, cfg, n=n)
    return BoundReport(n, "L79", float(ex.L_log / mp.log(10)), theta_used=theta,
                       metadata={"d": ex.d, "eta": ex.kind, "digits": _digits(cfg)})


def levenshtein_binomial(n: int, s, cfg: PrecisionConfig | None = None):
    """Smallest binomial bound of Levenshtein's closed form with cos(theta) = s.

    Returns (bound, ell, eps) for the first (ell, eps), ordered by the
    interval endpoints, whose root t_{ell-eps}^{alpha+1, alpha+eps} is >= s.
    """
    a = (n - 3) / 2
    cfg = cfg or DEFAULT
    dig = cfg.working_digits
    with mp.workdps(dig):
        s = mp.mpf(s)
        tol = _tie_tol(cfg)
        fsym = basis_for(a + 1.0, a + 1.0, cfg.degree_cap + 1, dig)
        fasym = basis_for(a + 1.0, float(a), cfg.degree_cap + 1, dig)
        for ell in range(1, cfg.degree_cap):
            for eps in (1, 0):
                m = ell - eps
                if m < 1:
                    continue
                root = largest_roots(fsym if eps else fasym, m)[m - 1]
                if s <= root + tol:
                    return math.comb(ell + n - 2, n - 1) + math.comb(ell + n - 1 - eps, n - 1), ell, eps
    raise RangeError("no Levenshtein interval below the degree cap")
