"""Orthonormal Jacobi families, their recurrences, roots and measure changes.

Every family here is orthonormal for a probability measure on [-1, 1] (times
an optional total mass, see ``OrthoFamily.p0``) and is stored through its
Jacobi matrix: diagonal ``D`` and off-diagonal ``E``.  The three-term
recurrence

    p_{n+1}(t) = (a_{n+1} t + b_{n+1}) p_n(t) - c_{n+1} p_{n-1}(t)

uses a_{n+1} = 1/E_n, b_{n+1} = -D_n/E_n, c_{n+1} = E_{n-1}/E_n.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import mpmath as mp
import numpy as np

from .errors import DomainError, NumericalError, ParameterError, RangeError


@dataclass(frozen=True)
class PrecisionConfig:
    working_digits: int = 60
    quad_rel_tol: float = 1e-30
    root_tol: float = 1e-40
    degree_cap: int = 400
    theta_step_deg: float = 0.25
    t_grid: int = 6

    def __post_init__(self):
        if self.working_digits < 30:
            raise ParameterError("working_digits must be at least 30")
        if self.quad_rel_tol <= 0 or self.root_tol <= 0:
            raise ParameterError("tolerances must be positive")


DEFAULT = PrecisionConfig()


@dataclass(frozen=True)
class JacobiParams:
    alpha: float
    beta: float

    def __post_init__(self):
        for v in (self.alpha, self.beta):
            if not np.isfinite(float(v)) or float(v) <= -1:
                raise ParameterError(f"Jacobi exponent must exceed -1, got {v}")


class OrthoFamily:
    """Orthonormal polynomials given by a Jacobi matrix.

    ``p0`` is the value of the degree-0 member; it is 1 for a probability
    measure and 1/sqrt(mass) otherwise.
    """

    def __init__(self, D, E, p0, dps: int, label: str = ""):
        self.D = list(D)
        self.E = list(E)
        self.p0 = p0
        self.dps = dps
        self.label = label
        self.max_degree = len(self.E)
        self.Df = np.array([float(x) for x in self.D])
        self.Ef = np.array([float(x) for x in self.E])
        self.p0f = float(p0)
        self._ones = None

    # three-term recurrence coefficients, 1-based
    def a(self, n: int):
        return 1 / self.E[n - 1]

    def b(self, n: int):
        return -self.D[n - 1] / self.E[n - 1]

    def c(self, n: int):
        return self.E[n - 2] / self.E[n - 1] if n >= 2 else mp.mpf(0)

    def _check(self, n: int):
        if n < 0 or n > self.max_degree:
            raise RangeError(f"degree {n} outside 0..{self.max_degree}")

    def values(self, t, upto: int) -> list:
        """p_0(t), ..., p_upto(t) at working precision."""
        self._check(upto)
        with mp.workdps(self.dps):
            t = mp.mpmathify(t)
            out = [mp.mpf(self.p0)]
            prev = mp.mpf(0)
            for k in range(upto):
                nxt = ((t - self.D[k]) * out[k] - (self.E[k - 1] * prev if k else 0)) / self.E[k]
                prev = out[k]
                out.append(nxt)
            return out

    def value(self, n: int, t):
        return self.values(t, n)[n]

    def values_and_derivs(self, t, upto: int):
        self._check(upto)
        with mp.workdps(self.dps):
            t = mp.mpf(t)
            p = [mp.mpf(self.p0)]
            dp = [mp.mpf(0)]
            for k in range(upto):
                pm = self.E[k - 1] * p[k - 1] if k else 0
                dpm = self.E[k - 1] * dp[k - 1] if k else 0
                p.append(((t - self.D[k]) * p[k] - pm) / self.E[k])
                dp.append((p[k] + (t - self.D[k]) * dp[k] - dpm) / self.E[k])
            return p, dp

    def values_np(self, t, upto: int) -> np.ndarray:
        """Double-precision values, shape (upto+1,) + t.shape."""
        self._check(upto)
        t = np.asarray(t, dtype=float)
        out = np.empty((upto + 1,) + t.shape)
        out[0] = self.p0f
        if upto:
            out[1] = (t - self.Df[0]) * out[0] / self.Ef[0]
        for k in range(1, upto):
            out[k + 1] = ((t - self.Df[k]) * out[k] - self.Ef[k - 1] * out[k - 1]) / self.Ef[k]
        return out

    def series_np(self, coeffs, t) -> np.ndarray:
        """Evaluate sum_i coeffs[i] p_i(t) by Clenshaw in double precision."""
        c = np.asarray(coeffs, dtype=float)
        t = np.asarray(t, dtype=float)
        n = len(c) - 1
        b1 = np.zeros_like(t)
        b2 = np.zeros_like(t)
        for k in range(n, -1, -1):
            # alpha_k(t) = (t - D_k)/E_k, beta_{k+1} = E_k/E_{k+1}
            ak = (t - self.Df[k]) / self.Ef[k] if k < len(self.Ef) else 0.0
            bk1 = self.Ef[k] / self.Ef[k + 1] if k + 1 < len(self.Ef) else 0.0
            b0 = c[k] + ak * b1 - bk1 * b2
            b2, b1 = b1, b0
        return self.p0f * b1

    @property
    def ones(self) -> list:
        if self._ones is None:
            self._ones = self.values(1, self.max_degree)
        return self._ones

    def log_leading(self, n: int):
        with mp.workdps(self.dps):
            return mp.log(self.p0) - mp.fsum(mp.log(e) for e in self.E[:n])

    def truncated_matrix(self, size: int):
        return self.D[:size], self.E[: size - 1]

    def to_json(self) -> str:
        return json.dumps({
            "label": self.label, "dps": self.dps, "p0": mp.nstr(self.p0, self.dps),
            "D": [mp.nstr(x, self.dps) for x in self.D],
            "E": [mp.nstr(x, self.dps) for x in self.E],
        })

    @classmethod
    def from_json(cls, text: str) -> "OrthoFamily":
        d = json.loads(text)
        with mp.workdps(d["dps"]):
            return cls([mp.mpf(x) for x in d["D"]], [mp.mpf(x) for x in d["E"]],
                       mp.mpf(d["p0"]), d["dps"], d["label"])


class JacobiBasis(OrthoFamily):
    """Orthonormal Jacobi polynomials for (1-t)^alpha (1+t)^beta dt / Z."""

    def __init__(self, params: JacobiParams, max_degree: int, cfg: PrecisionConfig = DEFAULT):
        if max_degree < 0:
            raise RangeError("max_degree must be nonnegative")
        self.params = params
        self.cfg = cfg
        dps = cfg.working_digits
        with mp.workdps(dps + 10):
            a, b = mp.mpf(params.alpha), mp.mpf(params.beta)
            D, E = [], []
            # one extra diagonal entry so that degree max_degree is reachable
            for n in range(max_degree + 1):
                D.append(_monic_A(n, a, b))
                E.append(mp.sqrt(_monic_B(n + 1, a, b)))
            self.log_omega = [_log_omega(n, a, b) for n in range(max_degree + 2)]
            self.log_mass = (a + b + 1) * mp.log(2) + mp.loggamma(a + 1) + mp.loggamma(b + 1) - mp.loggamma(a + b + 2)
        super().__init__(D, E, mp.mpf(1), dps, label=f"jacobi({params.alpha},{params.beta})")

    @property
    def alpha(self):
        return self.params.alpha

    @property
    def beta(self):
        return self.params.beta

    def values_at_one_classical(self) -> list:
        """binom(n+alpha, n); exact integers or half-integer binomials."""
        with mp.workdps(self.dps):
            return [mp.binomial(n + mp.mpf(self.alpha), n) for n in range(self.max_degree)]

    def to_classical(self, n: int):
        """Factor k with p_n^{alpha,beta} = k * p_n (classical over orthonormal)."""
        with mp.workdps(self.dps):
            return mp.exp((self.log_omega[n] - self.log_mass) / 2)

    def classical(self, n: int, t):
        with mp.workdps(self.dps):
            return self.to_classical(n) * self.value(n, t)

    def shifted(self, k: int = 1) -> "JacobiBasis":
        return basis_for(self.alpha + k, self.beta + k, max(self.max_degree - 1, 0), self.cfg.working_digits)


def _monic_A(n, a, b):
    if n == 0:
        return (b - a) / (a + b + 2)
    s = 2 * n + a + b
    return (b * b - a * a) / (s * (s + 2))


def _monic_B(n, a, b):
    if n == 1:
        return 4 * (1 + a) * (1 + b) / ((2 + a + b) ** 2 * (3 + a + b))
    s = 2 * n + a + b
    return 4 * n * (n + a) * (n + b) * (n + a + b) / (s * s * (s + 1) * (s - 1))


def _log_omega(n, a, b):
    # squared norm of the classical polynomial under (1-t)^a (1+t)^b dt
    s = 2 * n + a + b + 1
    if n == 0:
        return (a + b + 1) * mp.log(2) + mp.loggamma(a + 1) + mp.loggamma(b + 1) - mp.loggamma(a + b + 2)
    return ((a + b + 1) * mp.log(2) + mp.loggamma(n + a + 1) + mp.loggamma(n + b + 1)
            - mp.log(s) - mp.loggamma(n + a + b + 1) - mp.loggamma(n + 1))


@lru_cache(maxsize=256)
def basis_for(alpha: float, beta: float, max_degree: int, digits: int = 60) -> JacobiBasis:
    return JacobiBasis(JacobiParams(alpha, beta), max_degree, PrecisionConfig(working_digits=digits))


def build_basis(params: JacobiParams, max_degree: int, cfg: PrecisionConfig = DEFAULT) -> JacobiBasis:
    return JacobiBasis(params, max_degree, cfg)


def eval(basis: OrthoFamily, n: int, t):  # noqa: A001 - mirrors the operation name
    return basis.value(n, t)


def derivative(basis: JacobiBasis, n: int, t):
    """d/dt of the classical p_n^{alpha,beta} through the shifted family."""
    if n == 0:
        return mp.mpf(0)
    sh = basis_for(basis.alpha + 1, basis.beta + 1, n - 1, basis.dps)
    with mp.workdps(basis.dps):
        return (n + mp.mpf(basis.alpha) + basis.beta + 1) / 2 * sh.classical(n - 1, t)


def cd_kernel(basis: OrthoFamily, n: int, s, t, form: str = "sum"):
    """a_{n+1} * sum_{j<=n} p_j(s) p_j(t)."""
    with mp.workdps(basis.dps):
        s, t = mp.mpf(s), mp.mpf(t)
        if form == "sum" or s == t:
            ps, pt = basis.values(s, n), basis.values(t, n)
            return basis.a(n + 1) * mp.fsum(x * y for x, y in zip(ps, pt))
        ps, pt = basis.values(s, n + 1), basis.values(t, n + 1)
        return (pt[n + 1] * ps[n] - ps[n + 1] * pt[n]) / (t - s)


def _root_in(fam: OrthoFamily, n: int, lo, hi, tol):
    """Safeguarded Newton for the unique root of p_n in (lo, hi), p_n(hi) > 0."""
    x = (lo + hi) / 2
    for _ in range(400):
        p, dp = fam.values_and_derivs(x, n)
        v, dv = p[n], dp[n]
        if v > 0:
            hi = x
        elif v < 0:
            lo = x
        else:
            return x
        step_ok = dv != 0
        xn = x - v / dv if step_ok else (lo + hi) / 2
        if not (lo < xn < hi):
            xn = (lo + hi) / 2
        if abs(xn - x) < tol or hi - lo < tol:
            return xn
        x = xn
    raise NumericalError(f"root of degree {n} did not converge; bracket [{lo}, {hi}]")


def largest_roots(fam: OrthoFamily, upto: int) -> list:
    """Largest roots for degrees 1..upto, bracketed by interlacing."""
    cache = fam.__dict__.setdefault("_roots", [])
    if len(cache) >= upto:
        return cache[:upto]
    tol_digits = fam.dps - 8
    with mp.workdps(fam.dps):
        tol = mp.mpf(10) ** (-tol_digits)
        lo = cache[-1] if cache else mp.mpf(-1)
        for n in range(len(cache) + 1, upto + 1):
            r = _root_in(fam, n, lo, mp.mpf(1), tol)
            cache.append(r)
            lo = r
    return cache[:upto]


def largest_root(basis: OrthoFamily, n: int):
    if n < 1:
        raise RangeError("largest_root needs n >= 1")
    return largest_roots(basis, n)[n - 1]


def _christoffel_linear(D, E, c):
    """Jacobi matrix of |t - c| dmu from that of dmu (c outside (-1, 1)).

    Returns (D', E', mass factor).  One row is lost to truncation.
    """
    sign = 1 if c <= -1 else -1
    n = len(D)
    l = [mp.mpf(0)] * n
    m = [mp.mpf(0)] * (n - 1)
    sh = [sign * (D[i] - c) for i in range(n)]
    l[0] = mp.sqrt(sh[0])
    for i in range(n - 1):
        m[i] = sign * E[i] / l[i]
        q = sh[i + 1] - m[i] ** 2
        if q <= 0:
            raise DomainError("measure modification is not positive definite")
        l[i + 1] = mp.sqrt(q)
    Dn = [c + sign * (l[i] ** 2 + m[i] ** 2) for i in range(n - 1)]
    En = [sign * l[i + 1] * m[i] for i in range(n - 2)]
    En = [abs(x) for x in En]
    return Dn, En, sh[0], sign


def _stieltjes_quadratic(D, E, re, im, size):
    """Discretized Stieltjes for ((t-re)^2 + im^2) dmu using Gauss nodes."""
    n = len(D)
    J = mp.matrix(n, n)
    for i in range(n):
        J[i, i] = D[i]
        if i + 1 < n:
            J[i, i + 1] = J[i + 1, i] = E[i]
    ev, Q = mp.eigsy(J)
    x = [ev[k] for k in range(n)]
    w = [Q[0, k] ** 2 * ((x[k] - re) ** 2 + im ** 2) for k in range(n)]
    mass = mp.fsum(w)
    w = [wk / mass for wk in w]
    Dn, En = [], []
    prev = [mp.mpf(0)] * n
    cur = [mp.mpf(1)] * n
    for k in range(size):
        d = mp.fsum(w[i] * x[i] * cur[i] ** 2 for i in range(n))
        Dn.append(d)
        nxt = [(x[i] - d) * cur[i] - (En[-1] * prev[i] if En else 0) for i in range(n)]
        e = mp.sqrt(mp.fsum(w[i] * nxt[i] ** 2 for i in range(n)))
        if k + 1 < size:
            En.append(e)
        prev, cur = cur, [v / e for v in nxt]
    return Dn, En, mass


def eta_value(roots: Sequence, t):
    v = 1
    for r in roots:
        v = v * (t - r)
    return v


def check_eta(roots: Sequence, grid: int = 401):
    """Raise unless prod(t - r_i) is real and nonnegative on [-1, 1]."""
    real = [complex(r) for r in roots]
    for z in real:
        if abs(z.imag) < 1e-300 and -1 < z.real < 1:
            raise DomainError(f"eta has a real root {z.real} inside (-1, 1)")
    ts = np.linspace(-1, 1, grid)
    v = np.ones_like(ts, dtype=complex)
    for z in real:
        v = v * (ts - z)
    if np.any(np.abs(v.imag) > 1e-9 * (1 + np.abs(v.real))) or np.any(v.real < -1e-12):
        raise DomainError("eta is not real and nonnegative on [-1, 1]")
    if len({z for z in real}) != len(real):
        raise DomainError("eta has repeated roots")


def modify_measure(basis: OrthoFamily, eta_roots: Sequence, d: int) -> OrthoFamily:
    """Orthonormal family for eta(t) dmu, valid through degree d.

    Real roots (|r| >= 1) are handled one at a time by a Cholesky step on the
    Jacobi matrix; conjugate pairs by a discretized Stieltjes procedure on
    Gauss nodes of the current measure.  The result satisfies p~_i(1) > 0 and
    is normalized against the unnormalized measure eta dmu.
    """
    roots = list(eta_roots)
    if not roots:
        return basis
    check_eta(roots)
    need = d + 1
    if need + len(roots) + 1 > basis.max_degree:
        raise RangeError("basis too short for the requested modification")
    with mp.workdps(basis.dps + 10):
        D, E = basis.truncated_matrix(need + 2 * len(roots) + 2)
        mass = mp.mpf(basis.p0) ** -2
        sign = 1
        pending = []
        for r in roots:
            z = complex(r)
            if abs(z.imag) > 0:
                pending.append(z)
                continue
            D, E, fac, sg = _christoffel_linear(D, E, mp.mpf(z.real))
            mass *= fac
            sign *= sg
        pairs = []
        for z in pending:
            if any(abs(z.conjugate() - w) < 1e-14 for w in pairs):
                continue
            pairs.append(z)
        for z in pairs:
            size = len(D) - 2
            D, E, fac = _stieltjes_quadratic(D, E, mp.mpf(z.real), mp.mpf(abs(z.imag)), size)
            mass *= fac
        if sign < 0:
            raise DomainError("eta is negative on [-1, 1]")
        fam = OrthoFamily(D, E, 1 / mp.sqrt(mass), basis.dps, label=f"{basis.label}*eta{tuple(roots)}")
    fam.mass = mass
    return fam


def christoffel_determinant(basis: OrthoFamily, roots: Sequence, i: int, t):
    """Unnormalized modified polynomial from the root-column determinant."""
    k = len(roots)
    with mp.workdps(basis.dps):
        cols = [basis.values(t, i + k)] + [basis.values(r, i + k) for r in roots]
        M = mp.matrix(k + 1, k + 1)
        for row in range(k + 1):
            deg = i + k - row
            for col in range(k + 1):
                M[row, col] = cols[col][deg]
        return mp.det(M) / eta_value(roots, mp.mpf(t))


@dataclass
class Envelope:
    approx: object
    bound: object
    sigma: object


def linearization_envelope(basis: JacobiBasis, d: int, s, t) -> Envelope:
    """Tangent-line value of the classical p_d at s and the relative error envelope."""
    a, b = basis.alpha, basis.beta
    if not (a >= b >= 0 and abs(a - b) <= 1):
        raise ParameterError("need alpha >= beta >= 0 and |alpha - beta| <= 1")
    with mp.workdps(basis.dps):
        s, t = mp.mpf(s), mp.mpf(t)
        if d >= 1 and s < largest_root(basis, d) - mp.mpf(10) ** (-basis.dps + 10):
            raise DomainError("s lies below the largest root")
        approx = basis.classical(d, s) + (t - s) * derivative(basis, d, s)
        sigma = abs(t - s) * (2 * a * s + 2 * s + 1) / (1 - s * s)
        bound = mp.mpf(0) if sigma == 0 else mp.expm1(sigma) / sigma - 1
        return Envelope(approx, bound, sigma)


def gauss_rule(fam: OrthoFamily, n: int):
    """n-point Gauss rule (nodes, weights) for the family's probability measure."""
    with mp.workdps(fam.dps):
        J = mp.matrix(n, n)
        for i in range(n):
            J[i, i] = fam.D[i]
            if i + 1 < n:
                J[i, i + 1] = J[i + 1, i] = fam.E[i]
        ev, Q = mp.eigsy(J)
        return [ev[k] for k in range(n)], [Q[0, k] ** 2 for k in range(n)]
