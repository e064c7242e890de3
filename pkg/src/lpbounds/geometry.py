"""Angles, caps and strips, the code/packing comparison inequalities and the
large-n exponent functions."""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp

from .errors import ParameterError
from .reports import BoundReport

LN10 = math.log(10)


@dataclass(frozen=True)
class AngleParams:
    theta: float
    theta_prime: float
    s: object
    s_prime: object
    r: object
    gamma: object
    R: object

    def floats(self) -> dict:
        return {k: float(getattr(self, k)) for k in ("theta", "theta_prime", "s", "s_prime", "r", "gamma", "R")}


def derive_angles(theta, theta_prime, digits: int = 60) -> AngleParams:
    if not 0 < theta < theta_prime < math.pi:
        raise ParameterError("need 0 < theta < theta' < pi")
    with mp.workdps(digits):
        th, thp = mp.mpf(theta), mp.mpf(theta_prime)
        s, sp = mp.cos(th), mp.cos(thp)
        r = mp.sqrt((s - sp) / (1 - sp))
        q = (1 - s) * (s - sp)
        gamma = 2 * mp.atan2(s, mp.sqrt(q)) + mp.acos(r) - mp.pi
        R = mp.cos(gamma)
    if not R > r:
        raise ParameterError(f"degenerate strip: R = {mp.nstr(R, 8)} <= r = {mp.nstr(r, 8)}")
    return AngleParams(float(theta), float(theta_prime), s, sp, r, gamma, R)


def _a(n):
    return mp.mpf(n - 3) / 2


def cap_mass(n: int, r, digits: int = 60):
    """log of the normalized mass of {t >= r} under (1-t^2)^((n-3)/2)."""
    if n < 2:
        raise ParameterError("n must be at least 2")
    with mp.workdps(digits):
        a = _a(n) + 1
        return mp.log(mp.betainc(a, a, 0, (1 - mp.mpf(r)) / 2, regularized=True))


def band_mass(n: int, lo, hi, digits: int = 60):
    """log of the normalized mass of lo <= t <= hi."""
    with mp.workdps(digits):
        a = _a(n) + 1
        return mp.log(mp.betainc(a, a, (1 - mp.mpf(hi)) / 2, (1 - mp.mpf(lo)) / 2, regularized=True))


def strip_mass(n: int, ap: AngleParams, delta=0, digits: int = 60):
    """log mass of the strip r - delta <= t <= R."""
    if not 0 <= delta < ap.r:
        raise ParameterError("need 0 <= delta < r")
    return band_mass(n, ap.r - delta, ap.R, digits)


def cap_lower_bound(n: int, r):
    """(1-r)(1-r^2)^((n-3)/2) / (2(n-2)), a lower bound on the cap mass."""
    r = mp.mpf(r)
    return (1 - r) * (1 - r * r) ** _a(n) / (2 * (n - 2))


def strip_correction(n: int, ap: AngleParams):
    """1 - 2(n-2) e^{-(n-3)c} / (1-r): a lower bound on strip/cap."""
    c = mp.log((1 - ap.r ** 2) / (1 - ap.R ** 2)) / 2
    return 1 - 2 * (n - 2) * mp.exp(-(n - 3) * c) / (1 - ap.r), c


def comparison_bounds(n: int, theta, theta_prime, M_inner, M_same=None, M_up=None) -> list[BoundReport]:
    """Derived bounds from natural-log code bounds.

    M_inner bounds log M(n-1, theta'); M_same bounds log M(n, theta) and feeds
    the code-to-packing inequality in the same dimension; M_up bounds
    log M(n+1, theta) for the classical code-to-packing step.
    """
    ap = derive_angles(theta, theta_prime)
    out = []
    cap = cap_mass(n, ap.r)
    out.append(BoundReport(n, "BARG_MUSIN", float((M_inner - cap) / LN10), theta, theta_prime,
                           metadata={"kind": "codes", "log_cap": float(cap)}))
    strip = strip_mass(n, ap, 0)
    corr, c = strip_correction(n, ap)
    meta = {"kind": "codes", "log_strip": float(strip), "c": float(c), "correction": float(corr)}
    if corr > 0:
        closed = M_inner - cap - mp.log(corr)
        meta["closed_form_log10"] = float(closed / LN10)
    else:
        meta["fallback"] = "correction factor not positive; exact strip form only"
    out.append(BoundReport(n, "PROP15", float((M_inner - strip) / LN10), theta, theta_prime, metadata=meta))
    lsin = n * mp.log(mp.sin(mp.mpf(theta) / 2))
    if M_same is not None:
        out.append(BoundReport(n, "COHN_ZHAO", float((M_same + lsin) / LN10), theta,
                               metadata={"kind": "packing"}))
    if M_up is not None:
        out.append(BoundReport(n, "SIDELNIKOV", float((M_up + lsin) / LN10), theta,
                               metadata={"kind": "packing"}))
    return out


# ---------------------------------------------------------------- exponents

def lambda_kl(theta):
    """Large-n exponent of (1/n) log of the Levenshtein code bound."""
    st = mp.sin(mp.mpf(theta))
    p, m = (1 + st) / (2 * st), (1 - st) / (2 * st)
    return p * mp.log(p) - (m * mp.log(m) if m > 0 else 0)


def cap_exp(theta, theta_prime):
    return mp.log((1 - mp.cos(mp.mpf(theta))) / (1 - mp.cos(mp.mpf(theta_prime)))) / 2


def Delta(theta_prime):
    return lambda_kl(theta_prime) + mp.log(1 - mp.cos(mp.mpf(theta_prime))) / 2


def dDelta(theta_prime):
    """Stationarity function of Delta: equals -2 sin^2(theta') Delta'(theta').

    Same root as Delta', opposite sign; finite at theta' = pi/2.
    """
    t = mp.mpf(theta_prime)
    st, ct = mp.sin(t), mp.cos(t)
    lg = 0 if ct == 0 else 2 * ct * mp.log((1 + st) / abs(ct))
    return lg - (1 + ct) * st


def exponents(theta) -> dict:
    return {"lambda_KL": lambda_kl(theta), "cap_exp": lambda tp: cap_exp(theta, tp),
            "Delta": Delta(theta), "dDelta": dDelta(theta)}


def theta_star(digits: int = 40):
    """Stationary point of Delta on (0, pi/2], by bisection."""
    with mp.workdps(digits):
        lo, hi = mp.mpf("0.5"), mp.pi / 2
        tol = mp.mpf(10) ** -30
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if dDelta(mid) > 0:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2


def packing_exponent(theta=None):
    """Base-2 exponent of the code-to-packing bound at theta (default theta*)."""
    t = theta_star() if theta is None else mp.mpf(theta)
    return (lambda_kl(t) + mp.log(mp.sin(t / 2))) / mp.log(2)
