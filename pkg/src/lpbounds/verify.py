"""Self-check suites run by ``lpbounds verify`` and the acceptance tests."""
from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass

import mpmath as mp

from .density import SupportSpec, compare_with_exact, mc_oracle
from .extremal import (Extremal, certificate, functional_value,
                       levenshtein_binomial, levenshtein_code_bound)
from .geometry import derive_angles
from .orthopoly import PrecisionConfig, basis_for, derivative, gauss_rule


@dataclass
class Check:
    name: str
    value: float
    threshold: float
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def _worst(a, b):
    return max(a, b)


def orthopoly_suite(digits: int = 60, max_degree: int = 40, seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    thr = 10.0 ** -(digits - 15)
    out = []
    params = [(0.0, 0.0), (0.5, 1.5), (4.5, 4.5), (10.5, 11.5), (rng.uniform(0, 20),) * 2]
    for a, b in params:
        fam = basis_for(a, b, max_degree + 2, digits)
        with mp.workdps(digits):
            a, b = mp.mpf(a), mp.mpf(b)
            x, w = gauss_rule(fam, max_degree + 1)
            vals = [fam.values(xi, max_degree) for xi in x]
            orth = mp.mpf(0)
            for i in range(max_degree + 1):
                for j in range(i, max_degree + 1):
                    s = mp.fsum(wk * v[i] * v[j] for wk, v in zip(w, vals))
                    orth = _worst(orth, abs(s - (1 if i == j else 0)))
            out.append(Check(f"orthonormality a={float(a):.3g} b={float(b):.3g}", float(orth), thr, orth < thr))
            rec = mp.mpf(0)
            de = mp.mpf(0)
            for _ in range(5):
                t = mp.mpf(rng.uniform(-0.99, 0.99))
                for n in range(2, max_degree + 1):
                    ref = mp.jacobi(n, a, b, t)
                    got = fam.classical(n, t)
                    rec = _worst(rec, abs(got - ref) / max(abs(ref), mp.mpf(1)))
                    y1 = derivative(fam, n, t)
                    y2 = (n + a + b + 1) * (n + a + b + 2) / 4 * fam.shifted(2).classical(n - 2, t)
                    res = (1 - t * t) * y2 + (b - a - (a + b + 2) * t) * y1 + n * (n + a + b + 1) * got
                    de = _worst(de, abs(res) / max(abs(n * (n + a + b + 1) * got), mp.mpf(1)))
            out.append(Check(f"recurrence vs closed form a={float(a):.3g} b={float(b):.3g}", float(rec), thr, rec < thr))
            out.append(Check(f"differential equation a={float(a):.3g} b={float(b):.3g}", float(de), thr, de < thr))
    return out


def fourier_coefficients(ex: Extremal, digits: int = 60) -> list:
    """Coefficients of g in the orthonormal base family, by Gauss quadrature."""
    deg = 2 * ex.d + 2
    fam = basis_for(ex.alpha, ex.alpha, deg + 2, digits)
    with mp.workdps(digits):
        x, w = gauss_rule(fam, deg + 2)
        exp = ex.expansion
        eta = (lambda t: 1) if ex.kind == "one" else (lambda t: 1 + t)
        gv = [(xi - ex.s) * eta(xi) * exp(xi) ** 2 for xi in x]
        vals = [fam.values(xi, deg) for xi in x]
        return [mp.fsum(wk * g * v[k] for wk, g, v in zip(w, gv, vals)) for k in range(deg + 1)]


def extremal_suite(n: int = 24, theta_deg: float = 60.0, digits: int = 60) -> list[Check]:
    cfg = PrecisionConfig(working_digits=digits)
    out = []
    s = mp.cos(mp.radians(theta_deg)) if theta_deg != 60 else mp.mpf(1) / 2
    binom, ell, eps = levenshtein_binomial(n, s, cfg)
    out.append(Check(f"binomial bound n={n} theta={theta_deg}", float(binom), 0.0, True,
                     f"ell={ell} eps={eps}"))
    ex = Extremal((n - 3) / 2, s, cfg, n=n)
    with mp.workdps(digits):
        L = functional_value(ex.spec, ex.d, cfg)
        rel = abs(mp.exp(L) - binom) / binom
    out.append(Check("determinant-ratio L vs binomial", float(rel), 1e-15, rel < 1e-15))
    coeffs = fourier_coefficients(ex, digits)
    neg = min(coeffs[1:])
    tiny = mp.mpf(10) ** -(digits - 20) * max(abs(c) for c in coeffs)
    out.append(Check("Fourier coefficients nonnegative", float(neg), float(-tiny), neg >= -tiny))
    cert = certificate(ex.spec, ex.d, cfg)
    out.append(Check("positivity determinants", float(bool(cert.positivity_ok)), 1.0, bool(cert.positivity_ok)))
    bad = []
    for m in range(4, 41):
        rep = levenshtein_code_bound(m, math.pi / 2, cfg)
        if abs(rep.value - 2 * m) > 1e-9 * 2 * m:
            bad.append(m)
    out.append(Check("theta=90 gives 2n for 4<=n<=40", float(len(bad)), 0.0, not bad, str(bad)))
    return out


def density_supports(n: int = 8):
    ap = derive_angles(math.radians(50), math.radians(63))
    codes = SupportSpec.codes(n, float(ap.s), float(ap.r), float(ap.R), 0.02)
    rb = 1 / math.sqrt(2 * (1 - math.cos(math.radians(63))))
    packing = SupportSpec.packing(n, rb, 0.03)
    return codes, packing


def density_suite(n: int = 8, samples: int = 10**7, seed: int = 0, bins: int = 40) -> list[Check]:
    out = []
    for sup in density_supports(n):
        prof = mc_oracle(sup, samples, bins=bins, seed=seed)
        cmp = compare_with_exact(prof, "pushforward")
        out.append(Check(f"{sup.mode} density vs Monte-Carlo (n={n})", cmp["fraction"], 0.95,
                         cmp["fraction"] >= 0.95,
                         f"accepted={prof.meta['accepted']} occupied={cmp['occupied']} max_z={cmp['max_z']:.2f}"))
    return out


SUITES = {"orthopoly": orthopoly_suite, "extremal": extremal_suite, "density": density_suite}


def summarize(checks: list[Check]) -> dict:
    return {"passed": all(c.passed for c in checks), "checks": [c.as_dict() for c in checks]}


