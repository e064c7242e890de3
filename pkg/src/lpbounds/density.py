"""Conditional densities of the projected inner product in the three-point
construction, their large-n closed forms and a Monte-Carlo oracle.

Two measures on the level curves are supported. ``pushforward`` divides by
|grad x| (coarea), so it is the true law of x and the one the Monte-Carlo
oracle agrees with. ``arclength`` integrates the joint weight against plain
arclength on the level curve; it differs from the law by a factor |grad x|
and is kept because the published tables follow it (see README).
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericalError, ParameterError
from .quadrature import composite, cos_rule, graded_breaks, logsum

MEASURES = ("pushforward", "arclength")
CODES, PACKING = "codes", "packing"


def _check_measure(measure: str):
    if measure not in MEASURES:
        raise ParameterError(f"measure must be one of {MEASURES}")


@dataclass(frozen=True)
class SupportSpec:
    """Window for the two conditioned inner products (codes) or radii (packing).

    For codes, ``s`` is the inner product of the two fixed points and the
    window is ``[lo, hi] = [r - delta, R]``. For packing the window is
    ``[0, base + delta]`` and ``s`` is the distance between the two centers.
    """

    mode: str
    n: int
    lo: float
    hi: float
    s: float = 1.0
    base: float | None = None
    delta: float = 0.0

    def __post_init__(self):
        if self.mode == CODES:
            if not -1 < self.lo < self.hi < 1:
                raise ParameterError("codes window needs -1 < lo < hi < 1")
            if not -1 < self.s < 1:
                raise ParameterError("inner product must lie in (-1, 1)")
        elif self.mode == PACKING:
            if not 0 <= self.lo < self.hi <= 1:
                raise ParameterError("packing window needs 0 <= lo < hi <= 1")
            if self.s < 1:
                raise ParameterError("center distance must be at least 1")
        else:
            raise ParameterError(f"unknown mode {self.mode!r}")
        if self.n < 5:
            raise ParameterError("n must be at least 5")

    @classmethod
    def codes(cls, n: int, s: float, r: float, R: float, delta: float = 0.0) -> "SupportSpec":
        return cls(CODES, n, float(r) - delta, float(R), float(s), float(r), delta)

    @classmethod
    def packing(cls, n: int, rbar: float, delta: float = 0.0, T: float = 1.0) -> "SupportSpec":
        return cls(PACKING, n, 0.0, float(rbar) + delta, float(T), float(rbar), delta)

    def with_s(self, s: float) -> "SupportSpec":
        return SupportSpec(self.mode, self.n, self.lo, self.hi, float(s), self.base, self.delta)

    def x_breaks(self) -> list[float]:
        """Sorted x values where the density may fail to be smooth.

        For codes these are the values of x at the box corners, at the edge
        extrema v = u/s and at the interior critical point, plus x = 0 where
        the level curve changes branch. The first and last entries bound the
        attainable range.
        """
        if self.mode == PACKING:
            T, rho = self.s, self.hi
            return [-1.0, min(1.0, 1 - T * T / (2 * rho * rho))]
        s, lo, hi = self.s, self.lo, self.hi
        pts = [(a, b) for a in (lo, hi) for b in (lo, hi)]
        if s != 0:
            pts += [(a, a / s) for a in (lo, hi) if lo < a / s < hi]
        if lo < 0 < hi:
            pts.append((0.0, 0.0))
        xs = [float(np.clip(code_x(s, a, b), -1, 1)) for a, b in pts]
        a, b = min(xs), max(xs)
        if a < 0 < b:
            xs.append(0.0)
        return sorted(set(xs))

    def x_range(self) -> tuple[float, float]:
        """Interval containing every attainable projected inner product."""
        br = self.x_breaks()
        return br[0], br[-1]


@dataclass
class DensityProfile:
    support: SupportSpec
    x_grid: np.ndarray
    log_values: np.ndarray
    normalization: str = "raw"
    stderr: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.x_grid = np.asarray(self.x_grid, float)
        self.log_values = np.asarray(self.log_values, float)
        if self.x_grid.shape != self.log_values.shape:
            raise ParameterError("grid and values differ in length")
        if np.any(np.diff(self.x_grid) <= 0):
            raise ParameterError("grid must be strictly increasing")
        if np.any(np.isnan(self.log_values)) or np.any(self.log_values == np.inf):
            raise ParameterError("log values must be finite or -inf")
        if self.normalization not in ("raw", "probability"):
            raise ParameterError("normalization is raw or probability")

    @property
    def values(self) -> np.ndarray:
        return np.exp(self.log_values)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "log_value", "stderr"])
            se = self.stderr if self.stderr is not None else [None] * len(self.x_grid)
            for x, lv, e in zip(self.x_grid, self.log_values, se):
                w.writerow([repr(float(x)), repr(float(lv)), "" if e is None else repr(float(e))])


# ---------------------------------------------------------------- codes

def code_x(s, u, v):
    """Inner product of the projections onto the complement of the third point."""
    return (s - u * v) / np.sqrt((1 - u * u) * (1 - v * v))


def _partner(s, x, u, sign, with_slope=False):
    """Roots v of the level-curve quadratic at abscissa u (nan where absent).

    With ``with_slope`` also returns s*v - u (numerator of dx/dv) in a form
    free of cancellation at the turning points, where it vanishes like sqrt(q).
    """
    A = u * u + x * x * (1 - u * u)
    q = (1 - u * u) * ((1 - x * x) * u * u + x * x - s * s)
    with np.errstate(invalid="ignore"):
        root = np.sqrt(q)
    v = (s * u + sign * abs(x) * root) / A
    if not with_slope:
        return v
    return v, (sign * s * abs(x) * root - u * q / (1 - u * u)) / A


def _on_branch(s, x, u, v, lo, hi):
    if not np.isfinite(v) or not lo <= v <= hi:
        return False
    return x == 0 or np.sign(s - u * v) == np.sign(x)


def _code_log_weight(n, s, x, u, v, svu, measure):
    lw = (n - 4) / 2 * (np.log1p(-u * u) + np.log1p(-v * v) + math.log1p(-x * x))
    dxdv = svu / (np.sqrt(1 - u * u) * (1 - v * v) ** 1.5)
    with np.errstate(divide="ignore"):
        if measure == "pushforward":
            return lw - np.log(np.abs(dxdv))
        dxdu = (s * u - v) / (np.sqrt(1 - v * v) * (1 - u * u) ** 1.5)
        return lw + 0.5 * np.log1p((dxdu / dxdv) ** 2)


def code_arcs(s, x, lo, hi):
    """Pieces (a, b, sign) of the level curve x inside the box, parametrized by u."""
    cuts = {lo, hi}
    if s * s > x * x:
        t = math.sqrt((s * s - x * x) / (1 - x * x))
        cuts.update({t, -t})
    for edge in (lo, hi):
        for sg in (1, -1):
            w = _partner(s, x, edge, sg)
            if np.isfinite(w):
                cuts.add(float(w))
    pts = sorted(c for c in cuts if lo <= c <= hi)
    arcs = []
    for a, b in zip(pts[:-1], pts[1:]):
        if b - a <= 1e-15:
            continue
        mid = (a + b) / 2
        for sg in (1, -1):
            if _on_branch(s, x, mid, _partner(s, x, mid, sg), lo, hi):
                arcs.append((a, b, sg))
    return arcs


def code_density_exact(n: int, s: float, support: SupportSpec, x: float,
                       measure: str = "arclength", m: int = 16, panels: int = 8) -> float:
    """log density of the projected inner product for codes (unnormalized).

    The joint weight of (u, v) given t = s is det^((n-4)/2) with
    det = (1-u^2)(1-v^2)(1-x^2).
    """
    _check_measure(measure)
    if n < 5:
        raise ParameterError("n must be at least 5")
    if not -1 < x < 1:
        return -np.inf
    lo, hi = support.lo, support.hi
    parts = []
    for a, b, sg in code_arcs(s, x, lo, hi):
        u, w = cos_rule(a, b, m, panels)
        v, svu = _partner(s, x, u, sg, with_slope=True)
        keep = np.isfinite(v) & (v >= lo) & (v <= hi)
        if not keep.any():
            continue
        u, v, svu, w = u[keep], v[keep], svu[keep], w[keep]
        parts.append(logsum(_code_log_weight(n, s, x, u, v, svu, measure), w))
    parts = [p for p in parts if np.isfinite(p)]
    if not parts:
        return -np.inf
    return float(np.logaddexp.reduce(parts))


def code_density_asymptotic(n: int, s: float, r: float, delta: float, x: float) -> float:
    """log of the large-n closed form near x = s' (without the 1+o(1) factor)."""
    if not -1 < x < 1 or x == 0 or x > s:
        return -np.inf
    w = math.sqrt((s - x) / (1 - x)) - r
    lin = delta + w
    if lin <= 0:
        return -np.inf
    return (math.log(2 * math.sqrt(2) * lin)
            + (n - 4) / 2 * (math.log((1 - x * x) / (x * x)) + 2 * math.log(abs(s - r * r)))
            - 2 * n * r * w / (s - r * r))


# ---------------------------------------------------------------- packing

def packing_r1(x: float, rho: float, T: float = 1.0) -> float:
    """Smallest radius whose partner on the level curve stays inside the window."""
    return x * rho + math.sqrt(max(T * T - (1 - x * x) * rho * rho, 0.0))


def _packing_log_weight(N, x, U, V, disc, measure):
    lw = (N - 2) * np.log(U * V) + (N - 3) / 2 * math.log1p(-x * x)
    if measure == "pushforward":
        return lw + np.log(np.abs(V + x * V * V / disc))
    dUdV = x - (1 - x * x) * V / disc
    return lw + 0.5 * np.log1p(dUdV ** 2)


def packing_density_exact(n: int, x: float, support: SupportSpec, measure: str = "arclength",
                          ambient: int | None = None, m: int = 16, panels: int = 8) -> float:
    """log density of the angle cosine between the two radius vectors.

    The ambient space is R^ambient (default R^n); the joint weight of
    (U, V, x) given the center distance is (UV)^(N-2) (1-x^2)^((N-3)/2).
    """
    _check_measure(measure)
    N = n if ambient is None else ambient
    if N < 4:
        raise ParameterError("ambient dimension must be at least 4")
    if not -1 < x < 1:
        return -np.inf
    T, rho = support.s, support.hi
    r1 = packing_r1(x, rho, T)
    a = max(support.lo, r1)
    if a >= rho:
        return -np.inf
    V, w = cos_rule(a, rho, m, panels)
    disc = np.sqrt(np.maximum(T * T - (1 - x * x) * V * V, 0.0))
    U = x * V + disc
    keep = (U >= support.lo) & (U <= rho) & (disc > 0)
    if not keep.any():
        return -np.inf
    return logsum(_packing_log_weight(N, x, U[keep], V[keep], disc[keep], measure), w[keep])


@dataclass(frozen=True)
class AsymptoticValue:
    log_value: float
    error_bound: float | None
    flagged: bool


def packing_density_asymptotic(n: int, x: float, support: SupportSpec, s_prime: float) -> AsymptoticValue:
    """Large-n closed form in R^(n-1), with its relative error bound.

    ``support.base`` is the base radius 1/sqrt(2(1-s')) and ``support.delta``
    the extension. Outside the window where the bound is guaranteed the
    value is still returned, with ``error_bound=None`` and ``flagged``.
    """
    rb, delta = support.base, support.delta
    rho = rb + delta
    r1 = packing_r1(x, rho)
    if rho - r1 <= 0 or not -1 < x < 1:
        lv = -np.inf
    else:
        slope = x - (1 - x * x) * rb / math.sqrt(1 - (1 - x * x) * rb * rb)
        lv = ((n - 4) / 2 * math.log1p(-x * x) - (n - 3) * math.log(2 * (1 - x))
              + 0.5 * math.log1p(slope * slope) + math.log(rho - r1))
    c1, c2 = delta * n, abs(x - s_prime) * n
    ok = n >= 2000 and 0 < c1 < 0.81 and c2 < 3.36 and x < 0.5
    err = (4 * c2 + 2 * c1 + 2) ** 2 / n if ok else None
    return AsymptoticValue(lv, err, not ok)


# ---------------------------------------------------------------- profiles

def exact_log_density(support: SupportSpec, x: float, measure: str = "arclength", **kw) -> float:
    if support.mode == CODES:
        return code_density_exact(support.n, support.s, support, x, measure, **kw)
    return packing_density_exact(support.n, x, support, measure, **kw)


def total_mass(support: SupportSpec, measure: str = "arclength", panels: int = 24, m: int = 16) -> float:
    """log of the integral of the exact density over all x."""
    br = [min(max(x, -1 + 1e-15), 1 - 1e-15) for x in support.x_breaks()]
    parts = []
    for a, b in zip(br[:-1], br[1:]):
        if b - a <= 1e-15:
            continue
        xs, w = cos_rule(a, b, m, panels)
        lv = np.array([exact_log_density(support, float(x), measure) for x in xs])
        parts.append(logsum(lv, w))
    parts = [p for p in parts if np.isfinite(p)]
    return float(np.logaddexp.reduce(parts)) if parts else -np.inf


def density_profile(support: SupportSpec, x_grid, measure: str = "arclength",
                    normalize: bool = False) -> DensityProfile:
    xs = np.asarray(x_grid, float)
    lv = np.array([exact_log_density(support, float(x), measure) for x in xs])
    if normalize:
        lv = lv - total_mass(support, measure)
    return DensityProfile(support, xs, lv, "probability" if normalize else "raw", meta={"measure": measure})


def bin_probabilities(support: SupportSpec, edges, measure: str = "pushforward", m: int = 12) -> np.ndarray:
    """Exact probability of each histogram bin, normalized over all x."""
    edges = np.asarray(edges, float)
    logtot = total_mass(support, measure)
    out = np.empty(len(edges) - 1)
    for i, (a, b) in enumerate(zip(edges[:-1], edges[1:])):
        xs, w = cos_rule(a, b, m, 2)
        lv = np.array([exact_log_density(support, float(x), measure) for x in xs])
        out[i] = math.exp(logsum(lv, w) - logtot) if np.isfinite(logsum(lv, w)) else 0.0
    return out


# ---------------------------------------------------------------- Monte Carlo

def _unit_rows(rng, k, n):
    g = rng.standard_normal((k, n))
    return g / np.linalg.norm(g, axis=1)[:, None]


def sample_projected(support: SupportSpec, samples: int, seed: int = 0,
                     band_width: float = 0.0, chunk: int = 500_000) -> np.ndarray:
    """Projected inner products from accepted samples.

    With ``band_width = 0`` the two conditioned points are placed exactly;
    otherwise their inner product (codes) or distance (packing) is drawn
    uniformly from a band of that width.
    """
    if samples <= 0:
        raise ParameterError("samples must be positive")
    rng = np.random.default_rng(seed)
    n, lo, hi = support.n, support.lo, support.hi
    out = []
    left = samples
    while left > 0:
        k = min(chunk, left)
        left -= k
        if support.mode == CODES:
            t = support.s + band_width * (rng.random(k) - 0.5) * 2 if band_width else np.full(k, support.s)
            z = _unit_rows(rng, k, n)
            u = z[:, 0]
            v = t * z[:, 0] + np.sqrt(1 - t * t) * z[:, 1]
            ok = (u >= lo) & (u <= hi) & (v >= lo) & (v <= hi)
            z, u, v, t = z[ok], u[ok], v[ok], t[ok]
            px = -u[:, None] * z
            px[:, 0] += 1
            py = -v[:, None] * z
            py[:, 0] += t
            py[:, 1] += np.sqrt(1 - t * t)
        else:
            T = support.s + band_width * rng.random(k) if band_width else np.full(k, support.s)
            d = _unit_rows(rng, k, n)
            z = d * (hi * rng.random(k) ** (1 / n))[:, None]
            px = -z
            py = -z.copy()
            py[:, 0] += T
            U = np.linalg.norm(px, axis=1)
            V = np.linalg.norm(py, axis=1)
            ok = (V <= hi) & (V >= lo) & (U >= lo)
            px, py = px[ok], py[ok]
        x = np.sum(px * py, axis=1) / (np.linalg.norm(px, axis=1) * np.linalg.norm(py, axis=1))
        out.append(x)
    return np.concatenate(out)


def mc_oracle(support: SupportSpec, samples: int, band_width: float = 0.0, bins: int = 40,
              seed: int = 0, edges=None) -> DensityProfile:
    """Histogram of the projected inner product with per-bin standard errors.

    Values are bin probabilities divided by bin width; ``meta`` keeps the
    raw counts and the edges.
    """
    x = sample_projected(support, samples, seed, band_width)
    if x.size == 0:
        raise NumericalError("no accepted samples")
    if edges is None:
        edges = np.linspace(x.min(), x.max(), bins + 1)
    counts, edges = np.histogram(x, bins=edges)
    N = x.size
    p = counts / N
    se = np.sqrt(p * (1 - p) / N)
    width = np.diff(edges)
    with np.errstate(divide="ignore"):
        lv = np.log(p / width)
    centers = (edges[:-1] + edges[1:]) / 2
    return DensityProfile(support, centers, lv, "probability", se / width,
                          meta={"counts": counts, "edges": edges, "accepted": N, "seed": seed,
                                "samples": samples})


def compare_with_exact(profile: DensityProfile, measure: str = "pushforward", k: float = 3.0) -> dict:
    """Fraction of occupied bins whose exact probability is within k SE."""
    edges, counts = profile.meta["edges"], profile.meta["counts"]
    N = profile.meta["accepted"]
    exact = bin_probabilities(profile.support, edges, measure)
    p = counts / N
    se = np.sqrt(np.maximum(p * (1 - p), 1e-300) / N)
    occ = counts > 0
    z = np.abs(p - exact) / se
    inside = (z <= k) & occ
    return {"occupied": int(occ.sum()), "within": int(inside.sum()),
            "fraction": float(inside.sum() / max(occ.sum(), 1)),
            "max_z": float(z[occ].max()) if occ.any() else 0.0,
            "exact_mass_in_bins": float(exact.sum())}


def sphere_marginal_check(n: int, samples: int = 10**6, bins: int = 50, seed: int = 0) -> float:
    """Chi-square p-value of <x, z> for uniform z against (1-u^2)^((n-3)/2)."""
    from scipy import special, stats

    rng = np.random.default_rng(seed)
    u = _unit_rows(rng, samples, n)[:, 0]
    edges = np.linspace(-1, 1, bins + 1)
    counts, _ = np.histogram(u, edges)
    a = (n - 1) / 2
    cdf = special.betainc(a, a, (edges + 1) / 2)
    expected = np.diff(cdf) * samples
    keep = expected > 5
    if not keep.any():
        raise DomainError("no bins with enough expected counts")
    stat = np.sum((counts[keep] - expected[keep]) ** 2 / expected[keep])
    return float(stats.chi2.sf(stat, keep.sum() - 1))
