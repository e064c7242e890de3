"""Composite Gauss-Legendre rules on graded panels (double precision)."""
from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=32)
def _leggauss(m: int):
    return np.polynomial.legendre.leggauss(m)


def graded_breaks(length: float, h: float, both: bool = True) -> np.ndarray:
    """Breakpoints on [0, length] doubling away from 0 (and from length)."""
    if length <= 0:
        return np.array([0.0, 0.0])
    h = min(h, length / 2)
    half = length / 2 if both else length
    bps = [0.0]
    x = h
    while x < half:
        bps.append(x)
        x *= 2
    if both:
        bps = sorted(set(bps + [length - b for b in bps] + [half]))
    else:
        bps.append(length)
    return np.asarray(bps)


def composite(bps: np.ndarray, m: int = 16):
    """Nodes and weights of an m-point rule on every panel."""
    xg, wg = _leggauss(m)
    a, b = bps[:-1], bps[1:]
    half = (b - a)[:, None] / 2
    x = half * xg[None, :] + ((a + b) / 2)[:, None]
    w = half * wg[None, :]
    return x.ravel(), w.ravel()


def cos_rule(a: float, b: float, m: int = 16, panels: int = 8):
    """Rule on [a, b] after u = a + (b-a)(1-cos phi)/2.

    The substitution absorbs inverse square-root endpoint singularities.
    """
    phi, wphi = composite(np.linspace(0.0, np.pi, panels + 1), m)
    u = a + (b - a) * (1 - np.cos(phi)) / 2
    return u, wphi * (b - a) * np.sin(phi) / 2


def logsum(logv: np.ndarray, w: np.ndarray) -> float:
    """log of sum(w * exp(logv)) for w >= 0, tolerant of -inf."""
    logv = np.asarray(logv, float)
    ok = np.isfinite(logv) & (w > 0)
    if not ok.any():
        return -np.inf
    m = logv[ok].max()
    return float(m + np.log(np.sum(w[ok] * np.exp(logv[ok] - m))))
