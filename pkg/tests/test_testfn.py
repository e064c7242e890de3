import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from lpbounds.errors import ParameterError
from lpbounds.geometry import derive_angles, strip_mass
from lpbounds.reference import table2
from lpbounds.testfn import (CheckConfig, SweepConfig, code_bound_at, cz_l79_bound, improvement_factor,
                             max_delta_codes, max_delta_packing, negativity_codes, negativity_packing,
                             new_packing_bound, packing_integral, table2_cell, _extremal)

TH, TP = math.radians(50), math.radians(63)
AP = derive_angles(TH, TP)


def test_config_validation():
    with pytest.raises(ParameterError):
        CheckConfig(measure="volume")
    with pytest.raises(ParameterError):
        CheckConfig(nodes=2)
    d = CheckConfig().doubled()
    assert (d.nodes, d.coarse_grid, d.cert_grid) == (32, 16, 128)
    assert SweepConfig().grid()[[0, -1]].tolist() == [60.0, 90.0]


@settings(max_examples=50, deadline=None)
@given(n=st.integers(4, 200), delta=st.floats(0, 0.5), base=st.floats(0.5, 1.0))
def test_improvement_factor_formula(n, delta, base):
    f = improvement_factor(n, delta, base)
    assert 0 < f <= 1
    assert f == (1 + delta / base) ** (-n)


# ------------------------------------------------------------ packing

@pytest.mark.parametrize("n", [8, 24, 60])
@pytest.mark.parametrize("deg", [60, 61, 75, 90])
def test_zero_extension_certified_for_packing(n, deg):
    assert negativity_packing(n, math.radians(deg), 0.0).certified


def test_packing_integral_vanishes_past_twice_radius():
    ex = _extremal(21 / 2, math.cos(math.radians(70)), 24)
    rb = 1 / math.sqrt(2 * (1 - math.cos(math.radians(70))))
    rho = rb + 0.01
    assert packing_integral(ex, 24, rho, 2 * rho, CheckConfig()) == (0.0, 0.0)
    assert packing_integral(ex, 24, rho, 2 * rho + 0.1, CheckConfig()) == (0.0, 0.0)


def test_packing_rejects_oversized_support():
    with pytest.raises(ParameterError):
        negativity_packing(10, math.radians(70), 0.5)
    with pytest.raises(ParameterError):
        max_delta_packing(10, math.radians(55))


@pytest.mark.parametrize("n,deg", [(8, 70), (24, 80)])
def test_packing_bisection_bracket(n, deg):
    tp = math.radians(deg)
    res = max_delta_packing(n, tp)
    lo, hi = res.bracket
    assert res.certified and not res.at_cap
    assert hi - lo <= 1e-8 * res.base * 1.0001
    assert negativity_packing(n, tp, lo).certified
    assert not negativity_packing(n, tp, hi * (1 + 1e-6)).certified
    assert res.delta_star <= lo


@pytest.mark.parametrize("n,deg", [(4, 61), (24, 90), (130, 90), (12, 75)])
def test_table2_cells(n, deg):
    res = table2_cell(n, deg)
    assert res.certified
    assert res.meta["factor"] == (1 + res.delta_star / res.base) ** (-n)
    assert abs(res.meta["factor"] - table2(n, deg)) <= 0.002


def test_new_packing_not_above_cz_l79():
    new = new_packing_bound(12)
    cz = cz_l79_bound(12)
    assert new.certified and new.log10_bound <= cz.log10_bound
    assert new.log10_bound <= new.metadata["cz_l79_log10_at_theta"]
    assert new.improvement_factor == (1 + new.delta_star / new.metadata["rbar"]) ** (-12)


def test_cz_l79_matches_direct_minimum():
    rep = cz_l79_bound(24)
    ex = _extremal(21 / 2, math.cos(rep.theta_used), 24)
    direct = (float(ex.L_log) + 24 * math.log(math.sin(rep.theta_used / 2))) / math.log(10)
    assert rep.log10_bound == pytest.approx(direct, abs=1e-12)
    for deg in (60, 62, 65, 70):
        ex = _extremal(21 / 2, math.cos(math.radians(deg)), 24)
        other = (float(ex.L_log) + 24 * math.log(math.sin(math.radians(deg) / 2))) / math.log(10)
        assert rep.log10_bound <= other + 1e-12


# ------------------------------------------------------------ codes

def test_zero_extension_certified_for_codes():
    r = negativity_codes(24, TH, TP, 0.0)
    assert r.certified and r.max_value < 0


def test_codes_worst_point_and_sign_flip():
    res = max_delta_codes(40, TH, TP)
    assert res.certified and res.delta_star > 0
    assert res.meta["worst"] == pytest.approx(float(AP.s), abs=1e-12)
    past = negativity_codes(40, TH, TP, res.bracket[1] * 1.01)
    assert not past.certified and past.max_value > 0
    assert past.worst == pytest.approx(float(AP.s), abs=1e-12)


def test_codes_delta_shrinks_with_n():
    ds = [max_delta_codes(n, TH, TP).delta_star for n in (20, 40, 80, 160)]
    assert all(b < a for a, b in zip(ds, ds[1:]))
    # n * delta settles: successive changes shrink
    nd = [n * d for n, d in zip((20, 40, 80, 160), ds)]
    steps = [abs(b - a) for a, b in zip(nd, nd[1:])]
    assert all(b < a for a, b in zip(steps, steps[1:]))


def test_code_bound_factorization():
    """log L(h) = log L(g) - log mass of the window, and delta = 0 gives the plain strip."""
    rep = code_bound_at(24, TH, TP, certify=False)
    ex = _extremal(10.0, float(AP.s_prime), 23)
    with mp.workdps(40):
        want = ex.L_log - strip_mass(24, AP, rep.delta_star)
        assert rep.log10_bound == pytest.approx(float(want / mp.log(10)), rel=1e-14)
        base = ex.L_log - strip_mass(24, AP, 0)
        assert rep.metadata["baseline_log10"] == pytest.approx(float(base / mp.log(10)), rel=1e-14)
        assert rep.improvement_factor == pytest.approx(float(mp.exp(strip_mass(24, AP, 0)
                                                                    - strip_mass(24, AP, rep.delta_star))),
                                                       rel=1e-12)
    assert 0 < rep.improvement_factor < 1


def _norm_ratio(n, F, lo, hi):
    """||F||^2 / F_0^2 for the normalized (1-t^2)^((n-3)/2) weight."""
    w = lambda t: (1 - t * t) ** ((n - 3) / 2)
    z = integrate.quad(w, -1, 1, epsabs=0, epsrel=1e-13)[0]
    pts = np.linspace(lo, hi, 9)
    f2 = sum(integrate.quad(lambda t: F(t) ** 2 * w(t), a, b, epsabs=0, epsrel=1e-12)[0]
             for a, b in zip(pts[:-1], pts[1:])) / z
    f1 = sum(integrate.quad(lambda t: F(t) * w(t), a, b, epsabs=0, epsrel=1e-12)[0]
             for a, b in zip(pts[:-1], pts[1:])) / z
    return f2 / (f1 * f1)


@pytest.mark.parametrize("seed", range(5))
def test_indicator_is_optimal_window_function(seed):
    n = 24
    lo, hi = float(AP.r), float(AP.R)
    rng = np.random.default_rng(seed)
    knots = np.linspace(lo, hi, 7)
    heights = rng.uniform(0.05, 1.0, 7)
    F = lambda t: float(np.interp(t, knots, heights)) if lo <= t <= hi else 0.0
    ind = lambda t: 1.0 if lo <= t <= hi else 0.0
    floor = float(mp.exp(-strip_mass(n, AP)))
    assert _norm_ratio(n, ind, lo, hi) == pytest.approx(floor, rel=1e-8)
    assert _norm_ratio(n, F, lo, hi) >= floor * (1 - 1e-10)


# ------------------------------------------------------------ soundness

@pytest.mark.parametrize("n,deg", [(8, 65), (40, 85)])
def test_packing_certificate_survives_doubling(n, deg):
    tp = math.radians(deg)
    res = max_delta_packing(n, tp)
    assert res.certified
    assert negativity_packing(n, tp, res.delta_star, CheckConfig().doubled()).certified


def test_codes_certificate_survives_doubling():
    res = max_delta_codes(30, TH, TP)
    assert res.certified
    assert negativity_codes(30, TH, TP, res.delta_star, CheckConfig().doubled()).certified
