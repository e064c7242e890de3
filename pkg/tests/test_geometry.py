import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpbounds.errors import ParameterError
from lpbounds.geometry import (Delta, band_mass, cap_exp, cap_lower_bound, cap_mass, comparison_bounds,
                               dDelta, derive_angles, exponents, lambda_kl, packing_exponent, strip_correction,
                               strip_mass, theta_star)

angle_pairs = st.tuples(st.floats(20, 80), st.floats(0.5, 40)).map(
    lambda p: (math.radians(p[0]), math.radians(min(p[0] + p[1], 120))))


def _direct_band(n, lo, hi):
    """Subdivided tanh-sinh quadrature at 90 digits."""
    with mp.workdps(90):
        w = lambda t: (1 - t * t) ** (mp.mpf(n - 3) / 2)
        lo, hi = mp.mpf(lo), mp.mpf(hi)
        return mp.log(mp.quad(w, mp.linspace(lo, hi, 41)) / mp.quad(w, mp.linspace(-1, 1, 81)))


def test_derive_angles_identities():
    ap = derive_angles(math.radians(50), math.radians(63))
    assert ap.R > ap.r > 0
    with mp.workdps(60):
        assert abs(ap.s_prime - (ap.s - ap.r ** 2) / (1 - ap.r ** 2)) < 1e-30
        assert abs(mp.cos(ap.gamma) - ap.R) < 1e-30


def test_derive_angles_rejects_order():
    with pytest.raises(ParameterError):
        derive_angles(1.0, 0.9)
    with pytest.raises(ParameterError):
        derive_angles(0.0, 0.9)


def test_r_vanishes_as_angles_merge():
    rs = [float(derive_angles(1.0, 1.0 + h).r) for h in (1e-2, 1e-4, 1e-6)]
    assert rs[0] > rs[1] > rs[2] and rs[2] < 1e-2


@settings(max_examples=30, deadline=None)
@given(angle_pairs)
def test_strip_inside_cap(pair):
    th, tp = pair
    try:
        ap = derive_angles(th, tp)
    except ParameterError:
        return
    assert 0 < ap.r < ap.R < 1
    with mp.workdps(60):
        for n in (5, 20, 80):
            assert strip_mass(n, ap) <= cap_mass(n, ap.r) + mp.mpf(10) ** -50


def test_cap_special_values():
    assert mp.exp(cap_mass(17, 0)) == pytest.approx(0.5, rel=1e-40)
    for r in (-0.5, 0.1, 0.7):
        assert mp.exp(cap_mass(3, r)) == pytest.approx((1 - r) / 2, rel=1e-35)


@pytest.mark.parametrize("n", [5, 12, 50, 200])
@pytest.mark.parametrize("r", [0.05, 0.3, 0.8])
def test_cap_lower_bound_and_quadrature(n, r):
    r = mp.mpf(str(r))
    lc = cap_mass(n, r)
    with mp.workdps(60):
        assert mp.exp(lc) >= cap_lower_bound(n, r)
        assert abs(lc - _direct_band(n, r, 1)) < mp.mpf(10) ** -25 * max(1, abs(lc))


@pytest.mark.parametrize("n", [5, 40, 200])
def test_band_mass_quadrature(n):
    lo, hi = mp.mpf("0.1"), mp.mpf("0.6")
    with mp.workdps(60):
        v = band_mass(n, lo, hi)
        assert abs(v - _direct_band(n, lo, hi)) < mp.mpf(10) ** -25 * max(1, abs(v))


def test_strip_becomes_cap():
    ap = derive_angles(math.radians(50), math.radians(63))
    assert abs(band_mass(30, ap.r, 1) - cap_mass(30, ap.r)) < 1e-40


def test_strip_rejects_large_delta():
    ap = derive_angles(math.radians(50), math.radians(63))
    with pytest.raises(ParameterError):
        strip_mass(10, ap, float(ap.r) + 0.01)


def test_strip_positive_reference_case():
    ap = derive_angles(math.radians(40), math.radians(63))
    assert strip_mass(50, ap) > -mp.inf
    assert mp.exp(strip_mass(50, ap)) > 0


@pytest.mark.parametrize("n", [60, 120, 200])
def test_strip_ratio_window(n):
    ap = derive_angles(math.radians(60), math.radians(63))
    with mp.workdps(60):
        corr, c = strip_correction(n, ap)
        gap = -mp.expm1(strip_mass(n, ap) - cap_mass(n, ap.r))  # 1 - strip/cap
        assert c > 0
        assert 0 < gap < 1 - corr


def test_strip_correction_decays_like_exp_c():
    ap = derive_angles(math.radians(60), math.radians(63))
    with mp.workdps(60):
        _, c = strip_correction(100, ap)
        gap = [-mp.expm1(strip_mass(n, ap) - cap_mass(n, ap.r)) for n in (150, 151)]
        # per-unit-n ratio tends to e^{-c}; the polynomial prefactor costs about 1/n
        assert gap[1] / gap[0] == pytest.approx(float(mp.exp(-c)), rel=0.05)


def test_comparison_bounds_tags_and_forms():
    th, tp = math.radians(60), math.radians(63)
    reps = comparison_bounds(24, th, tp, mp.log(1000), M_same=mp.log(500), M_up=mp.log(700))
    tags = {r.method for r in reps}
    assert tags == {"BARG_MUSIN", "PROP15", "COHN_ZHAO", "SIDELNIKOV"}
    by = {r.method: r for r in reps}
    assert by["PROP15"].log10_bound >= by["BARG_MUSIN"].log10_bound
    cz = (mp.log(500) + 24 * mp.log(mp.sin(mp.mpf(th) / 2))) / mp.log(10)
    assert by["COHN_ZHAO"].log10_bound == pytest.approx(float(cz), rel=1e-14)


def test_comparison_fallback_flag():
    reps = comparison_bounds(6, math.radians(50), math.radians(63), mp.log(100))
    prop = next(r for r in reps if r.method == "PROP15")
    assert "fallback" in prop.metadata or "closed_form_log10" in prop.metadata
    reps = comparison_bounds(8, math.radians(50), math.radians(51), mp.log(100))
    prop = next(r for r in reps if r.method == "PROP15")
    assert "fallback" in prop.metadata


@settings(max_examples=20, deadline=None)
@given(angle_pairs, st.floats(0, 50), st.floats(0.01, 5))
def test_comparison_monotone_in_inner_bound(pair, m, dm):
    th, tp = pair
    try:
        lo = comparison_bounds(30, th, tp, mp.mpf(m), mp.mpf(m), mp.mpf(m))
    except ParameterError:
        return
    hi = comparison_bounds(30, th, tp, mp.mpf(m + dm), mp.mpf(m + dm), mp.mpf(m + dm))
    for a, b in zip(lo, hi):
        assert a.method == b.method and b.log10_bound > a.log10_bound


def test_theta_star():
    t = theta_star()
    assert float(mp.degrees(t)) == pytest.approx(62.997, abs=5e-4)
    with mp.workdps(40):
        assert dDelta(t - mp.mpf("1e-20")) > 0 > dDelta(t + mp.mpf("1e-20"))
        for deg in (30, 45, 60, 62, 64, 70, 80, 90):
            assert Delta(t) < Delta(mp.radians(deg))


def test_packing_exponent():
    assert float(packing_exponent()) == pytest.approx(-0.599, abs=5e-4)


def test_cap_exp_formula_and_bundle():
    th, tp = 0.9, 1.1
    assert cap_exp(th, tp) == pytest.approx(0.5 * math.log((1 - math.cos(th)) / (1 - math.cos(tp))), rel=1e-14)
    e = exponents(1.0)
    assert e["lambda_KL"] == lambda_kl(1.0) and e["dDelta"] == dDelta(1.0)
    assert e["cap_exp"](1.2) == cap_exp(1.0, 1.2)


def test_stationarity_function_is_scaled_derivative():
    with mp.workdps(40):
        for t in (0.3, 0.6, 0.9, 1.2, 1.5):
            t = mp.mpf(t)
            assert abs(dDelta(t) + 2 * mp.sin(t) ** 2 * mp.diff(Delta, t)) < mp.mpf(10) ** -30
        assert dDelta(mp.pi / 2) == pytest.approx(-1.0, rel=1e-25)
