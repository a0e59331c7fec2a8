import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from specmarket import (CostBand, MarketParams, NoRoot, Scenario,
                        ScenarioMismatch, ne_basic, ne_estimation_error,
                        ne_unequal_availability, ne_unequal_costs, solve,
                        solve_error_mixing, thresholds, validate_params)
from specmarket.equilibria import unequal_cost_p1_raw
from specmarket.params import InfoState


def params(**kw):
    base = dict(v=50.0, c=0.0, q1=0.5, q2=0.5, s1=8.0, s2=8.0, qs=1.0)
    base.update(kw)
    return validate_params(MarketParams(**base))


def mirror_error_lhs(p, v, c, q, qs):
    """Independent transcription of the mixing indifference equation's left side."""
    t2 = (v - c) * (1 - q) * qs * (1 - (1 - p) * q - p * q * qs) \
        / (p * q * (1 - qs) ** 2 + qs * (1 - q))
    return t2 * (1 - (q * qs * (1 - p * qs) + (1 - q) * (1 - qs)) / (1 - p * q * qs))


# --- thresholds -------------------------------------------------------------

def test_threshold_basic():
    reg = thresholds(params(v=11, c=1, s1=2, s2=2))
    assert reg.threshold("T") == pytest.approx(2.5, abs=1e-12)


def test_threshold_error_model():
    reg = thresholds(params(s1=4, s2=4, qs=0.75))
    assert reg.threshold("T") == pytest.approx(6.25, abs=1e-12)


def test_threshold_unequal_availability():
    reg = thresholds(params(v=25, q1=0.7, q2=0.4, s1=5, s2=5))
    assert reg.threshold("T1") == pytest.approx(6.0, abs=1e-12)
    assert reg.threshold("T2") == pytest.approx(30.0 / 7.0, abs=1e-12)


def test_boundary_cost_lands_in_pure_band():
    assert thresholds(params(s1=12.5, s2=12.5)).cost_band is CostBand.PURE_N
    assert thresholds(params(s1=12.4999, s2=12.4999)).cost_band is CostBand.BOTH_MIX


# --- basic scenario ---------------------------------------------------------

def test_basic_example_point():
    prof = ne_basic(params())
    st1, st2 = prof.strategies
    assert st1.p_acquire == pytest.approx(0.52941176, abs=1e-7)
    assert st1.p_acquire == st2.p_acquire
    assert st1.cdf(InfoState.ACQUIRED_EST1).support == pytest.approx((16.0, 34.0), abs=1e-9)
    assert st1.cdf(InfoState.NO_ACQUIRE).support == pytest.approx((34.0, 50.0), abs=1e-9)
    assert prof.payoffs == (25.0, 25.0)
    est0 = st1.cdf(InfoState.ACQUIRED_EST0)
    assert est0.mass_at(50.0) == 1.0


def test_basic_free_lookup_is_bertrand():
    prof = ne_basic(params(s1=0, s2=0))
    assert prof.strategies[0].p_acquire == 1.0
    assert prof.strategies[0].cdf(InfoState.ACQUIRED_EST1).mass_at(0.0) == 1.0
    assert prof.payoffs == (25.0, 25.0)


def test_basic_near_maximal_mixing():
    prof = ne_basic(params(v=11, c=1, q1=0.55, q2=0.55, s1=2, s2=2))
    assert prof.strategies[0].p_acquire == pytest.approx(0.3455, abs=5e-4)
    q_star = 1.0 - math.sqrt(2.0 / 10.0)
    assert q_star == pytest.approx(0.553, abs=1e-3)


def test_basic_payoff_constant_across_bands():
    for s in np.linspace(0.0, 20.0, 41):
        prof = ne_basic(params(s1=float(s), s2=float(s)))
        assert prof.payoffs == (25.0, 25.0)


def test_basic_rejects_wrong_scenario():
    with pytest.raises(ScenarioMismatch):
        ne_basic(params(s1=4, s2=8))
    with pytest.raises(ScenarioMismatch):
        ne_basic(params(qs=0.8, s1=4, s2=4))


# --- mixing-probability solver ----------------------------------------------

def test_error_mixing_example():
    p = solve_error_mixing(params(qs=0.8, s1=4, s2=4))
    assert p == pytest.approx(0.5781542603, abs=1e-9)
    lhs = mirror_error_lhs(p, 50.0, 0.0, 0.5, 0.8)
    rhs = 50.0 * 0.5 * 0.8 - 4.0
    assert abs(lhs - rhs) <= 1e-10 * 50.0


def test_error_mixing_reduces_to_exact_lookup_formula():
    p = solve_error_mixing(params(qs=1.0, s1=8, s2=8))
    assert p == pytest.approx(9.0 / 17.0, abs=1e-10)


def test_error_mixing_vanishes_at_band_edge():
    p = solve_error_mixing(params(qs=0.8, s1=7.4999, s2=7.4999))
    assert 0.0 < p < 1e-3


def test_error_mixing_monotone_bracket():
    # strict monotonicity of the left side underpins the bisection
    grid = np.linspace(0.01, 0.99, 25)
    vals = [mirror_error_lhs(p, 50.0, 0.0, 0.5, 0.8) for p in grid]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_error_mixing_out_of_band():
    with pytest.raises(NoRoot):
        solve_error_mixing(params(qs=0.8, s1=7.5, s2=7.5))
    with pytest.raises(NoRoot):
        solve_error_mixing(params(qs=0.8, s1=0.0, s2=0.0))


# --- noisy-lookup scenario ----------------------------------------------------

def test_error_equilibrium_payoff_exceeds_exact_lookup_payoff():
    prof = ne_estimation_error(params(qs=0.8, s1=4, s2=4))
    assert prof.payoffs[0] == pytest.approx(27.10716515, abs=1e-6)
    assert prof.payoffs[0] > 25.0


def test_error_supports_are_contiguous_and_ordered():
    prof = ne_estimation_error(params(qs=0.8, s1=4, s2=4))
    strat = prof.strategies[0]
    y1 = strat.cdf(InfoState.ACQUIRED_EST1).support
    n = strat.cdf(InfoState.NO_ACQUIRE).support
    y0 = strat.cdf(InfoState.ACQUIRED_EST0).support
    assert y1[1] == pytest.approx(n[0], abs=1e-9)
    assert n[1] == pytest.approx(y0[0], abs=1e-9)
    assert y0[1] == 50.0


def test_error_payoff_identity_at_solution():
    prof = ne_estimation_error(params(qs=0.8, s1=4, s2=4))
    ep = prof.endpoints
    w1 = 0.5 * 0.8 + 0.5 * 0.2
    w0 = 1.0 - w1
    lhs = ep["p_tilde_1"] * w1 + ep["p_tilde_3"] * w0 - 4.0
    assert lhs == pytest.approx(ep["p_tilde_2"], abs=1e-9)


def test_error_routes_exact_lookup_to_basic():
    a = ne_estimation_error(params(qs=1.0, s1=8, s2=8))
    b = ne_basic(params(s1=8, s2=8))
    assert a == b


def test_error_payoff_decreasing_in_cost():
    prev = None
    for s in np.linspace(0.15, 7.35, 30):
        prof = ne_estimation_error(params(qs=0.8, s1=float(s), s2=float(s)))
        if prev is not None:
            assert prof.payoffs[0] < prev
        prev = prof.payoffs[0]


def test_error_pure_band_payoff():
    prof = ne_estimation_error(params(qs=0.8, s1=8, s2=8))
    assert prof.regime.cost_band is CostBand.PURE_N
    assert prof.payoffs == (25.0, 25.0)


# --- unequal lookup costs -----------------------------------------------------

def test_unequal_costs_both_mix_example():
    prof = ne_unequal_costs(params(s1=4, s2=8))
    p1, p2 = (s.p_acquire for s in prof.strategies)
    assert p1 == pytest.approx(0.80952381, abs=1e-8)
    assert p2 == pytest.approx(0.52941176, abs=1e-8)
    assert prof.endpoints["L"] == pytest.approx(16.0, abs=1e-9)
    assert prof.endpoints["p_tilde_2"] == pytest.approx(34.0, abs=1e-9)
    assert prof.endpoints["p_tilde_1"] == pytest.approx(42.0, abs=1e-9)
    assert prof.payoffs == (29.0, 25.0)
    # only the expensive seller's blind rule carries an atom at v
    assert prof.strategies[1].cdf(InfoState.NO_ACQUIRE).jump_at_v > 0.0
    assert prof.strategies[0].cdf(InfoState.NO_ACQUIRE).jump_at_v == 0.0


def test_unequal_costs_one_sided_example():
    prof = ne_unequal_costs(params(s1=4, s2=13))
    assert prof.regime.cost_band is CostBand.ONE_SIDED_MIX
    assert prof.strategies[0].p_acquire == pytest.approx(0.80952381, abs=1e-8)
    assert prof.strategies[1].p_acquire == 0.0
    assert prof.payoffs == (33.5, 25.0)


def test_unequal_costs_p1_same_formula_in_both_bands():
    # one-sided-band p1 equals the shared-form p1 of the both-mix band
    for s1 in (0.5, 2.0, 4.0, 7.0, 11.0):
        a = unequal_cost_p1_raw(50.0, 0.0, 0.5, s1)
        b = (12.5 - s1) / (12.5 - 0.5 * s1)
        assert abs(a - b) <= 1e-12


def test_unequal_costs_cheap_seller_payoff_continuous_at_band_edge():
    lo = ne_unequal_costs(params(s1=4, s2=12.4999999)).payoffs[0]
    hi = ne_unequal_costs(params(s1=4, s2=12.5)).payoffs[0]
    assert lo == pytest.approx(hi, abs=1e-6)


def test_unequal_costs_expensive_seller_payoff_invariant():
    for s1, s2 in ((1, 2), (1, 5), (3, 12), (6, 20), (13, 20)):
        prof = ne_unequal_costs(params(s1=s1, s2=s2))
        assert prof.payoffs[1] == pytest.approx(25.0, abs=1e-12)


def test_unequal_costs_symmetric_input_reduces_to_basic():
    assert ne_unequal_costs(params(s1=8, s2=8)) == ne_basic(params(s1=8, s2=8))


@settings(max_examples=300, deadline=None)
@given(st.floats(1.0, 100.0), st.floats(0.0, 5.0), st.floats(0.05, 0.95),
       st.floats(0.0, 1.0))
def test_p1_identity_property(v, c, q, frac):
    v = v + c
    t = q * (v - c) * (1.0 - q)
    s1 = frac * t * 0.999
    a = unequal_cost_p1_raw(v, c, q, s1)
    b = (t - s1) / (t - q * s1)
    assert abs(a - b) <= 1e-12


# --- unequal availabilities -----------------------------------------------------

UA = dict(v=25.0, c=0.0, q1=0.7, q2=0.4)


def test_unequal_availability_mid_band_example():
    prof = ne_unequal_availability(params(**UA, s1=5, s2=5))
    assert prof.regime.cost_band is CostBand.ONE_SIDED_MIX
    assert prof.strategies[0].p_acquire == pytest.approx(0.35714286, abs=1e-8)
    assert prof.strategies[1].p_acquire == 0.0
    assert prof.endpoints["L"] == pytest.approx(12.5, abs=1e-9)
    assert prof.payoffs == (15.0, 12.5)


def test_unequal_availability_low_band_example():
    prof = ne_unequal_availability(params(**UA, s1=2, s2=2))
    p1, p2 = (s.p_acquire for s in prof.strategies)
    assert p1 == pytest.approx(0.83516484, abs=1e-8)
    assert p2 == pytest.approx(0.72727273, abs=1e-8)
    assert p1 > p2
    assert prof.endpoints["L"] == pytest.approx(5.0, abs=1e-9)
    assert prof.payoffs == pytest.approx((15.0, 9.0), abs=1e-12)


def test_unequal_availability_pure_band_atom():
    prof = ne_unequal_availability(params(**UA, s1=6, s2=6))
    assert prof.regime.cost_band is CostBand.PURE_N
    psi1 = prof.strategies[0].cdf(InfoState.NO_ACQUIRE)
    assert psi1.jump_at_v == pytest.approx(3.0 / 7.0, abs=1e-12)
    assert prof.strategies[1].cdf(InfoState.NO_ACQUIRE).jump_at_v == 0.0
    assert prof.payoffs == (15.0, 15.0)


def test_unequal_availability_scarce_seller_payoff_continuous_at_lower_edge():
    t2 = 30.0 / 7.0
    lo = ne_unequal_availability(params(**UA, s1=t2 - 1e-7, s2=t2 - 1e-7)).payoffs[1]
    hi = ne_unequal_availability(params(**UA, s1=t2, s2=t2)).payoffs[1]
    assert lo == pytest.approx(hi, abs=1e-5)


def test_unequal_availability_scarce_seller_payoff_increasing_with_cost():
    prev = None
    for s in np.linspace(0.05, 5.95, 60):
        prof = ne_unequal_availability(params(**UA, s1=float(s), s2=float(s)))
        pay2 = prof.payoffs[1]
        if prev is not None:
            assert pay2 > prev
        prev = pay2


def test_unequal_availability_mid_band_payoff_slope():
    pay = [ne_unequal_availability(params(**UA, s1=s, s2=s)).payoffs[1]
           for s in (5.0, 5.5)]
    assert (pay[1] - pay[0]) / 0.5 == pytest.approx(1.0 / 0.4, rel=1e-9)


def test_unequal_availability_symmetric_reduces_to_basic():
    sym = params(v=25, q1=0.4, q2=0.4, s1=2, s2=2)
    assert ne_unequal_availability(sym) == ne_basic(sym)


# --- shared structural properties ----------------------------------------------

def _p_profile(build, make_params, s_values):
    out = []
    for s in s_values:
        prof = build(make_params(s))
        out.append(tuple(strat.p_acquire for strat in prof.strategies))
    return out


@pytest.mark.parametrize("build,make_params,t", [
    (ne_basic, lambda s: params(s1=s, s2=s), 12.5),
    (ne_estimation_error, lambda s: params(qs=0.8, s1=s, s2=s), 7.5),
    (ne_unequal_availability, lambda s: params(**UA, s1=s, s2=s), 6.0),
])
def test_lookup_probability_shape(build, make_params, t):
    # zero at/above the threshold, positive below, strictly decreasing, -> 1 at 0+
    grid = np.linspace(t / 100.0, t * 0.999, 100)
    probs = _p_profile(build, make_params, grid)
    assert all(p[0] > 0.0 for p in probs)
    assert all(a[0] > b[0] for a, b in zip(probs, probs[1:]))
    assert build(make_params(t)).strategies[0].p_acquire == 0.0
    assert build(make_params(t * 1.3)).strategies[0].p_acquire == 0.0
    assert _p_profile(build, make_params, [t * 1e-6])[0][0] > 0.999


def test_unequal_costs_p_shape_in_own_cost():
    grid = np.linspace(0.1, 12.4, 50)
    p2s = [ne_unequal_costs(params(s1=0.05, s2=float(s))).strategies[1].p_acquire
           for s in grid]
    assert all(a > b for a, b in zip(p2s, p2s[1:]))
    assert ne_unequal_costs(params(s1=5, s2=12.5)).strategies[1].p_acquire == 0.0


def test_informed_support_below_blind_support_everywhere():
    cases = [params(s1=8, s2=8), params(qs=0.8, s1=4, s2=4),
             params(s1=4, s2=8), params(**UA, s1=2, s2=2),
             params(**UA, s1=5, s2=5), params(s1=4, s2=13)]
    for point in cases:
        prof = solve(point)
        for strat in prof.strategies:
            if (InfoState.ACQUIRED_EST1 in strat.cdf_by_info
                    and InfoState.NO_ACQUIRE in strat.cdf_by_info):
                hi = strat.cdf(InfoState.ACQUIRED_EST1).support[1]
                lo = strat.cdf(InfoState.NO_ACQUIRE).support[0]
                assert hi <= lo + 1e-9


def test_all_endpoints_inside_price_range():
    cases = [params(s1=8, s2=8), params(qs=0.8, s1=4, s2=4),
             params(s1=4, s2=8), params(s1=4, s2=13),
             params(**UA, s1=2, s2=2), params(**UA, s1=5, s2=5)]
    for point in cases:
        prof = solve(point)
        for name, value in prof.endpoints.items():
            assert point.c < value <= point.v, (name, value)


@pytest.mark.parametrize("raw", [
    dict(s1=1e-7, s2=1e-7),                                    # lookup nearly free
    dict(s1=12.5 - 1e-9, s2=12.5 - 1e-9),                      # hair below threshold
    dict(qs=0.8, s1=1e-7, s2=1e-7),
    dict(qs=0.8, s1=7.5 - 1e-9, s2=7.5 - 1e-9),
    dict(s1=1e-7, s2=8.0),
    dict(s1=4.0, s2=12.5 - 1e-8),
    dict(v=25.0, q1=0.7, q2=0.4, s1=1e-7, s2=1e-7),
    dict(v=25.0, q1=0.7, q2=0.4, s1=30 / 7 - 1e-8, s2=30 / 7 - 1e-8),
])
def test_degenerate_mixing_edges_stay_total(raw):
    # branches with vanishing reach collapse to the band-boundary profile
    # instead of emitting CDFs whose coefficients amplify rounding
    pt = params(**raw)
    prof = solve(pt)
    for strat in prof.strategies:
        if strat.p_acquire == 1.0:
            assert InfoState.NO_ACQUIRE not in strat.cdf_by_info
        if strat.p_acquire == 0.0:
            assert set(strat.cdf_by_info) == {InfoState.NO_ACQUIRE}
        for cdf in strat.cdf_by_info.values():
            assert cdf.validate() == []


def test_solve_dispatches_by_scenario():
    assert solve(params()).regime.scenario is Scenario.BASIC
    assert solve(params(qs=0.8, s1=4, s2=4)).regime.scenario is Scenario.ESTIMATION_ERROR
    assert solve(params(s1=4, s2=8)).regime.scenario is Scenario.UNEQUAL_COSTS
    assert solve(params(**UA, s1=5, s2=5)).regime.scenario is Scenario.UNEQUAL_AVAILABILITY
    with pytest.raises(ScenarioMismatch):
        solve(params(q1=0.6, q2=0.6, s1=1, s2=1, n=4, m=2))
