"""Closed-form Nash equilibria of the lookup-and-price game.

Each scenario has a threshold structure on the lookup cost: above every
threshold nobody pays for competitor-state information and both sellers price
from the same hyperbolic CDF; below, the favored seller (then both) randomize
the lookup with a probability that is decreasing in its cost.  All support
endpoints here are computed from the simplified closed forms and cross-checked
against the raw defining equations at construction time; any disagreement
beyond tolerance aborts with ConsistencyError rather than returning a profile
that merely looks plausible.

Degenerate mixing: a pricing branch reached with probability below
_MIN_BRANCH_REACH cannot be represented at double precision (its CDF
coefficients amplify rounding past the validation tolerance), so the
construction collapses to the adjacent band-boundary profile.  The collapsed
profile's payoff distance from the true equilibrium is below the reach floor
times the price range, well under the certification bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import ConsistencyError, NoRoot, ScenarioMismatch
from .params import (CostBand, InfoState, MarketParams, Regime, Scenario,
                     scenario_of, validate_params)
from .pricecdf import KNOT_TOL, HyperbolicSegment, PriceCdf

_BISECT_EPS = 1e-12
_MIN_BRANCH_REACH = 5e-7


@dataclass(frozen=True)
class PrimaryStrategy:
    """Lookup probability plus one price CDF per reachable information state."""

    p_acquire: float
    cdf_by_info: Mapping[InfoState, PriceCdf]

    def cdf(self, info: InfoState) -> PriceCdf:
        return self.cdf_by_info[info]


@dataclass(frozen=True)
class EquilibriumProfile:
    regime: Regime
    strategies: tuple[PrimaryStrategy, PrimaryStrategy]
    payoffs: tuple[float, float]
    endpoints: Mapping[str, float]


def _close(name: str, got: float, want: float, scale: float) -> None:
    if abs(got - want) > KNOT_TOL * max(1.0, abs(scale)):
        raise ConsistencyError(
            f"{name}: closed form {got!r} disagrees with defining equation {want!r}")


def _checked(cdf: PriceCdf) -> PriceCdf:
    bad = cdf.validate()
    if bad:
        raise ConsistencyError(f"constructed CDF fails validation: {bad}")
    return cdf


def _seg(lo: float, hi: float, a: float, b: float) -> HyperbolicSegment:
    return HyperbolicSegment(lo=lo, hi=hi, a=a, b=b)


def phi_cdf(v: float, c: float, q: float) -> PriceCdf:
    """No-lookup pricing rule: continuous on [(v-c)(1-q)+c, v], no atom."""
    pt = (v - c) * (1.0 - q) + c
    return _checked(PriceCdf(c, v, (_seg(pt, v, 1.0 / q, (v - c) * (1.0 - q) / q),)))


def psi_cdf(v: float, c: float, q: float) -> PriceCdf:
    """Pricing rule of a blind seller facing an informed rival: atom 1-q at v."""
    pt = (v - c) * (1.0 - q) + c
    return _checked(PriceCdf(c, v, (_seg(pt, v, 1.0, (v - c) * (1.0 - q)),),
                             jump_at_v=1.0 - q))


def thresholds(params: MarketParams) -> Regime:
    """Regime classification: which cost band the lookup costs fall in.

    Boundary convention: a cost exactly equal to its threshold falls in the
    no-lookup band.  Classification pads the comparison by 1e-10*(v-c) so a
    cost that is nominally at a threshold but lands an ulp below its
    floating-point value still classifies as at-threshold; the degenerate-
    mixing constructions are not defined there.
    """
    params = validate_params(params)
    sc = scenario_of(params)
    v, c = params.v, params.c
    vd = v - c
    pad = 1e-10 * max(1.0, vd)
    if sc in (Scenario.BASIC, Scenario.ESTIMATION_ERROR):
        q, qs, s = params.q, params.qs, params.s
        t = q * vd * (1.0 - q) * (2.0 * qs - 1.0)
        band = CostBand.PURE_N if s >= t - pad else CostBand.BOTH_MIX
        return Regime(sc, band, (("T", t),))
    if sc == Scenario.UNEQUAL_COSTS:
        q = params.q1
        t = q * vd * (1.0 - q)
        if params.s1 >= t - pad:
            band = CostBand.PURE_N
        elif params.s2 >= t - pad:
            band = CostBand.ONE_SIDED_MIX
        else:
            band = CostBand.BOTH_MIX
        return Regime(sc, band, (("T", t),))
    if sc == Scenario.UNEQUAL_AVAILABILITY:
        q1, q2, s = params.q1, params.q2, params.s
        t1 = q2 * vd * (1.0 - q2)
        t2 = q2 * vd * (1.0 - q1) / (1.0 - q1 + q2)
        if s >= t1 - pad:
            band = CostBand.PURE_N
        elif s >= t2 - pad:
            band = CostBand.ONE_SIDED_MIX
        else:
            band = CostBand.BOTH_MIX
        return Regime(sc, band, (("T1", t1), ("T2", t2)))
    raise ScenarioMismatch(f"no closed-form regime for scenario {sc}")


def _bertrand_strategy(v: float, c: float) -> PrimaryStrategy:
    # free lookups: always acquire, undercut to cost against a present rival
    return PrimaryStrategy(1.0, {
        InfoState.ACQUIRED_EST1: PriceCdf.point_mass(c, c_ref=c),
        InfoState.ACQUIRED_EST0: PriceCdf.point_mass(v, c_ref=c),
    })


def _pure_n_profile(regime: Regime, params: MarketParams) -> EquilibriumProfile:
    v, c, q = params.v, params.c, params.q
    strat = PrimaryStrategy(0.0, {InfoState.NO_ACQUIRE: phi_cdf(v, c, q)})
    payoff = (v - c) * (1.0 - q)
    pt = (v - c) * (1.0 - q) + c
    return EquilibriumProfile(regime, (strat, strat), (payoff, payoff),
                              {"p_tilde": pt})


def ne_basic(params: MarketParams) -> EquilibriumProfile:
    """Symmetric exact-lookup equilibrium; seller payoffs (v-c)(1-q) in both bands."""
    params = validate_params(params)
    if scenario_of(params) != Scenario.BASIC:
        raise ScenarioMismatch("ne_basic needs symmetric costs/availabilities and qs=1")
    regime = thresholds(params)
    v, c, q, s = params.v, params.c, params.q, params.s
    vd = v - c
    if regime.cost_band == CostBand.PURE_N:
        return _pure_n_profile(regime, params)
    t = regime.threshold("T")
    payoff = vd * (1.0 - q)
    p = (t - s) / (t - s * q)
    if p * q < _MIN_BRANCH_REACH:
        return _pure_n_profile(regime, params)
    if (1.0 - p) * q < _MIN_BRANCH_REACH:  # covers s == 0 (full-information limit)
        strat = _bertrand_strategy(v, c)
        return EquilibriumProfile(regime, (strat, strat), (payoff, payoff),
                                  {"p_tilde_1": c, "p_tilde_2": v})
    pt2 = vd * (1.0 - q) / (1.0 - q * p) + c
    pt1 = vd * (1.0 - q) * (1.0 - p) / (1.0 - q * p) + c
    _close("p_tilde_1", pt1 - c, (pt2 - c) * (1.0 - p), vd)
    # lookup indifference: the lookup's value against a present rival is exactly s
    _close("lookup indifference", q * (pt1 - c), s, vd)
    psi1 = _checked(PriceCdf(c, pt2, (_seg(pt1, pt2, 1.0 / p, (pt1 - c) / p),)))
    psi2 = _checked(PriceCdf(c, v, (_seg(pt2, v, (1.0 - q * p) / (q * (1.0 - p)),
                                         vd * (1.0 - q) / (q * (1.0 - p))),)))
    strat = PrimaryStrategy(p, {
        InfoState.ACQUIRED_EST1: psi1,
        InfoState.ACQUIRED_EST0: PriceCdf.point_mass(v, c_ref=c),
        InfoState.NO_ACQUIRE: psi2,
    })
    return EquilibriumProfile(regime, (strat, strat), (payoff, payoff),
                              {"p_tilde_1": pt1, "p_tilde_2": pt2})


def _error_lhs(p: float, v: float, c: float, q: float, qs: float) -> float:
    vd = v - c
    growth = vd * (1.0 - q) * qs * (1.0 - (1.0 - p) * q - p * q * qs) \
        / (p * q * (1.0 - qs) ** 2 + qs * (1.0 - q))
    frac = 1.0 - (q * qs * (1.0 - p * qs) + (1.0 - q) * (1.0 - qs)) / (1.0 - p * q * qs)
    return growth * frac


def solve_error_mixing(params: MarketParams) -> float:
    """Unique lookup probability solving the noisy-lookup indifference equation.

    The equation's left side is strictly increasing in p with a sign change
    over (0, 1) whenever 0 < s < T, so plain bisection converges
    unconditionally.  Residual tolerance: 1e-10 * (v - c).
    """
    params = validate_params(params)
    if scenario_of(params) not in (Scenario.BASIC, Scenario.ESTIMATION_ERROR):
        raise ScenarioMismatch("mixing equation applies to the symmetric scenarios")
    v, c, q, qs, s = params.v, params.c, params.q, params.qs, params.s
    vd = v - c
    t = q * vd * (1.0 - q) * (2.0 * qs - 1.0)
    if not 0.0 < s < t:
        raise NoRoot(f"need 0 < s < {t}, got s={s}")
    rhs = vd * (1.0 - q) * qs - s
    lo, hi = _BISECT_EPS, 1.0 - _BISECT_EPS
    if not (_error_lhs(lo, v, c, q, qs) < rhs < _error_lhs(hi, v, c, q, qs)):
        raise NoRoot("no sign change over (0, 1); parameters inconsistent with regime")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _error_lhs(mid, v, c, q, qs) < rhs:
            lo = mid
        else:
            hi = mid
    p = 0.5 * (lo + hi)
    if abs(_error_lhs(p, v, c, q, qs) - rhs) > 1e-10 * vd:
        raise NoRoot(f"bisection stalled; residual above 1e-10*(v-c) at p={p}")
    return p


def _error_endpoints(v: float, c: float, q: float, qs: float, p: float) -> dict[str, float]:
    vd = v - c
    pt3 = vd * (1.0 - q) * qs / ((1.0 - q) * qs + q * (1.0 - qs)) + c
    pt2 = vd * (1.0 - q) * qs * (1.0 - (1.0 - p) * q - p * q * qs) \
        / (p * q * (1.0 - qs) ** 2 + qs * (1.0 - q)) + c
    l0 = (pt2 - c) / (1.0 - (1.0 - p) * q - p * q * qs) + c
    ln = (pt2 - c) / (1.0 - p * q * qs) + c
    pt1 = (ln - c) * (q * qs * (1.0 - p * qs) + (1.0 - q) * (1.0 - qs)) \
        / (q * qs + (1.0 - qs) * (1.0 - q)) + c
    return {"p_tilde_1": pt1, "p_tilde_2": pt2, "p_tilde_3": pt3, "L_N": ln, "L_0": l0}


def ne_estimation_error(params: MarketParams) -> EquilibriumProfile:
    """Symmetric noisy-lookup equilibrium; qs == 1 routes to the exact model."""
    params = validate_params(params)
    sc = scenario_of(params)
    if sc == Scenario.BASIC:
        return ne_basic(params)
    if sc != Scenario.ESTIMATION_ERROR:
        raise ScenarioMismatch("ne_estimation_error needs symmetric params")
    regime = thresholds(params)
    if regime.cost_band == CostBand.PURE_N:
        return _pure_n_profile(regime, params)
    v, c, q, qs, s = params.v, params.c, params.q, params.qs, params.s
    vd = v - c
    p = 1.0 if s == 0.0 else solve_error_mixing(params)
    if p * q < _MIN_BRANCH_REACH:
        return _pure_n_profile(regime, params)
    ep = _error_endpoints(v, c, q, qs, p)
    pt1, pt2, pt3 = ep["p_tilde_1"], ep["p_tilde_2"], ep["p_tilde_3"]
    ln, l0 = ep["L_N"], ep["L_0"]
    w1 = q * qs + (1.0 - q) * (1.0 - qs)   # P(estimate says rival present)
    w0 = q * (1.0 - qs) + qs * (1.0 - q)
    _close("L_0 defining equation",
           (pt3 - c) * w0 / (qs * (1.0 - q) + p * q * (1.0 - qs) ** 2), l0 - c, vd)
    _close("lookup indifference",
           (pt1 - c) * w1 + (pt3 - c) * w0 - s, pt2 - c, vd)

    alpha1 = w1 / (p * q * qs * qs)
    psi_y1 = _checked(PriceCdf(c, ln, (_seg(pt1, ln, alpha1, alpha1 * (pt1 - c)),)))
    alpha0 = w0 / (p * q * (1.0 - qs) ** 2)
    beta0 = (p * q * (1.0 - qs) * qs + (1.0 - p) * q * (1.0 - qs)) / w0
    psi_y0 = _checked(PriceCdf(c, v, (_seg(l0, v, alpha0 * (1.0 - beta0),
                                           alpha0 * (pt3 - c)),)))
    cdfs: dict[InfoState, PriceCdf] = {
        InfoState.ACQUIRED_EST1: psi_y1,
        InfoState.ACQUIRED_EST0: psi_y0,
    }
    blind_degenerate = (1.0 - p) * q < _MIN_BRANCH_REACH
    if not blind_degenerate:
        alpha_n = 1.0 / ((1.0 - p) * q)
        beta_n = p * q * qs
        cdfs[InfoState.NO_ACQUIRE] = _checked(PriceCdf(
            c, l0, (_seg(ln, l0, alpha_n * (1.0 - beta_n), alpha_n * (pt2 - c)),)))
    strat = PrimaryStrategy(1.0 if blind_degenerate else p, cdfs)
    payoff = pt2 - c
    return EquilibriumProfile(regime, (strat, strat), (payoff, payoff), ep)


def unequal_cost_p1_raw(v: float, c: float, q: float, s1: float) -> float:
    """Lookup probability of the cheap seller, in its one-sided-band form."""
    return (1.0 - (v - c) * (1.0 - q) ** 2 / ((v - c) * (1.0 - q) - s1)) / q


def _mix_probability(t: float, q: float, s: float) -> float:
    """Shared [T,p] form: p = (T - s) / (T - q s)."""
    return (t - s) / (t - q * s)


def _uc_one_sided(regime: Regime, params: MarketParams) -> EquilibriumProfile:
    v, c, q, s1 = params.v, params.c, params.q1, params.s1
    vd = v - c
    base = vd * (1.0 - q)
    t = regime.threshold("T")
    p1 = unequal_cost_p1_raw(v, c, q, s1)
    if p1 * q < _MIN_BRANCH_REACH:
        return _pure_n_profile(regime, params)
    _close("p1 band identity", p1, _mix_probability(t, q, s1), 1.0)
    pt = base + c
    pt_n = base + q * base - s1 + c
    pt1 = base / (1.0 - q * p1) + c
    _close("p_tilde_1", pt1 - c, (base - s1) / (1.0 - q), vd)
    psi_1y = _checked(PriceCdf(c, pt1, (_seg(pt, pt1, 1.0 / (q * p1),
                                             (pt - c) / (q * p1)),)))
    segs2 = [_seg(pt, pt1, 1.0, pt - c)]
    if pt1 < v:
        segs2.append(_seg(pt1, v, 1.0 / q, (pt_n - c) / q))
    last = segs2[-1]
    jump2 = max(0.0, 1.0 - (last.a - last.b / (v - c)))
    psi_2 = _checked(PriceCdf(c, v, tuple(segs2), jump_at_v=jump2))
    cdfs1: dict[InfoState, PriceCdf] = {
        InfoState.ACQUIRED_EST1: psi_1y,
        InfoState.ACQUIRED_EST0: PriceCdf.point_mass(v, c_ref=c),
    }
    blind1_degenerate = (1.0 - p1) * q < _MIN_BRANCH_REACH
    if not blind1_degenerate:
        cdfs1[InfoState.NO_ACQUIRE] = _checked(PriceCdf(
            c, v, (_seg(pt1, v, (1.0 - q * p1) / (q * (1.0 - p1)),
                        (pt - c) / (q * (1.0 - p1))),)))
    strat1 = PrimaryStrategy(1.0 if blind1_degenerate else p1, cdfs1)
    strat2 = PrimaryStrategy(0.0, {InfoState.NO_ACQUIRE: psi_2})
    payoffs = (base + q * base - s1, base)
    return EquilibriumProfile(regime, (strat1, strat2), payoffs,
                              {"p_tilde": pt, "p_tilde_1": pt1, "p_tilde_N": pt_n})


def _uc_both_mix(regime: Regime, params: MarketParams) -> EquilibriumProfile:
    v, c, q = params.v, params.c, params.q1
    s1, s2 = params.s1, params.s2
    vd = v - c
    base = vd * (1.0 - q)
    t = regime.threshold("T")
    p1 = _mix_probability(t, q, s1)
    p2 = _mix_probability(t, q, s2)
    if p2 * q < _MIN_BRANCH_REACH:
        # the expensive seller's lookup branch is too thin to construct
        return _uc_one_sided(regime, params)
    _close("p1 raw identity", p1, unequal_cost_p1_raw(v, c, q, s1), 1.0)
    ell = s2 / q + c
    pt2 = base / (1.0 - p2 * q) + c
    pt1 = base / (1.0 - p1 * q) + c
    pt_1n = base + s2 - s1 + c
    _close("p_tilde_2", pt2 - c, (base - s2) / (1.0 - q), vd)
    _close("p_tilde_2 vs L", (pt2 - c) * (1.0 - p2), ell - c, vd)
    _close("p_tilde_1", pt1 - c, (base - s1) / (1.0 - q), vd)

    segs_1y = [_seg(ell, pt2, 1.0 / p1, (ell - c) / p1)]
    if pt1 > pt2:
        segs_1y.append(_seg(pt2, pt1, 1.0 / (p1 * q), base / (p1 * q)))
    psi_1y = _checked(PriceCdf(c, pt1, tuple(segs_1y)))
    psi_2y = _checked(PriceCdf(c, pt2, (_seg(ell, pt2, 1.0 / p2, (ell - c) / p2),)))

    cdfs1: dict[InfoState, PriceCdf] = {
        InfoState.ACQUIRED_EST1: psi_1y,
        InfoState.ACQUIRED_EST0: PriceCdf.point_mass(v, c_ref=c),
    }
    blind1_degenerate = (1.0 - p1) * q < _MIN_BRANCH_REACH
    if not blind1_degenerate:
        cdfs1[InfoState.NO_ACQUIRE] = _checked(PriceCdf(
            c, v, (_seg(pt1, v, (1.0 - p1 * q) / (q * (1.0 - p1)),
                        base / (q * (1.0 - p1))),)))
    strat1 = PrimaryStrategy(1.0 if blind1_degenerate else p1, cdfs1)

    cdfs2: dict[InfoState, PriceCdf] = {
        InfoState.ACQUIRED_EST1: psi_2y,
        InfoState.ACQUIRED_EST0: PriceCdf.point_mass(v, c_ref=c),
    }
    blind2_degenerate = (1.0 - p2) * q < _MIN_BRANCH_REACH
    if not blind2_degenerate:
        segs_2n = [_seg(pt2, pt1 if pt1 < v else v, 1.0, (ell - c) / (1.0 - p2))]
        if pt1 < v:
            segs_2n.append(_seg(pt1, v, (1.0 - p2 * q) / (q * (1.0 - p2)),
                                (pt_1n - c) / (q * (1.0 - p2))))
        last = segs_2n[-1]
        jump_2n = max(0.0, 1.0 - (last.a - last.b / (v - c)))
        cdfs2[InfoState.NO_ACQUIRE] = _checked(
            PriceCdf(c, v, tuple(segs_2n), jump_at_v=jump_2n))
    strat2 = PrimaryStrategy(1.0 if blind2_degenerate else p2, cdfs2)

    payoffs = (base + s2 - s1, base)
    return EquilibriumProfile(regime, (strat1, strat2), payoffs,
                              {"L": ell, "p_tilde_1": pt1, "p_tilde_2": pt2,
                               "p_tilde_1N": pt_1n})


def ne_unequal_costs(params: MarketParams) -> EquilibriumProfile:
    """Equilibrium with different lookup costs (exact lookups, equal availability)."""
    params = validate_params(params)
    sc = scenario_of(params)
    if sc == Scenario.BASIC:
        return ne_basic(params)
    if sc != Scenario.UNEQUAL_COSTS:
        raise ScenarioMismatch("ne_unequal_costs needs qs=1 and q1=q2")
    regime = thresholds(params)
    if regime.cost_band == CostBand.PURE_N:
        return _pure_n_profile(regime, params)
    if regime.cost_band == CostBand.ONE_SIDED_MIX:
        return _uc_one_sided(regime, params)
    return _uc_both_mix(regime, params)


def _ua_pure(regime: Regime, params: MarketParams) -> EquilibriumProfile:
    v, c, q1, q2 = params.v, params.c, params.q1, params.q2
    base2 = (v - c) * (1.0 - q2)
    pbar = base2 + c
    psi1 = _checked(PriceCdf(c, v, (_seg(pbar, v, 1.0 / q1, base2 / q1),),
                             jump_at_v=(q1 - q2) / q1))
    psi2 = _checked(PriceCdf(c, v, (_seg(pbar, v, 1.0 / q2, base2 / q2),)))
    strat1 = PrimaryStrategy(0.0, {InfoState.NO_ACQUIRE: psi1})
    strat2 = PrimaryStrategy(0.0, {InfoState.NO_ACQUIRE: psi2})
    return EquilibriumProfile(regime, (strat1, strat2), (base2, base2),
                              {"p_bar": pbar})


def _ua_one_sided(regime: Regime, params: MarketParams) -> EquilibriumProfile:
    v, c, q1, q2, s = params.v, params.c, params.q1, params.q2, params.s
    vd = v - c
    base2 = vd * (1.0 - q2)
    p1 = (base2 - s / q2) / (q1 * base2 - q1 * s)
    if p1 * q1 < _MIN_BRANCH_REACH:
        return _ua_pure(regime, params)
    ell = s / q2 + c
    pt = (ell - c) / (1.0 - p1 * q1) + c
    _close("p_tilde", pt - c, (base2 - s) / (1.0 - q2), vd)
    psi_y = _checked(PriceCdf(c, pt, (_seg(ell, pt, 1.0 / (p1 * q1),
                                           (ell - c) / (p1 * q1)),)))
    psi_n = _checked(PriceCdf(c, v, (_seg(ell, pt, 1.0, ell - c),
                                     _seg(pt, v, 1.0 / q2, base2 / q2))))
    cdfs1: dict[InfoState, PriceCdf] = {
        InfoState.ACQUIRED_EST1: psi_y,
        InfoState.ACQUIRED_EST0: PriceCdf.point_mass(v, c_ref=c),
    }
    blind1_degenerate = (1.0 - p1) * q1 < _MIN_BRANCH_REACH
    if not blind1_degenerate:
        seg_1n = _seg(pt, v, (1.0 - p1 * q1) / ((1.0 - p1) * q1),
                      (ell - c) / ((1.0 - p1) * q1))
        jump_1n = max(0.0, 1.0 - (seg_1n.a - seg_1n.b / (v - c)))
        cdfs1[InfoState.NO_ACQUIRE] = _checked(
            PriceCdf(c, v, (seg_1n,), jump_at_v=jump_1n))
    strat1 = PrimaryStrategy(1.0 if blind1_degenerate else p1, cdfs1)
    strat2 = PrimaryStrategy(0.0, {InfoState.NO_ACQUIRE: psi_n})
    return EquilibriumProfile(regime, (strat1, strat2), (base2, s / q2),
                              {"L": ell, "p_tilde": pt})


def _ua_both_mix(regime: Regime, params: MarketParams) -> EquilibriumProfile:
    v, c, q1, q2, s = params.v, params.c, params.q1, params.q2, params.s
    vd = v - c
    base1 = vd * (1.0 - q1)
    base2 = vd * (1.0 - q2)
    if s == 0.0:
        strat = _bertrand_strategy(v, c)
        return EquilibriumProfile(regime, (strat, strat), (base2, base1),
                                  {"L": c, "p_bar": base1 + c})
    p1 = (q1 * base2 - s * (q1 / q2 - q1 + q2)) / (q1 * base2 - q1 * s)
    p2 = (q2 * base1 - s * (1.0 - q1 + q2)) / (q2 * base1 - q2 * s)
    if p2 * q2 < _MIN_BRANCH_REACH:
        # the scarce seller's lookup branch is too thin to construct
        return _ua_one_sided(regime, params)
    if not p1 > p2:
        raise ConsistencyError(f"expected p1 > p2, got {p1} <= {p2}")
    ell = s / q2 + c
    pbar = base1 + s * (q1 - q2) / q2 + c
    pt2 = (pbar - c) / (1.0 - p2 * q1) + c
    pt1 = (pbar - c) / (1.0 - p1 * q1) + c
    _close("p_tilde_2", pt2 - c, (base1 - s) / (1.0 - q1), vd)
    _close("p_tilde_2 vs L", (pt2 - c) * (1.0 - p2), ell - c, vd)
    _close("p_tilde_1", pt1 - c, (base2 - s) / (1.0 - q2), vd)

    segs_1y = [_seg(ell, pt2, 1.0 / p1, (ell - c) / p1)]
    if pt1 > pt2:
        segs_1y.append(_seg(pt2, pt1, 1.0 / (p1 * q1), (pbar - c) / (p1 * q1)))
    psi_1y = _checked(PriceCdf(c, pt1, tuple(segs_1y)))
    psi_2y = _checked(PriceCdf(c, pt2, (_seg(ell, pt2, 1.0 / p2, (ell - c) / p2),)))

    cdfs1: dict[InfoState, PriceCdf] = {
        InfoState.ACQUIRED_EST1: psi_1y,
        InfoState.ACQUIRED_EST0: PriceCdf.point_mass(v, c_ref=c),
    }
    blind1_degenerate = (1.0 - p1) * q1 < _MIN_BRANCH_REACH
    if not blind1_degenerate:
        seg_1n = _seg(pt1, v, (1.0 - p1 * q1) / ((1.0 - p1) * q1),
                      (pbar - c) / ((1.0 - p1) * q1))
        jump_1n = max(0.0, 1.0 - (seg_1n.a - seg_1n.b / (v - c)))
        _close("blind-side atom of the likelier seller", jump_1n,
               s * (q1 - q2) / (vd * (1.0 - p1) * q1 * q2), 1.0)
        cdfs1[InfoState.NO_ACQUIRE] = _checked(
            PriceCdf(c, v, (seg_1n,), jump_at_v=jump_1n))
    strat1 = PrimaryStrategy(1.0 if blind1_degenerate else p1, cdfs1)

    cdfs2: dict[InfoState, PriceCdf] = {
        InfoState.ACQUIRED_EST1: psi_2y,
        InfoState.ACQUIRED_EST0: PriceCdf.point_mass(v, c_ref=c),
    }
    blind2_degenerate = (1.0 - p2) * q2 < _MIN_BRANCH_REACH
    if not blind2_degenerate:
        segs_2n = [_seg(pt2, pt1 if pt1 < v else v, 1.0, (ell - c) / (1.0 - p2))]
        if pt1 < v:
            segs_2n.append(_seg(pt1, v, (1.0 - p2 * q2) / ((1.0 - p2) * q2),
                                base2 / ((1.0 - p2) * q2)))
        cdfs2[InfoState.NO_ACQUIRE] = _checked(PriceCdf(c, v, tuple(segs_2n)))
    strat2 = PrimaryStrategy(1.0 if blind2_degenerate else p2, cdfs2)

    payoffs = (base2, pbar - c)
    return EquilibriumProfile(regime, (strat1, strat2), payoffs,
                              {"L": ell, "p_bar": pbar, "p_tilde_1": pt1,
                               "p_tilde_2": pt2})


def ne_unequal_availability(params: MarketParams) -> EquilibriumProfile:
    """Equilibrium with different availabilities (exact lookups, equal costs)."""
    params = validate_params(params)
    sc = scenario_of(params)
    if sc == Scenario.BASIC:
        return ne_basic(params)
    if sc != Scenario.UNEQUAL_AVAILABILITY:
        raise ScenarioMismatch("ne_unequal_availability needs qs=1 and s1=s2")
    regime = thresholds(params)
    if regime.cost_band == CostBand.PURE_N:
        return _ua_pure(regime, params)
    if regime.cost_band == CostBand.ONE_SIDED_MIX:
        return _ua_one_sided(regime, params)
    return _ua_both_mix(regime, params)


_CONSTRUCTORS = {
    Scenario.BASIC: ne_basic,
    Scenario.ESTIMATION_ERROR: ne_estimation_error,
    Scenario.UNEQUAL_COSTS: ne_unequal_costs,
    Scenario.UNEQUAL_AVAILABILITY: ne_unequal_availability,
}


def solve(params: MarketParams) -> EquilibriumProfile:
    """Dispatch to the scenario's equilibrium constructor."""
    params = validate_params(params)
    sc = scenario_of(params)
    try:
        builder = _CONSTRUCTORS[sc]
    except KeyError:
        raise ScenarioMismatch(f"no two-seller equilibrium constructor for {sc}") from None
    return builder(params)
