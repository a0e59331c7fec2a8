"""Market primitives: parameters, scenario classification, regime vocabulary.

The market sells one time slot.  Each of two sellers ("primaries") has an
independently available channel (probabilities q1, q2).  An available seller
may pay s_i to look up whether the rival's channel is up for sale; the lookup
is correct with probability qs.  It then posts a price in (c, v], and the
single buyer takes the cheapest available channel (ties split 50/50).

Four two-seller scenario shapes are analyzed:

* Basic                 -- q1 == q2, s1 == s2, qs == 1
* EstimationError       -- q1 == q2, s1 == s2, qs < 1
* UnequalCosts          -- qs == 1, q1 == q2, s1 != s2
* UnequalAvailability   -- qs == 1, s1 == s2, q1 != q2

Anything else (both costs and availabilities asymmetric, or qs < 1 with any
asymmetry) is rejected rather than guessed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum


from .errors import AmbiguousScenario, RangeError


class Scenario(Enum):
    BASIC = "basic"
    ESTIMATION_ERROR = "estimation_error"
    UNEQUAL_COSTS = "unequal_costs"
    UNEQUAL_AVAILABILITY = "unequal_availability"
    N_PRIMARY = "n_primary"
    MULTI_STATE = "multi_state"


class CostBand(Enum):
    PURE_N = "pure_n"            # lookup cost at/above every threshold: nobody acquires
    ONE_SIDED_MIX = "one_sided_mix"  # only the favored seller randomizes its lookup
    BOTH_MIX = "both_mix"        # both sellers randomize between acquiring and not


class InfoState(Enum):
    """What a seller knows at pricing time."""

    NO_ACQUIRE = "noacquire"
    ACQUIRED_EST1 = "est1"   # paid for the lookup, estimate says rival available
    ACQUIRED_EST0 = "est0"   # paid for the lookup, estimate says rival absent


@dataclass(frozen=True)
class MarketParams:
    """Exogenous game parameters.

    v: highest price the buyer pays; c: per-sale transaction cost;
    s1/s2: lookup costs; q1/q2: channel availabilities; qs: lookup accuracy.
    n/m extend to n sellers and m buyers (symmetric settings only).
    `swapped` records that :func:`validate_params` relabeled the sellers so
    outputs can be mapped back to the caller's ordering.
    """

    v: float
    c: float = 0.0
    q1: float = 0.5
    q2: float = 0.5
    s1: float = 0.0
    s2: float = 0.0
    qs: float = 1.0
    n: int = 2
    m: int = 1
    swapped: bool = False

    @property
    def q(self) -> float:
        """Common availability; only meaningful when q1 == q2."""
        return self.q1

    @property
    def s(self) -> float:
        """Common lookup cost; only meaningful when s1 == s2."""
        return self.s1


@dataclass(frozen=True)
class Regime:
    """Scenario plus which cost band the lookup costs fall in."""

    scenario: Scenario
    cost_band: CostBand
    thresholds: tuple[tuple[str, float], ...]

    def threshold(self, name: str) -> float:
        for key, value in self.thresholds:
            if key == name:
                return value
        raise KeyError(name)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise RangeError(msg)


def validate_params(raw: MarketParams) -> MarketParams:
    """Check ranges and return the canonical relabeling of `raw`.

    Canonical order puts the lower lookup cost (or the higher availability)
    on seller 1.  Idempotent: a canonical input is returned unchanged.
    Raises RangeError for out-of-range values and AmbiguousScenario for
    parameter shapes the analysis does not cover.
    """
    for name in ("v", "c", "q1", "q2", "s1", "s2", "qs"):
        value = getattr(raw, name)
        if not math.isfinite(value):
            raise RangeError(f"{name} must be finite, got {value!r}")
    _require(raw.c >= 0.0, f"transaction cost must be >= 0, got {raw.c}")
    _require(raw.v > raw.c, f"need v > c, got v={raw.v}, c={raw.c}")
    _require(0.0 < raw.q1 < 1.0, f"q1 must lie strictly in (0, 1), got {raw.q1}")
    _require(0.0 < raw.q2 < 1.0, f"q2 must lie strictly in (0, 1), got {raw.q2}")
    _require(raw.s1 >= 0.0, f"s1 must be >= 0, got {raw.s1}")
    _require(raw.s2 >= 0.0, f"s2 must be >= 0, got {raw.s2}")
    _require(0.5 < raw.qs <= 1.0, f"qs must lie in (1/2, 1], got {raw.qs}")
    _require(isinstance(raw.n, int) and raw.n >= 2, f"n must be an int >= 2, got {raw.n}")
    _require(isinstance(raw.m, int) and 1 <= raw.m < raw.n,
             f"m must be an int with 1 <= m < n, got m={raw.m}, n={raw.n}")

    cost_asym = raw.s1 != raw.s2
    avail_asym = raw.q1 != raw.q2

    if raw.n > 2:
        if cost_asym or avail_asym or raw.qs != 1.0:
            raise AmbiguousScenario(
                "the n-seller extension assumes identical costs and availabilities "
                "and exact lookups")
        return raw

    if cost_asym and avail_asym:
        raise AmbiguousScenario(
            "both lookup costs and availabilities differ; that combination is not analyzed")
    if raw.qs < 1.0 and (cost_asym or avail_asym):
        raise AmbiguousScenario(
            "noisy lookups are only analyzed for symmetric costs and availabilities")

    if cost_asym and raw.s1 > raw.s2:
        return replace(raw, s1=raw.s2, s2=raw.s1, q1=raw.q2, q2=raw.q1, swapped=True)
    if avail_asym and raw.q1 < raw.q2:
        return replace(raw, s1=raw.s2, s2=raw.s1, q1=raw.q2, q2=raw.q1, swapped=True)
    return raw


def scenario_of(params: MarketParams) -> Scenario:
    """Scenario label of canonical params (total on validate_params output)."""
    if params.n > 2:
        return Scenario.N_PRIMARY
    if params.s1 != params.s2:
        return Scenario.UNEQUAL_COSTS
    if params.q1 != params.q2:
        return Scenario.UNEQUAL_AVAILABILITY
    if params.qs < 1.0:
        return Scenario.ESTIMATION_ERROR
    return Scenario.BASIC
