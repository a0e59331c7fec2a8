"""Seeded Monte Carlo replay of the one-slot market.

Each round: availability draws, lookup decisions, noisy estimates of the
rival's state, inverse-transform price draws, cheapest-available sale with a
fair coin on ties.  One master seed is split into fixed per-seller substreams
(availability / lookup / estimate / price, plus one tie stream), so adding
instrumentation or reordering computations cannot perturb the draws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

import numpy as np

from .equilibria import PrimaryStrategy, solve
from .errors import MissingCdf, RangeError
from .params import InfoState, MarketParams, validate_params

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SimConfig:
    rounds: int
    seed: int
    params: MarketParams
    strategies: tuple[PrimaryStrategy, PrimaryStrategy]


@dataclass(frozen=True)
class PrimaryStats:
    """Per-seller outcomes, conditioned on that seller's channel being available."""

    n_available: int
    mean_payoff: float
    payoff_se: float
    uncond_mean_payoff: float
    uncond_payoff_se: float
    sale_freq: float
    acquire_freq: float
    est_correct_freq: float  # nan when the seller never acquired
    info_payoffs: Mapping[InfoState, tuple[float, float, int]]  # mean, se, count


@dataclass(frozen=True)
class SimStats:
    rounds: int
    primaries: tuple[PrimaryStats, PrimaryStats]
    mean_price: float       # price paid, conditioned on >= 1 posted channel
    mean_price_se: float
    price_var: float
    sale_fraction: float    # fraction of rounds with any sale
    n_priced: int


def _stream(seed: int, *path: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed & _MASK64, *path]))


def _mean_se(x: np.ndarray) -> tuple[float, float]:
    n = x.size
    if n == 0:
        return math.nan, math.nan
    mean = float(x.mean())
    se = float(x.std(ddof=1) / math.sqrt(n)) if n > 1 else math.nan
    return mean, se


def run_market(cfg: SimConfig) -> SimStats:
    """Simulate cfg.rounds market rounds; bit-identical output for equal configs."""
    if cfg.rounds < 1:
        raise RangeError(f"rounds must be >= 1, got {cfg.rounds}")
    params = validate_params(cfg.params)
    n = cfg.rounds
    qs = params.qs
    q = (params.q1, params.q2)
    s = (params.s1, params.s2)

    avail = [_stream(cfg.seed, i, 0).random(n) < q[i] for i in (0, 1)]
    acq_u = [_stream(cfg.seed, i, 1).random(n) for i in (0, 1)]
    est_ok = [_stream(cfg.seed, i, 2).random(n) < qs for i in (0, 1)]
    price_u = [_stream(cfg.seed, i, 3).random(n) for i in (0, 1)]
    tie = _stream(cfg.seed, 2, 0).random(n)

    prices = [np.full(n, np.nan) for _ in (0, 1)]
    acquired = [np.zeros(n, dtype=bool) for _ in (0, 1)]
    est1 = [np.zeros(n, dtype=bool) for _ in (0, 1)]
    info_masks: list[dict[InfoState, np.ndarray]] = [{}, {}]

    for i in (0, 1):
        j = 1 - i
        strat = cfg.strategies[i]
        acquired[i] = avail[i] & (acq_u[i] < strat.p_acquire)
        est1[i] = np.where(est_ok[i], avail[j], ~avail[j])
        masks = {
            InfoState.NO_ACQUIRE: avail[i] & ~acquired[i],
            InfoState.ACQUIRED_EST1: acquired[i] & est1[i],
            InfoState.ACQUIRED_EST0: acquired[i] & ~est1[i],
        }
        info_masks[i] = masks
        for info, mask in masks.items():
            if not mask.any():
                continue
            if info not in strat.cdf_by_info:
                raise MissingCdf(f"seller {i + 1} reaches {info.value} but has no CDF for it")
            prices[i][mask] = strat.cdf_by_info[info].quantile(price_u[i][mask])

    both = avail[0] & avail[1]
    lower0 = prices[0] < prices[1]
    tied = both & (prices[0] == prices[1])
    win0 = (avail[0] & ~avail[1]) | (both & lower0) | (tied & (tie < 0.5))
    win1 = (avail[1] & ~avail[0]) | (both & ~lower0 & ~tied) | (tied & (tie >= 0.5))

    wins = (win0, win1)
    payoff = [np.zeros(n) for _ in (0, 1)]
    for i in (0, 1):
        payoff[i][wins[i]] = prices[i][wins[i]] - params.c
        payoff[i][acquired[i]] -= s[i]

    stats = []
    for i in (0, 1):
        mask = avail[i]
        cond = payoff[i][mask]
        mean, se = _mean_se(cond)
        umean, use = _mean_se(payoff[i])
        n_acq = int(acquired[i].sum())
        correct = float(est_ok[i][acquired[i]].mean()) if n_acq else math.nan
        per_info = {}
        for info, imask in info_masks[i].items():
            per_info[info] = (*_mean_se(payoff[i][imask]), int(imask.sum()))
        stats.append(PrimaryStats(
            n_available=int(mask.sum()),
            mean_payoff=mean,
            payoff_se=se,
            uncond_mean_payoff=umean,
            uncond_payoff_se=use,
            sale_freq=float(wins[i][mask].mean()) if mask.any() else math.nan,
            acquire_freq=float(acquired[i][mask].mean()) if mask.any() else math.nan,
            est_correct_freq=correct,
            info_payoffs=per_info,
        ))

    any_avail = avail[0] | avail[1]
    paid = np.where(win0, prices[0], prices[1])[any_avail]
    price_mean, price_se = _mean_se(paid)
    price_var = float(paid.var(ddof=1)) if paid.size > 1 else math.nan
    return SimStats(
        rounds=n,
        primaries=(stats[0], stats[1]),
        mean_price=price_mean,
        mean_price_se=price_se,
        price_var=price_var,
        sale_fraction=float(any_avail.mean()),
        n_priced=int(any_avail.sum()),
    )


@dataclass(frozen=True)
class WelfareRow:
    s: float
    mean_price: float
    mean_price_se: float
    price_var: float
    payoff1: float
    payoff1_se: float
    payoff2: float
    payoff2_se: float


def welfare_sweep(params: MarketParams, s_grid: Sequence[float], rounds: int,
                  seed: int) -> list[WelfareRow]:
    """Equilibrium-then-simulate over a grid of lookup costs (symmetric scenarios)."""
    params = validate_params(params)
    rows = []
    for idx, s in enumerate(s_grid):
        point = validate_params(replace(params, s1=float(s), s2=float(s)))
        profile = solve(point)
        sub_seed = int(np.random.SeedSequence([seed & _MASK64, idx]).generate_state(1)[0])
        stats = run_market(SimConfig(rounds, sub_seed, point, profile.strategies))
        p1, p2 = stats.primaries
        rows.append(WelfareRow(
            s=float(s),
            mean_price=stats.mean_price,
            mean_price_se=stats.mean_price_se,
            price_var=stats.price_var,
            payoff1=p1.mean_payoff, payoff1_se=p1.payoff_se,
            payoff2=p2.mean_payoff, payoff2_se=p2.payoff_se,
        ))
    return rows
