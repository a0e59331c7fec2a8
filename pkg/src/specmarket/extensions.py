"""Many-seller and multi-quality-state payoff checks.

With n symmetric sellers and m buyers, a seller's sale prospects are governed
by the binomial tail over its n-1 rivals: w_mn(x) is the chance at least m of
them are available, W_mn = 1 - w_mn the chance fewer than m are (so a seller
posting the top price still sells).  The all-acquire profile is never an
equilibrium (dropping the lookup and posting v gains exactly the lookup cost),
and any symmetric equilibrium pays (v - c) * W_mn(q) regardless of that cost.

The two-quality-state market (states 0/1/2 with quality premium h) is covered
only through its complete-information payoffs, which coincide with the known
no-lookup payoffs; the price floor L ties the two together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DomainError

_MASK64 = (1 << 64) - 1


def w_mn(m: int, n: int, x: float) -> float:
    """P(at least m successes among n - 1 independent trials at rate x)."""
    if not (isinstance(m, int) and isinstance(n, int) and 0 < m < n):
        raise DomainError(f"need integers 0 < m < n, got m={m}, n={n}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"need x in [0, 1], got {x}")
    total = 0.0
    for i in range(m, n):
        total += math.comb(n - 1, i) * x ** i * (1.0 - x) ** (n - 1 - i)
    return min(total, 1.0)


def W_mn(m: int, n: int, x: float) -> float:
    """P(fewer than m of the n - 1 rivals are available); strictly decreasing in x."""
    return 1.0 - w_mn(m, n, x)


@dataclass(frozen=True)
class NPrimaryCheck:
    """Payoff-level facts for the all-acquire profile with n sellers, m buyers."""

    all_acquire_payoff: float   # (v-c) W_mn(q) - s
    deviation_payoff: float     # skip the lookup, post v: (v-c) W_mn(q)
    gap: float                  # exactly s > 0: all-acquire is never an NE
    symmetric_ne_payoff: float  # any symmetric NE pays this, independent of s


def n_primary_payoff_checks(v: float, c: float, q: float, s: float,
                            n: int, m: int) -> NPrimaryCheck:
    if v <= c:
        raise DomainError(f"need v > c, got v={v}, c={c}")
    if s < 0.0:
        raise DomainError(f"need s >= 0, got {s}")
    big_w = W_mn(m, n, q)
    deviation = (v - c) * big_w
    return NPrimaryCheck(
        all_acquire_payoff=deviation - s,
        deviation_payoff=deviation,
        gap=s,
        symmetric_ne_payoff=deviation,
    )


def simulate_all_acquire_payoff(v: float, c: float, q: float, s: float,
                                n: int, m: int, rounds: int,
                                seed: int) -> tuple[float, float]:
    """(mean, se) of a seller's all-acquire payoff from availability draws.

    Under all-acquire everyone knows the availability count: with fewer than
    m rivals up, the seller sells at v; otherwise prices collapse to c and the
    margin is zero.  Conditioned on the seller's own availability.
    """
    rng = np.random.default_rng(np.random.SeedSequence([seed & _MASK64]))
    rivals = rng.random((rounds, n - 1)) < q
    sells_at_v = rivals.sum(axis=1) < m
    payoff = np.where(sells_at_v, v - c, 0.0) - s
    return float(payoff.mean()), float(payoff.std(ddof=1) / math.sqrt(rounds))


@dataclass(frozen=True)
class MultiStateParams:
    """Two-quality market: state probabilities and the quality premium h."""

    v: float
    c: float
    q_state1: float   # P(available at low quality)
    q_state2: float   # P(available at high quality)
    h1: float
    h2: float

    def __post_init__(self):
        if self.v <= self.c:
            raise DomainError(f"need v > c, got v={self.v}, c={self.c}")
        for name in ("q_state1", "q_state2"):
            val = getattr(self, name)
            if not 0.0 < val < 1.0:
                raise DomainError(f"{name} must lie in (0, 1), got {val}")
        if self.q_state1 + self.q_state2 >= 1.0:
            raise DomainError("state probabilities must sum to less than 1")
        if not self.h2 > self.h1:
            raise DomainError(f"quality premium must increase: h2={self.h2} <= h1={self.h1}")


@dataclass(frozen=True)
class MultiStatePayoffs:
    payoff_state2: float
    payoff_state1: float
    price_floor: float   # the L solving (L - c + h1)(1 - q2) = (v - c + h1)(1 - q1 - q2)


def multistate_payoffs(p: MultiStateParams) -> MultiStatePayoffs:
    """Complete-information expected payoffs of the two available states.

    Asserts the equivalence (L - c + h2)(1 - q2) == payoff_state2, which makes
    the complete-information and no-lookup payoffs coincide.
    """
    v, c, q1, q2, h1, h2 = p.v, p.c, p.q_state1, p.q_state2, p.h1, p.h2
    none = 1.0 - q1 - q2
    pay2 = (v - c) * none + h2 * (1.0 - q2) - h1 * q1
    pay1 = (v + h1 - c) * none
    ell = c - h1 + (v - c + h1) * none / (1.0 - q2)
    lhs = (ell - c + h2) * (1.0 - q2)
    if abs(lhs - pay2) > 1e-12 * max(1.0, abs(lhs), abs(pay2)):
        raise ConsistencyError(
            f"price-floor identity broken: {lhs} != {pay2}")
    return MultiStatePayoffs(payoff_state2=pay2, payoff_state1=pay1, price_floor=ell)
