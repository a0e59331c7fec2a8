"""Piecewise-hyperbolic price distributions.

Every equilibrium pricing rule in this market is a CDF built from segments of
the form F(x) = A - B/(x - c) on [lo, hi], optionally topped by a point mass
at the upper support endpoint v.  Keeping segments in (A, B) form gives exact
inverses (x = c + B/(A - u)) and closed-form moments (the density on a
segment is B/(x - c)^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError

#: absolute tolerance for continuity / mass checks; far below any price scale
#: used here, far above double-precision noise.
KNOT_TOL = 1e-9


@dataclass(frozen=True)
class HyperbolicSegment:
    """CDF piece F(x) = a - b/(x - c_ref) on [lo, hi]; b >= 0 keeps it nondecreasing."""

    lo: float
    hi: float
    a: float
    b: float


@dataclass(frozen=True)
class PriceCdf:
    """A price CDF: ordered contiguous hyperbolic segments plus a mass at v.

    `v` is the upper support endpoint (where the optional atom sits).  A pure
    point mass is an empty segment list with jump_at_v == 1.
    """

    c_ref: float
    v: float
    segments: tuple[HyperbolicSegment, ...] = ()
    jump_at_v: float = 0.0

    @classmethod
    def point_mass(cls, price: float, c_ref: float = 0.0) -> "PriceCdf":
        return cls(c_ref=c_ref, v=price, segments=(), jump_at_v=1.0)

    @property
    def support(self) -> tuple[float, float]:
        lo = self.segments[0].lo if self.segments else self.v
        hi = self.v if self.jump_at_v > 0.0 or not self.segments else self.segments[-1].hi
        return lo, hi

    @cached_property
    def _arrays(self) -> tuple[np.ndarray, ...]:
        lo = np.array([s.lo for s in self.segments])
        hi = np.array([s.hi for s in self.segments])
        a = np.array([s.a for s in self.segments])
        b = np.array([s.b for s in self.segments])
        with np.errstate(divide="ignore", invalid="ignore"):
            f_hi = a - b / (hi - self.c_ref)
        return lo, hi, a, b, f_hi

    def _seg_value(self, k: int, x: float) -> float:
        seg = self.segments[k]
        return seg.a - seg.b / (x - self.c_ref)

    def cdf(self, x):
        """F(x): 0 below support, piecewise inside, 1 at and above v.

        Accepts scalars or arrays.  The mass at v is included at x == v.
        """
        xa = np.asarray(x, dtype=float)
        out = np.zeros_like(xa)
        if self.segments:
            lo, hi, a, b, _ = self._arrays
            idx = np.searchsorted(lo, xa, side="right") - 1
            inside = idx >= 0
            k = np.clip(idx, 0, len(self.segments) - 1)
            xe = np.minimum(xa, hi[k])  # flat between a segment's hi and the next lo
            with np.errstate(divide="ignore", invalid="ignore"):
                val = a[k] - b[k] / (xe - self.c_ref)
            out = np.where(inside, np.clip(val, 0.0, 1.0), 0.0)
        out = np.where(xa >= self.v, 1.0, out)
        return float(out) if np.ndim(x) == 0 else out

    def mass_at(self, x: float) -> float:
        """Probability mass exactly at price x (atoms only; 0 elsewhere).

        Knot mismatches below KNOT_TOL are continuity noise, not atoms.
        """
        m = 0.0
        if x == self.v:
            m += self.jump_at_v
        for k, seg in enumerate(self.segments):
            if x == seg.lo:
                left = 0.0 if k == 0 else self._seg_value(k - 1, self.segments[k - 1].hi)
                step = self._seg_value(k, seg.lo) - left
                if step > KNOT_TOL:
                    m += step
        return m

    def atoms(self) -> list[tuple[float, float]]:
        """All (price, mass) atoms of the distribution, in price order."""
        candidates = [seg.lo for seg in self.segments] + [self.v]
        out = []
        for x in dict.fromkeys(candidates):
            m = self.mass_at(x)
            if m > 0.0:
                out.append((x, m))
        return out

    def quantile(self, u):
        """Smallest x with F(x) >= u; u past the continuous mass returns v."""
        ua = np.asarray(u, dtype=float)
        if np.any(ua < 0.0) or np.any(ua > 1.0):
            raise DomainError("quantile argument must lie in [0, 1]")
        if not self.segments:
            out = np.full_like(ua, self.v)
            return float(out) if np.ndim(u) == 0 else out
        lo, hi, a, b, f_hi = self._arrays
        idx = np.searchsorted(f_hi, ua, side="left")
        k = np.clip(idx, 0, len(self.segments) - 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            x = self.c_ref + b[k] / (a[k] - ua)
        x = np.where(b[k] == 0.0, lo[k], x)
        x = np.clip(x, lo[k], hi[k])
        out = np.where(idx >= len(self.segments), self.v, x)
        return float(out) if np.ndim(u) == 0 else out

    def sample(self, rng: np.random.Generator, size=None):
        """Inverse-transform draws; identical generator state gives identical draws."""
        return self.quantile(rng.random(size))

    def moments(self) -> tuple[float, float]:
        """(mean, variance) by exact per-segment integration plus atom terms."""
        m1 = self.jump_at_v * self.v
        m2 = self.jump_at_v * self.v * self.v
        c = self.c_ref
        for seg in self.segments:
            t0, t1 = seg.lo - c, seg.hi - c
            if seg.b == 0.0 or t1 <= t0:
                continue
            m1 += seg.b * (math.log(t1 / t0) - c / t1 + c / t0)
            m2 += seg.b * ((t1 - t0) + 2.0 * c * math.log(t1 / t0) - c * c / t1 + c * c / t0)
        return m1, m2 - m1 * m1

    def validate(self) -> list[str]:
        """Structural check; returns human-readable violations (empty == valid).

        Checks monotonicity, segment bounds, contiguity, knot continuity
        within KNOT_TOL, no interior atoms, and unit total mass.
        """
        bad: list[str] = []
        if not -KNOT_TOL <= self.jump_at_v <= 1.0 + KNOT_TOL:
            bad.append(f"jump mass {self.jump_at_v} outside [0, 1]")
        prev_hi = None
        prev_val = 0.0
        for k, seg in enumerate(self.segments):
            tag = f"segment {k} [{seg.lo}, {seg.hi}]"
            if not seg.lo < seg.hi:
                bad.append(f"{tag}: empty or reversed")
                continue
            if seg.lo <= self.c_ref:
                bad.append(f"{tag}: lower endpoint not above c_ref={self.c_ref}")
                continue
            if seg.b < -KNOT_TOL:
                bad.append(f"{tag}: decreasing (B={seg.b} < 0)")
            f_lo = self._seg_value(k, seg.lo)
            f_hi = self._seg_value(k, seg.hi)
            if f_lo < -KNOT_TOL or f_hi > 1.0 + KNOT_TOL:
                bad.append(f"{tag}: values [{f_lo}, {f_hi}] escape [0, 1]")
            if f_hi < f_lo - KNOT_TOL:
                bad.append(f"{tag}: not nondecreasing")
            if prev_hi is None:
                if f_lo > KNOT_TOL and seg.lo < self.v:
                    bad.append(f"{tag}: interior atom at support lower end (F(lo)={f_lo})")
            else:
                if abs(seg.lo - prev_hi) > KNOT_TOL:
                    bad.append(f"{tag}: gap/overlap with previous segment ending {prev_hi}")
                if abs(f_lo - prev_val) > KNOT_TOL:
                    bad.append(f"{tag}: interior jump at knot {seg.lo} "
                               f"({prev_val} -> {f_lo})")
            prev_hi, prev_val = seg.hi, f_hi
        if self.segments:
            if self.segments[-1].hi > self.v + KNOT_TOL:
                bad.append("last segment extends beyond v")
            total = prev_val + self.jump_at_v
            if abs(total - 1.0) > KNOT_TOL:
                bad.append(f"total mass {total} != 1")
        elif abs(self.jump_at_v - 1.0) > KNOT_TOL:
            bad.append(f"point mass {self.jump_at_v} != 1")
        return bad
