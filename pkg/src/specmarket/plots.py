"""Matplotlib rendering of the CLI's CSV artifacts.

Figures are a convenience layer on top of the delimited output; the CSVs stay
the normative, diffable record.  Rendering is headless (Agg).
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .equilibria import EquilibriumProfile
from .params import InfoState

_INFO_LABEL = {
    InfoState.NO_ACQUIRE: "no lookup",
    InfoState.ACQUIRED_EST1: "lookup: rival present",
    InfoState.ACQUIRED_EST0: "lookup: rival absent",
}


def cdf_curve(cdf, n: int = 400) -> tuple[np.ndarray, np.ndarray]:
    """(x, F(x)) polyline including a pre-support zero and the atom rise at v."""
    lo, hi = cdf.support
    pad = 0.02 * max(hi - lo, 1.0)
    xs = [np.array([lo - pad, lo])]
    for seg in cdf.segments:
        xs.append(np.linspace(seg.lo, seg.hi, max(2, n // max(1, len(cdf.segments)))))
    grid = np.unique(np.concatenate(xs))
    ys = cdf.cdf(grid)
    if cdf.jump_at_v > 0.0:
        grid = np.append(grid, cdf.v)
        ys = np.append(ys, 1.0)
    return grid, ys


def plot_cdfs(profile: EquilibriumProfile, path: str) -> None:
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    styles = ("-", "--")
    for i, strat in enumerate(profile.strategies):
        for info in (InfoState.ACQUIRED_EST1, InfoState.NO_ACQUIRE,
                     InfoState.ACQUIRED_EST0):
            if info not in strat.cdf_by_info:
                continue
            xs, ys = cdf_curve(strat.cdf(info))
            ax.plot(xs, ys, styles[i], label=f"seller {i + 1}, {_INFO_LABEL[info]}")
    ax.set_xlabel("price")
    ax.set_ylabel("CDF")
    ax.set_ylim(-0.02, 1.05)
    ax.legend(fontsize=8)
    ax.set_title(f"{profile.regime.scenario.value}: equilibrium pricing rules")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_sweep(axis_name: str, axis, p1, p2, payoff1, payoff2, path: str) -> None:
    fig, (ax_p, ax_u) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    ax_p.plot(axis, p1, label="seller 1")
    ax_p.plot(axis, p2, "--", label="seller 2")
    ax_p.set_xlabel(axis_name)
    ax_p.set_ylabel("lookup probability")
    ax_p.legend(fontsize=8)
    ax_u.plot(axis, payoff1, label="seller 1")
    ax_u.plot(axis, payoff2, "--", label="seller 2")
    ax_u.set_xlabel(axis_name)
    ax_u.set_ylabel("expected payoff")
    ax_u.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_welfare(axis, mean_price, price_var, path: str) -> None:
    fig, (ax_m, ax_v) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    ax_m.plot(axis, mean_price)
    ax_m.set_xlabel("lookup cost")
    ax_m.set_ylabel("mean price paid")
    ax_v.plot(axis, price_var)
    ax_v.set_xlabel("lookup cost")
    ax_v.set_ylabel("price variance")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
