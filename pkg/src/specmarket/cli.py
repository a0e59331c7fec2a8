"""Command-line front-end: solve / simulate / verify / sweep / dist.

Emits deterministic CSV artifacts (12 significant digits, fixed column order,
LF line endings) so reruns of identical configs are byte-identical.  Options
can come from a `key = value` config file (`--config`); explicit flags win.
Exit codes: 0 ok, 1 validation failure, 2 verification failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .equilibria import EquilibriumProfile, solve
from .errors import SpecMarketError
from .params import InfoState, MarketParams, validate_params
from .simulate import SimConfig, run_market
from .verify import certify_ne

ENDPOINT_COLS = ("p_tilde", "p_tilde_1", "p_tilde_2", "p_tilde_3", "L",
                 "L_N", "L_0", "p_bar", "p_tilde_N", "p_tilde_1N")
SWEEP_VARS = ("s", "q", "qs", "q2", "s2")
_INFO_TAG = {InfoState.NO_ACQUIRE: "noacquire",
             InfoState.ACQUIRED_EST1: "est1",
             InfoState.ACQUIRED_EST0: "est0"}


class UsageError(SpecMarketError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        if math.isnan(x):
            return ""
        return f"{x:.12g}"
    return str(x)


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])


_FLOAT_KEYS = ("v", "c", "q1", "q2", "s1", "s2", "qs", "eps")
_INT_KEYS = ("n", "m", "rounds", "seed", "grid")
_BOOL_KEYS = ("verify_each", "plot")
_STR_KEYS = ("sweep", "out")


def _read_config(path: str) -> dict:
    out: dict = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().replace("-", "_")
        value = value.strip()
        if key in _FLOAT_KEYS:
            out[key] = float(value)
        elif key in _INT_KEYS:
            out[key] = int(value)
        elif key in _BOOL_KEYS:
            out[key] = value.lower() in ("1", "true", "yes", "on")
        elif key in _STR_KEYS:
            out[key] = value
        else:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
    return out


def _build_parser() -> _Parser:
    parser = _Parser(prog="specmarket",
                     description="Equilibria, simulation and verification for the "
                                 "two-seller lookup-and-price spectrum market.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (("solve", "write the equilibrium summary and CDF tables"),
                      ("simulate", "Monte Carlo market replay at the equilibrium"),
                      ("verify", "eps-equilibrium certification"),
                      ("sweep", "equilibrium quantities along a parameter axis"),
                      ("dist", "dump (x, F(x)) tables for all equilibrium CDFs")):
        cmd = sub.add_parser(name, help=doc)
        cmd.add_argument("--config", help="key = value file; flags override it")
        for key in ("v", "c", "q1", "q2", "s1", "s2", "qs"):
            cmd.add_argument(f"--{key}", type=float, default=None)
        cmd.add_argument("--n", type=int, default=None)
        cmd.add_argument("--m", type=int, default=None)
        cmd.add_argument("--rounds", type=int, default=None)
        cmd.add_argument("--seed", type=int, default=None)
        cmd.add_argument("--grid", type=int, default=None,
                         help="price-grid size (verify) or table resolution (dist/solve)")
        cmd.add_argument("--sweep", default=None, metavar="VAR:LO:HI:STEPS",
                         help=f"axis variable in {{{','.join(SWEEP_VARS)}}}")
        cmd.add_argument("--out", default=None, help="output file (directory for solve)")
        cmd.add_argument("--verify-each", dest="verify_each",
                         action=argparse.BooleanOptionalAction, default=None)
        cmd.add_argument("--eps", type=float, default=None,
                         help="certification bound; default 1e-6*(v-c), sweeps 1e-5*(v-c)")
        cmd.add_argument("--plot", action=argparse.BooleanOptionalAction, default=None,
                         help="also render figures next to the CSV output")
    return parser


def _merge(args: argparse.Namespace) -> dict:
    merged: dict = {}
    if args.config:
        merged.update(_read_config(args.config))
    for key in (*_FLOAT_KEYS, *_INT_KEYS, *_BOOL_KEYS, *_STR_KEYS):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    merged.setdefault("verify_each", False)
    merged.setdefault("plot", False)
    return merged


def _raw_params_from(cfg: dict) -> MarketParams:
    if "v" not in cfg:
        raise UsageError("missing required parameter: v")
    return MarketParams(
        v=cfg["v"], c=cfg.get("c", 0.0),
        q1=cfg.get("q1", 0.5), q2=cfg.get("q2", 0.5),
        s1=cfg.get("s1", 0.0), s2=cfg.get("s2", 0.0),
        qs=cfg.get("qs", 1.0), n=cfg.get("n", 2), m=cfg.get("m", 1))


def _params_from(cfg: dict) -> MarketParams:
    return validate_params(_raw_params_from(cfg))


def _user_payoffs(profile: EquilibriumProfile, swapped: bool) -> tuple[float, float]:
    p = profile.payoffs
    return (p[1], p[0]) if swapped else p


def _user_strategies(profile: EquilibriumProfile, swapped: bool):
    s = profile.strategies
    return (s[1], s[0]) if swapped else s


def _require_out(cfg: dict) -> str:
    if "out" not in cfg:
        raise UsageError("missing required option: --out")
    return cfg["out"]


def _cdf_table(cdf, n: int) -> list[tuple[float, float]]:
    xs = [np.asarray([cdf.support[0]])]
    for seg in cdf.segments:
        xs.append(np.linspace(seg.lo, seg.hi, max(2, n)))
    if cdf.jump_at_v > 0.0:
        xs.append(np.asarray([cdf.v]))
    grid = np.unique(np.concatenate(xs))
    return [(float(x), float(cdf.cdf(x))) for x in grid]


def _cmd_solve(cfg: dict) -> int:
    params = _params_from(cfg)
    profile = solve(params)
    out_dir = Path(_require_out(cfg))
    out_dir.mkdir(parents=True, exist_ok=True)
    payoffs = _user_payoffs(profile, params.swapped)
    strategies = _user_strategies(profile, params.swapped)
    summary = {
        "scenario": profile.regime.scenario.value,
        "cost_band": profile.regime.cost_band.value,
        "thresholds": {name: val for name, val in profile.regime.thresholds},
        "primaries_swapped": params.swapped,
        "p_acquire": [strategies[0].p_acquire, strategies[1].p_acquire],
        "payoffs": list(payoffs),
        "endpoints": dict(profile.endpoints),
        "params": {"v": params.v, "c": params.c, "q1": params.q1, "q2": params.q2,
                   "s1": params.s1, "s2": params.s2, "qs": params.qs},
    }
    (out_dir / "equilibrium.json").write_text(json.dumps(summary, indent=2) + "\n")
    n = cfg.get("grid", 200)
    for i, strat in enumerate(strategies, start=1):
        for info, cdf in sorted(strat.cdf_by_info.items(), key=lambda kv: kv[0].value):
            rows = [[x, f] for x, f in _cdf_table(cdf, n)]
            _write_csv(str(out_dir / f"cdf_seller{i}_{_INFO_TAG[info]}.csv"),
                       ["x", "F"], rows)
    if cfg["plot"]:
        from . import plots
        plots.plot_cdfs(profile, str(out_dir / "cdfs.png"))
    return 0


def _cmd_dist(cfg: dict) -> int:
    params = _params_from(cfg)
    profile = solve(params)
    out = _require_out(cfg)
    strategies = _user_strategies(profile, params.swapped)
    n = cfg.get("grid", 200)
    rows = []
    for i, strat in enumerate(strategies, start=1):
        for info in (InfoState.NO_ACQUIRE, InfoState.ACQUIRED_EST1,
                     InfoState.ACQUIRED_EST0):
            if info not in strat.cdf_by_info:
                continue
            for x, f in _cdf_table(strat.cdf(info), n):
                rows.append([i, _INFO_TAG[info], x, f])
    _write_csv(out, ["seller", "info", "x", "F"], rows)
    if cfg["plot"]:
        from . import plots
        plots.plot_cdfs(profile, str(Path(out).with_suffix(".png")))
    return 0


def _cmd_simulate(cfg: dict) -> int:
    params = _params_from(cfg)
    if "rounds" not in cfg or "seed" not in cfg:
        raise UsageError("simulate requires --rounds and --seed (no wall-clock seeding)")
    profile = solve(params)
    stats = run_market(SimConfig(cfg["rounds"], cfg["seed"], params, profile.strategies))
    prim = stats.primaries
    if params.swapped:
        prim = (prim[1], prim[0])
    header = ["rounds", "seed"]
    row: list = [stats.rounds, cfg["seed"]]
    for i, ps in enumerate(prim, start=1):
        header += [f"payoff{i}_mean", f"payoff{i}_se", f"payoff{i}_uncond_mean",
                   f"sale_freq{i}", f"acquire_freq{i}", f"est_correct_freq{i}"]
        row += [ps.mean_payoff, ps.payoff_se, ps.uncond_mean_payoff,
                ps.sale_freq, ps.acquire_freq, ps.est_correct_freq]
    header += ["mean_price", "mean_price_se", "price_var", "sale_fraction"]
    row += [stats.mean_price, stats.mean_price_se, stats.price_var, stats.sale_fraction]
    _write_csv(_require_out(cfg), header, [row])
    return 0


def _cmd_verify(cfg: dict) -> int:
    params = _params_from(cfg)
    profile = solve(params)
    grid = cfg.get("grid", 10_000)
    report = certify_ne(params, profile, grid_size=grid)
    bound = cfg.get("eps", 1e-6 * (params.v - params.c))
    rows = []
    for row in report.rows:
        primary = row.primary
        if params.swapped:
            primary = 3 - primary
        rows.append([primary, row.info, row.equilibrium_payoff, row.best_decision,
                     row.best_price, row.best_value, row.gain])
    rows.sort(key=lambda r: (r[0], r[1]))
    out = _require_out(cfg)
    _write_csv(out, ["seller", "info", "equilibrium_payoff", "best_decision",
                     "best_price", "best_value", "gain"], rows)
    print(f"epsilon = {report.epsilon:.6g} (bound {bound:.6g})")
    return 0 if report.epsilon <= bound else 2


def _sweep_axis(cfg: dict) -> tuple[str, np.ndarray]:
    spec = cfg.get("sweep")
    if not spec:
        raise UsageError("sweep requires --sweep VAR:LO:HI:STEPS")
    parts = spec.split(":")
    if len(parts) != 4:
        raise UsageError(f"bad sweep spec {spec!r}; expected VAR:LO:HI:STEPS")
    var, lo, hi, steps = parts[0], float(parts[1]), float(parts[2]), int(parts[3])
    if var not in SWEEP_VARS:
        raise UsageError(f"sweep variable must be one of {SWEEP_VARS}, got {var!r}")
    if steps < 2:
        raise UsageError(f"sweep needs at least 2 steps, got {steps}")
    return var, np.linspace(lo, hi, steps)


def _apply_axis(params: MarketParams, var: str, value: float) -> MarketParams:
    value = float(value)
    if var == "s":
        return replace(params, s1=value, s2=value)
    if var == "q":
        return replace(params, q1=value, q2=value)
    if var == "qs":
        return replace(params, qs=value)
    if var == "q2":
        return replace(params, q2=value)
    return replace(params, s2=value)


def _cmd_sweep(cfg: dict) -> int:
    # the axis applies to the caller's seller labels, so canonicalize only
    # after the axis value is in place
    base = _raw_params_from(cfg)
    var, axis = _sweep_axis(cfg)
    rounds = cfg.get("rounds", 0)
    if rounds and "seed" not in cfg:
        raise UsageError("sweep with simulation requires --seed")
    header = [var, "p1", "p2", "payoff1", "payoff2", *ENDPOINT_COLS]
    if rounds:
        header += ["mean_price", "mean_price_se", "price_var",
                   "sim_payoff1", "sim_payoff1_se", "sim_payoff2", "sim_payoff2_se"]
    rows = []
    worst_eps = 0.0
    for idx, value in enumerate(axis):
        point = validate_params(_apply_axis(base, var, float(value)))
        profile = solve(point)
        strategies = _user_strategies(profile, point.swapped)
        payoffs = _user_payoffs(profile, point.swapped)
        row: list = [float(value), strategies[0].p_acquire, strategies[1].p_acquire,
                     payoffs[0], payoffs[1]]
        row += [profile.endpoints.get(name) for name in ENDPOINT_COLS]
        if rounds:
            sub_seed = int(np.random.SeedSequence(
                [cfg["seed"] & ((1 << 64) - 1), idx]).generate_state(1)[0])
            stats = run_market(SimConfig(rounds, sub_seed, point, profile.strategies))
            prim = stats.primaries
            if point.swapped:
                prim = (prim[1], prim[0])
            row += [stats.mean_price, stats.mean_price_se, stats.price_var,
                    prim[0].mean_payoff, prim[0].payoff_se,
                    prim[1].mean_payoff, prim[1].payoff_se]
        if cfg["verify_each"]:
            report = certify_ne(point, profile,
                                grid_size=cfg.get("grid", 10_000))
            worst_eps = max(worst_eps, report.epsilon)
        rows.append(row)
    out = _require_out(cfg)
    _write_csv(out, header, rows)
    if cfg["plot"]:
        from . import plots
        arr = np.asarray([r[:5] for r in rows], dtype=float)
        plots.plot_sweep(var, arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3], arr[:, 4],
                         str(Path(out).with_suffix(".png")))
        if rounds:
            k = len(header) - 7
            sim = np.asarray([r[k:k + 3] for r in rows], dtype=float)
            plots.plot_welfare(arr[:, 0], sim[:, 0], sim[:, 2],
                               str(Path(out).with_suffix("")) + "_welfare.png")
    if cfg["verify_each"]:
        bound = cfg.get("eps", 1e-5 * (base.v - base.c))
        print(f"worst epsilon over sweep = {worst_eps:.6g} (bound {bound:.6g})")
        if worst_eps > bound:
            return 2
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
    "dist": _cmd_dist,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _merge(args)
        return _COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SpecMarketError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
