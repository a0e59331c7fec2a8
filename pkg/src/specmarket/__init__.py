"""Price competition in a two-seller spectrum market with costly rival-state lookups.

Closed-form mixed-strategy equilibria for the four analyzed scenarios, a
seeded market simulator, a best-response certifier, and the n-seller /
multi-quality payoff extensions.
"""

from .errors import (AmbiguousScenario, ConsistencyError, DomainError,
                     MissingCdf, NoRoot, RangeError, ScenarioMismatch,
                     SpecMarketError)
from .params import (CostBand, InfoState, MarketParams, Regime, Scenario,
                     scenario_of, validate_params)
from .pricecdf import HyperbolicSegment, PriceCdf
from .equilibria import (EquilibriumProfile, PrimaryStrategy, ne_basic,
                         ne_estimation_error, ne_unequal_availability,
                         ne_unequal_costs, phi_cdf, psi_cdf, solve,
                         solve_error_mixing, thresholds)
from .simulate import SimConfig, SimStats, WelfareRow, run_market, welfare_sweep
from .verify import (DeviationReport, DeviationRow, StructureReport,
                     best_response, certify_ne, expected_payoff, info_value,
                     strategy_value, structural_checks, win_probability)
from .extensions import (MultiStateParams, MultiStatePayoffs, NPrimaryCheck,
                         W_mn, multistate_payoffs, n_primary_payoff_checks,
                         simulate_all_acquire_payoff, w_mn)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousScenario", "ConsistencyError", "CostBand", "DeviationReport",
    "DeviationRow", "DomainError", "EquilibriumProfile", "HyperbolicSegment",
    "InfoState", "MarketParams", "MissingCdf", "MultiStateParams",
    "MultiStatePayoffs", "NPrimaryCheck", "NoRoot", "PriceCdf",
    "PrimaryStrategy", "RangeError", "Regime", "Scenario", "ScenarioMismatch",
    "SimConfig", "SimStats", "SpecMarketError", "StructureReport", "W_mn",
    "WelfareRow", "best_response", "certify_ne", "expected_payoff",
    "info_value", "multistate_payoffs", "n_primary_payoff_checks", "ne_basic",
    "ne_estimation_error", "ne_unequal_availability", "ne_unequal_costs",
    "phi_cdf", "psi_cdf", "run_market", "scenario_of",
    "simulate_all_acquire_payoff", "solve", "solve_error_mixing",
    "strategy_value", "structural_checks", "thresholds", "validate_params",
    "w_mn", "welfare_sweep", "win_probability",
]
