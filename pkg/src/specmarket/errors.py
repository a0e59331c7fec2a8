"""Exception types shared across the package."""


class SpecMarketError(Exception):
    """Base class for all specmarket errors."""


class RangeError(SpecMarketError, ValueError):
    """A market parameter is outside its admissible range."""


class AmbiguousScenario(SpecMarketError, ValueError):
    """Parameter combination does not match any analyzed market scenario."""


class ScenarioMismatch(SpecMarketError, ValueError):
    """An equilibrium constructor was called with params of the wrong scenario."""


class DomainError(SpecMarketError, ValueError):
    """An argument is outside the domain of the operation."""


class NoRoot(SpecMarketError, ArithmeticError):
    """The mixing-probability equation has no sign change on (0, 1)."""


class MissingCdf(SpecMarketError, LookupError):
    """A strategy lacks a price distribution for a reachable information state."""


class ConsistencyError(SpecMarketError):
    """Internal cross-check failed: two closed forms of the same quantity disagree."""
