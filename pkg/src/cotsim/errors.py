"""Exception hierarchy shared across the package."""


class CotSimError(Exception):
    """Base class for all package-specific errors."""


class DomainMismatchError(CotSimError):
    """An input in a distribution's support is outside a hypothesis's domain."""


class DistributionError(CotSimError):
    """Malformed finite distribution (bad probabilities or duplicate support)."""


class ClassSizeError(CotSimError):
    """Requested hypothesis class is too large to enumerate."""


class ClassConstructionError(CotSimError):
    """Invalid parameters for building a hypothesis class."""


class BudgetExceededError(CotSimError):
    """Exact-mode computation exceeds the configured budget.

    Callers should switch to the Monte Carlo estimators
    (``monte_carlo_pair_stats`` / ``monte_carlo_info_curve``).
    """


class ConfigError(CotSimError):
    """Invalid experiment configuration; message names the offending field."""
