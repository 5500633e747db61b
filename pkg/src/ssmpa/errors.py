"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid user-supplied configuration (bad antenna count, modulation, range)."""


class CapabilityError(RuntimeError):
    """Requested construction is impossible for the given dimensions."""


class NumericError(ArithmeticError):
    """Non-finite or otherwise unusable intermediate numeric result."""


class SweepError(RuntimeError):
    """Too many numerically failed realizations inside one experiment sweep."""
