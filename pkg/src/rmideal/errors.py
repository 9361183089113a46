"""Exception hierarchy shared across the package."""


class RmidealError(Exception):
    """Base class for all package errors."""


class ArityError(RmidealError):
    """Operands live in rings with different numbers of variables."""


class UnitIdealError(RmidealError):
    """An operation received (or would produce) the unit ideal where it is not legal."""


class NotZeroDimensionalError(RmidealError):
    """A zero-dimensional ideal was required (some variable has no pure power)."""


class GuardExceededError(RmidealError):
    """An enumeration would visit more lattice points than the configured guard."""


class InternalInvariantError(RmidealError):
    """Two independent computations of the same quantity disagree; a bug, not user error."""


class ConfigError(RmidealError):
    """Invalid model or experiment configuration."""
