"""Exception types shared across the package.

The CLI maps these onto process exit codes: ConfigError -> 2,
TestFailure -> 3, CapacityError (and subclasses) -> 4.
"""


class ConfigError(ValueError):
    """Invalid experiment configuration (bad flag value, out-of-range parameter)."""


class CapacityError(RuntimeError):
    """A requested computation exceeds a documented state-space or memory budget."""


class DepthCapExceeded(CapacityError):
    """A depth-capped structure was asked for data beyond its cap."""


class RoutingError(RuntimeError):
    """An item's digit prefix ran out before routing reached an external node."""


class ModelMismatchError(RuntimeError):
    """Observed data hit a category the reference distribution gives zero mass."""


class TestFailure(RuntimeError):
    """A statistical or exact verification failed while --assert was requested."""
