"""Exception hierarchy.

Three failure categories are distinguished so callers (library users and the
command-line layer) can map them to distinct outcomes:

* ``DomainError`` -- a mathematical object was evaluated outside its domain
  of validity (negative base under a fractional power, pole of a special
  function, point outside a solution's support, ...).
* ``ConfigurationError`` -- structurally invalid input: inconsistent
  parameters, bad grids, malformed run configurations.
* ``NumericError`` -- a computation started from valid input but failed to
  produce a trustworthy finite result (overflow, non-convergence).
* ``ConsistencyError`` -- an internal cross-check failed, e.g. a claimed
  gradient pair is not actually integrable to a single scalar field.
"""


class RadialHeatError(Exception):
    """Base class for all package-specific errors."""


class DomainError(RadialHeatError):
    """Evaluation requested outside a mathematical domain of validity."""


class ConfigurationError(RadialHeatError):
    """Structurally invalid parameters or run configuration."""


class NumericError(RadialHeatError):
    """A numeric computation overflowed or failed to converge."""


class ConsistencyError(RadialHeatError):
    """An internal consistency check (cross-validation) failed."""
