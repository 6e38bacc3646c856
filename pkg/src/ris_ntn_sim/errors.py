"""Exception types shared across the simulator modules."""


class SimulatorError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(SimulatorError, ValueError):
    """Array shapes or element counts do not agree."""


class ConstraintViolated(SimulatorError, ValueError):
    """A phase-shift matrix lies outside its architecture's feasible set.

    Carries the (row, col) location of the first violated entry and the
    numerical residual of the violated constraint.
    """

    def __init__(self, location, residual, reason):
        self.location = tuple(int(i) for i in location)
        self.residual = float(residual)
        self.reason = reason
        super().__init__(f"{reason} at {self.location} (residual {self.residual:.3e})")


class SingularInput(SimulatorError, ValueError):
    """Matrix is singular to working precision."""


class NonPositiveInput(SimulatorError, ValueError):
    """A quantity that must be strictly positive was not."""


class InvalidAltitudes(SimulatorError, ValueError):
    """Platform altitudes do not describe a satellite above a relay above ground."""


class TooLarge(SimulatorError, ValueError):
    """Problem size exceeds what an exhaustive search will accept."""


class WrongDimension(SimulatorError, ValueError):
    """Operation is only defined for a specific element count."""


class NonPositivePower(SimulatorError, ValueError):
    """Transmit power must be strictly positive."""


class SweepError(SimulatorError, RuntimeError):
    """Failure inside a sweep, annotated with (arch, elements, trial) context."""
