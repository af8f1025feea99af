"""Error types raised across the simulator.

Everything a caller can trigger with bad input derives from ``SimulationError``
(itself a ``ValueError``), so services and routers can catch one type.
"""


class SimulationError(ValueError):
    """Base class for user-facing simulator errors."""


class ScenarioValidationError(SimulationError):
    """A scenario document or execution config is malformed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class ItineraryError(SimulationError):
    """A packet itinerary is not a walk in the graph."""


class SizeGuardError(SimulationError):
    """An exhaustive computation was requested above the configured size limit."""


class BoundDomainError(SimulationError):
    """Bound parameters fall outside the domain of the formula."""


class PreconditionError(SimulationError):
    """An analysis was asked to compare runs that do not meet its preconditions."""


class InvariantViolation(AssertionError):
    """The engine produced a state that breaks a trace invariant."""
