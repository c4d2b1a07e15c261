"""Exception and warning types shared across the package."""

from __future__ import annotations


class EmschedError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(EmschedError):
    """Input data violates a model invariant."""


class EmptyFleetError(ValidationError):
    pass


class NonPositiveSpeedError(ValidationError):
    pass


class NegativePowerError(ValidationError):
    pass


class DuplicateIdError(ValidationError):
    pass


class NonPositiveWeightError(ValidationError):
    pass


class UnknownMachineError(ValidationError):
    pass


class NegativeIdleTimeError(ValidationError):
    pass


class EmptyScheduleError(ValidationError):
    pass


class NoJobsError(ValidationError):
    pass


class WorkingCountError(ValidationError):
    """Requested working-machine count ``r`` lies outside ``1..m``."""


class DimensionMismatchError(ValidationError):
    pass


class UndefinedRatioError(EmschedError):
    """Efficiency ratio has a zero denominator."""


class ResourceLimitError(EmschedError):
    """Instance exceeds an enumeration guard."""


class FleetTooLargeError(ResourceLimitError):
    pass


class InstanceTooLargeError(ResourceLimitError):
    pass


class ScenarioParseError(EmschedError):
    """Scenario text could not be parsed; carries a line number."""

    def __init__(self, line_no: int | None, message: str) -> None:
        self.line_no = line_no
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)


class IdleExceedsWorkingWarning(UserWarning):
    """A machine idles at higher power than it works; accepted but unusual."""
