"""Exception hierarchy shared across the package."""


class KitError(Exception):
    """Base class for every error raised by this package."""


class SpaceError(KitError):
    """Invalid event-space construction or variable lookup."""


class SizeLimitError(SpaceError):
    """Requested space or operator exceeds the supported size."""


class ExpressionError(KitError):
    """Syntax error in a value expression, with the character position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class EvaluationError(KitError):
    """A value expression cannot be evaluated over the reals.

    Raised for negative radicands and for division by an interval
    that contains zero even after refinement.
    """


class MeasureError(KitError):
    """Operation is not defined for this measure kind."""


class UndefinedConditionalError(MeasureError):
    """Conditioning event has probability zero."""


class NoWitnessError(KitError):
    """The requested construction has no witness for these parameters."""


class CertificateError(KitError):
    """Malformed infeasibility certificate (wrong dimension)."""


class ScenarioError(KitError):
    """Scenario input is syntactically or semantically invalid."""
