"""
Gonality Census Errors
======================

Exception hierarchy shared by every package. Subclasses also derive from the
closest builtin so callers that only know ``ValueError`` keep working.
"""


class GonalityCensusError(Exception):
    """Base class for all errors raised by this project."""


class FieldMismatchError(GonalityCensusError, ValueError):
    """Operands belong to different finite fields."""


class ZeroInverseError(GonalityCensusError, ZeroDivisionError):
    """Attempt to invert the zero element."""


class ZeroFormError(GonalityCensusError, ValueError):
    """Operation undefined for the zero quadratic form."""


class SingularMatrixError(GonalityCensusError, ValueError):
    """A coordinate change was requested with a non-invertible matrix."""


class ActionClosureError(GonalityCensusError):
    """A form set is not closed under a group action (type-table bug)."""


class PolynomialParseError(GonalityCensusError, ValueError):
    """Polynomial text could not be parsed."""


class NonHomogeneousIdealError(GonalityCensusError, ValueError):
    """A projective operation received non-homogeneous generators."""


class GroebnerBudgetExceeded(GonalityCensusError):
    """A Gröbner basis computation used more reduction steps than allowed."""

    def __init__(self, steps: int, budget: int):
        super().__init__(f"Gröbner computation exceeded step budget ({steps} > {budget})")
        self.steps = steps
        self.budget = budget


class EnumerationBudgetError(GonalityCensusError):
    """Point enumeration would visit more points than allowed."""


class SingularCurveError(GonalityCensusError, ValueError):
    """A certificate was requested for a singular or wrong-dimension curve."""


class CensusAssertionError(GonalityCensusError):
    """A census-level theorem check failed."""

    def __init__(self, message: str, record=None):
        super().__init__(message if record is None else f"{message}: {record}")
        self.record = record


class ConfigurationError(GonalityCensusError, ValueError):
    """Invalid configuration value."""
