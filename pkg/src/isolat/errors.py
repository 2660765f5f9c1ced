"""Exception hierarchy.

Every error carries a ``code`` string that the CLI reports in its
machine-readable error document.
"""


class IsolatError(Exception):
    code = "IsolatError"


class GeneratorError(IsolatError, ValueError):
    code = "GeneratorError"


class ZeroVectorError(GeneratorError):
    code = "ZeroVector"


class DuplicateVectorError(GeneratorError):
    code = "DuplicateVector"


class NotGeneratingError(GeneratorError):
    code = "NotGenerating"


class DimensionMismatchError(IsolatError, ValueError):
    code = "DimensionMismatch"


class IndexOutOfRangeError(IsolatError, IndexError):
    code = "IndexOutOfRange"


class EmptySetError(IsolatError, ValueError):
    code = "EmptySet"


class NotDisjointError(IsolatError, ValueError):
    code = "NotDisjoint"


class SizeNotInTableError(IsolatError, KeyError):
    code = "SizeNotInTable"

    def __str__(self):
        return Exception.__str__(self)


class DegenerateDimensionError(IsolatError, ValueError):
    code = "DegenerateDimension"


class DegenerateHullError(IsolatError, ValueError):
    code = "DegenerateHull"


class LeadingCoefficientMismatchError(IsolatError, ArithmeticError):
    code = "LeadingCoefficientMismatch"


class BudgetExceededError(IsolatError, RuntimeError):
    code = "BudgetExceeded"


class InfeasibleEnumerationError(IsolatError, RuntimeError):
    code = "InfeasibleEnumeration"


class ChainViolationError(IsolatError, AssertionError):
    """Raised when ∂(Z(t)) exceeds |Z(t+1)| - |Z(t)|; never expected."""

    code = "ChainViolation"
