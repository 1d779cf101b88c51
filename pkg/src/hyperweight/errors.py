"""Exception hierarchy shared by every hyperweight module."""


class HyperweightError(Exception):
    """Base class for all library errors."""


class NotPrimePower(HyperweightError, ValueError):
    pass


class CapExceeded(HyperweightError, ValueError):
    pass


class ZeroInverse(HyperweightError, ZeroDivisionError):
    pass


class DimensionMismatch(HyperweightError, ValueError):
    pass


class FieldMismatch(HyperweightError, ValueError):
    pass


class ZeroPolynomial(HyperweightError, ValueError):
    pass


class ZeroInput(HyperweightError, ValueError):
    pass


class BadDegree(HyperweightError, ValueError):
    pass


class LinearlyDependent(HyperweightError, ValueError):
    pass


class NotHomogeneousSquareFree(HyperweightError, ValueError):
    pass


class RegionViolation(HyperweightError, ValueError):
    """Parameters fall outside the region where a construction or bound holds."""


class SizeCap(HyperweightError, ValueError):
    """An enumeration would exceed the configured size cap."""


class DegenerateField(HyperweightError, ValueError):
    pass


class Inconsistent(HyperweightError, RuntimeError):
    pass


class BudgetExceeded(HyperweightError, RuntimeError):
    """Exhaustive search would exceed the configured budget.

    ``required`` carries the number of objects the search would visit.
    """

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class OutOfGrid(HyperweightError, ValueError):
    pass


class BadParameters(HyperweightError, ValueError):
    pass


class InternalInconsistency(HyperweightError, RuntimeError):
    pass
