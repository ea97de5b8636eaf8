"""Exception hierarchy shared by every tomoec module."""


class TomoError(Exception):
    """Base class for all tomoec errors."""


class InvalidDirection(TomoError, ValueError):
    pass


class InvalidGrid(TomoError, ValueError):
    pass


class InvalidLineSums(TomoError, ValueError):
    pass


class InvalidErrorSpec(TomoError, ValueError):
    pass


class InvalidParameters(TomoError, ValueError):
    pass


class DimensionMismatch(TomoError, ValueError):
    pass


class SingularSystem(TomoError, ArithmeticError):
    pass


class RootDeficit(TomoError, ArithmeticError):
    """Fewer distinct integer roots were found in range than the polynomial degree."""


class DegenerateDirections(TomoError, ArithmeticError):
    pass


class InternalContradiction(TomoError, ArithmeticError):
    """Exact arithmetic produced something the error model forbids.

    Raised for instance when the Hankel rank says ``s`` errors but the
    recurrence system is singular, or when recovered magnitudes are not
    integers. On valid in-budget data this never happens.
    """


class AssumptionViolated(TomoError):
    """The measured data is not explainable within the F/G error budgets."""

    def __init__(self, reason, **diagnostics):
        super().__init__(reason)
        self.reason = reason
        self.diagnostics = diagnostics
