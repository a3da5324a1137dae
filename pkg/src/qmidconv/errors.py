"""Exception and warning types raised by the library."""


class QMCError(Exception):
    """Base class for all library errors."""


class ZeroBase(QMCError, ValueError):
    pass


class BranchViolation(QMCError, ValueError):
    pass


class ZeroArgument(QMCError, ValueError):
    pass


class BudgetExceeded(QMCError, ArithmeticError):
    """A sum or product did not converge within the term budget.

    ``partial`` holds the value accumulated so far and ``diagnostics`` a
    dict describing where the budget ran out.
    """

    def __init__(self, message, partial=None, diagnostics=None):
        super().__init__(message)
        self.partial = partial
        self.diagnostics = dict(diagnostics or {})


class LowerParamPole(QMCError, ZeroDivisionError):
    pass


class DimensionMismatch(QMCError, ValueError):
    pass


class SingularMatrix(QMCError, ArithmeticError):
    pass


class AtPole(QMCError, ZeroDivisionError):
    pass


class EvaluationFailure(QMCError, ArithmeticError):
    pass


class A12Vanishes(QMCError, ZeroDivisionError):
    pass


class BadQuotient(QMCError, ValueError):
    pass


class KernelPole(QMCError, ZeroDivisionError):
    pass


class SampleAtPole(QMCError, ZeroDivisionError):
    pass


class DegenerateParameters(QMCError, ValueError):
    pass


class ResonanceViolated(QMCError, ValueError):
    pass


class ConfigError(QMCError, ValueError):
    pass


class ConditionViolated(UserWarning):
    """Soft warning: a solution was built outside its stated validity gates."""
