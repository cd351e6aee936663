"""Exception hierarchy shared by every sbrep module."""


class SBRepError(Exception):
    """Base class for all library errors."""


class DivisionByZero(SBRepError, ZeroDivisionError):
    pass


class NonUnitLaurentDivisor(SBRepError, ArithmeticError):
    pass


class EvalAtZero(SBRepError, ArithmeticError):
    pass


class RadicandMismatch(SBRepError, ArithmeticError):
    pass


class SizeMismatch(SBRepError, ValueError):
    pass


class RingMismatch(SBRepError, TypeError):
    pass


class SingularMatrix(SBRepError, ArithmeticError):
    pass


class NonUnitDeterminant(SingularMatrix):
    pass


class RingNotField(SBRepError, TypeError):
    pass


class PositionOutOfRange(SBRepError, IndexError):
    pass


class BadStrandCount(SBRepError, ValueError):
    pass


class MissingGenerator(SBRepError, KeyError):
    def __str__(self):
        return f"missing image for generator {self.args[0]}"


class SingularGeneratorImage(SBRepError, ArithmeticError):
    pass


class ConstraintViolation(SBRepError, ValueError):
    """A family parameter record violates one of its defining inequalities."""

    def __init__(self, constraint, message=None):
        self.constraint = constraint
        super().__init__(message or f"constraint violated: {constraint}")


class ZeroExponent(ConstraintViolation):
    pass


class ZeroEigenvalue(ConstraintViolation):
    pass


class ZeroC(ConstraintViolation):
    pass


class SingularTau(ConstraintViolation):
    def __init__(self, index, message=None):
        self.index = index
        super().__init__(
            f"tau_{index} invertible",
            message or f"image of tau_{index} is singular",
        )


class NotCommuting(SBRepError, ValueError):
    pass


class NotInvertible(SBRepError, ValueError):
    pass


class RelationViolation(SBRepError, ValueError):
    """Raised when constructed images fail the defining relations."""

    def __init__(self, violations):
        self.violations = list(violations)
        tags = ", ".join(v.label for v in self.violations)
        super().__init__(f"relations violated: {tags}")


class FormulaInconsistent(SBRepError, ValueError):
    """Published closed-form entries disagree with the relation solution."""

    def __init__(self, deviations, solved):
        self.deviations = dict(deviations)
        self.solved = solved
        names = ", ".join(sorted(self.deviations))
        super().__init__(f"published coefficients deviate from relation solution: {names}")
