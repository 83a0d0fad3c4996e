"""Exception hierarchy shared by every kszl module.

The CLI maps ``InputError`` to exit code 2, ``BudgetError`` to 3 and
``CheckFailed`` to 1.
"""


class KszlError(Exception):
    pass


class InputError(KszlError):
    pass


class BudgetError(KszlError):
    pass


class CheckFailed(KszlError):
    """A verification ran to completion and produced a negative verdict."""


# exact arithmetic

class ZeroInverse(InputError, ZeroDivisionError):
    pass


class NotInvertible(InputError, ArithmeticError):
    pass


class DimensionMismatch(InputError, ValueError):
    pass


class InvalidField(InputError, ValueError):
    pass


# parsing

class DSLSyntaxError(InputError):
    def __init__(self, message, line=0, col=0):
        super().__init__(f"{message} (line {line}, col {col})")
        self.line = line
        self.col = col


class NonQuadraticRelation(InputError):
    pass


class InhomogeneousRelation(InputError):
    pass


class UnknownGenerator(InputError):
    pass


class UnknownAlgebra(InputError):
    pass


class NonLinearImage(InputError):
    pass


class NameCollision(InputError):
    pass


# engine / resolution

class BudgetExceeded(BudgetError):
    pass


class DegreeOverflow(InputError):
    pass


# maps and constructions

class RelationNotPreserved(CheckFailed):
    def __init__(self, index, message=None):
        super().__init__(message or f"relation {index} is not mapped into the target relation space")
        self.index = index


class RelationDimMismatch(CheckFailed):
    pass


class NotAnAutomorphism(InputError):
    pass


class VerificationFailed(CheckFailed):
    pass


class NotFrobenius(CheckFailed):
    pass


class TruncationTooShallow(InputError):
    pass


class NotFiniteDimensional(InputError):
    pass


class ZeroParameter(InputError):
    pass
