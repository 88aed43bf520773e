"""Exception hierarchy shared by all modules.

Two broad classes matter for the CLI: validation errors (malformed or
inconsistent input data, exit code 2) and precondition violations (valid
data fed to an operation outside its domain, exit code 3).
"""


class ToolkitError(Exception):
    """Base class; carries the CLI exit code."""

    exit_code = 2


class ValidationError(ToolkitError):
    exit_code = 2


class PreconditionError(ToolkitError):
    exit_code = 3


# --- parsing / plumbing ---------------------------------------------------

class ParseError(ValidationError):
    def __init__(self, message, line=1, col=0):
        super().__init__(f"{message} (line {line}, col {col})")
        self.line = line
        self.col = col


class FieldMismatch(ValidationError):
    pass


class RingMismatch(ValidationError):
    pass


class VariableMismatch(ValidationError):
    pass


class VariableClash(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class BadExponent(ValidationError):
    pass


class UnsupportedTower(ValidationError):
    pass


class DivisionByZero(PreconditionError):
    pass


# --- algebra validation ---------------------------------------------------

class NotCommutative(ValidationError):
    def __init__(self, i, j):
        super().__init__(f"basis product b{i}*b{j} differs from b{j}*b{i}")
        self.indices = (i, j)


class NotAssociative(ValidationError):
    def __init__(self, i, j, l):
        super().__init__(f"(b{i}*b{j})*b{l} differs from b{i}*(b{j}*b{l})")
        self.indices = (i, j, l)


class BadUnit(ValidationError):
    pass


class BadAugmentation(ValidationError):
    def __init__(self, i, detail=""):
        msg = f"augmentation fails multiplicativity at basis index {i}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.index = i


class BasisNotNormalized(ValidationError):
    pass


class InternalInconsistency(ToolkitError):
    """Two methods that must agree disagreed; a bug trap, never user error."""

    exit_code = 1


# --- operator / scheme preconditions --------------------------------------

class NonLocalFractionUnsupported(PreconditionError):
    pass


class NotInvertible(PreconditionError):
    pass


class PreconditionViolated(PreconditionError):
    pass


class NotAConstant(PreconditionError):
    pass


class AlreadyPthPower(PreconditionError):
    pass


class NotConstantInput(PreconditionError):
    def __init__(self, i):
        super().__init__(f"input vector {i} is not a constant vector")
        self.index = i


class PointNotOnVariety(PreconditionError):
    pass


class PrimalityNotAsserted(PreconditionError):
    pass


class BadEmbedding(PreconditionError):
    pass


class TooLarge(PreconditionError):
    pass


class BudgetExceeded(PreconditionError):
    pass
