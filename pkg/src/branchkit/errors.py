"""Exception hierarchy.

The three base classes map onto CLI exit codes: invalid input (1),
violated hypothesis (2), internal consistency failure (3).
"""


class BranchkitError(Exception):
    exit_code = 1
    field_path = None   # location in an instance file, when known


class InvalidInput(BranchkitError, ValueError):
    exit_code = 1


class HypothesisViolated(BranchkitError):
    exit_code = 2

    def __init__(self, message, flags=None):
        super().__init__(message)
        self.flags = dict(flags or {})


class ConsistencyFailure(BranchkitError):
    """A relation proved in theory failed; indicates a bug, never bad input."""

    exit_code = 3


class UnsupportedType(InvalidInput):
    pass


class DimensionBound(InvalidInput):
    pass


class DimensionMismatch(InvalidInput):
    pass


class AmbientMismatch(InvalidInput):
    pass


class ShapeMismatch(InvalidInput):
    pass


class NotContained(InvalidInput):
    pass


class NotSubalgebra(InvalidInput):
    pass


class NotStable(InvalidInput):
    pass


class CoordinateMismatch(InvalidInput):
    pass


class BasisMismatch(InvalidInput):
    pass


class NotDominant(InvalidInput):
    pass


class NotAutomorphism(InvalidInput):
    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class NotInvolutive(InvalidInput):
    pass


class NonCommuting(InvalidInput):
    pass


class NotThetaFixed(InvalidInput):
    pass


class NotInCartan(InvalidInput):
    pass


class ParseError(InvalidInput):
    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class BudgetExceeded(BranchkitError):
    exit_code = 3


class DegenerateSplit(ConsistencyFailure):
    pass


class CertificationFailed(ConsistencyFailure):
    pass


class CriteriaDisagree(ConsistencyFailure):
    pass


class EqualityViolated(ConsistencyFailure):
    pass
