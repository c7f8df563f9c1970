"""Exception hierarchy.

``ValidationError`` covers rejected inputs (CLI exit code 2);
``NumericalError`` covers internal numerical failures (CLI exit code 3).
"""

from __future__ import annotations


class QbornError(Exception):
    pass


class ValidationError(QbornError):
    pass


class NumericalError(QbornError):
    pass


class DimMismatchError(ValidationError):
    pass


class NotHermitianError(ValidationError):
    pass


class NotCommutingError(ValidationError):
    pass


class NoConvergenceError(NumericalError):
    pass


class NotProjectorError(ValidationError):
    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"matrix {index} is not a projector")


class NotOrthogonalError(ValidationError):
    def __init__(self, i: int, j: int, message: str = ""):
        self.i = i
        self.j = j
        super().__init__(message or f"projectors {i} and {j} are not orthogonal")


class NotCompleteError(ValidationError):
    pass


class NonIntegerTraceError(ValidationError):
    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"projector {index} has a non-integer trace")


class IndexOutOfRangeError(ValidationError):
    pass


class TypeMismatchError(ValidationError):
    pass


class NotComparableError(ValidationError):
    pass


class RankNotOneError(ValidationError):
    pass


class NonRealTraceError(ValidationError):
    pass


class ZeroVectorError(ValidationError):
    pass


class ZeroMassError(ValidationError):
    pass


class UnknownPointError(ValidationError):
    pass


class TargetMismatchError(ValidationError):
    pass


class MissingAssignmentError(ValidationError):
    pass


class NotInContextError(ValidationError):
    pass


class NotUnitError(ValidationError):
    pass


class NotTraceOneProjectorError(ValidationError):
    pass
