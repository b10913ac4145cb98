"""Exception hierarchy.

Two families: :class:`ValidationError` for bad input or configuration and
:class:`NumericalError` for pathologies hit while fitting. The CLI maps them
to exit codes 1 and 2.
"""


class McprofileError(Exception):
    """Base class for all anticipated errors raised by this package."""


class ValidationError(McprofileError, ValueError):
    pass


class NumericalError(McprofileError, ArithmeticError):
    pass


class MissingHeader(ValidationError):
    pass


class MalformedRow(ValidationError):
    def __init__(self, line, detail=""):
        self.line = line
        super().__init__(f"line {line}: {detail}" if detail else f"line {line}")


class NonFiniteValue(ValidationError):
    def __init__(self, line, detail=""):
        self.line = line
        super().__init__(f"line {line}: {detail}" if detail else f"line {line}")


class TooFewPoints(ValidationError):
    def __init__(self, k, minimum=5):
        self.k = k
        super().__init__(f"{k} profile points; at least {minimum} required")


class InvalidConfidence(ValidationError):
    pass


class InvalidConfig(ValidationError):
    pass


class SpanTooSmall(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class DegenerateNeighborhood(NumericalError):
    pass


class SingularLocalFit(NumericalError):
    pass


class SingularDesign(NumericalError):
    pass


class InsufficientDof(NumericalError):
    pass


class NonConcaveFit(NumericalError):
    pass


class ZeroCurvature(NumericalError):
    pass


class OptimizationFailure(NumericalError):
    pass


class ReplicateFailureRate(McprofileError):
    """Too many replicates of a coverage study failed.

    The partially aggregated report is attached as ``report``.
    """

    def __init__(self, report, message):
        self.report = report
        super().__init__(message)
