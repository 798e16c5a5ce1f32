"""Exception types raised across mbkit."""


class MBKitError(Exception):
    """Base class for all library errors."""


class PreconditionError(MBKitError, ValueError):
    """An input violates an operation's precondition."""


class GuardError(PreconditionError):
    """An exact combinatorial search was asked to run beyond its size guard."""


class Graph6Error(MBKitError, ValueError):
    """Malformed graph6 text."""


class RotationError(MBKitError):
    """No orthogonal matrix with the required nonvanishing products was found."""


class ConstructionError(MBKitError):
    """A construction could not produce a matrix with the required pattern."""


class CertificationError(MBKitError):
    """A matrix failed one of the certificate invariants.

    ``report`` carries the failing pattern report and/or partition so callers
    can show exactly what went wrong.
    """

    def __init__(self, message, report=None, partition=None):
        super().__init__(message)
        self.report = report
        self.partition = partition
