"""Exception hierarchy shared by every module of the package."""


class GeometryError(Exception):
    """Base class for all errors raised by pltopo."""


class PreconditionError(GeometryError, ValueError):
    """An operation was called outside its documented domain."""


class EmptyInput(PreconditionError):
    pass


class DegeneratePiece(PreconditionError):
    """Two consecutive corners of a PL path coincide."""


class NotClosed(PreconditionError):
    pass


class EndpointMismatch(PreconditionError):
    pass


class ValidationError(GeometryError, ValueError):
    """A value failed a structural check; ``violation`` carries the witness."""

    def __init__(self, message, violation=None):
        super().__init__(message)
        self.violation = violation


class PointNotOnCircuit(PreconditionError):
    pass


class PointOnCurve(PreconditionError):
    pass


class OutsideStrip(PreconditionError):
    pass


class EmptyStrip(PreconditionError):
    pass


class CornerProbe(PreconditionError):
    pass


class ProbeCrossesCurve(PreconditionError):
    pass


class DeltaExhausted(GeometryError):
    pass


class NoChord(PreconditionError):
    pass


class RoutingFailed(GeometryError):
    pass


class NotDisjoint(GeometryError):
    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class MandatoryOffCurve(PreconditionError):
    pass


class WrongGraph(PreconditionError):
    pass


class InvalidDrawing(PreconditionError):
    def __init__(self, message, violation=None):
        super().__init__(message)
        self.violation = violation


class CertificateFailure(GeometryError):
    pass


class ParseError(GeometryError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column
