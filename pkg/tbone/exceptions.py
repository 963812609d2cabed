"""Errors raised by the toolkit. Everything derives from TboneError."""


class TboneError(Exception):
    """Base class for toolkit errors."""


class GraphFormatError(TboneError, ValueError):
    """Malformed graph, instance or decomposition text."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SelfLoopError(GraphFormatError):
    """An edge joins a vertex to itself."""


class NotAnEdgeError(TboneError):
    """The requested pair is not an edge of the graph."""


class DisconnectedGraphError(TboneError):
    """The operation requires a connected graph."""


class InvalidDecompositionError(TboneError):
    """A decomposition fails validation where a valid one is required."""

    def __init__(self, report):
        super().__init__(f"{report.axiom}: {report.detail}")
        self.report = report


class PreconditionError(TboneError):
    """An input breaks a documented precondition."""


class LimitExceededError(TboneError):
    """An exhaustive search was asked to run above its size limit."""

    def __init__(self, what, size, limit):
        super().__init__(f"{what}: size {size} exceeds limit {limit}")
        self.size = size
        self.limit = limit


class NotPlanarError(PreconditionError):
    """The graph has no plane embedding."""


class NotBipartiteError(PreconditionError):
    """The graph has an odd cycle."""


class NotChordalError(PreconditionError):
    """The graph has a chordless cycle of length at least four."""


class NotMinimalSeparatorError(PreconditionError):
    """The vertex set is not a minimal separator."""


class BetweennessViolation(TboneError):
    """An ordering puts the middle element of a triple outside its ends."""

    def __init__(self, triple):
        super().__init__(f"ordering violates triple {tuple(triple)}")
        self.triple = tuple(triple)


class SandwichStructureError(TboneError):
    """A sandwich instance or sandwich graph does not have the required shape."""


class CertificateError(TboneError):
    """Rebuilding a star-decomposition from a recognizer run failed."""


class RecognitionError(TboneError):
    """The planar step machine reached a state its case analysis rules out."""
