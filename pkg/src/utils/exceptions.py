"""Custom exceptions for the Hecke engine."""


class HeckeEngineError(Exception):
    """Base exception for the Hecke engine."""

    def __init__(self, message: str, errorCode: str | None = None) -> None:
        """Initialize exception with message and optional error code."""
        super().__init__(message)
        self.message = message
        self.errorCode = errorCode or "UNKNOWN_ERROR"


class ParseError(HeckeEngineError):
    """Exception raised when an input document cannot be parsed."""

    def __init__(self, message: str, location: str | None = None) -> None:
        """Initialize parse error with the offending location."""
        super().__init__(message, "PARSE_ERROR")
        self.location = location


class ValidationError(HeckeEngineError):
    """Exception raised when an object violates one of its axioms."""

    def __init__(self, message: str, axiom: str | None = None) -> None:
        """Initialize validation error with the violated axiom."""
        super().__init__(message, "VALIDATION_ERROR")
        self.axiom = axiom


class InvalidLieActionError(ValidationError):
    """Exception raised when a Lie action is not bracket compatible."""

    def __init__(self, message: str, axiom: str | None = None) -> None:
        """Initialize invalid action error."""
        super().__init__(message, axiom)
        self.errorCode = "INVALID_LIE_ACTION"


class NotASubspaceError(HeckeEngineError):
    """Exception raised when a containment of subspaces fails."""

    def __init__(self, message: str, vector: tuple | None = None) -> None:
        """Initialize containment error with the witnessing vector."""
        super().__init__(message, "NOT_A_SUBSPACE")
        self.vector = vector


class DegreeOutOfRangeError(HeckeEngineError):
    """Exception raised when (co)homology is requested outside the honest range."""

    def __init__(self, message: str, degree: int | None = None) -> None:
        """Initialize range error with the requested degree."""
        super().__init__(message, "DEGREE_OUT_OF_RANGE")
        self.degree = degree


class WindowUnderflowError(HeckeEngineError):
    """Exception raised when an operation needs components beyond the window."""

    def __init__(self, message: str, requiredDegree: int | None = None) -> None:
        """Initialize underflow error with the missing source degree."""
        super().__init__(message, "WINDOW_UNDERFLOW")
        self.requiredDegree = requiredDegree


class UnstableTruncationError(HeckeEngineError):
    """Exception raised when truncated dims change between windows."""

    def __init__(
        self, message: str, degrees: list[int] | None = None, window: int | None = None
    ) -> None:
        """Initialize truncation error with the unstable degrees."""
        super().__init__(message, "UNSTABLE_TRUNCATION")
        self.degrees = degrees or []
        self.window = window


class NotAHomotopyEquivalenceError(HeckeEngineError):
    """Exception raised when transport data fails the homotopy identities."""

    def __init__(self, message: str, degree: int | None = None) -> None:
        """Initialize homotopy error with the failing degree."""
        super().__init__(message, "NOT_A_HOMOTOPY_EQUIVALENCE")
        self.degree = degree


class RankMismatchError(HeckeEngineError):
    """Exception raised when Clifford elements of different rank are combined."""

    def __init__(self, message: str, ranks: tuple[int, int] | None = None) -> None:
        """Initialize rank mismatch error."""
        super().__init__(message, "RANK_MISMATCH")
        self.ranks = ranks


class ResolutionError(HeckeEngineError):
    """Exception raised when a resolution cannot be built, lifted or used."""

    def __init__(self, message: str, degree: int | None = None) -> None:
        """Initialize resolution error with the failing degree."""
        super().__init__(message, "RESOLUTION_ERROR")
        self.degree = degree


class ConsistencyError(HeckeEngineError):
    """Exception raised when an exact internal identity fails."""

    def __init__(self, message: str, check: str | None = None) -> None:
        """Initialize consistency error with the failing check."""
        super().__init__(message, "CONSISTENCY_ERROR")
        self.check = check


class ExportError(HeckeEngineError):
    """Exception raised when a report cannot be rendered or written."""

    def __init__(self, message: str) -> None:
        """Initialize export error."""
        super().__init__(message, "EXPORT_ERROR")
