from typing import Optional


class PathExError(Exception):
    """
    Base exception for all pathex errors. All errors that occur within pathex inherit
    from this base class.
    """


class CapacityError(PathExError):
    """
    Exception raised when a graph would exceed the supported vertex capacity.
    """


class GraphFormatError(PathExError):
    """
    Exception raised when a graph6 line or edge list cannot be parsed. ``offset`` is
    the zero-based byte offset (graph6) or the one-based line number (edge list) of
    the offending input.
    """

    def __init__(self, message: str, offset: int):
        self.message = message
        self.offset = offset
        super().__init__(message, offset)

    def __str__(self) -> str:
        return f"{self.message} (at offset {self.offset})"


class DomainError(PathExError, ValueError):
    """
    Exception raised when an argument violates the precondition of an operation.
    ``clause`` names the violated condition.
    """

    def __init__(self, message: str, clause: Optional[str] = None):
        self.message = message
        self.clause = clause
        super().__init__(message, clause)

    def __str__(self) -> str:
        if self.clause:
            return f"{self.message} [violates: {self.clause}]"
        return self.message


class SearchIndeterminateError(PathExError):
    """
    Exception raised when the detector exhausts its search budget before reaching a
    verdict. ``nodes`` is the number of search nodes spent.
    """

    def __init__(self, message: str, nodes: int):
        self.message = message
        self.nodes = nodes
        super().__init__(message, nodes)

    def __str__(self) -> str:
        return f"{self.message}: indeterminate after {self.nodes} nodes"


class ScaleRefusalError(PathExError):
    """
    Exception raised when the oracle is asked for an instance beyond its gate.
    """


class CertificationError(PathExError):
    """
    Exception raised on an internal inconsistency: a construction that fails its
    freeness certificate, a witness that does not embed, or two closed forms that
    disagree. This error indicates a bug.
    """
