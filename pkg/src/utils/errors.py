"""Exception types shared across the toolkit."""

from typing import Optional


class GraphValidationError(ValueError):
    """Input does not describe a finite simple connected signed graph."""


class GraphFormatError(GraphValidationError):
    """An edge-list or vertex-function file could not be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class DomainError(ValueError):
    """A linearized p-Laplacian quantity was requested outside its domain (1 < p < 2)."""

    def __init__(self, vertex: str, neighbor: str, p: float):
        self.vertex = vertex
        self.neighbor = neighbor
        self.p = p
        super().__init__(
            f"signed difference vanishes on edge {{{vertex}, {neighbor}}}; "
            f"linearized operators need nonzero differences for 1 < p < 2 (p={p})"
        )


class SizeLimitError(ValueError):
    """An exact enumeration was requested on an input above its configured size limit."""

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: size {size} exceeds limit {limit}")


class ConvergenceError(RuntimeError):
    """A numerical solver did not produce a usable result within its budget."""


class BracketError(ValueError):
    """Curvature bisection found K outside its search bracket."""


class HypothesisError(ValueError):
    """A theorem precondition that makes the check meaningless is violated."""
