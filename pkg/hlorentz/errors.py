"""
Errors - exception hierarchy shared by the algebra kernel, the CLI and the API
"""

from typing import Optional, Sequence


class HLorentzError(Exception):
    """Base class for every error raised by hlorentz."""


class ScalarDivisionError(HLorentzError, ZeroDivisionError):
    pass


class ShapeError(HLorentzError, ValueError):
    pass


class SingularMatrixError(HLorentzError):
    """The Bareiss pivot (the leading minor through this column) is identically zero."""

    def __init__(self, column: int, pivot: str, previous: str):
        self.column = column
        self.pivot = pivot
        self.previous = previous
        super().__init__(
            f"singular matrix: pivot polynomial of column {column + 1} vanishes "
            f"(pivot {pivot}, previous pivot {previous})"
        )


class UnknownNameError(HLorentzError, KeyError):
    def __init__(self, kind: str, name: str, known: Sequence[str] = ()):
        self.kind = kind
        self.name = name
        message = f"unknown {kind} '{name}'"
        if known:
            message += f" (known: {', '.join(known)})"
        super().__init__(message)

    def __str__(self) -> str:
        return self.args[0]


class OrientationError(HLorentzError):
    pass


class RewriteDepthError(HLorentzError):
    def __init__(self, word: str, budget: int):
        self.word = word
        self.budget = budget
        super().__init__(
            f"rewrite depth {budget} exceeded while reducing {word}"
        )


class StarError(HLorentzError):
    pass


class TruncationError(HLorentzError, ValueError):
    def __init__(self, order: int, needed: int, step: Optional[str] = None):
        self.order = order
        self.needed = needed
        where = f" for {step}" if step else ""
        super().__init__(f"truncation order {order} too small{where}; need N >= {needed}")


class ParameterError(HLorentzError, ValueError):
    """A user-supplied value (h, r, zeta, length) that is not an exact number."""
