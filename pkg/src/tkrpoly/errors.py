"""Exception hierarchy.

Every error carries a short machine-readable ``code`` (the class name) which
the command line front-end prints on stderr.
"""

from __future__ import annotations


class TkrError(Exception):
    """Base class for all library errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


class InvalidComplex(TkrError, ValueError):
    pass


class DimensionMismatch(InvalidComplex):
    pass


class BoundarySquareNonzero(InvalidComplex):
    def __init__(self, degree: int, row: int, col: int, value: int):
        self.degree = degree
        self.row = row
        self.col = col
        self.value = value
        super().__init__(
            f"D[{degree - 1}]*D[{degree}] has entry {value} at ({row}, {col})"
            if degree > 1
            else f"augmentation of D[1] is nonzero ({value}) on 1-cell {col}"
        )


class OutOfRange(TkrError, IndexError):
    pass


class TooLarge(TkrError):
    pass


class NotDeletable(TkrError):
    pass


class NotFreeFace(TkrError):
    pass


class UnknownName(TkrError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class AmbiguousName(TkrError):
    pass


class ParseError(TkrError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class NotTopCell(TkrError):
    pass


class NotABasis(TkrError):
    pass


class NotACst(TkrError):
    pass


class NotApc(TkrError):
    pass


class RangeError(TkrError):
    pass


class NotApplicable(TkrError):
    pass


class InvalidDualPair(TkrError, ValueError):
    pass


class NonApcWarning(UserWarning):
    """Raised as a warning when tree counts are requested on a non-APC complex."""
