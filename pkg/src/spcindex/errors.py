"""Exception types shared across the package."""

from __future__ import annotations

COUNT_MAX = (1 << 64) - 1


class EdgeListParseError(ValueError):
    """Raised when an edge-list line cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CountOverflowError(ArithmeticError):
    """A shortest-path count no longer fits in 64 unsigned bits.

    ``pair`` names the (source, target) vertices whose count overflowed;
    ids are whatever space the raising routine works in (rank positions
    for label construction, original ids for queries).
    """

    def __init__(self, pair: tuple[int, int], context: str = ""):
        self.pair = pair
        msg = f"shortest-path count overflows uint64 for pair {pair}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


def checked(value: int, pair: tuple[int, int], context: str = "") -> int:
    if value > COUNT_MAX:
        raise CountOverflowError(pair, context)
    return value


class IndexFormatError(ValueError):
    """Base class for index files that cannot be loaded."""


class BadMagicError(IndexFormatError):
    pass


class UnsupportedVersionError(IndexFormatError):
    pass


class ChecksumError(IndexFormatError):
    pass


class TruncatedIndexError(IndexFormatError):
    pass


class OracleBoundError(ValueError):
    """The graph is too large for the brute-force oracles."""
