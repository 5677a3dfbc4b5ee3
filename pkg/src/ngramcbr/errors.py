"""Exception hierarchy shared by the loaders, the index and the CLI."""

from __future__ import annotations


class NgramCbrError(Exception):
    """Base class for every error raised by this package."""


class DataError(NgramCbrError):
    """Input data (lexicons, case base, index) could not be used."""


class ParseError(DataError):
    def __init__(self, path, line: int, message: str):
        self.path = str(path)
        self.line = line
        super().__init__(f"{self.path}:{line}: {message}")


class ValidationError(DataError):
    pass


class IndexFormatError(DataError):
    pass


class StaleIndexError(DataError):
    def __init__(self, what: str):
        super().__init__(
            f"index was built with a different {what}; re-run `ngramcbr index`"
        )


class NoContentError(NgramCbrError):
    """Every query token was removed by the filters; nothing left to match."""
