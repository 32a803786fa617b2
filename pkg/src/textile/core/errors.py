"""
Exceptions raised by the textile core.

Every error derives from TextileError, itself a ValueError, so callers
that only care about "bad input" can catch ValueError. The CLI maps
TextileError to exit status 2.
"""


class TextileError(ValueError):
    """Base class for all invalid-input errors of this package."""


class CodeSyntaxError(TextileError):
    """A token of a textile code does not match the grammar."""

    def __init__(self, message: str, token: str, position: int) -> None:
        self.token = token
        self.position = position
        super().__init__(f"{message}: {token!r} at offset {position}")


class CodeValidationError(TextileError):
    """A code parses but breaks the abstract-code occurrence rules."""

    def __init__(self, violations: list[str]) -> None:
        self.violations = list(violations)
        super().__init__("invalid textile code: " + "; ".join(self.violations))


class MultiComponentError(TextileError):
    """An operation defined for knots was given a multi-word code."""

    def __init__(self, words: int) -> None:
        self.words = words
        super().__init__(f"expected a single-component code, got {words} words")


class NoCrossingsError(TextileError):
    """An operation needing crossings was given a crossing-free code."""

    def __init__(self) -> None:
        super().__init__("code has no crossings")


class UnknownCrossingError(TextileError):
    def __init__(self, index: int) -> None:
        self.index = index
        super().__init__(f"unknown crossing {index}")


class PolySyntaxError(TextileError):
    """A polynomial string does not match the polynomial grammar."""

    def __init__(self, message: str, position: int) -> None:
        self.position = position
        super().__init__(f"{message} at offset {position}")


class InvalidBoundError(TextileError):
    def __init__(self, bound: int) -> None:
        self.bound = bound
        super().__init__(f"unit search bound must be >= 1, got {bound}")


class InvalidEnumSpecError(TextileError):
    pass


class CatalogError(TextileError):
    """A catalog file is malformed or written with another schema version."""

    def __init__(self, path: str, line: int | None, message: str) -> None:
        self.path = path
        self.line = line
        where = f"{path} line {line}" if line is not None else path
        super().__init__(f"{where}: {message}")


class TableError(TextileError):
    pass
