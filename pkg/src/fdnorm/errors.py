"""Exception types raised across fdnorm."""

from __future__ import annotations


class FDNormError(Exception):
    """Base class for every error raised by this package."""


class SchemaError(FDNormError, ValueError):
    """A schema failed validation.

    ``issues`` holds every violation found, not just the first one.
    """

    def __init__(self, issues):
        self.issues = tuple(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


class SizeLimitExceeded(FDNormError):
    def __init__(self, what: str, size: int, bound: int):
        self.what = what
        self.size = size
        self.bound = bound
        super().__init__(f"{what}: {size} attributes exceeds the configured bound of {bound}")


class AssumptionViolated(FDNormError):
    """The schema is outside the single-table, single two-part key setup."""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


class VariantInapplicable(FDNormError):
    pass


class CyclicCover(FDNormError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("minimal cover has a cyclic determinant graph through " + " -> ".join(self.cycle))


class DecompositionError(FDNormError, ValueError):
    pass


class NotAttributePreserving(DecompositionError):
    def __init__(self, missing):
        self.missing = tuple(sorted(missing))
        super().__init__("decomposition does not cover attributes: " + ", ".join(self.missing))


class ParseError(FDNormError, ValueError):
    """Syntax error in a schema or decomposition file, with a 1-based position."""

    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found
        msg = f"line {line}, col {col}: expected {expected}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)


class DuplicateAttributesLine(ParseError):
    def __init__(self, line: int, first_line: int):
        self.first_line = first_line
        super().__init__(line, 1, f"a single 'attributes:' line (first one on line {first_line})", "attributes:")


class UnknownAttributeError(ParseError):
    def __init__(self, line: int, col: int, name: str):
        self.name = name
        super().__init__(line, col, "a declared attribute", name)
