"""Exception hierarchy shared by the algebra, geometry, forms and analysis packages."""

from typing import Optional


class SchurKitError(Exception):
    """Base class for every error raised by the library."""


class InvalidPartitionError(SchurKitError, ValueError):
    """A partition is malformed or has a part larger than the rank."""


class RankMismatchError(SchurKitError, ValueError):
    """Two Chern polynomials (or series) live in rings of different rank."""


class NonHomogeneousError(SchurKitError, ValueError):
    """A weighted-homogeneous input was required."""


class DegreeMismatchError(SchurKitError, ValueError):
    """A class or product does not have the degree an operation needs."""


class ParseError(SchurKitError, ValueError):
    """Raised by the bundle DSL and the expression grammar.

    Attributes:
        position: Zero-based character offset of the offending token
        token: The offending token text (empty at end of input)
    """

    def __init__(self, message: str, position: int, token: Optional[str] = None):
        self.position = position
        self.token = token if token is not None else ""
        shown = repr(self.token) if self.token else "end of input"
        super().__init__(f"{message} at position {position} (token {shown})")


class UnknownGeneratorError(ParseError):
    """A twist or expression names a generator the variety does not have."""


class UnsupportedBundleError(SchurKitError):
    """The requested bundle construction is not available on this variety."""


class MissingConeDataError(SchurKitError):
    """The variety model carries no pseudo-effective / nef ray data."""


class FormError(SchurKitError, ValueError):
    """A (p,q)-form has the wrong bidegree or is not real."""
