"""Exception types shared across the package.

Every domain failure raises a subclass of LrcError so callers (CLI,
service) can map error families to exit codes / HTTP statuses without
string matching.
"""


class LrcError(Exception):
    """Base class for all lrckit errors."""


class NotPrimePower(LrcError):
    """Requested field size is not p^m for a prime p."""


class TooLarge(LrcError):
    """Requested object exceeds the supported size cap."""


class FieldMismatch(LrcError):
    """Arithmetic attempted between elements of different fields."""


class DivisionByZero(LrcError, ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


class DuplicateNode(LrcError):
    """Evaluation nodes passed to a Vandermonde builder are not distinct."""


class LengthMismatch(LrcError):
    """Sequence lengths do not agree (message vs dimension, nodes vs values)."""


class InvalidParams(LrcError):
    """Code parameters violate a feasibility constraint (named in the message)."""


class RankDeficient(LrcError):
    """A matrix that must have full row rank does not."""


class CapExceeded(LrcError):
    """Exhaustive enumeration was requested beyond the configured cap."""


class TooManyErasuresInGroup(LrcError):
    """A repair group has fewer survivors than local recovery needs."""


class NotErased(LrcError):
    """Repair requested at a position that still holds its symbol."""


class CodeFileError(LrcError):
    """Code spec file is malformed or internally inconsistent."""
