"""Exception hierarchy."""


class TorquotError(Exception):
    """Base class for all library errors."""


class RankMismatch(TorquotError, ValueError):
    pass


class NonPrimitiveSublattice(TorquotError, ValueError):
    pass


class NotContained(TorquotError, ValueError):
    pass


class InvalidQuasifan(TorquotError, ValueError):
    pass


class InvalidFan(TorquotError, ValueError):
    pass


class ConeNotInFan(TorquotError, ValueError):
    pass


class WrongCodimension(TorquotError, ValueError):
    pass


class NotStrictlyConvex(TorquotError, ValueError):
    pass


class MismatchedQuotient(TorquotError, ValueError):
    pass


class NotEquivariant(TorquotError, ValueError):
    pass


class NotAMapOfFans(TorquotError):
    """An induced map failed verification; indicates a bug, not bad input."""


class AmbiguousMaximalFace(TorquotError):
    pass


class InternalInvariantViolation(TorquotError, AssertionError):
    """A proven invariant failed at runtime."""


class InvalidMap(TorquotError, ValueError):
    """A user-supplied lattice map is not a map of the given fans."""


class DocumentError(TorquotError, ValueError):
    """A document could not be parsed or fails its schema."""
