"""Exception hierarchy."""


class PoissonPagesError(Exception):
    pass


class SchemaError(PoissonPagesError):
    """Malformed algebra-spec or element JSON."""


class ValidationFailure(PoissonPagesError):
    """The algebra data violates a Lie-algebra or complex-structure axiom."""


class BadJ(ValidationFailure):
    pass


class JacobiFailure(ValidationFailure):
    pass


class NonIntegrable(ValidationFailure):
    pass


class DegreeMismatch(PoissonPagesError, ValueError):
    pass


class SideMismatch(PoissonPagesError, ValueError):
    pass


class UnsupportedPair(PoissonPagesError, ValueError):
    pass


class NotPoisson(PoissonPagesError):
    pass


class SquareZeroViolation(PoissonPagesError):
    """A double-complex identity failed; indicates an internal sign bug."""


class ChainMapViolation(PoissonPagesError):
    pass


class NotACycle(PoissonPagesError, ValueError):
    pass


class NotE2Class(PoissonPagesError, ValueError):
    pass


class NoneFound(UserWarning):
    """Rejection sampling exhausted its budget without filling the request."""
