"""Exception hierarchy shared by all modules."""


class GraphProductError(Exception):
    """Base class for every error raised by graphprod."""


class PreconditionViolation(GraphProductError, ValueError):
    pass


class SpecMismatch(GraphProductError, ValueError):
    pass


class UnknownVertex(GraphProductError, KeyError):
    pass


class GraphMismatch(GraphProductError, ValueError):
    pass


class NotADivisor(GraphProductError, ValueError):
    pass


class TraceOverflow(GraphProductError, OverflowError):
    """Raised when a trace exceeds the configured syllable cap."""


class BadComponent(GraphProductError, IndexError):
    pass


class NotFactorable(GraphProductError):
    pass


class FactorizationFailure(GraphProductError, AssertionError):
    """Internal consistency check failed; indicates a theory/implementation mismatch."""


class WitnessFailure(GraphProductError, AssertionError):
    """A constructed orthogonality witness did not verify."""


class Unsupported(GraphProductError):
    pass


class ScaleAbsent(GraphProductError):
    pass


class NotInImage(GraphProductError, ValueError):
    pass


class BudgetExceeded(GraphProductError):
    pass


class ParseError(GraphProductError, ValueError):
    pass
