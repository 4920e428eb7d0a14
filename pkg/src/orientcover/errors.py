"""Exception types shared across the toolkit."""


class GraphToolkitError(Exception):
    """Base class for every error raised by this package."""


class UnknownVertexError(GraphToolkitError):
    pass


class UnknownEdgeError(GraphToolkitError):
    pass


class GraphTooLargeError(GraphToolkitError):
    pass


class FormatError(GraphToolkitError):
    """Malformed textual input (edge lists, JSON payloads)."""


class Graph6FormatError(FormatError):
    """graph6 data that is malformed or not a simple graph."""


class PreconditionError(GraphToolkitError):
    """An operation's stated precondition failed; the message names it."""


class NotEulerianError(PreconditionError):
    pass


class NotStronglyConnectedError(PreconditionError):
    pass


class NotThreeEdgeColorableError(PreconditionError):
    pass


class SearchExhaustedError(GraphToolkitError):
    """A bounded search ran out of budget; distinct from a definitive 'no'."""


class InternalVerificationError(GraphToolkitError):
    """A construction with a proven guarantee failed its own check."""


class CertificateMismatchError(GraphToolkitError):
    """A certificate references a different graph than the one supplied."""
