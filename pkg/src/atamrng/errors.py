"""Exception hierarchy shared by the whole package."""


class AtamError(Exception):
    """Base class for all package-specific errors."""


class InvalidSystemError(AtamError):
    """A tile system violates a structural invariant (bad glue refs, unstable seed...)."""


class OccupiedPositionError(AtamError):
    """An operation targeted a position that already holds a tile."""


class IllegalAttachmentError(AtamError):
    """Attachment attempted outside the frontier (too little bond strength, or occupied)."""


class NotASuccessorError(AtamError):
    """Transition probability requested between assemblies that are not one attachment apart."""


class ConcentrationError(AtamError):
    """A concentration map is malformed: non-positive weight or missing tile type."""


class PartitionError(AtamError):
    """A terminal assembly is unlabeled, or labeled with more than one outcome."""


class TruncationError(AtamError):
    """Exploration hit the space bound with growth remaining and truncation was disallowed."""


class ResourceBoundError(AtamError):
    """The global state-count cap (ATAMRNG_MAX_STATES) was exceeded."""


class NonTerminatingChainError(AtamError):
    """A front chain has states from which termination is unreachable."""


class NotTwoChoiceError(AtamError):
    """An operation requires a unidirectional two-choice linear system."""


class BuildParameterError(AtamError):
    """A construction was requested with out-of-range parameters."""


class DocumentError(AtamError):
    """A system/concentration/partition document failed to parse or validate."""
