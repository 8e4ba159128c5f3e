"""Exception hierarchy shared by all cswalls modules.

Every domain-level failure derives from CswallsError so the CLI can map
them uniformly to exit code 1 (usage errors are exit code 2).
"""


class CswallsError(Exception):
    """Base class for all domain errors raised by this package."""


class GenusOutOfRange(CswallsError):
    """Genus outside the range required by the requested operation."""


class DomainError(CswallsError):
    """Argument outside the mathematical domain of the operation."""


class NotExceptional(CswallsError):
    """Mutation attempted through a class e with chi(e, e) != 1."""


class ZeroRank(CswallsError):
    """Projection or ray requested for a rank-zero class."""


class ZeroAlpha(CswallsError):
    """Ray slope parameter alpha must be nonzero."""


class NegativeAlpha(CswallsError):
    """The slope parameter alpha must be >= 0."""


class InvalidEnvelope(CswallsError):
    """Envelope data violating the piecewise-linear model invariants."""


class ZeroCharge(CswallsError):
    """A charge value that must be nonzero vanished."""


class LowerHalfPlane(CswallsError):
    """Charge lies outside the closed upper half plane convention."""


class DegenerateFrame(CswallsError):
    """The two frame charges are linearly dependent over the reals."""


class WrongOrientation(CswallsError):
    """Frame orientation incompatible with an orientation-preserving map."""


class InconsistentLift(CswallsError):
    """A supplied phase lift disagrees with the direction of its charge."""


class NotAboveEnvelope(CswallsError):
    """Support-form center does not lie strictly above the upper envelope."""


class MixedOwnership(CswallsError):
    """Walls passed to a chamber decomposition belong to another class."""


class IoError(CswallsError):
    """Failure writing an output artifact."""
