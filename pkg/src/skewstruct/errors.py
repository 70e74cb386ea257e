"""Exception types shared across the package."""


class SkewstructError(Exception):
    """Base class for all library errors."""


class ShapeMismatch(SkewstructError):
    """Operands have incompatible dimensions or grades."""


class GradeTooSmall(SkewstructError):
    """A declared grade is smaller than the actual degree."""


class NotSkewSymmetric(SkewstructError):
    """Input violates the skew-symmetry invariant."""


class FlavorMismatch(SkewstructError):
    """A block list of the wrong flavor was supplied."""


class ParamDomain(SkewstructError):
    """Parameters violate the domain constraints of a formula."""


class ZeroRank(SkewstructError):
    """Operation undefined for rank-zero input."""


class EvenGrade(SkewstructError):
    """The skew pencil template exists for odd grade only; pad first."""


class MissingBlocks(SkewstructError):
    """A rewriting rule consumes blocks that are not present."""


class SideConditionViolated(SkewstructError):
    """Rule parameters violate the rule's side conditions."""


class PairingBroken(SkewstructError):
    """Result of a paired application is not realizable as a skew form."""


class UnsupportedBlocks(SkewstructError):
    """Block combination outside the implemented codimension fragment."""


class AttemptsExhausted(SkewstructError):
    """A resampling loop hit its attempt cap."""


class RankVerificationFailed(SkewstructError):
    """Floating-point rank check could not confirm the expected rank."""


class InternalInconsistency(SkewstructError):
    """Cross-validation between two computation paths failed.

    Raised when internally recomputed invariants disagree; always an
    implementation bug, never a user error.
    """
