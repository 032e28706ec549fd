"""Exception types shared across the library.

Every error corresponds to a violated precondition or a failed exact
verification; nothing here is a numerical-tolerance condition.
"""


class DmspaceError(Exception):
    """Base class for all library errors."""


class FiniteOrderElement(DmspaceError):
    """An operation required an element of infinite order."""


class InfiniteIndex(DmspaceError):
    """The subgroup does not have finite index."""


class DegenerateList(DmspaceError):
    """The character list does not span the ambient space."""


class UnpointedCone(DmspaceError):
    """No linear functional is strictly positive on the given vectors."""


class TorsionPresent(DmspaceError):
    """The operation requires a torsion-free group."""


class NonGeneric(DmspaceError):
    """No generic vector was found within the deterministic retry budget."""


class ZeroBarElement(DmspaceError):
    """A list element projects to zero where a nonzero image is required."""


class FaceVanishes(DmspaceError):
    """The face functional vanishes on an element it must separate."""


class EmptyStep(DmspaceError):
    """A flag step contains no element crossing the smaller subspace."""


class ConvolutionDiverges(DmspaceError):
    """No support certificate guarantees finite convolution fibers."""


class UndeterminedValue(DmspaceError):
    """A table-backed function was evaluated outside its known window."""


class WindowTooSmall(DmspaceError):
    """The verification window cannot certify the requested property."""


class NotInDM(DmspaceError):
    """Membership in the difference-equation solution space failed."""


class NotInF(DmspaceError):
    """Membership in the support-filtered function space failed."""


class ComponentNotInDM(DmspaceError):
    """An extracted component failed its membership verification."""


class FitInconsistent(DmspaceError):
    """A fitted quasi-polynomial disagreed with held-out exact counts."""


class SolveFailed(DmspaceError):
    """An exact linear solve that must succeed did not; signals a bug."""
