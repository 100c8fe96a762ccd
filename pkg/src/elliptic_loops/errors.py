"""Exception types shared across the package.

Every precondition failure raises one of these instead of returning a
sentinel, so callers can distinguish "computed false" from "not allowed
to ask".
"""


class EllipticLoopError(Exception):
    """Base class for all package errors."""


class NonUnit(EllipticLoopError):
    """Inversion was requested for an element of the maximal ideal."""


class NotPrimitive(EllipticLoopError):
    """A projective triple had no unit coordinate."""


class SingularCurve(EllipticLoopError):
    """The discriminant -(4A^3 + 27B^2) is not a unit."""


class EvenOrder(EllipticLoopError):
    """The residue curve has even order, so halving is not available."""


class DegenerateSum(EllipticLoopError):
    """The addition law produced a non-primitive triple.

    This cannot happen for points of a validated loop; seeing it means a
    caller fed coordinates that are not a loop point.
    """


class HessianNotUnit(EllipticLoopError):
    """Stratification was requested at a point whose Hessian value is not
    invertible (the point sits over residue 3-torsion)."""


class NilpotencyTooHigh(EllipticLoopError):
    """An operation that needs a small nilpotency degree was called on a
    ring whose maximal ideal is nilpotent of too high an order."""


class PreconditionUnmet(EllipticLoopError):
    """A documented hypothesis of the requested computation fails."""
