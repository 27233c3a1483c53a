"""Exception hierarchy shared by all nyq modules."""


class NyqError(Exception):
    """Base class for all errors raised by this package."""


class VariantMismatchError(NyqError):
    """Index values from incompatible ring instances were combined."""


class BasisMismatchError(NyqError):
    """Exponential polynomials over different frequency bases were mixed."""


class DegenerateBoundaryError(NyqError):
    """A zero, pole or sample came within tolerance of the test boundary.

    The quantity being decided (winding number, invertibility) is
    numerically meaningless in this situation, so we refuse rather
    than guess.
    """


class NeedsRefinementError(NyqError):
    """Adjacent curve samples are too far apart to unwrap the phase."""


class UnresolvedError(NyqError):
    """An adaptive computation hit its sample or iteration budget.

    ``last_estimate`` carries the best value obtained before giving up,
    or None if nothing usable was computed.
    """

    def __init__(self, message, last_estimate=None):
        super().__init__(message)
        self.last_estimate = last_estimate


class PossiblyNotInvertibleError(NyqError):
    """Samples came close enough to zero that invertibility is in doubt."""


class IllPosedLoopError(NyqError):
    """det(I - CP) vanishes identically; the feedback loop is ill posed."""


class InvalidFactorizationError(NyqError):
    """A claimed coprime factorization failed its Bezout verification."""


class MembershipError(NyqError):
    """An element does not belong to the ring it was used with."""


class DimensionError(NyqError):
    """Matrix dimensions are inconsistent."""


class UnsupportedRingError(NyqError):
    """The requested operation is not available for this ring."""


class ProblemFormatError(NyqError):
    """A problem file or inline expression could not be parsed."""
