"""Exception hierarchy shared by the whole package."""


class AvsymError(Exception):
    """Base class for all library errors."""


class InfiniteCokernel(AvsymError):
    """Raised when a cokernel is requested for a singular square matrix."""


class SourceTargetMismatch(AvsymError):
    """Composition of maps whose endpoints do not line up."""


class NotAnIsogeny(AvsymError):
    """A lattice map with zero determinant where an isogeny is required."""


class DimensionMismatch(AvsymError):
    """Objects living on incompatible varieties or of incompatible sizes."""


class DegeneratePairing(AvsymError):
    """A nondegenerate pairing was required but not supplied."""


class NotIsotropic(AvsymError):
    """A subgroup expected to be isotropic for the relevant form is not."""


class NotSymmetric(AvsymError):
    """A graph construction needs a symmetric map and got something else."""


class NotDivisible(AvsymError):
    """A multiplier that must be divisible by the torsion order is not."""


class InfiniteIntersection(AvsymError):
    """Two sublattices meet in positive rank where a finite group was needed.

    Carries the rank of the lattice intersection in ``rank``.
    """

    def __init__(self, rank, message=None):
        self.rank = rank
        super().__init__(message or f"intersection has positive rank {rank}")


class SearchExhausted(AvsymError):
    """A bounded search ran out of candidates.

    Carries the exhausted bound in ``bound``.
    """

    def __init__(self, bound, message=None):
        self.bound = bound
        super().__init__(message or f"search exhausted up to bound {bound}")


class NotSymplecticIso(AvsymError):
    """The supplied morphism is not a unimodular multiplier-1 isometry."""


class TheoremViolation(AvsymError):
    """An internally guaranteed structural property failed.

    This signals a bug in the implementation or its conventions, never a
    property of valid input data.
    """


class ParseError(AvsymError):
    """Malformed instance document."""

    def __init__(self, message, location=None):
        self.location = location
        super().__init__(message if location is None else f"{location}: {message}")


class ValidationError(AvsymError):
    """Well-formed instance document with invalid content."""

    def __init__(self, message, location=None):
        self.location = location
        super().__init__(message if location is None else f"{location}: {message}")
