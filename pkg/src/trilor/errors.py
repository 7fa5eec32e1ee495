"""Exception types raised across the package."""


class TrilorError(Exception):
    """Base class for all package errors."""


class DomainError(TrilorError):
    """Input outside the documented parameter domain."""


class ZeroState(TrilorError):
    """State vector with (numerically) vanishing norm."""


class SingularOperator(TrilorError):
    """Local operator is not invertible."""


class NotHermitian(TrilorError):
    """Matrix fails the hermiticity precondition."""


class NoConvergence(TrilorError):
    """Iterative kernel exhausted its sweep budget."""


class NonHermitianInput(TrilorError):
    """Density matrix input is not Hermitian."""


class ComplexSpectrum(TrilorError):
    """A spectrum that must be real came out complex; bad input upstream."""


class NotUnitDeterminant(TrilorError):
    """Operator determinant is not 1."""


class DegenerateNormalization(TrilorError):
    """A normalization denominator vanished."""


class KempeInconsistent(TrilorError):
    """The three permutation expressions of the degree-6 invariant disagree."""


class BridgeViolation(TrilorError):
    """A spectral identity between the two computation routes failed."""


class PermutationAsymmetry(TrilorError):
    """A pair-independent quantity came out pair-dependent."""


class RouteMismatch(TrilorError):
    """Operator-trace route and bilinear-form route disagree."""


class ReductionFailure(TrilorError):
    """Canonical-form reduction failed post-verification."""


class NotCaseI(TrilorError):
    """Operation requires a timelike-dominant (case I) spectrum."""


class NotCaseII(TrilorError):
    """Operation requires a null-dominant (case II) spectrum."""


class DegenerateFrame(TrilorError):
    """Zero-norm direction met while building a pseudo-orthonormal frame."""
