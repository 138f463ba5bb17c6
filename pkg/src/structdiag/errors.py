"""Exception hierarchy for structdiag.

All library errors derive from StructDiagError so callers can catch the
whole family at once; the CLI maps subfamilies onto exit codes.
"""


class StructDiagError(Exception):
    """Base class for all structdiag errors."""


class DimensionMismatch(StructDiagError):
    """Operands have incompatible shapes."""


class InvalidSize(StructDiagError):
    """A size parameter is out of range (e.g. n < 1)."""


class SingularMatrix(StructDiagError):
    """A linear solve hit a numerically singular coefficient matrix."""


class RankDeficient(StructDiagError):
    """Columns expected to be independent are numerically dependent."""


class NoConvergence(StructDiagError):
    """The eigensolver failed to converge."""


class NotStructured(StructDiagError):
    """The matrix does not carry the requested structure.

    Carries the offending residual in ``residual`` when known.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class InertiaMismatch(StructDiagError):
    """Congruence requested between matrices of different inertia."""


class SpectrumNotConjugateSymmetric(StructDiagError):
    """An eigenvalue has no conjugate partner of equal multiplicity."""


class NotDiagonalizable(StructDiagError):
    """Geometric multiplicity below algebraic multiplicity detected."""


class NotStructuredDiagonalizable(StructDiagError):
    """The balance condition fails; no automorphism can diagonalize.

    The full diagnosis is attached as ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotLagrangianFrame(StructDiagError):
    """A frame fails orthonormality or neutrality preconditions.

    ``failed`` names the violated condition, ``residual`` its magnitude.
    """

    def __init__(self, message, failed=None, residual=None):
        super().__init__(message)
        self.failed = failed
        self.residual = residual


class NotNeutral(StructDiagError):
    """A span expected to be neutral has a nonzero Gram matrix."""


class FrameTooLarge(StructDiagError):
    """A neutral frame with more than n columns cannot exist in C^(2n)."""


class NotNormal(StructDiagError):
    """The matrix does not commute with its Hermitian transpose."""


class NotAnnihilating(StructDiagError):
    """N and its form-adjoint fail the two-sided product-zero condition."""


class NotNeutralRange(StructDiagError):
    """The column space of N is not neutral for the given form."""


class SingularInput(StructDiagError):
    """A nonsingular matrix was required."""


class NumericalBreakdown(StructDiagError):
    """A constructed factor failed its own residual guarantee."""


class ParseError(StructDiagError):
    """A matrix file or CLI input could not be parsed."""
