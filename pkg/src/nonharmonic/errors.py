"""Exception types raised by the recovery pipeline."""


class NonharmonicError(Exception):
    """Base class for all library-specific errors."""


class DuplicateFrequencyError(NonharmonicError):
    """Two terms share the same (kind, frequency) pair."""


class QuadratureNoConvergenceError(NonharmonicError):
    """Adaptive quadrature exhausted its evaluation budget."""


class PeriodicTermError(NonharmonicError):
    """A trig term with freq * period integral has no rational coefficient form."""


class InsufficientDataError(NonharmonicError):
    """Too few Fourier coefficients for the requested operation."""


class DegenerateWeightsError(NonharmonicError):
    """The weight solve produced a numerically zero weight vector."""


class AllWeightsPrunedError(NonharmonicError):
    """Weight pruning removed every support point."""


class PoleHitError(NonharmonicError):
    """Barycentric denominator vanishes at a non-support point."""


class ComplexPoleError(NonharmonicError):
    """A finite generalized eigenvalue has a non-negligible imaginary part."""


class WrongPoleCountError(NonharmonicError):
    """Finite eigenvalue count of the pole pencil differs from support size - 1."""


class KernelNotOneDimensionalError(NonharmonicError):
    """The interpolation kernel system is not uniquely solvable."""


class InvalidTripleError(NonharmonicError):
    """A partial-fraction triple (A, B, C) violates the model constraints."""


class PeriodicPoleError(NonharmonicError):
    """A recovered pole C > 0 has sqrt(C) at an integer, which the rational model excludes."""


class MissingC0Error(NonharmonicError):
    """Constant extraction requires the index-0 coefficient."""


class TermCountMismatchError(NonharmonicError):
    """Two models being compared have different term counts."""
