"""Exception hierarchy.

Every error carries a stable ``code`` (the class name) so the CLI can emit
machine-readable {code, message} objects.
"""


class KleinianError(Exception):
    """Base class for all library errors."""

    @property
    def code(self):
        return type(self).__name__


# curve
class DegreeError(KleinianError):
    """Leading coefficients f_5 = f_6 = 0: not a degree-5/6 polynomial."""


class RepeatedRootError(KleinianError):
    """Root separation below the admissibility threshold."""


class ConvergenceError(KleinianError):
    """Iterative refinement failed to reach the requested residual."""


class SpecialDivisorError(KleinianError):
    """Divisor of the form (P) + (JP); xi_11 has a genuine pole there."""


class InfinitePointError(KleinianError):
    """Operation requires affine points."""


class DiagonalError(KleinianError):
    """Operation requires x_1 != x_2."""


# integration / periods
class DegenerateGeometryError(KleinianError):
    """Branch-point layout defeats the path heuristics."""


class QuadratureError(KleinianError):
    """Node doubling failed to converge."""


class SheetTrackingError(KleinianError):
    """Square-root continuation could not be kept unambiguous."""


class RiemannMatrixError(KleinianError):
    """No cycle labeling produced a certified period matrix."""


class DeltaAmbiguityError(KleinianError):
    """Zero or several candidates passed the vanishing certificate."""


class NewtonDivergence(KleinianError):
    """Newton refinement left the basin of every seed."""


class IllConditionedLatticeError(KleinianError):
    """Lattice generator Gram matrix is numerically singular."""


# theta
class TruncationRadiusError(KleinianError):
    """Required summation radius exceeds the hard cap."""


# kleinian
class NormalizationError(KleinianError):
    """Taylor-jet cross-check failed while fixing the normalization."""


class OnThetaDivisorError(KleinianError):
    """Evaluation point is on (or too close to) a zero divisor of S."""


class RootSelectionAmbiguity(KleinianError):
    """Cubic root disambiguation found no unique admissible branch."""


class OnSigmaDivisorError(KleinianError):
    """sigma vanishes here; logarithmic derivatives are undefined."""


class NotWeierstrassFormError(KleinianError):
    """sigma family requires f_6 = 0 and f_5 = 4."""


class SignResolutionError(KleinianError):
    """No y-sign assignment survives the round-trip test."""
