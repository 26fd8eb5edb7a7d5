"""Exception hierarchy.

Every failure mode that a caller may want to branch on gets its own class;
generic misuse (bad types, malformed input) raises the base CurveLctError.
"""

from __future__ import annotations


class CurveLctError(Exception):
    """Base class for all library errors."""


class PolyParseError(CurveLctError):
    """Polynomial text did not match the term grammar."""


class ZeroPolynomial(CurveLctError):
    """Operation requires a nonzero polynomial."""


class ZeroReciprocal(CurveLctError):
    """Reciprocal of 0 in the extended value space."""


class NotUnibranchTangentCone(CurveLctError):
    """Tangent cone is not a power of a single linear form over the base field."""

    def __init__(self, msg: str, splits: bool = False):
        super().__init__(msg)
        # True when the cone visibly factors into >= 2 distinct directions
        # over the base field (so the curve is reducible, not just irrational).
        self.splits = splits


class NotWeierstrass(CurveLctError):
    """f is not a Weierstrass polynomial in y (monic, f(0, y) = y^deg)."""


class NotMonic(CurveLctError):
    """Key-polynomial division requires a monic divisor in y."""


class NotNormalized(CurveLctError):
    """Valuation or SKP is not in normalized presentation."""


class ViolatesS1(CurveLctError):
    """SKP candidate breaks U_0 = x, U_1 = y."""


class ViolatesS2(CurveLctError):
    """SKP candidate breaks the value relations."""


class ViolatesS3(CurveLctError):
    """SKP candidate breaks the key-polynomial recursion."""


class NonMinimalN(CurveLctError):
    """Key polynomial was built with a non-minimal exponent."""


class ExponentOutOfRange(CurveLctError):
    """Mixed-radix exponent vector out of its box constraints."""


class ReducibleInput(CurveLctError):
    """Curve is not analytically irreducible (certificate failure)."""


class NeedsFieldExtension(CurveLctError):
    """A required root lives outside the base field."""

    def __init__(self, msg: str, minimal_poly: str | None = None):
        super().__init__(msg)
        self.minimal_poly = minimal_poly


class MultipleRoots(CurveLctError):
    """More than one candidate root where exactly one was expected."""


class SmoothBranch(CurveLctError):
    """Formula refused on a smooth branch (override with allow_smooth)."""


class InternalMismatch(CurveLctError):
    """Two routes that must agree disagreed; indicates a bug."""


class DegenerateSegment(CurveLctError):
    """Profile minimum undefined on a single-point segment."""


class IndexOutOfRange(CurveLctError):
    """SKP level index outside the valid range."""


class LemmaViolated(CurveLctError):
    """A proven inequality failed on the given data (upstream bug)."""


class NotAdjacent(CurveLctError):
    """Satellite blow-up requested at divisors that do not intersect."""


class FareyMismatch(CurveLctError):
    """Chart-computed invariant disagrees with the Farey weight."""


class FieldRootNeeded(CurveLctError):
    """A blow-up center requires a tangent direction outside the base field."""


class NonSquareFree(CurveLctError):
    """Resolution input has a repeated factor."""


class BlowupLimitExceeded(CurveLctError):
    """Resolution did not terminate within the blow-up budget."""
