"""Valuative-tree invariants of SKP-described valuations.

Skewness, multiplicity, thinness, approximating sequences, tree meets,
the thin-discrepancy-over-skewness profile, and the valuation-theoretic
log canonical threshold formula for one branch.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .arith import ExtRat, Field, INF, ext_min
from .errors import (
    DegenerateSegment,
    IndexOutOfRange,
    InternalMismatch,
    NeedsFieldExtension,
    NotNormalized,
    NotUnibranchTangentCone,
    NotWeierstrass,
    ReducibleInput,
    SmoothBranch,
    ZeroPolynomial,
)
from .poly import (
    BivarPoly,
    Transform,
    intersection_multiplicity,
    is_weierstrass,
    normalize_coordinates,
    ord_m,
)
from .skp import (
    Skp,
    ValuationDescriptor,
    curve_descriptor,
    make_descriptor,
    skp_from_curve,
)


def ord_m_descriptor(F: Field) -> ValuationDescriptor:
    """The root of the tree: the multiplicity valuation ord_m."""
    skp = Skp((BivarPoly.var_x(F), BivarPoly.var_y(F)), (ExtRat(1), ExtRat(1)), (), (), ())
    return make_descriptor(skp)


def vhat_x(F: Field) -> ValuationDescriptor:
    """The curve semivaluation of the x-axis, v(x) = inf, v(y) = 1."""
    skp = Skp((BivarPoly.var_x(F), BivarPoly.var_y(F)), (INF, ExtRat(1)), (), (), ())
    return ValuationDescriptor(skp, "curve", Fraction(1))


def _require_normalized(v: ValuationDescriptor) -> None:
    if not v.is_normalized:
        raise NotNormalized(f"descriptor has v(m) = {ext_min(v.skp.values[0], v.skp.values[1])}")


def skewness(v: ValuationDescriptor) -> ExtRat:
    """alpha(v) = beta_0 * beta_k / deg_y U_k; infinite for curves."""
    _require_normalized(v)
    skp = v.skp
    d_k = skp.d(skp.k)
    return skp.values[0] * skp.values[-1] * ExtRat(Fraction(1, d_k))


def multiplicity(v: ValuationDescriptor) -> int:
    """m(v) = deg_y U_k."""
    return v.skp.d(v.skp.k)


@dataclass(frozen=True)
class ApproxSequence:
    """Divisorial stages where multiplicity jumps, ending at v itself.

    stages[i] = (valuation, mult on the segment ending there, skewness).
    """

    stages: Tuple[Tuple[ValuationDescriptor, int, ExtRat], ...]

    @property
    def mults(self) -> Tuple[int, ...]:
        return tuple(m for _, m, _ in self.stages)

    @property
    def skews(self) -> Tuple[ExtRat, ...]:
        return tuple(t for _, _, t in self.stages)


def approximating_sequence(v: ValuationDescriptor) -> ApproxSequence:
    """Stages ord_m = v_0 < v_1 < ... < v, one per multiplicity jump."""
    _require_normalized(v)
    skp = v.skp
    F = skp.field
    root = ord_m_descriptor(F)
    stages: List[Tuple[ValuationDescriptor, int, ExtRat]] = [(root, 1, ExtRat(1))]
    if skewness(v) == ExtRat(1):
        return ApproxSequence(tuple(stages))
    for j in range(1, skp.k):
        if skp.n[j - 1] > 1:
            stage = make_descriptor(skp.prefix(j))
            stages.append((stage, skp.d(j), skewness(stage)))
    stages.append((v, skp.d(skp.k), skewness(v)))
    return ApproxSequence(tuple(stages))


def thinness(v: ValuationDescriptor) -> ExtRat:
    """A(v) = 2 + sum of m_j * (t_j - t_{j-1}) over the stages."""
    seq = approximating_sequence(v)
    total = Fraction(2)
    prev = Fraction(1)
    for _, mult, t in seq.stages[1:]:
        if t.is_infinite:
            return INF
        total += mult * (t.value - prev)
        prev = t.value
    return ExtRat(total)


def tree_meet(v: ValuationDescriptor, w: ValuationDescriptor) -> ValuationDescriptor:
    """Greatest lower bound in the tree: longest common prefix, clamped.

    At level 1 (monomial valuations) the meet is the componentwise minimum
    of the weight vectors; deeper, the SKPs share a structural prefix and
    the meet truncates there with the smaller continuation value.
    """
    _require_normalized(v)
    _require_normalized(w)
    a, b = v.skp, w.skp
    if a.values[0] != b.values[0]:
        # one of the two leans toward the x-axis; they part at level 1
        skp = Skp(
            (BivarPoly.var_x(a.field), BivarPoly.var_y(a.field)),
            (ext_min(a.values[0], b.values[0]), ext_min(a.values[1], b.values[1])),
            (),
            (),
            (),
        )
        return make_descriptor(skp)
    L = 1
    while (
        L < a.k
        and L < b.k
        and a.keys[L + 1] == b.keys[L + 1]
        and a.values[L] == b.values[L]
    ):
        L += 1
    mval = ext_min(a.values[L], b.values[L])
    return make_descriptor(a.prefix(L, last=mval))


def skewness_product_check(v: ValuationDescriptor, g: BivarPoly) -> ExtRat:
    """v(g) computed as alpha(v meet v_g) * ord_m(g); g one branch."""
    if g.is_zero:
        raise ZeroPolynomial("skewness product on zero")
    F = g.field
    if set(g.terms) == {(1, 0)}:
        w = vhat_x(F)
        mult = 1
    else:
        w = curve_descriptor(g)
        mult = ord_m(g)
    return skewness(tree_meet(v, w)) * mult * ExtRat(v.scale)


def point_at_skewness(v: ValuationDescriptor, s: Fraction) -> ValuationDescriptor:
    """The unique point with skewness s on the segment [ord_m, v]."""
    _require_normalized(v)
    s = Fraction(s)
    if s < 1:
        raise IndexOutOfRange(f"skewness {s} below the root value 1")
    skp = v.skp
    if s == 1:
        return ord_m_descriptor(skp.field)
    for j in range(1, skp.k + 1):
        top = skp.values[j] * ExtRat(Fraction(1, skp.d(j)))
        if ExtRat(s) <= top:
            return make_descriptor(skp.prefix(j, last=ExtRat(s * skp.d(j))))
    raise IndexOutOfRange(f"skewness {s} exceeds alpha(v) = {skewness(v)}")


def a_over_alpha_minimum(v: ValuationDescriptor) -> Tuple[ValuationDescriptor, ExtRat]:
    """The first divisorial stage v_1 and the minimum 1 + 1/alpha(v_1).

    The thinness-over-skewness profile decreases strictly until v_1 and
    increases after it, so the minimum over [ord_m, v] sits at v_1.
    """
    seq = approximating_sequence(v)
    if len(seq.stages) < 2:
        raise DegenerateSegment("profile minimum undefined at the root alone")
    v1, _, alpha1 = seq.stages[1]
    return v1, ExtRat(1) + alpha1.reciprocal()


@dataclass(frozen=True)
class FormulaResult:
    """Outcome of the valuation-theoretic LCT formula."""

    lct: Fraction
    vfx: ExtRat
    vfy: ExtRat
    skp: Skp
    transforms: Tuple[Transform, ...]
    smooth: bool = False

    def to_json(self) -> dict:
        F = self.skp.field
        out = {
            "lct": str(self.lct),
            "vfx": str(self.vfx),
            "vfy": str(self.vfy),
            "skp": self.skp.to_json(),
            "method": "formula",
        }
        if self.transforms:
            out["transforms"] = [t.to_json(F) for t in self.transforms]
        if self.smooth:
            out["warning"] = "smooth branch: formula value is not the germ LCT"
        return out


def lct_formula(f: BivarPoly, allow_smooth: bool = False) -> FormulaResult:
    """LCT of one branch as 1/v_f(x) + 1/v_f(y).

    Normalizes coordinates, runs the SKP extraction (which certifies the
    branch is irreducible), and cross-checks the reciprocal sum against the
    closed form (1/deg_y)(1 + beta_0/beta_1); any disagreement between the
    two expressions raises InternalMismatch.
    """
    if f.is_zero:
        raise ZeroPolynomial("lct of the zero polynomial")
    try:
        fn, transforms = normalize_coordinates(f)
    except NotUnibranchTangentCone as exc:
        if exc.splits:
            raise ReducibleInput(f"several tangent directions: {exc}") from exc
        raise NeedsFieldExtension(f"tangent direction outside the base field: {exc}") from exc
    F = fn.field
    lead = fn.y_coeffs()[fn.deg_y] if fn.deg_y >= 0 else []
    if len(lead) == 1 and lead[0] != F.one:
        fn = fn.scale(F.inv(lead[0]))  # unit rescaling; same curve germ
    mult = ord_m(fn)
    if mult == 1 and not allow_smooth:
        raise SmoothBranch(
            "smooth branch: the formula returns a value above the germ LCT 1; "
            "pass allow_smooth to evaluate it anyway"
        )
    if not is_weierstrass(fn):
        raise NotWeierstrass(f"{fn} is not a Weierstrass polynomial after normalization")
    skp = skp_from_curve(fn)
    vfx = intersection_multiplicity(fn, BivarPoly.var_x(F))
    vfy = intersection_multiplicity(fn, BivarPoly.var_y(F))
    lct_ext = vfx.reciprocal() + vfy.reciprocal()
    lct = lct_ext.value
    beta1 = skp.values[1]
    closed = (ExtRat(1) + beta1.reciprocal()) * ExtRat(Fraction(1, max(fn.deg_y, 1)))
    if ExtRat(lct) != closed:
        raise InternalMismatch(
            f"reciprocal sum {lct} disagrees with the closed form {closed}"
        )
    return FormulaResult(lct, vfx, vfy, skp, tuple(transforms), smooth=(mult == 1))
