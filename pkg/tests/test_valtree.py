"""Tree invariants: skewness, multiplicity, thinness, meets, the
profile minimum, and the valuation-theoretic LCT formula."""

import random
from fractions import Fraction

import pytest

from curvelct import (
    ExtRat,
    INF,
    QQ,
    a_over_alpha_minimum,
    approximating_sequence,
    curve_descriptor,
    lct_formula,
    make_descriptor,
    multiplicity,
    ord_m_descriptor,
    parse_poly,
    point_at_skewness,
    skewness,
    skewness_product_check,
    skp_from_curve,
    skp_valuation,
    thinness,
    tree_meet,
    vhat_x,
)
from curvelct.errors import ReducibleInput, SmoothBranch

from helpers import CORPUS, corpus_poly

TWO_PAIR = "(y^2 - x^3)^2 - x^5*y"


def _stages(text):
    f = corpus_poly("q", text)
    return approximating_sequence(curve_descriptor(f))


def test_root_invariants():
    root = ord_m_descriptor(QQ)
    assert skewness(root) == ExtRat(1)
    assert multiplicity(root) == 1
    assert thinness(root) == ExtRat(2)


def test_cusp_invariants():
    f = corpus_poly("q", "y^2 - x^3")
    v = curve_descriptor(f)
    assert skewness(v) == INF
    assert multiplicity(v) == 2
    seq = approximating_sequence(v)
    # multiplicity along the segment ending at each stage: 1 up to the
    # divisorial point v_1, then 2 on the way to the curve
    assert seq.mults == (1, 1, 2)
    assert seq.skews == (ExtRat(1), ExtRat(Fraction(3, 2)), INF)
    v1 = seq.stages[1][0]
    # the divisorial point where the cusp branch leaves the monomial locus
    assert skewness(v1) == ExtRat(Fraction(3, 2))
    assert thinness(v1) == ExtRat(Fraction(5, 2))


def test_two_pair_approximating_sequence():
    seq = _stages(TWO_PAIR)
    assert seq.mults == (1, 1, 2, 4)
    assert [str(t) for t in seq.skews] == ["1", "3/2", "13/8", "inf"]
    # thinness along the stages: 2, 5/2, 11/4, then infinite at the curve
    descs = [s[0] for s in seq.stages]
    assert [str(thinness(d)) for d in descs] == ["2", "5/2", "11/4", "inf"]
    # the level-2 divisorial point just below the curve
    f = corpus_poly("q", TWO_PAIR)
    skp = skp_from_curve(f)
    v2 = make_descriptor(skp.prefix(2))
    assert skewness(v2) == ExtRat(Fraction(13, 8))
    assert thinness(v2) == ExtRat(Fraction(11, 4))


def test_point_at_skewness_round_trip():
    f = corpus_poly("q", TWO_PAIR)
    v = curve_descriptor(f)
    for s in (Fraction(1), Fraction(5, 4), Fraction(3, 2), Fraction(8, 5), Fraction(13, 8), Fraction(4)):
        w = point_at_skewness(v, s)
        assert skewness(w) == ExtRat(s)


def test_tree_meet_laws():
    rng = random.Random(5)
    curves = ["y^2 - x^3", "y^3 - x^4", TWO_PAIR, "y^2 - x^7", "y - x^2", "y^3 - x^5"]
    descs = []
    for text in curves:
        f = corpus_poly("q", text)
        descs.append(curve_descriptor(f))
        skp = skp_from_curve(f)
        if skp.k >= 2:
            # a divisorial point strictly above the last internal step
            top = skp.values[skp.k - 1] * ExtRat(skp.n[skp.k - 2]) + ExtRat(1)
            descs.append(make_descriptor(skp.prefix(skp.k, last=top)))
    descs.append(ord_m_descriptor(QQ))
    descs.append(vhat_x(QQ))
    for _ in range(60):
        u, v, w = (rng.choice(descs) for _ in range(3))
        muv = tree_meet(u, v)
        assert tree_meet(v, u).skp.values == muv.skp.values  # commutative
        assert skewness(muv) <= skewness(u) or skewness(u) == INF
        # associativity of the meet, compared through skewness and values
        a = tree_meet(tree_meet(u, v), w)
        b = tree_meet(u, tree_meet(v, w))
        assert a.skp.values == b.skp.values
        assert a.skp.keys == b.skp.keys


def test_tree_meet_known_points():
    cusp = curve_descriptor(corpus_poly("q", "y^2 - x^3"))
    two = curve_descriptor(corpus_poly("q", TWO_PAIR))
    m = tree_meet(cusp, two)
    # the branches share the key y^2 - x^3 up to its two-pair value 13/4,
    # consistent with the intersection number 13 = (13/8) * 4 * 2
    assert skewness(m) == ExtRat(Fraction(13, 8))
    other = curve_descriptor(corpus_poly("q", "y^3 - x^4"))
    m2 = tree_meet(cusp, other)
    assert skewness(m2) == ExtRat(Fraction(4, 3))
    # a curve tangent to the x-axis meets v_y-like branches at the root level
    assert skewness(tree_meet(cusp, vhat_x(QQ))) == ExtRat(1)


def test_skewness_product_identity():
    rng = random.Random(13)
    for text in ("y^2 - x^3", TWO_PAIR, "y^3 - x^5"):
        f = corpus_poly("q", text)
        v = curve_descriptor(f)
        for gtext in ("x", "y", "y - x^2", "y^2 - x^3 + x^4"):
            g = parse_poly(QQ, gtext)
            if g == f:
                continue
            assert skewness_product_check(v, g) == skp_valuation(v, g)


def test_profile_minimum_two_pair():
    f = corpus_poly("q", TWO_PAIR)
    v1, minimum = a_over_alpha_minimum(curve_descriptor(f))
    assert skewness(v1) == ExtRat(Fraction(3, 2))
    assert minimum == ExtRat(1) + ExtRat(Fraction(3, 2)).reciprocal()
    assert minimum == ExtRat(Fraction(5, 3))


def test_lct_formula_corpus():
    for spec in ("q", "fp:7", "fp:101"):
        for text, expected in CORPUS:
            out = lct_formula(corpus_poly(spec, text))
            assert out.lct == expected, f"{text} over {spec}"


def test_lct_formula_shifted_coordinates():
    # x <-> y swap and a shear must not change the threshold
    f = corpus_poly("q", "x^2 - y^3")
    assert lct_formula(f).lct == Fraction(5, 6)
    g = corpus_poly("q", "(y - x)^2 - x^7")
    assert lct_formula(g).lct == Fraction(9, 14)


def test_lct_formula_guards():
    with pytest.raises(SmoothBranch):
        lct_formula(corpus_poly("q", "y - x^2"))
    out = lct_formula(corpus_poly("q", "y - x^2"), allow_smooth=True)
    assert out.lct == Fraction(3, 2)
    assert out.smooth
    with pytest.raises(ReducibleInput):
        lct_formula(corpus_poly("q", "y^2 - x^2"))
    with pytest.raises(ReducibleInput):
        lct_formula(corpus_poly("q", "x*y"))
