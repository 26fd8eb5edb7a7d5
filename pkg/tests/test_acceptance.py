"""Acceptance gate: one test per acceptance criterion.

Each test emits exactly one pass/fail line under `pytest -v`.  The
resolution oracle is the ground truth for every threshold value; the
formula and polygon routes are compared against it, never against
hard-coded values alone.
"""

import random
from fractions import Fraction

import pytest

from curvelct import (
    BivarPoly,
    ExtRat,
    MonomialWeights,
    QQ,
    ResolutionTree,
    Skp,
    a_over_alpha_minimum,
    curve_descriptor,
    field_from_spec,
    howald_lct,
    intersection_multiplicity,
    lct_formula,
    lct_monom_closedform,
    lp_vertex_min,
    make_descriptor,
    monomial_valuation,
    newton_polygon,
    parse_poly,
    point_at_skewness,
    quotient_dimension,
    resolution_lct,
    resolve_curve,
    scaled_polygon_check,
    skewness,
    skp_from_curve,
    skp_valuation,
    thinness,
    tree_meet,
)
from curvelct.cli import main as cli_main
from curvelct.errors import SmoothBranch
from curvelct.skp import relation_exponents

from helpers import CORPUS, FIELD_SPECS, corpus_poly, diagonal_oracle, random_branch, random_poly


# -- criterion 1: three-way agreement on the corpus over Q and F_p -------


def test_criterion_01_three_methods_agree_on_corpus():
    checked = 0
    for spec in FIELD_SPECS:
        for text, expected in CORPUS:
            f = corpus_poly(spec, text)
            formula = lct_formula(f).lct
            resolution = resolution_lct(f).lct
            howald = lct_monom_closedform(skp_from_curve(f))
            assert formula == resolution == howald == expected, f"{text} over {spec}"
            checked += 1
    assert checked == len(FIELD_SPECS) * len(CORPUS)


# -- criterion 2: characteristic independence in char 2 and 3 ------------


def test_criterion_02_cusp_char_2_and_3():
    for spec in ("fp:2", "fp:3"):
        f = corpus_poly(spec, "y^2 - x^3")
        assert lct_formula(f).lct == Fraction(5, 6)
        assert resolution_lct(f).lct == Fraction(5, 6)


# -- criterion 3: Farey weights equal chart-algebra invariants -----------


def _random_tree(F, rng, blowups):
    tree = ResolutionTree(F)
    tree.blowup_origin()
    for _ in range(blowups - 1):
        if rng.random() < 0.5 or not tree.adjacency:
            tree.blowup_free(rng.randrange(len(tree.nodes)))
        else:
            pairs = sorted(tuple(sorted(p)) for p in tree.adjacency)
            i, j = rng.choice(pairs)
            tree.blowup_satellite(i, j)
    return tree


def test_criterion_03_farey_weights_on_random_trees():
    rng = random.Random(20260823)
    trees = 0
    for spec in ("q", "fp:7", "fp:101"):
        F = field_from_spec(spec)
        for _ in range(35):
            tree = _random_tree(F, rng, rng.randint(2, 8))
            for n in tree.nodes:
                # both raise FareyMismatch on any disagreement
                assert tree.chart_discrepancy(n.idx) == n.a
                assert tree.pullback_m_order(n.idx) == n.b
            trees += 1
    assert trees >= 100


# -- criterion 4: thinness equals the Farey ratio a/b ---------------------


def _identify_descriptor(tree, idx, curve_skps, rng):
    """The normalized valuation of a divisor, certified by evaluation."""
    F = tree.field
    node = tree.nodes[idx]
    b = node.b
    x, y = BivarPoly.var_x(F), BivarPoly.var_y(F)
    wx = Fraction(tree.node_order(idx, x), b)
    wy = Fraction(tree.node_order(idx, y), b)
    candidates = [make_descriptor(Skp((x, y), (ExtRat(wx), ExtRat(wy)), (), (), ()))]
    for skp in curve_skps:
        for j in range(2, skp.k + 1):
            val = Fraction(tree.node_order(idx, skp.keys[j]), b)
            candidates.append(make_descriptor(skp.prefix(j, last=ExtRat(val))))
    probes = [x, y, y - x, parse_poly(F, "y^2 - x^3"), parse_poly(F, "y^3 - x^4")]
    probes += [random_poly(F, rng, max_deg=5, terms=5) for _ in range(10)]
    for cand in candidates:
        if all(
            skp_valuation(cand, g) == ExtRat(Fraction(tree.node_order(idx, g), b))
            for g in probes
        ):
            return cand
    raise AssertionError(f"divisor E_{idx} (a={node.a}, b={b}) not identified")


def test_criterion_04_thinness_equals_farey_ratio():
    rng = random.Random(44)
    curves = ["y^2 - x^3", "y^3 - x^4", "y^3 - x^5", "y^2 - x^5",
              "(y^2 - x^3)^2 - x^5*y"]
    seen_pairs = set()
    checked = 0
    for text in curves:
        f = corpus_poly("q", text)
        tree = resolve_curve(f)
        skps = [skp_from_curve(f)]
        for n in tree.nodes:
            v = _identify_descriptor(tree, n.idx, skps, rng)
            assert thinness(v) == ExtRat(Fraction(n.a, n.b)), f"{text}: E_{n.idx}"
            seen_pairs.add((n.a, n.b))
            checked += 1
    assert checked >= 10
    for required in ((5, 2), (7, 3), (11, 4)):
        assert required in seen_pairs, f"curated pair {required} missing"


# -- criterion 5: polygon scaling with mutation certificates -------------


def test_criterion_05_polygon_scaling_and_mutations():
    for text, _ in CORPUS:
        skp = skp_from_curve(corpus_poly("q", text))
        for j in range(2, skp.k + 1):
            ok, cert = scaled_polygon_check(skp, j)
            assert ok and cert is None, f"{text} level {j}"
        mutated = skp.keys[skp.k] + BivarPoly(QQ, {(1, 0): QQ.one})
        bad = Skp(skp.keys[:-1] + (mutated,), skp.values, skp.n, skp.m, skp.theta)
        ok, cert = scaled_polygon_check(bad, bad.k)
        assert not ok and cert is not None, f"{text} mutation not certified"


# -- criterion 6: relation linear program ---------------------------------


def _random_valid_skp(rng):
    """Synthetic value data satisfying (S1)-(S2), with y-power dummy keys."""
    F = QQ
    k = rng.randint(3, 4)
    betas = [Fraction(1)]
    ns = []
    d = 1
    n1 = rng.choice([2, 3, 4])
    p = n1 + rng.choice([c for c in range(1, 8) if Fraction(c + n1, n1).denominator == n1])
    betas.append(Fraction(p, n1))
    ns.append(n1)
    d = n1
    for _ in range(k - 2):
        nj = rng.choice([2, 3])
        q = rng.choice([c for c in range(1, 2 * nj) if c % nj != 0])
        nxt = ns[-1] * betas[-1] + Fraction(q, d * nj)
        betas.append(nxt)
        ns.append(nj)
        d *= nj
    keys = [BivarPoly.var_x(F), BivarPoly.var_y(F)]
    deg = 1
    for nj in ns:
        deg *= nj
        keys.append(BivarPoly.monomial(F, 0, deg))
    ms = tuple(relation_exponents(betas, ns[: j - 1], j) for j in range(1, k))
    values = tuple(ExtRat(b) for b in betas)
    return Skp(tuple(keys), values, tuple(ns), ms, tuple(F.one for _ in ms))


def test_criterion_06_lp_vertex_minimum():
    # corpus SKPs: strict bound plus the direct monomial valuation route
    for text, _ in CORPUS:
        skp = skp_from_curve(corpus_poly("q", text))
        w = MonomialWeights(skp.values[0], skp.values[1])
        for j in range(2, skp.k):
            _, best = lp_vertex_min(skp, j)
            bound = skp.values[1].value * skp.d(j + 1)
            assert best > bound
            product = BivarPoly.monomial(QQ, skp.m[j - 1][0], 0)
            for l in range(1, j):
                product = product * skp.keys[l] ** skp.m[j - 1][l]
            assert monomial_valuation(w, product).value > bound
    # random valid SKPs: the vertex enumeration never flags a violation
    rng = random.Random(66)
    count = 0
    while count < 50:
        skp = _random_valid_skp(rng)
        for j in range(2, skp.k):
            vertex, best = lp_vertex_min(skp, j)
            assert best > skp.values[1].value * skp.d(j + 1)
        count += 1


# -- criterion 7: the thin-discrepancy-over-skewness profile -------------


def test_criterion_07_profile_minimum():
    for text, _ in CORPUS:
        f = corpus_poly("q", text)
        v = curve_descriptor(f)
        v1, minimum = a_over_alpha_minimum(v)
        alpha1 = skewness(v1).value
        assert minimum == ExtRat(1) + ExtRat(alpha1).reciprocal()

        def ratio(s):
            w = point_at_skewness(v, s)
            return thinness(w).value / skewness(w).value

        down = [Fraction(1) + (alpha1 - 1) * Fraction(i, 10) for i in range(11)]
        vals = [ratio(s) for s in down]
        assert all(a > b for a, b in zip(vals, vals[1:])), f"{text}: not decreasing"
        up = [alpha1 + Fraction(3 * j, 10) for j in range(10)]
        vals_up = [ratio(s) for s in up]
        assert all(a < b for a, b in zip(vals_up, vals_up[1:])), f"{text}: not increasing"
        assert vals[-1] == vals_up[0] == minimum.value
        # the profile minimum sits at the meet of the branch with the y-axis
        v_y = curve_descriptor(BivarPoly.var_y(QQ))
        meet = tree_meet(v_y, v)
        assert meet.skp.keys == v1.skp.keys
        assert meet.skp.values == v1.skp.values


# -- criterion 8: independent oracles agree --------------------------------


def test_criterion_08_oracle_consistency():
    rng = random.Random(88)
    pairs = 0
    while pairs < 20:
        F = field_from_spec(rng.choice(["q", "fp:7"]))
        f = random_branch(F, rng)
        g = random_branch(F, rng)
        i = intersection_multiplicity(f, g)
        if i.is_infinite or i.value > 12:
            continue
        dim = quotient_dimension(f, g, bound=int(i.value) + 4)
        assert dim == i.value, f"{f} vs {g}"
        pairs += 1
    polygons = 0
    while polygons < 100:
        gens = {(rng.randint(0, 9), rng.randint(0, 9)) for _ in range(rng.randint(1, 6))}
        gens.discard((0, 0))
        if not gens:
            continue
        assert howald_lct(newton_polygon(gens)) == 1 / diagonal_oracle(gens)
        polygons += 1


# -- criterion 9: semivaluation laws ---------------------------------------


def test_criterion_09_semivaluation_laws():
    rng = random.Random(99)
    f_cusp = corpus_poly("q", "y^2 - x^3")
    f_two = corpus_poly("q", "(y^2 - x^3)^2 - x^5*y")
    two_skp = skp_from_curve(f_two)
    descriptors = [
        make_descriptor(Skp((BivarPoly.var_x(QQ), BivarPoly.var_y(QQ)),
                            (ExtRat(1), ExtRat(Fraction(5, 3))), (), (), ())),
        make_descriptor(two_skp.prefix(2)),
        curve_descriptor(f_cusp),
        curve_descriptor(f_two),
    ]
    instances = 0
    while instances < 120:
        v = rng.choice(descriptors)
        g = random_poly(QQ, rng)
        h = random_poly(QQ, rng)
        vg, vh = skp_valuation(v, g), skp_valuation(v, h)
        assert skp_valuation(v, g * h) == vg + vh
        s = g + h
        if not s.is_zero:
            assert skp_valuation(v, s) >= min(vg, vh)
        instances += 1
    while instances < 240:
        F = field_from_spec(rng.choice(["q", "fp:7"]))
        f = rng.choice([parse_poly(F, "y^2 - x^3"), parse_poly(F, "y^3 - x^4"),
                        parse_poly(F, "(y^2 - x^3)^2 - x^5*y")])
        g = random_poly(F, rng)
        h = random_poly(F, rng)
        ig, ih = intersection_multiplicity(f, g), intersection_multiplicity(f, h)
        assert intersection_multiplicity(f, g * h) == ig + ih
        s = g + h
        if not s.is_zero:
            assert intersection_multiplicity(f, s) >= min(ig, ih)
        instances += 1
    assert instances >= 240


# -- criterion 10: smooth-branch guard and by-design disagreement ---------


def test_criterion_10_smooth_branch_guard(capsys):
    with pytest.raises(SmoothBranch):
        lct_formula(corpus_poly("q", "y - x^2"))
    code = cli_main(["compute", "--field", "q", "--poly", "y - x^2", "--allow-smooth"])
    out = capsys.readouterr().out
    assert code == 0
    assert "DISAGREE-BY-DESIGN" in out
    assert "3/2" in out  # the uncapped formula value
    assert "warning" in out
    res = resolution_lct(corpus_poly("q", "y - x^2"))
    assert res.lct == Fraction(1)
    code2 = cli_main(["compute", "--field", "q", "--poly", "y - x^2"])
    err = capsys.readouterr().err
    assert code2 == 1
    assert "SmoothBranch" in err
