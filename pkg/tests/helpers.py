"""Shared fixtures for the test suite: the curve corpus, random generators,
and an independent diagonal oracle for Newton polygons."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional, Tuple

from curvelct import BivarPoly, field_from_spec, parse_poly

# Curves with known log canonical thresholds, used throughout the suite.
CORPUS: List[Tuple[str, Fraction]] = [
    ("y^2 - x^3", Fraction(5, 6)),
    ("y^3 - x^4", Fraction(7, 12)),
    ("y^3 - x^5", Fraction(8, 15)),
    ("y^2 - x^7", Fraction(9, 14)),
    ("(y^2 - x^3)^2 - x^5*y", Fraction(5, 12)),
    ("y^2 - x^5", Fraction(1, 2) + Fraction(1, 5)),
    ("y^2 - x^9", Fraction(1, 2) + Fraction(1, 9)),
    ("y^2 - x^11", Fraction(1, 2) + Fraction(1, 11)),
]

FIELD_SPECS = ["q", "fp:5", "fp:7", "fp:101"]


def corpus_poly(spec: str, text: str) -> BivarPoly:
    return parse_poly(field_from_spec(spec), text)


def random_unit(F, rng: random.Random):
    """A nonzero field element."""
    if F.char == 0:
        return F.from_int(rng.choice([1, -1]) * rng.randint(1, 5))
    return F.from_int(rng.randint(1, F.char - 1))


def random_poly(F, rng: random.Random, max_deg: int = 4, terms: int = 4,
                in_maximal_ideal: bool = True) -> BivarPoly:
    """A random nonzero sparse polynomial, by default with zero constant term."""
    while True:
        d = {}
        for _ in range(rng.randint(1, terms)):
            i = rng.randint(0, max_deg)
            j = rng.randint(0, max_deg)
            if in_maximal_ideal and i == 0 and j == 0:
                continue
            d[(i, j)] = random_unit(F, rng)
        p = BivarPoly(F, d)
        if not p.is_zero:
            return p


def random_branch(F, rng: random.Random) -> BivarPoly:
    """A random analytically irreducible Weierstrass branch y^a - c*x^b,
    gcd(a, b) = 1, possibly with one higher-order perturbation term."""
    while True:
        a = rng.randint(1, 3)
        b = rng.randint(a, 7)
        from math import gcd

        if gcd(a, b) != 1:
            continue
        c = random_unit(F, rng)
        f = BivarPoly(F, {(0, a): F.one, (b, 0): F.neg(c)})
        if rng.random() < 0.4 and a >= 2:
            # a term above the segment keeps the branch and its invariants
            f = f + BivarPoly(F, {(b, a - 1): random_unit(F, rng)})
        return f


def diagonal_oracle(gens) -> Fraction:
    """Smallest t with (t, t) in conv(gens) + R^2_{>=0}, by brute force.

    Enumerates singletons and generator pairs: for a single generator g the
    best diagonal point dominating it is max(g); for a pair, minimize the
    larger coordinate along the segment, attained where the segment crosses
    the diagonal (if it does) or at an endpoint.
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in gens]
    best: Optional[Fraction] = None

    def consider(t: Fraction) -> None:
        nonlocal best
        if best is None or t < best:
            best = t

    for x, y in pts:
        consider(max(x, y))
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            (x1, y1), (x2, y2) = pts[i], pts[j]
            # max-coordinate along (1-s)p1 + s p2 is minimized where the
            # two coordinates agree, when that crossing lies in [0, 1]
            denom = (x2 - x1) - (y2 - y1)
            if denom != 0:
                s = (y1 - x1) / denom
                if 0 <= s <= 1:
                    consider(x1 + s * (x2 - x1))
    assert best is not None
    return best
