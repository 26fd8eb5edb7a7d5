"""Newton polygons of monomial ideals in two variables.

Staircase hulls, the largest-scaling LCT formula for monomial ideals, the
polygon-scaling identity for key polynomials, and the exact vertex-enumeration
solution of the relation linear program.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Set, Tuple

from .arith import rat_str
from .errors import (
    IndexOutOfRange,
    InternalMismatch,
    LemmaViolated,
    NotNormalized,
    ZeroPolynomial,
)
from .poly import BivarPoly
from .skp import Skp

Point = Tuple[Fraction, Fraction]
Edge = Tuple[int, int, int]  # p*u1 + q*u2 >= r, integer coefficients, gcd 1


def monom_ideal(f: BivarPoly) -> Set[Tuple[int, int]]:
    """Supp(f) minimalized under divisibility of monomials."""
    if f.is_zero:
        raise ZeroPolynomial("monomial ideal of zero")
    pts = sorted(f.terms)
    minimal = set()
    for p in pts:
        if not any(q != p and q[0] <= p[0] and q[1] <= p[1] for q in pts):
            minimal.add(p)
    return minimal


def _reduce_edge(p: Fraction, q: Fraction, r: Fraction) -> Edge:
    from math import gcd, lcm

    den = lcm(p.denominator, q.denominator, r.denominator)
    pi, qi, ri = int(p * den), int(q * den), int(r * den)
    g = gcd(gcd(abs(pi), abs(qi)), abs(ri))
    if g > 1:
        pi, qi, ri = pi // g, qi // g, ri // g
    return (pi, qi, ri)


@dataclass(frozen=True)
class NewtonPolygon:
    """Staircase hull: convex hull of generators plus the positive quadrant.

    Vertices run from smallest u1 (largest u2) to largest u1; edges are
    inward half-plane constraints including the binding axis-parallel ones.
    """

    generators: frozenset
    vertices: Tuple[Point, ...]
    edges: Tuple[Edge, ...]

    def scale(self, s: Fraction) -> "NewtonPolygon":
        s = Fraction(s)
        gens = frozenset((a * s, b * s) for a, b in self.generators)
        verts = tuple((a * s, b * s) for a, b in self.vertices)
        edges = tuple(_reduce_edge(Fraction(p), Fraction(q), s * r) for p, q, r in self.edges)
        return NewtonPolygon(gens, verts, edges)

    def contains(self, u1: Fraction, u2: Fraction) -> bool:
        if u1 < 0 or u2 < 0:
            return False
        return all(p * u1 + q * u2 >= r for p, q, r in self.edges)

    def to_json(self) -> dict:
        return {
            "vertices": [[rat_str(Fraction(a)), rat_str(Fraction(b))] for a, b in self.vertices],
            "edges": [{"p": str(p), "q": str(q), "r": str(r)} for p, q, r in self.edges],
        }


def newton_polygon(gens: Iterable[Tuple[Fraction, Fraction]]) -> NewtonPolygon:
    """Hull of the generators plus the nonnegative quadrant cone."""
    pts = sorted({(Fraction(a), Fraction(b)) for a, b in gens})
    if not pts:
        raise ZeroPolynomial("empty generator set")
    # staircase-minimal points
    minimal = [
        p
        for p in pts
        if not any(q != p and q[0] <= p[0] and q[1] <= p[1] for q in pts)
    ]
    minimal.sort(key=lambda p: (p[0], -p[1]))
    # lower-left convex chain, dropping collinear interior points
    hull: List[Point] = []
    for p in minimal:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            cross = (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1)
            if cross <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    edges: List[Edge] = []
    xmin = hull[0][0]
    ymin = hull[-1][1]
    if xmin > 0:
        edges.append(_reduce_edge(Fraction(1), Fraction(0), xmin))
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        p, q = y1 - y2, x2 - x1
        edges.append(_reduce_edge(p, q, p * x1 + q * y1))
    if ymin > 0:
        edges.append(_reduce_edge(Fraction(0), Fraction(1), ymin))
    return NewtonPolygon(frozenset(hull), tuple(hull), tuple(edges))


def howald_lct(P: NewtonPolygon) -> Fraction:
    """Largest lambda with (1,1) in lambda * P.

    Equivalently 1/t where t is the smallest diagonal parameter with
    (t, t) inside P; t is forced by the tightest edge constraint.
    """
    t = max(Fraction(r, p + q) for p, q, r in P.edges)
    return 1 / t


def scaled_polygon_check(skp: Skp, j: int) -> Tuple[bool, Optional[Point]]:
    """Newt(U_j) == (deg_y U_j / n_1) * Newt(U_2), with a failing vertex if not.

    The reference polygon is predicted from the value data alone:
    Newt(U_2) has the two vertices (0, n_1) and (n_1*beta_1, 0), so every
    deeper key must reproduce that shape scaled by deg_y U_j / n_1.
    """
    if not 2 <= j <= skp.k:
        raise IndexOutOfRange(f"level {j} outside 2..{skp.k}")
    if not (skp.values[0] < skp.values[1]):
        raise NotNormalized("polygon scaling needs beta_0 < beta_1")
    n1 = skp.n[0]
    base = newton_polygon([(Fraction(0), Fraction(n1)), (n1 * skp.values[1].value, Fraction(0))])
    Pj = newton_polygon(monom_ideal(skp.keys[j]))
    s = Fraction(skp.d(j), n1)
    expected = base.scale(s)
    if Pj.edges == expected.edges and Pj.vertices == expected.vertices:
        return True, None
    for v in Pj.vertices:
        if not expected.contains(*v):
            return False, v
    for v in expected.vertices:
        if not Pj.contains(*v):
            return False, v
    # same region, different presentation: still a failure with a witness
    diff = set(Pj.vertices) ^ set(expected.vertices)
    return False, (sorted(diff)[0] if diff else Pj.vertices[0])


def lct_monom_closedform(skp: Skp) -> Fraction:
    """(1/deg_y U_k)(1 + beta_0/beta_1); cross-checked against the polygon."""
    if skp.k < 2:
        raise IndexOutOfRange("closed form needs an SKP of length >= 2")
    if skp.values[0].is_infinite or skp.values[1].is_infinite:
        raise NotNormalized("closed form needs finite beta_0, beta_1")
    b0, b1 = skp.values[0].value, skp.values[1].value
    value = Fraction(1, skp.d(skp.k)) * (1 + b0 / b1)
    poly_route = howald_lct(newton_polygon(monom_ideal(skp.keys[skp.k])))
    if value != poly_route:
        raise InternalMismatch(f"closed form {value} vs polygon route {poly_route}")
    return value


def lp_vertex_min(skp: Skp, j: int) -> Tuple[Tuple[Fraction, ...], Fraction]:
    """Minimum of m_0 + beta_1 * sum_{l>=1} m_l d_l over the relation simplex.

    The feasible set {sum m_l beta_l = n_j beta_j, m >= 0} is a simplex with
    vertices (n_j beta_j / beta_l) e_l; the minimum is enumerated exactly and
    must strictly exceed beta_1 * d_{j+1}.
    """
    if not 2 <= j <= skp.k - 1:
        raise IndexOutOfRange(f"level {j} outside 2..{skp.k - 1}")
    betas = [v.value for v in skp.values[: j + 1]]
    b1 = betas[1]
    n_j = skp.n[j - 1]
    target = n_j * betas[j]
    best: Optional[Fraction] = None
    best_vertex: Optional[Tuple[Fraction, ...]] = None
    for l in range(j):
        coord = target / betas[l]
        objective = coord if l == 0 else coord * b1 * skp.d(l)
        if best is None or objective < best:
            best = objective
            vertex = [Fraction(0)] * j
            vertex[l] = coord
            best_vertex = tuple(vertex)
    bound = b1 * skp.d(j + 1)
    if not best > bound:
        raise LemmaViolated(f"vertex minimum {best} does not exceed beta_1*d_{j+1} = {bound}")
    return best_vertex, best
