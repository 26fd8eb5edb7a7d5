"""Iterated point blow-ups with exact chart algebra.

The ground-truth oracle: embedded resolution of a plane curve germ by
blow-ups at non-SNC points, with Farey weights (a, b) on the exceptional
divisors, pullback orders N = ord_E(pi* f), chart-verified log
discrepancies, the resolution-based LCT, and the Farey multiplicity probe
on the dual graph.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from . import univar
from .arith import Field
from .errors import (
    BlowupLimitExceeded,
    CurveLctError,
    FareyMismatch,
    FieldRootNeeded,
    NonSquareFree,
    NotAdjacent,
    ZeroPolynomial,
)
from .poly import BivarPoly, is_squarefree, ord_m

ChartMap = Tuple[BivarPoly, BivarPoly]  # (x, y) as polynomials in local (u, v)

DEFAULT_MAX_BLOWUPS = 64


def _max_blowups(override: Optional[int]) -> int:
    if override is not None:
        return override
    env = os.environ.get("CURVELCT_MAX_BLOWUPS")
    return int(env) if env else DEFAULT_MAX_BLOWUPS


def _ord_u(g: BivarPoly) -> int:
    """Vanishing order along {u = 0}: minimal u-exponent of the support."""
    if g.is_zero:
        raise ZeroPolynomial("order of zero along a divisor")
    return min(i for i, _ in g.terms)


@dataclass
class Node:
    """One exceptional divisor; its own chart has the divisor at {u = 0}."""

    idx: int
    a: int
    b: int
    parents: Tuple[int, ...]
    N: Optional[int]
    chart: ChartMap

    def to_json(self) -> dict:
        return {
            "idx": self.idx,
            "a": self.a,
            "b": self.b,
            "parents": list(self.parents),
            "N": self.N,
            "chart": {"x": str(self.chart[0]), "y": str(self.chart[1])},
        }


@dataclass(frozen=True)
class Corner:
    """A chart around the intersection of two exceptional divisors.

    u_node's divisor is {u = 0} and v_node's is {v = 0} in `chart`.
    """

    chart: ChartMap
    u_node: int
    v_node: int


@dataclass
class _Site:
    """An active (non-SNC) point carrying the strict transform locally."""

    chart: ChartMap
    h: BivarPoly
    nu: Optional[int]  # exceptional divisor {u = 0} through the point
    nv: Optional[int]  # exceptional divisor {v = 0} through the point


class ResolutionTree:
    """Exceptional divisors of a composition of point blow-ups over the origin."""

    def __init__(self, field: Field):
        self.field = field
        self.nodes: List[Node] = []
        self.adjacency: Set[FrozenSet[int]] = set()
        self.corners: Dict[FrozenSet[int], Corner] = {}
        self.strict_meets: Set[int] = set()
        self._free_counter: Dict[int, int] = {}

    # -- chart algebra -------------------------------------------------

    def _chart1(self, m: ChartMap) -> ChartMap:
        F = self.field
        u, v = BivarPoly.var_x(F), BivarPoly.var_y(F)
        return (m[0].substitute(u, u * v), m[1].substitute(u, u * v))

    def _chart2(self, m: ChartMap) -> ChartMap:
        F = self.field
        u, v = BivarPoly.var_x(F), BivarPoly.var_y(F)
        return (m[0].substitute(u * v, v), m[1].substitute(u * v, v))

    def _blow_up_point(
        self,
        base: ChartMap,
        nu: Optional[int],
        nv: Optional[int],
        mult: int,
    ) -> Tuple[int, ChartMap, ChartMap]:
        """Blow up the origin of `base`; returns (new index, chart1, chart2).

        The new divisor is {u = 0} in chart 1 and {v = 0} in chart 2; a
        parent {u = 0} divisor survives in chart 2, a {v = 0} one in chart 1.
        """
        parents = tuple(p for p in (nu, nv) if p is not None)
        if len(parents) == 0:
            a, b = 2, 1
        elif len(parents) == 1:
            pa = self.nodes[parents[0]]
            a, b = pa.a + 1, pa.b
        else:
            p1, p2 = self.nodes[parents[0]], self.nodes[parents[1]]
            a, b = p1.a + p2.a, p1.b + p2.b
        N: Optional[int] = None
        if all(self.nodes[p].N is not None for p in parents) and mult is not None:
            N = sum(self.nodes[p].N for p in parents) + mult
        c1 = self._chart1(base)
        c2 = self._chart2(base)
        idx = len(self.nodes)
        self.nodes.append(Node(idx, a, b, parents, N, c1))
        self._free_counter[idx] = 0
        if nu is not None and nv is not None:
            self.adjacency.discard(frozenset((nu, nv)))
            self.corners.pop(frozenset((nu, nv)), None)
        if nv is not None:
            self.adjacency.add(frozenset((idx, nv)))
            self.corners[frozenset((idx, nv))] = Corner(c1, idx, nv)
        if nu is not None:
            self.adjacency.add(frozenset((nu, idx)))
            self.corners[frozenset((nu, idx))] = Corner(c2, nu, idx)
        return idx, c1, c2

    # -- sandbox operations ---------------------------------------------

    def blowup_origin(self) -> int:
        """First blow-up, at the origin of the base plane."""
        if self.nodes:
            raise CurveLctError("origin already blown up")
        F = self.field
        idx, _, _ = self._blow_up_point(
            (BivarPoly.var_x(F), BivarPoly.var_y(F)), None, None, 0
        )
        return idx

    def blowup_free(self, parent: int) -> int:
        """Blow up a fresh point of one divisor away from all crossings."""
        F = self.field
        node = self.nodes[parent]
        self._free_counter[parent] += 1
        c = F.from_int(self._free_counter[parent])
        if F.is_zero(c):
            raise CurveLctError(f"no fresh centers left on E_{parent} over {F}")
        u, v = BivarPoly.var_x(F), BivarPoly.var_y(F)
        shifted = (
            node.chart[0].substitute(u, v + BivarPoly.const(F, c)),
            node.chart[1].substitute(u, v + BivarPoly.const(F, c)),
        )
        idx, _, _ = self._blow_up_point(shifted, parent, None, 0)
        return idx

    def blowup_satellite(self, i: int, j: int) -> int:
        """Blow up the crossing point of two currently adjacent divisors."""
        key = frozenset((i, j))
        if key not in self.corners:
            raise NotAdjacent(f"E_{i} and E_{j} do not intersect in the current model")
        corner = self.corners[key]
        idx, _, _ = self._blow_up_point(corner.chart, corner.u_node, corner.v_node, 0)
        return idx

    # -- verification against the chart algebra --------------------------

    def chart_discrepancy(self, idx: int) -> int:
        """A_X(E) = 1 + ord_E of the Jacobian of the chart map; must equal a."""
        P, Q = self.nodes[idx].chart
        jac = P.deriv_x() * Q.deriv_y() - P.deriv_y() * Q.deriv_x()
        A = 1 + _ord_u(jac)
        if A != self.nodes[idx].a:
            raise FareyMismatch(f"E_{idx}: chart discrepancy {A} != Farey a = {self.nodes[idx].a}")
        return A

    def pullback_m_order(self, idx: int) -> int:
        """ord_E of the pulled-back maximal ideal (x, y); must equal b."""
        P, Q = self.nodes[idx].chart
        b = min(_ord_u(P), _ord_u(Q))
        if b != self.nodes[idx].b:
            raise FareyMismatch(f"E_{idx}: pullback order {b} != Farey b = {self.nodes[idx].b}")
        return b

    def node_order(self, idx: int, g: BivarPoly) -> int:
        """ord_E(pi* g) for any nonzero polynomial g."""
        P, Q = self.nodes[idx].chart
        return _ord_u(g.substitute(P, Q))

    # -- export ----------------------------------------------------------

    def to_dot(self) -> str:
        lines = ["graph dual_graph {"]
        for n in self.nodes:
            label = f"E_{n.idx} ({n.a}/{n.b})"
            if n.N is not None:
                label += f" N={n.N}"
            lines.append(f'  e{n.idx} [label="{label}"];')
        for pair in sorted(tuple(sorted(p)) for p in self.adjacency):
            lines.append(f"  e{pair[0]} -- e{pair[1]};")
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "nodes": [n.to_json() for n in self.nodes],
            "adjacency": sorted(sorted(p) for p in self.adjacency),
            "strict_transform_meets": sorted(self.strict_meets),
        }


# ----------------------------------------------------------------------
# Resolution of a curve
# ----------------------------------------------------------------------


def _root_multiplicities(F: Field, r: univar.Coeffs) -> Tuple[List[Tuple[object, int]], univar.Coeffs]:
    """Rational roots with multiplicities, and the rootless cofactor."""
    out = []
    for c in univar.roots_in_field(F, r):
        e = 0
        lin = [F.neg(c), F.one]
        while True:
            q, rem = univar.divmod_poly(F, r, lin)
            if rem:
                break
            r = q
            e += 1
        out.append((c, e))
    return out, r


def resolve_curve(f: BivarPoly, max_blowups: Optional[int] = None) -> ResolutionTree:
    """Embedded resolution of the germ of f at the origin.

    Blows up every point where the total transform fails to be simple
    normal crossings; each exceptional divisor records its Farey weight
    and the exact order N = ord_E(pi* f).
    """
    if f.is_zero:
        raise ZeroPolynomial("resolution of zero")
    F = f.field
    if not F.is_zero(f.coeff(0, 0)):
        raise CurveLctError("curve must pass through the origin")
    if not is_squarefree(f):
        raise NonSquareFree(f"{f} has a repeated factor")
    limit = _max_blowups(max_blowups)
    tree = ResolutionTree(F)
    u, v = BivarPoly.var_x(F), BivarPoly.var_y(F)
    if ord_m(f) < 2:
        return tree  # a smooth germ is already simple normal crossings
    queue: List[_Site] = [_Site((u, v), f, None, None)]
    while queue:
        site = queue.pop()
        if len(tree.nodes) >= limit:
            raise BlowupLimitExceeded(
                f"more than {limit} blow-ups; raise CURVELCT_MAX_BLOWUPS if intended"
            )
        m = ord_m(site.h)
        idx, c1, c2 = tree._blow_up_point(site.chart, site.nu, site.nv, m)

        # chart 1: the new divisor is {u = 0}; a {v = 0} parent survives here
        um = BivarPoly.monomial(F, m, 0)
        h1 = site.h.substitute(u, u * v).divide_exact(um)
        r = h1.restrict_x0()
        roots, cofactor = _root_multiplicities(F, r)
        if univar.deg(cofactor) >= 1:
            dc = univar.derivative(F, cofactor)
            if not dc or univar.deg(univar.gcd_monic(F, cofactor, dc)) >= 1:
                raise FieldRootNeeded(
                    "a non-transversal intersection sits at a point not rational over the base field"
                )
        for c, e in roots:
            nv_child = site.nv if F.is_zero(c) else None
            if nv_child is None and e < 2:
                tree.strict_meets.add(idx)
                continue  # transversal crossing of curve and one divisor: SNC
            shift = BivarPoly(F, {(0, 1): F.one, (0, 0): c})
            child_chart = (c1[0].substitute(u, shift), c1[1].substitute(u, shift))
            child_h = h1.substitute(u, shift)
            queue.append(_Site(child_chart, child_h, idx, nv_child))

        # chart 2 origin: the new divisor is {v = 0}; a {u = 0} parent survives
        vm = BivarPoly.monomial(F, 0, m)
        h2 = site.h.substitute(u * v, v).divide_exact(vm)
        if F.is_zero(h2.coeff(0, 0)):
            if site.nu is not None:
                queue.append(_Site(c2, h2, site.nu, idx))
            else:
                ry = h2.restrict_y0()  # curve restricted to the new divisor
                k = 0
                while F.is_zero(ry[k]):
                    k += 1
                if k >= 2:
                    queue.append(_Site(c2, h2, site.nu, idx))
                else:
                    tree.strict_meets.add(idx)
    return tree


@dataclass(frozen=True)
class ResolutionResult:
    """LCT data read off a completed resolution."""

    tree: ResolutionTree
    exceptional_min: Optional[Fraction]  # min a/N over exceptional divisors
    lct: Fraction  # capped at 1, the germ value for smooth input

    def to_json(self) -> dict:
        return {
            "lct": str(self.lct),
            "exceptional_min": None if self.exceptional_min is None else str(self.exceptional_min),
            "divisors": [
                {"idx": n.idx, "a": n.a, "b": n.b, "N": n.N} for n in self.tree.nodes
            ],
            "method": "resolution",
        }


def resolution_lct(f: BivarPoly, max_blowups: Optional[int] = None) -> ResolutionResult:
    """min over exceptional divisors of A_E / N_E, capped at the germ value 1."""
    tree = resolve_curve(f, max_blowups)
    if not tree.nodes:
        return ResolutionResult(tree, None, Fraction(1))
    emin = min(Fraction(n.a, n.N) for n in tree.nodes)
    return ResolutionResult(tree, emin, min(Fraction(1), emin))


# ----------------------------------------------------------------------
# Farey multiplicity probe
# ----------------------------------------------------------------------


def _rooted_edges(tree: ResolutionTree) -> List[Tuple[int, int]]:
    """Dual-graph edges oriented away from the first divisor."""
    adj: Dict[int, List[int]] = {n.idx: [] for n in tree.nodes}
    for pair in tree.adjacency:
        i, j = tuple(pair)
        adj[i].append(j)
        adj[j].append(i)
    parent = {0: None}
    order = [0]
    for node in order:
        for nb in adj[node]:
            if nb not in parent:
                parent[nb] = node
                order.append(nb)
    return [(parent[i], i) for i in parent if parent[i] is not None]


def farey_multiplicity_probe(tree: ResolutionTree, e_idx: int, depth: int) -> int:
    """min of b(E') over divisors E' >= E reachable within `depth` blow-ups.

    E' >= E holds when E lies on the dual-graph path from the first divisor
    to E'; future divisors are enumerated exhaustively over free and
    satellite choices, carrying the order flag through each blow-up.
    """
    edges = _rooted_edges(tree)
    children: Dict[int, List[int]] = {}
    for lo, hi in edges:
        children.setdefault(lo, []).append(hi)
    # flag: does the path from E_0 to this node pass through e_idx?
    flags: Dict[int, bool] = {}

    def flag_of(i: int) -> bool:
        if i in flags:
            return flags[i]
        path = []
        cur = i
        parent = {hi: lo for lo, hi in edges}
        while cur is not None:
            path.append(cur)
            cur = parent.get(cur)
        flags[i] = e_idx in path
        return flags[i]

    nodes: List[Tuple[int, bool]] = [(n.b, flag_of(n.idx)) for n in tree.nodes]
    edge_list: List[Tuple[int, int]] = list(edges)
    best = min(b for b, fl in nodes if fl)

    def rec(nodes: List[Tuple[int, bool]], edge_list: List[Tuple[int, int]], d: int) -> None:
        nonlocal best
        if d == 0:
            return
        k = len(nodes)
        for i, (b, fl) in enumerate(nodes):
            # a free child copies b and stays on the same side of E
            rec(nodes + [(b, fl)], edge_list + [(i, k)], d - 1)
        for (lo, hi) in edge_list:
            nb = nodes[lo][0] + nodes[hi][0]
            nfl = nodes[lo][1]
            if nfl and nb < best:
                best = nb
            rest = [e for e in edge_list if e != (lo, hi)]
            rec(nodes + [(nb, nfl)], rest + [(lo, k), (k, hi)], d - 1)

    rec(nodes, edge_list, depth)
    return best
