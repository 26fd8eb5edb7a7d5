"""Exact bivariate polynomials over Q or F_p.

The carrier type for curves, key polynomials and chart equations: a sparse
map from exponent pairs (i, j) — powers of x and y — to nonzero field
elements.  All operations are exact; nothing here ever rounds.

Also hosts the operations that only need polynomial algebra: m-adic order,
tangent cone, coordinate normalization, Sylvester resultants, the
intersection-multiplicity semivaluation and its brute-force linear-algebra
oracle, and monomial valuations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from . import univar
from .arith import ExtRat, Field, INF, ext_min
from .errors import (
    CurveLctError,
    NotUnibranchTangentCone,
    NotWeierstrass,
    PolyParseError,
    ZeroPolynomial,
)

Exponent = Tuple[int, int]


class BivarPoly:
    """Immutable sparse bivariate polynomial over a fixed coefficient field."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field: Field, terms: Dict[Exponent, object]):
        clean = {}
        for (i, j), c in terms.items():
            if i < 0 or j < 0:
                raise CurveLctError(f"negative exponent ({i},{j})")
            if not field.is_zero(c):
                clean[(i, j)] = c
        self.field = field
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(field: Field) -> "BivarPoly":
        return BivarPoly(field, {})

    @staticmethod
    def const(field: Field, c) -> "BivarPoly":
        return BivarPoly(field, {(0, 0): c})

    @staticmethod
    def monomial(field: Field, i: int, j: int, c=None) -> "BivarPoly":
        return BivarPoly(field, {(i, j): field.one if c is None else c})

    @staticmethod
    def var_x(field: Field) -> "BivarPoly":
        return BivarPoly.monomial(field, 1, 0)

    @staticmethod
    def var_y(field: Field) -> "BivarPoly":
        return BivarPoly.monomial(field, 0, 1)

    # -- basic queries -----------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, i: int, j: int):
        return self.terms.get((i, j), self.field.zero)

    @property
    def support(self) -> List[Exponent]:
        return sorted(self.terms)

    @property
    def deg_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    @property
    def total_deg(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    # -- ring operations ---------------------------------------------

    def _check_field(self, other: "BivarPoly") -> None:
        if other.field != self.field:
            raise CurveLctError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        self._check_field(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out.get(e, F.zero), c)
        return BivarPoly(F, out)

    def __neg__(self) -> "BivarPoly":
        F = self.field
        return BivarPoly(F, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        return self + (-other)

    def __mul__(self, other: "BivarPoly") -> "BivarPoly":
        self._check_field(other)
        F = self.field
        out: Dict[Exponent, object] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = F.add(out.get(e, F.zero), F.mul(c1, c2))
        return BivarPoly(F, out)

    def scale(self, c) -> "BivarPoly":
        F = self.field
        return BivarPoly(F, {e: F.mul(c, v) for e, v in self.terms.items()})

    def __pow__(self, n: int) -> "BivarPoly":
        if n < 0:
            raise CurveLctError("negative polynomial power")
        result = BivarPoly.const(self.field, self.field.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    # -- structure ---------------------------------------------------

    def y_coeffs(self) -> List[univar.Coeffs]:
        """Coefficients in (k[x])[y]: entry j is the dense x-poly at y^j."""
        F = self.field
        dy = self.deg_y
        out: List[univar.Coeffs] = [[] for _ in range(dy + 1)]
        for (i, j), c in self.terms.items():
            col = out[j]
            while len(col) <= i:
                col.append(F.zero)
            col[i] = c
        return [univar.trim(F, col) for col in out]

    @staticmethod
    def from_y_coeffs(field: Field, cols: List[univar.Coeffs]) -> "BivarPoly":
        terms: Dict[Exponent, object] = {}
        for j, col in enumerate(cols):
            for i, c in enumerate(col):
                if not field.is_zero(c):
                    terms[(i, j)] = c
        return BivarPoly(field, terms)

    def swap_vars(self) -> "BivarPoly":
        return BivarPoly(self.field, {(j, i): c for (i, j), c in self.terms.items()})

    def substitute(self, px: "BivarPoly", py: "BivarPoly") -> "BivarPoly":
        """Compose: replace x by px and y by py."""
        F = self.field
        xpows = {0: BivarPoly.const(F, F.one)}
        ypows = {0: BivarPoly.const(F, F.one)}

        def power(cache, base, n):
            if n not in cache:
                cache[n] = power(cache, base, n - 1) * base
            return cache[n]

        acc = BivarPoly.zero(F)
        for (i, j), c in sorted(self.terms.items()):
            acc = acc + (power(xpows, px, i) * power(ypows, py, j)).scale(c)
        return acc

    def shift(self, cx, cy) -> "BivarPoly":
        """Translate: x -> x + cx, y -> y + cy."""
        F = self.field
        px = BivarPoly(F, {(1, 0): F.one, (0, 0): cx})
        py = BivarPoly(F, {(0, 1): F.one, (0, 0): cy})
        return self.substitute(px, py)

    def restrict_x0(self) -> univar.Coeffs:
        """f(0, y) as a dense univariate polynomial in y."""
        F = self.field
        out: univar.Coeffs = []
        for (i, j), c in self.terms.items():
            if i == 0:
                while len(out) <= j:
                    out.append(F.zero)
                out[j] = c
        return univar.trim(F, out)

    def restrict_y0(self) -> univar.Coeffs:
        """f(x, 0) as a dense univariate polynomial in x."""
        return self.swap_vars().restrict_x0()

    def deriv_x(self) -> "BivarPoly":
        F = self.field
        return BivarPoly(
            F,
            {(i - 1, j): F.mul(F.from_int(i), c) for (i, j), c in self.terms.items() if i > 0},
        )

    def deriv_y(self) -> "BivarPoly":
        F = self.field
        return BivarPoly(
            F,
            {(i, j - 1): F.mul(F.from_int(j), c) for (i, j), c in self.terms.items() if j > 0},
        )

    def divide_exact(self, other: "BivarPoly") -> "BivarPoly":
        """Exact division; raises if other does not divide self."""
        self._check_field(other)
        F = self.field
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        lead = max(other.terms)
        lead_c = other.terms[lead]
        rem = dict(self.terms)
        q: Dict[Exponent, object] = {}
        while rem:
            e = max(rem)
            i, j = e[0] - lead[0], e[1] - lead[1]
            if i < 0 or j < 0:
                raise CurveLctError("inexact polynomial division")
            c = F.div(rem[e], lead_c)
            q[(i, j)] = c
            for (a, b), v in other.terms.items():
                k = (a + i, b + j)
                nv = F.sub(rem.get(k, F.zero), F.mul(c, v))
                if F.is_zero(nv):
                    rem.pop(k, None)
                else:
                    rem[k] = nv
        return BivarPoly(F, q)

    def divides(self, other: "BivarPoly") -> bool:
        try:
            self_q = other.divide_exact(self)
            return True
        except CurveLctError:
            return False

    # -- text --------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        F = self.field
        parts = []
        for (i, j) in sorted(self.terms, key=lambda e: (e[0], -e[1])):
            c = self.terms[(i, j)]
            cs = F.elem_str(c)
            neg = cs.startswith("-")
            mag = cs[1:] if neg else cs
            factors = []
            if i:
                factors.append("x" if i == 1 else f"x^{i}")
            if j:
                factors.append("y" if j == 1 else f"y^{j}")
            if not factors:
                body = mag
            elif mag == "1":
                body = "*".join(factors)
            else:
                body = "*".join([mag] + factors)
            parts.append(("- " if neg else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else ("-" + text[2:])

    def __repr__(self) -> str:
        return f"BivarPoly({self.field}, {self})"


# ----------------------------------------------------------------------
# Parsing
# ----------------------------------------------------------------------



_TOKEN = re.compile(r"\d+(?:/\d+)?|[xy()+\-*^]")


def parse_poly(field: Field, text: str) -> BivarPoly:
    """Parse a polynomial expression in x and y over the given field.

    Grammar: sums/differences of products of powers, with parentheses and
    rational coefficients, e.g. '(y^2 - x^3)^2 - x^5*y' or 'y^2 - 1/4*x^3'.
    '*' is optional between adjacent factors; whitespace is ignored.
    """
    src = "".join(text.split())
    if not src:
        raise PolyParseError("empty polynomial text")
    tokens: List[str] = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise PolyParseError(f"unexpected character {src[pos]!r} in {text!r}")
        tokens.append(m.group(0))
        pos = m.end()
    idx = 0

    def peek() -> Optional[str]:
        return tokens[idx] if idx < len(tokens) else None

    def take() -> str:
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def parse_expr() -> BivarPoly:
        sign = 1
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        acc = parse_term()
        if sign < 0:
            acc = -acc
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            acc = acc - rhs if op == "-" else acc + rhs
        return acc

    def parse_term() -> BivarPoly:
        acc = parse_factor()
        while True:
            tok = peek()
            if tok == "*":
                take()
                acc = acc * parse_factor()
            elif tok is not None and tok not in ("+", "-", ")", "^"):
                # implicit product, as in '2x' or 'x(y-1)'
                acc = acc * parse_factor()
            else:
                return acc

    def parse_factor() -> BivarPoly:
        base = parse_atom()
        if peek() == "^":
            take()
            tok = peek()
            if tok is None or not tok.isdigit():
                raise PolyParseError(f"exponent must be a nonnegative integer in {text!r}")
            base = base ** int(take())
        return base

    def parse_atom() -> BivarPoly:
        tok = peek()
        if tok is None:
            raise PolyParseError(f"unexpected end of input in {text!r}")
        if tok == "(":
            take()
            inner = parse_expr()
            if peek() != ")":
                raise PolyParseError(f"unbalanced parentheses in {text!r}")
            take()
            return inner
        take()
        if tok == "x":
            return BivarPoly(field, {(1, 0): field.one})
        if tok == "y":
            return BivarPoly(field, {(0, 1): field.one})
        if tok[0].isdigit():
            return BivarPoly(field, {(0, 0): field.from_rat(Fraction(tok))})
        raise PolyParseError(f"unexpected token {tok!r} in {text!r}")

    result = parse_expr()
    if idx != len(tokens):
        raise PolyParseError(f"trailing tokens near {tokens[idx]!r} in {text!r}")
    return result


# ----------------------------------------------------------------------
# Operations
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialWeights:
    """Weight vector (w_x, w_y) of a monomial valuation."""

    w_x: ExtRat
    w_y: ExtRat


def ord_m(f: BivarPoly) -> int:
    """The m-adic order: minimal total degree over the support."""
    if f.is_zero:
        raise ZeroPolynomial("ord_m of zero")
    return min(i + j for i, j in f.terms)


def tangent_cone(f: BivarPoly) -> BivarPoly:
    """Homogeneous part of f of degree ord_m(f)."""
    m = ord_m(f)
    return BivarPoly(f.field, {e: c for e, c in f.terms.items() if e[0] + e[1] == m})


@dataclass(frozen=True)
class Transform:
    """One normalization step: 'swap' (x <-> y) or 'shear' (y -> y + c*x)."""

    op: str
    c: object = None

    def to_json(self, field: Field) -> dict:
        if self.op == "swap":
            return {"op": "swap"}
        return {"op": "shear", "c": field.elem_str(self.c)}


def apply_transforms(f: BivarPoly, transforms: Iterable[Transform]) -> BivarPoly:
    F = f.field
    for t in transforms:
        if t.op == "swap":
            f = f.swap_vars()
        elif t.op == "shear":
            px = BivarPoly.var_x(F)
            py = BivarPoly(F, {(0, 1): F.one, (1, 0): t.c})
            f = f.substitute(px, py)
        else:
            raise CurveLctError(f"unknown transform {t.op}")
    return f


def _single_direction(f: BivarPoly):
    """Root t with tangent_cone = c*(y - t*x)^m, or raise NotUnibranchTangentCone."""
    F = f.field
    T = tangent_cone(f)
    m = ord_m(f)
    cone = {j: T.coeff(m - j, j) for j in range(m + 1)}
    p_coeffs = univar.trim(F, [cone[j] for j in range(m + 1)])
    cm = cone[m]
    if F.is_zero(cm):
        if univar.deg(p_coeffs) <= 0:
            # pure x^m cone: handled by a swap upstream
            return None
        roots = univar.roots_in_field(F, p_coeffs)
        # x-direction plus any finite root means >= 2 tangent directions
        raise NotUnibranchTangentCone(
            f"tangent cone {T} mixes the x-direction with others", splits=bool(roots)
        )
    # cone = cm * (z - t)^m at x = 1; over F_p use t^(p^e) = t on the base field
    char = F.char
    if char == 0:
        t = F.div(F.neg(cone[m - 1]), F.mul(F.from_int(m), cm)) if m >= 1 else F.zero
    else:
        m0, e = m, 0
        while m0 % char == 0:
            m0 //= char
            e += 1
        q = char ** e
        # coefficient of z^(q*(m0-1)) in (z^q - s)^{m0} is -m0 * s
        idx = q * (m0 - 1)
        t = F.div(F.neg(cone.get(idx, F.zero)), F.mul(F.from_int(m0), cm))
    # verify T == cm * (y - t*x)^m
    lin = BivarPoly(F, {(0, 1): F.one, (1, 0): F.neg(t)})
    if (lin ** m).scale(cm) != T:
        roots = univar.roots_in_field(F, p_coeffs)
        raise NotUnibranchTangentCone(
            f"tangent cone {T} is not a perfect power of one linear form",
            splits=len(roots) >= 2,
        )
    return t


def normalize_coordinates(f: BivarPoly) -> Tuple[BivarPoly, List[Transform]]:
    """Coordinate change making the tangent cone a power of y.

    Returns (g, transforms) where g = f after swapping x <-> y and/or
    shearing y -> y + c*x, with tangent_cone(g) proportional to y^ord_m(f).
    """
    if f.is_zero:
        raise ZeroPolynomial("normalize_coordinates of zero")
    if not f.field.is_zero(f.coeff(0, 0)):
        raise CurveLctError("curve must pass through the origin")
    transforms: List[Transform] = []
    t = _single_direction(f)
    if t is None:
        f = f.swap_vars()
        transforms.append(Transform("swap"))
        t = _single_direction(f)
        if t is None:
            raise NotUnibranchTangentCone("degenerate cone after swap", splits=False)
    if not f.field.is_zero(t):
        tr = Transform("shear", t)
        f = apply_transforms(f, [tr])
        transforms.append(tr)
    return f, transforms


def _generic_bareiss(rows, ring_mul, ring_sub, ring_div, ring_neg, is_zero, one):
    """Fraction-free determinant; entries live in an integral domain."""
    n = len(rows)
    M = [list(r) for r in rows]
    sign = 1
    prev = one
    for r in range(n - 1):
        if is_zero(M[r][r]):
            for rr in range(r + 1, n):
                if not is_zero(M[rr][r]):
                    M[r], M[rr] = M[rr], M[r]
                    sign = -sign
                    break
            else:
                return None  # zero determinant
        for i in range(r + 1, n):
            for j in range(r + 1, n):
                num = ring_sub(ring_mul(M[r][r], M[i][j]), ring_mul(M[i][r], M[r][j]))
                M[i][j] = ring_div(num, prev)
            M[i][r] = None
        prev = M[r][r]
    det = M[n - 1][n - 1]
    return ring_neg(det) if sign < 0 else det


def _sylvester_rows(fcols: List, gcols: List, zero, n_total: int):
    m, n = len(fcols) - 1, len(gcols) - 1
    rows = []
    frow = list(reversed(fcols))
    grow = list(reversed(gcols))
    for k in range(n):
        rows.append([zero] * k + frow + [zero] * (n - 1 - k))
    for k in range(m):
        rows.append([zero] * k + grow + [zero] * (m - 1 - k))
    return rows


def resultant_y(f: BivarPoly, g: BivarPoly) -> univar.Coeffs:
    """Res_y(f, g) in k[x] as a dense coefficient list.

    Convention for deg_y g = 0: Res = g^(deg_y f).
    """
    F = f.field
    f._check_field(g)
    m = f.deg_y
    if m < 1:
        raise CurveLctError("resultant_y needs positive y-degree in f")
    if g.is_zero:
        return []
    n = g.deg_y
    if n == 0:
        gx = g.restrict_y0()
        out = [F.one]
        for _ in range(m):
            out = univar.mul(F, out, gx)
        return out
    rows = _sylvester_rows(f.y_coeffs(), g.y_coeffs(), [], m + n)

    det = _generic_bareiss(
        rows,
        lambda a, b: univar.mul(F, a, b),
        lambda a, b: univar.sub(F, a, b),
        lambda a, b: _upoly_div_exact(F, a, b),
        lambda a: univar.scal(F, F.neg(F.one), a),
        lambda a: not a,
        [F.one],
    )
    return det if det is not None else []


def _upoly_div_exact(F: Field, a: univar.Coeffs, b: univar.Coeffs) -> univar.Coeffs:
    q, r = univar.divmod_poly(F, a, b)
    if r:
        raise CurveLctError("inexact division inside Bareiss elimination")
    return q


def det_bivar(entries: List[List[BivarPoly]], field: Field) -> BivarPoly:
    """Exact determinant of a matrix of bivariate polynomials (Bareiss)."""
    det = _generic_bareiss(
        entries,
        lambda a, b: a * b,
        lambda a, b: a - b,
        lambda a, b: a.divide_exact(b),
        lambda a: -a,
        lambda a: a.is_zero,
        BivarPoly.const(field, field.one),
    )
    return det if det is not None else BivarPoly.zero(field)


def is_weierstrass(f: BivarPoly) -> bool:
    """Monic in y with f(0, y) = y^deg_y(f)."""
    d = f.deg_y
    if d < 1:
        return False
    cols = f.y_coeffs()
    top = cols[d]
    if len(top) != 1 or top[0] != f.field.one:
        return False
    ry = f.restrict_x0()
    return univar.deg(ry) == d and all(
        f.field.is_zero(c) for c in ry[:-1]
    ) and ry[-1] == f.field.one


def intersection_multiplicity(f: BivarPoly, g: BivarPoly) -> ExtRat:
    """The curve semivaluation v_f(g) = ord_x Res_y(f, g); INF iff f | g.

    Requires f irreducible (caller-certified) and in Weierstrass form.
    """
    if not is_weierstrass(f):
        raise NotWeierstrass(f"{f} is not a Weierstrass polynomial in y")
    if g.is_zero:
        return INF
    r = resultant_y(f, g)
    if not r:
        return INF
    k = 0
    while f.field.is_zero(r[k]):
        k += 1
    return ExtRat(k)


def monomial_valuation(w: MonomialWeights, f: BivarPoly) -> ExtRat:
    """min over the support of w_x*i + w_y*j."""
    if f.is_zero:
        raise ZeroPolynomial("monomial valuation of zero")
    best: Optional[ExtRat] = None
    for (i, j) in f.terms:
        v = w.w_x * i + w.w_y * j
        best = v if best is None else ext_min(best, v)
    return best


def _colength_mod_mN(f: BivarPoly, g: BivarPoly, N: int) -> int:
    """dim of k[x,y] / ((f, g) + m^N)."""
    F = f.field
    basis = [(i, j) for s in range(N) for i in range(s + 1) for j in [s - i]]
    index = {e: k for k, e in enumerate(basis)}
    rows = []
    for h in (f, g):
        for (a, b) in basis:
            row = [F.zero] * len(basis)
            nonzero = False
            for (i, j), c in h.terms.items():
                e = (i + a, j + b)
                if e in index:
                    row[index[e]] = c
                    nonzero = True
            if nonzero:
                rows.append(row)
    rank = _rank(F, rows)
    return len(basis) - rank


def _rank(F: Field, rows: List[List]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while col < ncols and rank < len(rows):
        piv = None
        for r in range(rank, len(rows)):
            if not F.is_zero(rows[r][col]):
                piv = r
                break
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = F.inv(rows[rank][col])
        rows[rank] = [F.mul(inv, v) for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and not F.is_zero(rows[r][col]):
                c = rows[r][col]
                rows[r] = [F.sub(v, F.mul(c, w)) for v, w in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def quotient_dimension(f: BivarPoly, g: BivarPoly, bound: int) -> Optional[int]:
    """dim_k k[[x,y]]/(f,g) by truncated exact linear algebra.

    Returns the dimension once it stabilizes below the truncation bound,
    or None ("exceeds bound") when not yet stabilized.  Stabilization
    between consecutive truncation levels is exact: equal colengths force
    equal ideals, hence the true dimension.
    """
    if f.is_zero or g.is_zero:
        raise ZeroPolynomial("quotient_dimension of zero polynomial")
    if bound < 2:
        return None
    d_prev = _colength_mod_mN(f, g, bound - 1)
    d_cur = _colength_mod_mN(f, g, bound)
    if d_prev == d_cur:
        return d_cur
    return None


def is_squarefree(f: BivarPoly) -> bool:
    """Exact square-free test over Q or F_p (perfect base fields)."""
    if f.is_zero:
        return False
    F = f.field
    fx, fy = f.deriv_x(), f.deriv_y()
    if fx.is_zero and fy.is_zero:
        return f.total_deg == 0  # p-th power unless constant
    if fy.is_zero:
        return is_squarefree(f.swap_vars())
    if f.deg_y >= 1:
        r = resultant_y(f, fy)
        if not r:
            return False
        # repeated factor purely in x: content in k[x]
        cont = []
        for col in f.y_coeffs():
            cont = univar.gcd_monic(F, cont, col)
        if univar.deg(cont) >= 1:
            dc = univar.derivative(F, cont)
            if univar.deg(univar.gcd_monic(F, cont, dc)) >= 1:
                return False
        return True
    # univariate in x
    gx = f.restrict_y0()
    dg = univar.derivative(F, gx)
    if not dg:
        return False
    return univar.deg(univar.gcd_monic(F, gx, dg)) < 1
