"""Sequences of key polynomials (SKPs).

An SKP is the combinatorial skeleton of a valuation centered at the origin:
a chain of key polynomials U_0 = x, U_1 = y, U_2, ... together with their
values beta_0, beta_1, ...  This module validates candidate SKPs against
the defining constraints, evaluates the associated valuation by recursive
key expansion, and extracts the SKP of an analytically irreducible curve
from the intersection-multiplicity oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from . import univar
from .arith import ExtRat, Field, INF, ext_min
from .errors import (
    CurveLctError,
    ExponentOutOfRange,
    IndexOutOfRange,
    MultipleRoots,
    NeedsFieldExtension,
    NonMinimalN,
    NotMonic,
    NotNormalized,
    NotWeierstrass,
    ReducibleInput,
    ViolatesS1,
    ViolatesS2,
    ViolatesS3,
    ZeroPolynomial,
)
from .poly import (
    BivarPoly,
    MonomialWeights,
    _sylvester_rows,
    det_bivar,
    intersection_multiplicity,
    is_weierstrass,
    monomial_valuation,
    ord_m,
    tangent_cone,
)


# ----------------------------------------------------------------------
# The Skp container
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Skp:
    """A certified sequence of key polynomials with all derived data.

    keys[j] is U_j, values[j] is beta_j.  For each internal step
    j = 1..k-1: n[j-1] is the minimal multiplier n_j, m[j-1] the exponent
    vector (m_{j,0}, ..., m_{j,j-1}) of the value relation, theta[j-1] the
    unit in the key recursion U_{j+1} = U_j^{n_j} - theta_j * prod U_l^{m_{j,l}}.
    Only the terminal value may be infinite (curve semivaluations).
    """

    keys: Tuple[BivarPoly, ...]
    values: Tuple[ExtRat, ...]
    n: Tuple[int, ...]
    m: Tuple[Tuple[int, ...], ...]
    theta: Tuple

    @property
    def k(self) -> int:
        return len(self.keys) - 1

    @property
    def field(self) -> Field:
        return self.keys[0].field

    @property
    def is_curve(self) -> bool:
        return self.values[-1].is_infinite

    def d(self, j: int) -> int:
        """deg_y U_j."""
        if not 0 <= j <= self.k:
            raise IndexOutOfRange(f"level {j} outside 0..{self.k}")
        return max(self.keys[j].deg_y, 0)

    def prefix(self, j: int, last: Optional[ExtRat] = None) -> "Skp":
        """Truncate to levels 0..j, optionally replacing the top value."""
        if not 1 <= j <= self.k:
            raise IndexOutOfRange(f"prefix level {j} outside 1..{self.k}")
        values = self.values[:j] + ((self.values[j],) if last is None else (last,))
        return Skp(self.keys[: j + 1], values, self.n[: j - 1], self.m[: j - 1], self.theta[: j - 1])

    def to_json(self) -> dict:
        F = self.field
        return {
            "keys": [str(U) for U in self.keys],
            "values": [str(b) for b in self.values],
            "n": list(self.n),
            "m": [list(row) for row in self.m],
            "theta": [F.elem_str(t) for t in self.theta],
        }


# ----------------------------------------------------------------------
# Value-relation arithmetic
# ----------------------------------------------------------------------


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    """gcd of two rationals: the generator of Za + Zb."""
    num = gcd(a.numerator * b.denominator, b.numerator * a.denominator)
    return Fraction(num, a.denominator * b.denominator)


def _group_generator(betas: Sequence[Fraction]) -> Fraction:
    g = betas[0]
    for b in betas[1:]:
        g = _frac_gcd(g, b)
    return g


def minimal_multiplier(betas: Sequence[Fraction], j: int) -> int:
    """Minimal n >= 1 with n*beta_j in the group generated by beta_0..beta_{j-1}."""
    c = _group_generator(betas[:j])
    return (betas[j] / c).denominator


def relation_exponents(betas: Sequence[Fraction], ns: Sequence[int], j: int) -> Tuple[int, ...]:
    """The exponent vector (m_{j,0}, ..., m_{j,j-1}) of n_j*beta_j = sum m_l*beta_l.

    Unique under the mixed-radix constraints 0 <= m_{j,l} < n_l for
    0 < l < j (beta_l has order n_l modulo the group below it) with
    m_{j,0} a nonnegative integer.
    """
    n_j = minimal_multiplier(betas, j)
    target = n_j * betas[j]
    ms = [0] * j
    for l in range(j - 1, 0, -1):
        c = _group_generator(betas[:l])
        found = None
        for cand in range(ns[l - 1]):
            if ((target - cand * betas[l]) / c).denominator == 1:
                found = cand
                break
        if found is None:
            raise ViolatesS2(f"no exponent decomposition for level {j} relation")
        ms[l] = found
        target -= found * betas[l]
    q = target / betas[0]
    if q.denominator != 1 or q < 0:
        raise ViolatesS2(f"relation at level {j} needs m_0 = {q}, not a nonnegative integer")
    ms[0] = int(q)
    return tuple(ms)


# ----------------------------------------------------------------------
# Validation
# ----------------------------------------------------------------------


def validate_skp(
    keys: Sequence[BivarPoly],
    values: Sequence[ExtRat],
    n: Optional[Sequence[int]] = None,
    m: Optional[Sequence[Sequence[int]]] = None,
    theta: Optional[Sequence] = None,
) -> Skp:
    """Certify a raw (keys, values) pair as an SKP; recompute derived data.

    When n / m / theta are supplied they are compared against the
    recomputed values (NonMinimalN, ExponentOutOfRange, ViolatesS3).
    """
    keys = tuple(keys)
    values = tuple(ExtRat(v) if not isinstance(v, ExtRat) else v for v in values)
    if len(keys) != len(values):
        raise CurveLctError(f"{len(keys)} keys vs {len(values)} values")
    if len(keys) < 2:
        raise ViolatesS1("an SKP has at least U_0 = x and U_1 = y")
    F = keys[0].field
    if keys[0] != BivarPoly.var_x(F):
        raise ViolatesS1(f"U_0 = {keys[0]}, expected x")
    if keys[1] != BivarPoly.var_y(F):
        raise ViolatesS1(f"U_1 = {keys[1]}, expected y")
    k = len(keys) - 1
    for j, b in enumerate(values):
        if b.is_infinite:
            if j != k:
                raise ViolatesS2(f"beta_{j} infinite below the terminal level")
        elif b.value <= 0:
            raise ViolatesS2(f"beta_{j} = {b} must be positive")

    ns: List[int] = []
    ms: List[Tuple[int, ...]] = []
    thetas: List = []
    betas = [v.value for v in values[:-1]] + ([] if values[-1].is_infinite else [values[-1].value])
    for j in range(1, k):
        n_j = minimal_multiplier(betas, j)
        m_j = relation_exponents(betas, ns, j)
        # (S2) value inequality
        bound = ExtRat(n_j * betas[j])
        if not values[j + 1] > bound:
            raise ViolatesS2(f"beta_{j+1} = {values[j+1]} must exceed n_{j}*beta_{j} = {bound}")
        # (S3) key recursion
        U_next = keys[j + 1]
        if U_next.deg_y != n_j * max(keys[j].deg_y, 0):
            raise ViolatesS3(f"deg_y U_{j+1} = {U_next.deg_y} != n_{j}*deg_y U_{j}")
        diff = keys[j] ** n_j - U_next
        mono = BivarPoly.const(F, F.one)
        for l, e in enumerate(m_j):
            mono = mono * keys[l] ** e
        try:
            quot = diff.divide_exact(mono)
        except CurveLctError:
            raise ViolatesS3(f"U_{j}^{n_j} - U_{j+1} not a multiple of the relation monomial")
        if quot.total_deg != 0 or quot.is_zero:
            raise ViolatesS3(f"U_{j+1} breaks the key recursion at step {j}")
        theta_j = quot.coeff(0, 0)
        ns.append(n_j)
        ms.append(m_j)
        thetas.append(theta_j)

    if n is not None:
        for j, (given, computed) in enumerate(zip(n, ns), start=1):
            if given != computed:
                raise NonMinimalN(f"n_{j} = {given}, minimal multiplier is {computed}")
    if m is not None:
        for j, (given, computed) in enumerate(zip(m, ms), start=1):
            if tuple(given) != computed:
                raise ExponentOutOfRange(f"m_{j} = {tuple(given)}, relation forces {computed}")
    if theta is not None:
        for j, (given, computed) in enumerate(zip(theta, thetas), start=1):
            if not F.is_zero(F.sub(given, computed)):
                raise ViolatesS3(f"theta_{j} = {given}, recursion forces {computed}")
    return Skp(keys, values, tuple(ns), tuple(ms), tuple(thetas))


# ----------------------------------------------------------------------
# Key expansion and valuation
# ----------------------------------------------------------------------


def _divmod_y(g: BivarPoly, U: BivarPoly) -> Tuple[BivarPoly, BivarPoly]:
    """Euclidean division by a y-monic polynomial in (k[x])[y]."""
    F = g.field
    dU = U.deg_y
    q = BivarPoly.zero(F)
    r = g
    while r.deg_y >= dU and not r.is_zero:
        j = r.deg_y
        lead = {(i, j - dU): c for (i, jj), c in r.terms.items() if jj == j}
        t = BivarPoly(F, lead)
        q = q + t
        r = r - t * U
    return q, r


def key_expansion(g: BivarPoly, U: BivarPoly) -> List[BivarPoly]:
    """Coefficients g_i with g = sum g_i * U^i and deg_y g_i < deg_y U."""
    dU = U.deg_y
    if dU < 1:
        raise NotMonic(f"key {U} has no y-term")
    top = U.y_coeffs()[dU]
    if len(top) != 1 or top[0] != U.field.one:
        raise NotMonic(f"key {U} is not monic in y")
    out: List[BivarPoly] = []
    while True:
        g, r = _divmod_y(g, U)
        out.append(r)
        if g.is_zero:
            return out


def _skp_value(skp: Skp, level: int, g: BivarPoly) -> ExtRat:
    """Value of nonzero g under the level-j truncation of the SKP."""
    if level == 1:
        w = MonomialWeights(skp.values[0], skp.values[1])
        return monomial_valuation(w, g)
    beta = skp.values[level]
    best: Optional[ExtRat] = None
    for i, g_i in enumerate(key_expansion(g, skp.keys[level])):
        if g_i.is_zero:
            continue
        v = _skp_value(skp, level - 1, g_i) + beta * i
        best = v if best is None else ext_min(best, v)
    return best


@dataclass(frozen=True)
class ValuationDescriptor:
    """An SKP together with its classification and normalization scale.

    `scale` converts normalized values (v(m) = 1) into the presentation the
    caller works with; curve semivaluations extracted from a Weierstrass
    polynomial f carry scale = ord_m(f), so that scale * value reproduces
    the intersection multiplicity.
    """

    skp: Skp
    kind: str  # "monomial" | "divisorial" | "curve"
    scale: Fraction = Fraction(1)

    @property
    def is_normalized(self) -> bool:
        v0, v1 = self.skp.values[0], self.skp.values[1]
        return ext_min(v0, v1) == ExtRat(1)

    def to_json(self) -> dict:
        return {"skp": self.skp.to_json(), "kind": self.kind, "scale": str(self.scale)}


def classify_kind(skp: Skp) -> str:
    if skp.is_curve or skp.values[0].is_infinite:
        return "curve"
    return "monomial" if skp.k == 1 else "divisorial"


def make_descriptor(skp: Skp, scale: Fraction = Fraction(1)) -> ValuationDescriptor:
    return ValuationDescriptor(skp, classify_kind(skp), Fraction(scale))


def skp_valuation(v: ValuationDescriptor, g: BivarPoly) -> ExtRat:
    """v(g) in the descriptor's own scale."""
    if g.is_zero:
        raise ZeroPolynomial("valuation of the zero polynomial")
    return _skp_value(v.skp, v.skp.k, g) * ExtRat(v.scale)


# ----------------------------------------------------------------------
# Theta solving
# ----------------------------------------------------------------------


def solve_theta(f: BivarPoly, u_power: BivarPoly, mono: BivarPoly):
    """The unique theta in k* making ord_x Res_y(f, u_power - theta*mono) jump.

    Treats theta as a transcendental: the resultant is computed with
    bivariate (x, theta) entries, and theta is the unique nonzero root of
    the lowest x-order coefficient.
    """
    F = f.field
    # embed k[x] and k[x] - theta*k[x] into k[x][theta] (second slot = theta)
    fcols = [
        BivarPoly(F, {(i, 0): c for i, c in enumerate(col) if not F.is_zero(c)})
        for col in f.y_coeffs()
    ]
    ucols = u_power.y_coeffs()
    mcols = mono.y_coeffs()
    gcols = []
    for j in range(max(len(ucols), len(mcols))):
        terms = {}
        if j < len(ucols):
            for i, c in enumerate(ucols[j]):
                if not F.is_zero(c):
                    terms[(i, 0)] = c
        if j < len(mcols):
            for i, c in enumerate(mcols[j]):
                if not F.is_zero(c):
                    terms[(i, 1)] = F.neg(c)
        gcols.append(BivarPoly(F, terms))
    while gcols and gcols[-1].is_zero:
        gcols.pop()
    rows = _sylvester_rows(fcols, gcols, BivarPoly.zero(F), len(fcols) + len(gcols) - 2)
    res = det_bivar(rows, F)
    if res.is_zero:
        raise MultipleRoots("resultant vanishes identically; divisor of f passed as key data")
    t = min(i for i, _ in res.terms)
    c_t: univar.Coeffs = []
    for (i, j), c in res.terms.items():
        if i == t:
            while len(c_t) <= j:
                c_t.append(F.zero)
            c_t[j] = c
    c_t = univar.trim(F, c_t)
    lowest = next(j for j, c in enumerate(c_t) if not F.is_zero(c))
    if lowest == univar.deg(c_t):
        # c_t is a single power of theta: no nonzero root exists over any
        # field extension, so no key continues the sequence
        raise ReducibleInput("no unit continues the key sequence; input is not one branch")
    roots = [r for r in univar.roots_in_field(F, c_t) if not F.is_zero(r)]
    if not roots:
        pretty = " + ".join(
            f"{F.elem_str(c)}*t^{j}" for j, c in enumerate(c_t) if not F.is_zero(c)
        )
        raise NeedsFieldExtension(
            f"no admissible unit in the base field; root of {pretty} required",
            minimal_poly=pretty,
        )
    if len(roots) > 1:
        raise MultipleRoots(f"{len(roots)} candidate units {roots}; input is not one branch")
    return roots[0]


# ----------------------------------------------------------------------
# Extraction from a curve
# ----------------------------------------------------------------------


def skp_from_curve(f: BivarPoly) -> Skp:
    """The SKP of an analytically irreducible Weierstrass polynomial.

    Input must be normalized: tangent cone proportional to y^ord_m(f).
    Completes only when f really is one branch; every failure raises
    ReducibleInput (or NeedsFieldExtension when the obstruction is the
    base field), so success doubles as an irreducibility certificate.
    """
    if f.is_zero:
        raise ZeroPolynomial("skp_from_curve of zero")
    F = f.field
    if not is_weierstrass(f):
        raise NotWeierstrass(f"{f} is not a Weierstrass polynomial in y")
    d = ord_m(f)
    cone = tangent_cone(f)
    if cone != BivarPoly.monomial(F, 0, d, cone.coeff(0, d)):
        raise NotNormalized(f"tangent cone {cone} is not a multiple of y^{d}")
    if f.deg_y != d:
        # cone y^d with deg_y > d forces a factor of lower y-degree
        raise ReducibleInput(f"deg_y f = {f.deg_y} exceeds the multiplicity {d}")

    x, y = BivarPoly.var_x(F), BivarPoly.var_y(F)
    v_y = intersection_multiplicity(f, y)
    if v_y.is_infinite:
        if f != y:
            raise ReducibleInput("y divides f but f != y")
        return Skp((x, y), (ExtRat(1), INF), (), (), ())

    keys: List[BivarPoly] = [x, y]
    betas: List[Fraction] = [Fraction(1), v_y.value / d]
    ns: List[int] = []
    ms: List[Tuple[int, ...]] = []
    thetas: List = []
    if betas[1] <= 1:
        raise NotNormalized(f"v_f(y)/ord_m(f) = {betas[1]} <= 1: y is not tangent to f")

    total_v = v_y  # strictly increasing along the loop; bounded by v_f-finiteness
    max_steps = 4 * f.deg_y + 4 * int(v_y.value) + 16
    for _ in range(max_steps):
        j = len(keys) - 1
        n_j = minimal_multiplier(betas, j)
        d_next = n_j * max(keys[j].deg_y, 0)
        if f.deg_y % d_next != 0:
            raise ReducibleInput(f"key degree {d_next} does not divide deg_y f = {f.deg_y}")
        try:
            m_j = relation_exponents(betas, ns, j)
        except ViolatesS2 as exc:
            raise ReducibleInput(f"value semigroup breaks down: {exc}") from exc
        mono = BivarPoly.const(F, F.one)
        for l, e in enumerate(m_j):
            mono = mono * keys[l] ** e
        try:
            theta_j = solve_theta(f, keys[j] ** n_j, mono)
        except MultipleRoots as exc:
            raise ReducibleInput(f"several branches at level {j + 1}: {exc}") from exc
        U_next = keys[j] ** n_j - mono.scale(theta_j)
        v_next = intersection_multiplicity(f, U_next)
        ns.append(n_j)
        ms.append(m_j)
        thetas.append(theta_j)
        keys.append(U_next)
        if v_next.is_infinite:
            if U_next != f:
                raise ReducibleInput("proper key polynomial divides f")
            return Skp(
                tuple(keys),
                tuple([ExtRat(b) for b in betas] + [INF]),
                tuple(ns),
                tuple(ms),
                tuple(thetas),
            )
        beta_next = v_next.value / d
        if beta_next <= n_j * betas[j]:
            raise ReducibleInput(
                f"value failed to increase at level {j + 1}: {beta_next} <= {n_j * betas[j]}"
            )
        betas.append(beta_next)
        total_v = v_next
    raise ReducibleInput(f"no terminal key after {max_steps} steps (value reached {total_v})")


def curve_descriptor(f: BivarPoly) -> ValuationDescriptor:
    """Normalized curve semivaluation of f with scale ord_m(f)."""
    skp = skp_from_curve(f)
    return ValuationDescriptor(skp, "curve", Fraction(ord_m(f)))
