"""Dense univariate polynomial helpers over a coefficient field.

Internal module.  A polynomial is a list of field elements, lowest degree
first, with no trailing zeros (the zero polynomial is []).  Used for
resultant elimination in (k[x])[y], for root extraction in normalization,
theta-solving and blow-up centers, and for stabilized quotient bases.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List

from .arith import Field, PrimeField, QQ
from .errors import CurveLctError

Coeffs = List


def trim(F: Field, a: Coeffs) -> Coeffs:
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def deg(a: Coeffs) -> int:
    """Degree; -1 for the zero polynomial."""
    return len(a) - 1


def add(F: Field, a: Coeffs, b: Coeffs) -> Coeffs:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.add(x, y))
    return trim(F, out)


def sub(F: Field, a: Coeffs, b: Coeffs) -> Coeffs:
    return add(F, a, [F.neg(c) for c in b])


def scal(F: Field, c, a: Coeffs) -> Coeffs:
    if F.is_zero(c):
        return []
    return trim(F, [F.mul(c, x) for x in a])


def mul(F: Field, a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(F, out)


def divmod_poly(F: Field, a: Coeffs, b: Coeffs):
    """Quotient and remainder of a by b (b != 0)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [F.zero] * max(0, len(a) - len(b) + 1)
    inv_lead = F.inv(b[-1])
    while len(a) >= len(b) and trim(F, list(a)):
        a = trim(F, a)
        if len(a) < len(b):
            break
        c = F.mul(a[-1], inv_lead)
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] = F.sub(a[k + i], F.mul(c, bc))
        a.pop()
    return trim(F, q), trim(F, a)


def gcd_monic(F: Field, a: Coeffs, b: Coeffs) -> Coeffs:
    a, b = list(a), list(b)
    while b:
        a, b = b, divmod_poly(F, a, b)[1]
    if a:
        a = scal(F, F.inv(a[-1]), a)
    return a


def pow_mod(F: Field, base: Coeffs, e: int, m: Coeffs) -> Coeffs:
    result = [F.one]
    base = divmod_poly(F, base, m)[1]
    while e > 0:
        if e & 1:
            result = divmod_poly(F, mul(F, result, base), m)[1]
        base = divmod_poly(F, mul(F, base, base), m)[1]
        e >>= 1
    return result


def eval_at(F: Field, a: Coeffs, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def derivative(F: Field, a: Coeffs) -> Coeffs:
    return trim(F, [F.mul(F.from_int(i), a[i]) for i in range(1, len(a))])


def _int_divisors(n: int, cap: int = 200_000) -> List[int]:
    """Positive divisors of |n|; raises if there would be too many to try."""
    n = abs(n)
    if n == 0:
        return []
    divs = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            divs.add(d)
            divs.add(n // d)
            if len(divs) > cap:
                raise CurveLctError(f"too many divisor candidates for {n}")
        d += 1
        if d > 2_000_000 and d * d <= n:
            # remaining cofactor treated as one block
            divs.add(n)
            break
    return sorted(divs)


def _rational_roots(a: Coeffs) -> List[Fraction]:
    """Distinct rational roots of a nonzero polynomial over Q."""
    F = QQ
    roots: List[Fraction] = []
    a = trim(F, list(a))
    # strip x^k
    k = 0
    while k < len(a) and a[k] == 0:
        k += 1
    if k > 0:
        roots.append(Fraction(0))
        a = a[k:]
    if deg(a) == 0:
        return roots
    # clear denominators, make primitive
    from math import gcd, lcm

    den = lcm(*[c.denominator for c in a]) if len(a) > 1 else a[0].denominator
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    a0, an = ints[0], ints[-1]
    for p in _int_divisors(a0):
        for q in _int_divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and eval_at(F, a, cand) == 0:
                    roots.append(cand)
    return roots


def _fp_roots(F: PrimeField, a: Coeffs, rng: random.Random) -> List[int]:
    """Distinct roots in F_p via gcd with x^p - x and equal-degree splitting."""
    p = F.p
    a = trim(F, list(a))
    roots: List[int] = []
    k = 0
    while k < len(a) and a[k] == 0:
        k += 1
    if k > 0:
        roots.append(0)
        a = a[k:]
    if deg(a) <= 0:
        return roots
    if p <= 4096:
        for x in range(p):
            if eval_at(F, a, x) == 0:
                roots.append(x)
        return sorted(set(roots))
    a = scal(F, F.inv(a[-1]), a)
    xp = pow_mod(F, [0, F.one], p, a)
    g = gcd_monic(F, sub(F, xp, [0, F.one]), a)

    def split(h: Coeffs):
        d = deg(h)
        if d == 0:
            return
        if d == 1:
            roots.append(F.neg(h[0]))
            return
        while True:
            c = rng.randrange(p)
            t = pow_mod(F, [c, F.one], (p - 1) // 2, h)
            w = gcd_monic(F, sub(F, t, [F.one]), h)
            if 0 < deg(w) < d:
                split(w)
                split(divmod_poly(F, h, w)[0])
                return

    split(g)
    return sorted(set(roots))


DEFAULT_SEED = 0xC0FFEE  # only steers the randomized splitting over large F_p


def roots_in_field(F: Field, a: Coeffs, seed: int | None = None) -> list:
    """Distinct roots of a nonzero univariate polynomial in the base field."""
    if not trim(F, list(a)):
        raise CurveLctError("root extraction on the zero polynomial")
    if isinstance(F, PrimeField):
        return _fp_roots(F, a, random.Random(DEFAULT_SEED if seed is None else seed))
    return _rational_roots(a)
