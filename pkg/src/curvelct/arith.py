"""Exact scalar arithmetic: the value space [0, inf] and the coefficient fields.

Rational numbers are plain ``fractions.Fraction`` (always lowest terms,
positive denominator, arbitrary precision).  ``ExtRat`` adjoins +infinity
with the absorbing conventions of semivaluation values.  Coefficient
arithmetic happens in one of two fields: the rationals (elements are
Fractions) or a prime field F_p with p < 2**31 (elements are ints in [0, p)).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import CurveLctError, ZeroReciprocal

Rat = Fraction

RatLike = Union[int, Fraction, str]


def parse_rat(text: str) -> Fraction:
    """Parse 'p/q' or 'p' into a Fraction."""
    return Fraction(text.strip())


def rat_str(q: Fraction) -> str:
    """Serialize a rational as 'p/q' (or 'p' when integral); never a float."""
    return str(q)


class ExtRat:
    """A nonnegative rational or +infinity; immutable and hashable.

    Conventions: INF + x = INF, min(INF, x) = x, 1/INF = 0, 1/0 is an error.
    Multiplication uses INF * 0 = 0 (the valuation of x^0 under an infinite
    weight is 0), and INF * c = INF for c > 0.
    """

    __slots__ = ("_val",)

    def __init__(self, value: RatLike | None):
        if value is None:
            self._val = None
        else:
            q = Fraction(value)
            if q < 0:
                raise CurveLctError(f"ExtRat must be nonnegative, got {q}")
            self._val = q

    @property
    def is_infinite(self) -> bool:
        return self._val is None

    @property
    def value(self) -> Fraction:
        if self._val is None:
            raise CurveLctError("infinite ExtRat has no finite value")
        return self._val

    def __add__(self, other: "ExtRat") -> "ExtRat":
        other = _coerce(other)
        if self._val is None or other._val is None:
            return INF
        return ExtRat(self._val + other._val)

    __radd__ = __add__

    def __mul__(self, other) -> "ExtRat":
        other = _coerce(other)
        if self._val is None or other._val is None:
            a, b = self._val, other._val
            if a == 0 or b == 0:
                return ExtRat(0)
            return INF
        return ExtRat(self._val * other._val)

    __rmul__ = __mul__

    def reciprocal(self) -> "ExtRat":
        if self._val is None:
            return ExtRat(0)
        if self._val == 0:
            raise ZeroReciprocal("reciprocal of 0")
        return ExtRat(1 / self._val)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (ExtRat, int, Fraction)):
            return NotImplemented
        other = _coerce(other)
        return self._val == other._val

    def __hash__(self) -> int:
        return hash(("ExtRat", self._val))

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if self._val is None:
            return False
        if other._val is None:
            return True
        return self._val < other._val

    def __le__(self, other) -> bool:
        other = _coerce(other)
        return self == other or self < other

    def __gt__(self, other) -> bool:
        return _coerce(other) < self

    def __ge__(self, other) -> bool:
        return _coerce(other) <= self

    def __repr__(self) -> str:
        return f"ExtRat({self})"

    def __str__(self) -> str:
        return "inf" if self._val is None else rat_str(self._val)

    @staticmethod
    def parse(text: str) -> "ExtRat":
        t = text.strip().lower()
        if t in ("inf", "infinity", "oo"):
            return INF
        return ExtRat(parse_rat(t))


INF = ExtRat(None)


def _coerce(x) -> ExtRat:
    if isinstance(x, ExtRat):
        return x
    return ExtRat(x)


def ext_add(a: ExtRat, b: ExtRat) -> ExtRat:
    return _coerce(a) + _coerce(b)


def ext_min(a: ExtRat, b: ExtRat) -> ExtRat:
    a, b = _coerce(a), _coerce(b)
    return b if b < a else a


def ext_reciprocal(a: ExtRat) -> ExtRat:
    return _coerce(a).reciprocal()


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3_215_031_751."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RationalField:
    """The field Q; elements are Fractions."""

    char = 0

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_rat(self, q: Fraction) -> Fraction:
        return Fraction(q)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / a

    def div(self, a, b):
        return a * self.inv(b)

    def is_zero(self, a) -> bool:
        return a == 0

    def elem_str(self, a) -> str:
        return rat_str(a)

    def parse_elem(self, text: str) -> Fraction:
        return parse_rat(text)


class PrimeField:
    """F_p with word-sized prime p; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if p >= 2 ** 31:
            raise CurveLctError(f"modulus {p} too large (need p < 2^31)")
        if not is_prime(p):
            raise CurveLctError(f"{p} is not prime")
        self.p = p
        self.char = p

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 % self.p

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_rat(self, q: Fraction) -> int:
        den = q.denominator % self.p
        if den == 0:
            raise CurveLctError(f"denominator {q.denominator} not invertible mod {self.p}")
        return q.numerator * pow(den, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def elem_str(self, a) -> str:
        return str(a % self.p)

    def parse_elem(self, text: str) -> int:
        return self.from_rat(parse_rat(text))


QQ = RationalField()

Field = Union[RationalField, PrimeField]


def field_from_spec(spec: str) -> Field:
    """Parse a field tag: 'q' or 'fp:<p>'."""
    s = spec.strip().lower()
    if s in ("q", "qq", "rational", "rationals"):
        return QQ
    if s.startswith("fp:"):
        return PrimeField(int(s[3:]))
    raise CurveLctError(f"unknown field spec {spec!r} (expected 'q' or 'fp:<p>')")
