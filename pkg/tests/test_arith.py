"""Extended-rational arithmetic and field backends."""

import random
from fractions import Fraction

import pytest

from curvelct import ExtRat, INF, PrimeField, QQ, field_from_spec
from curvelct.arith import ext_min, is_prime, parse_rat, rat_str
from curvelct.errors import CurveLctError, ZeroReciprocal


def test_extrat_basic_laws():
    a = ExtRat(Fraction(3, 2))
    assert a + ExtRat(1) == ExtRat(Fraction(5, 2))
    assert a * ExtRat(2) == ExtRat(3)
    assert (INF + a) == INF
    assert (a + INF) == INF
    assert ext_min(INF, a) == a
    assert INF * ExtRat(0) == ExtRat(0)
    assert ExtRat(0) * INF == ExtRat(0)


def test_extrat_reciprocal():
    assert ExtRat(Fraction(2, 3)).reciprocal() == ExtRat(Fraction(3, 2))
    assert INF.reciprocal() == ExtRat(0)
    with pytest.raises(ZeroReciprocal):
        ExtRat(0).reciprocal()


def test_extrat_ordering():
    vals = [ExtRat(0), ExtRat(Fraction(1, 3)), ExtRat(1), ExtRat(7), INF]
    for i in range(len(vals)):
        for j in range(len(vals)):
            assert (vals[i] < vals[j]) == (i < j)
            assert (vals[i] <= vals[j]) == (i <= j)


def test_rat_parsing_round_trip():
    for text in ["0", "5", "-3", "7/2", "-11/4"]:
        assert rat_str(parse_rat(text)) == text
    assert ExtRat.parse("inf") == INF
    assert str(INF) == "inf"


def test_prime_field_ops():
    rng = random.Random(11)
    for p in (5, 101, 2147483647):
        F = PrimeField(p)
        for _ in range(50):
            a = rng.randrange(1, p)
            b = rng.randrange(1, p)
            assert F.mul(a, F.inv(a)) == F.one
            assert F.add(a, F.neg(a)) == F.zero
            assert F.sub(F.mul(a, b), F.mul(b, a)) == F.zero


def test_prime_field_rejects_composite_and_large():
    with pytest.raises(CurveLctError):
        PrimeField(15)
    with pytest.raises(CurveLctError):
        PrimeField(2**31)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}
    for n in range(2, 50):
        assert is_prime(n) == (n in primes)


def test_field_from_spec():
    assert field_from_spec("q") is QQ
    F = field_from_spec("fp:7")
    assert F.char == 7
    with pytest.raises(CurveLctError):
        field_from_spec("fp:9")
    with pytest.raises(CurveLctError):
        field_from_spec("gf(4)")


def test_rational_field_exactness():
    a = QQ.from_rat(Fraction(1, 3))
    s = QQ.zero
    for _ in range(3):
        s = QQ.add(s, a)
    assert s == QQ.one
