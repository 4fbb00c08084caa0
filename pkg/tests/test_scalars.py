from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pathprod.scalars import GF, QQ, Field, Fp

primes = st.sampled_from([2, 3, 5, 7, 11, 101])
ints = st.integers(-10**6, 10**6)


def test_rationals_are_fractions_in_lowest_terms():
    x = QQ(Fraction(6, -4))
    assert x == Fraction(-3, 2) and x.denominator == 2


def test_floats_rejected():
    with pytest.raises(TypeError):
        QQ(0.5)
    with pytest.raises(TypeError):
        GF(5)(0.5)


def test_non_prime_characteristic_rejected():
    for p in (1, 4, 9, 100):
        with pytest.raises(ValueError):
            Field(p)


def test_parse_and_format():
    assert QQ.parse("-2/3") == Fraction(-2, 3)
    assert QQ.format(Fraction(4, 2)) == "2"
    assert QQ.format(Fraction(-2, 3)) == "-2/3"
    assert GF(7).parse("1/2") == Fp(4, 7)
    assert GF(7).format(Fp(-1, 7)) == "6"
    with pytest.raises(ValueError):
        QQ.parse("x")
    with pytest.raises(TypeError):
        QQ.parse(3)


def test_denominator_vanishing_mod_p():
    with pytest.raises(ZeroDivisionError):
        GF(3)(Fraction(1, 3))


def test_mixing_prime_fields_fails():
    with pytest.raises(ValueError):
        Fp(1, 3) + Fp(1, 5)
    with pytest.raises(ValueError):
        QQ(Fp(1, 3))


@given(primes, ints, ints, ints)
def test_fp_field_axioms(p, a, b, c):
    F = GF(p)
    x, y, z = F(a), F(b), F(c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x + F.zero == x and x * F.one == x
    assert x - x == F.zero
    if x:
        assert x * x.inverse() == F.one
        assert (y / x) * x == y


@given(primes, ints)
def test_fp_matches_integer_residues(p, a):
    assert GF(p)(a).value == a % p


@given(st.fractions(), st.fractions())
def test_rational_roundtrip(a, b):
    for x in (a, b, a * b, a - b):
        assert QQ.parse(QQ.format(x)) == x
