import random

import pytest
from hypothesis import given, settings, strategies as st

from frobint.realquad import (
    CLASS_NUMBER_ONE_D,
    FieldMismatch,
    RQField,
    RQIdeal,
    change_display_basis,
    factor_ideal,
    format_element,
    format_factorization,
    parse_element,
    parse_ideal,
    prime_above,
    valuation,
)

F5 = RQField(5, 1, -1)  # a^2 + a - 1 = 0
FIELDS = [RQField(*tn) for tn in ((5, 1, -1), (2, 0, -2), (3, 0, -3), (13, 1, -3))]

elements = st.builds(
    lambda c0, c1: F5(c0, c1),
    st.integers(min_value=-40, max_value=40),
    st.integers(min_value=-40, max_value=40),
)


@given(elements, elements, elements)
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x - x == F5.zero


@given(elements, elements)
def test_norm_trace_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).trace() == x.trace() + y.trace()
    assert x.conj().conj() == x
    assert x * x.conj() == F5(x.norm())
    assert x + x.conj() == F5(x.trace())


@given(elements)
def test_generator_satisfies_minpoly(x):
    a = F5.gen
    assert a * a + a - F5.one == F5.zero
    assert format_element(parse_element(F5, format_element(x)) if x else x) == format_element(x)


def test_parse_format_roundtrip():
    for text in ("4+4*a", "-2+4*a", "9+a", "-a", "0", "2", "1+2*a", "-48-32*a"):
        assert format_element(parse_element(F5, text)) == text


@pytest.mark.parametrize(
    "field,expected",
    [
        (FIELDS[0], (1, 1)),  # (1+sqrt5)/2
        (FIELDS[1], (1, 1)),  # 1+sqrt2
        (FIELDS[2], (2, 1)),  # 2+sqrt3
        (FIELDS[3], (2, 1)),  # (3+sqrt13)/2
    ],
)
def test_fundamental_unit(field, expected):
    u = field.fundamental_unit
    assert (u.c0, u.c1) == expected
    assert abs(u.norm()) == 1


def test_prime_above_splitting_types():
    # in Q(sqrt5): 2, 3 inert; 5 ramified; 11, 19, 31 split
    assert [str(lab) for _, lab in prime_above(F5, 2)] == ["(2)"]
    assert [str(lab) for _, lab in prime_above(F5, 5)] == ["l5"]
    labs = [str(lab) for _, lab in prime_above(F5, 11)]
    assert labs == ["l11_1", "l11_2"]
    for lam, _ in prime_above(F5, 11):
        assert lam.norm == 11


def test_ideal_arithmetic_and_factorization():
    l11_1, l11_2 = (lam for lam, _ in prime_above(F5, 11))
    prod = l11_1 * l11_2
    assert prod == RQIdeal.principal(F5(11))
    assert format_factorization(factor_ideal(prod)) == "l11_1*l11_2"
    sq = l11_1 * l11_1
    assert valuation(sq, l11_1) == 2 and valuation(sq, l11_2) == 0
    assert format_factorization(factor_ideal(RQIdeal.principal(F5.one))) == "(1)"


@given(elements, elements)
@settings(max_examples=50)
def test_principal_ideal_membership(x, y):
    if not x:
        return
    I = RQIdeal.principal(x)
    assert I.contains(x * y)
    assert I.norm == abs(x.norm())


def test_generator_recovers_principal():
    rng = random.Random(7)
    for _ in range(25):
        x = F5(rng.randint(-30, 30), rng.randint(-30, 30))
        if not x:
            continue
        g = RQIdeal.principal(x).generator()
        assert RQIdeal.principal(g) == RQIdeal.principal(x)


def test_parse_ideal_labels():
    assert parse_ideal(F5, "(2)").norm == 4
    assert parse_ideal(F5, "l5").norm == 5
    assert parse_ideal(F5, "l11_1").norm == 11


def test_change_display_basis():
    # same field Q(sqrt5) presented with minpoly x^2+x-1 versus x^2+3x+1
    other = RQField(5, 3, 1)
    x = F5(1, 2)
    y = change_display_basis(x, other)
    assert (y.c0, y.c1) == (3, 2)
    assert y.norm() == x.norm() and y.trace() == x.trace()
    assert change_display_basis(y, F5) == x


def test_field_mismatch_guard():
    x = F5(1, 1)
    z = FIELDS[1](1, 1)
    with pytest.raises((FieldMismatch, TypeError)):
        _ = x + z


def test_class_number_whitelist():
    assert CLASS_NUMBER_ONE_D == {2, 3, 5, 13}
    for f in FIELDS:
        assert f.class_number_one_attested
