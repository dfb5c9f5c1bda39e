import dataclasses

import pytest

from frobint.frobdata import make_hp
from frobint.orders import compute_bOL, make_order_spec, order_divisors
from frobint.realquad import RQField, RQIdeal, parse_element
from frobint.sigma import (
    build_scalar_sigma,
    build_sigma,
    decompose_sigma,
    scalar_action_on_torsion,
    splits_completely,
    verify_sigma,
)

F5 = RQField(5, 1, -1)


def spec_for(ap_text, p, u_text=None, b_text=None):
    frob = make_hp(parse_element(F5, ap_text), p)
    if b_text is None:
        b = compute_bOL(frob).b_OL
    else:
        b = RQIdeal.principal(parse_element(F5, b_text))
    u = parse_element(F5, u_text) if u_text is not None else None
    return make_order_spec(b, frob, u=u)


def test_p59_matrix_matches_published_row():
    spec = spec_for("4+4*a", 59, "1", "2")
    m = build_sigma(spec)
    assert str(m) == "[[1, -28+2*a], [2, 3+4*a]]"
    assert verify_sigma(m, spec).ok
    assert str(decompose_sigma(m, spec)) == "[[0, -14+a], [1, 1+2*a]]"


def test_p67_matrix_verifies():
    spec = spec_for("-4+2*a", 67, "9+a", "2+3*a")
    m = build_sigma(spec)
    report = verify_sigma(m, spec)
    assert report.ok
    assert m.trace() == parse_element(F5, "-4+2*a")
    assert m.det() == F5(67)


def test_companion_when_trivial_conductor():
    frob = make_hp(parse_element(F5, "2*a"), 5)
    spec = make_order_spec(RQIdeal.unit_ideal(F5), frob)
    m = build_sigma(spec)
    assert m.provenance == "companion"
    assert (m.m11, m.m21) == (F5.zero, F5.one)
    assert m.m22 == frob.a_p and m.m12 == -frob.s_p
    assert verify_sigma(m, spec).ok


def test_tampered_matrix_caught():
    spec = spec_for("4+4*a", 59, "1", "2")
    m = build_sigma(spec)
    bad = dataclasses.replace(m, m12=m.m12 + F5.one)
    report = verify_sigma(bad, spec)
    assert not report.ok
    assert any("det" in f for f in report.failures)


def test_all_divisor_orders_give_verified_sigma():
    for ap_text, p in (("4+4*a", 59), ("-4+2*a", 67), ("2+4*a", 101)):
        frob = make_hp(parse_element(F5, ap_text), p)
        for b in order_divisors(compute_bOL(frob)):
            spec = make_order_spec(b, frob)
            assert verify_sigma(build_sigma(spec), spec).ok


def test_scalar_sigma():
    pi = F5(3)
    m = build_scalar_sigma(pi)
    assert m.provenance == "scalar"
    assert m.trace() == 2 * pi and m.det() == pi * pi


def test_scalar_action_on_torsion():
    from frobint.realquad import prime_above

    b_p = RQIdeal.principal(F5(2))
    two = RQIdeal.principal(F5(2))
    l5 = prime_above(F5, 5)[0][0]
    assert scalar_action_on_torsion(two, b_p)
    assert not scalar_action_on_torsion(l5, b_p)
    assert splits_completely(two, b_p) == scalar_action_on_torsion(two, b_p)


def test_scalar_action_rejects_p_torsion():
    from frobint.sigma import NotPrimeToP

    b_p = RQIdeal.principal(F5(2))
    with pytest.raises(NotPrimeToP):
        scalar_action_on_torsion(RQIdeal.principal(F5(59)), b_p, p=59)
