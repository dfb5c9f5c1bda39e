import random

import pytest

from frobint.endoring import (
    EndoContext,
    brute_force_bp,
    determine_bp,
    embed_field_gen,
    embed_trace_element,
    pi_inverse_numerator,
)
from frobint.frobdata import classify, count_to_weil, make_hp, recover_ap, weil_from_frob
from frobint.jacobian import count_points, make_curve
from frobint.orders import compute_bOL
from frobint.realquad import RQField

FIELDS = {d: RQField(d, t, n) for d, t, n in ((5, 1, -1), (2, 0, -2), (3, 0, -3), (13, 1, -3))}


def setup_curve(p, coeffs, d):
    curve = make_curve(coeffs, p)
    w = count_to_weil(count_points(curve, 1), count_points(curve, 2), p)
    a_p, _ = recover_ap(w, FIELDS[d])
    frob = make_hp(a_p, p)
    return curve, frob, w


def test_embed_field_gen_certified():
    _, frob, w = setup_curve(7, [3, 4, 1, 5, 5, 1], 2)
    g = embed_field_gen(w, frob.a_p)  # raises EmbeddingFailed if wrong
    assert 1 <= len(g) <= 4


def test_embed_trace_element_matches_ap():
    from fractions import Fraction

    from frobint import poly

    _, frob, w = setup_curve(7, [3, 4, 1, 5, 5, 1], 2)
    tr = embed_trace_element(w)
    # x * (pi + q/pi) = x^2 + q mod h4
    h4 = [Fraction(c) for c in w.h4()]
    lhs = poly.divmod_exact(poly.mul([Fraction(0), Fraction(1)], tr), h4)[1]
    rhs = poly.divmod_exact([Fraction(w.q), Fraction(0), Fraction(1)], h4)[1]
    assert lhs == rhs


def test_pi_inverse_numerator():
    _, _, w = setup_curve(7, [3, 4, 1, 5, 5, 1], 2)
    assert pi_inverse_numerator(w) == [w.q * w.s1, -w.s2, w.s1, -1]


def test_rm_maximal_on_known_curve():
    curve, frob, _ = setup_curve(7, [3, 4, 1, 5, 5, 1], 2)
    ctx = EndoContext(curve, frob, rng=random.Random(1))
    assert ctx.rm_maximal().is_member


def test_determine_bp_frozen_rows():
    # (p, coeffs, d, expected Fac(b_OL), expected Norm(b_p)); frozen from an
    # exhaustive search cross-checked against the brute-force oracle
    rows = [
        (7, [3, 4, 1, 5, 5, 1], 2, "l2", 2),
        (11, [6, 4, 0, 8, 9, 1], 3, "l2", 1),
    ]
    for p, coeffs, d, fac, bp_norm in rows:
        curve, frob, w = setup_curve(p, coeffs, d)
        assert classify(frob).is_ordinary
        cond = compute_bOL(frob)
        assert cond.factor_string() == fac
        ctx = EndoContext(curve, frob, rng=random.Random(1))
        b_p, u_p, verdict = determine_bp(cond, frob, ctx)
        assert verdict.is_member
        assert b_p.norm == bp_norm
        assert cond.b_OL.contains_ideal(b_p) or b_p.is_unit_ideal()


def test_oracle_equivalence_one_curve():
    curve, frob, _ = setup_curve(7, [6, 2, 6, 2, 0, 1], 2)
    cond = compute_bOL(frob)
    ctx = EndoContext(curve, frob, rng=random.Random(1))
    b_p, _, verdict = determine_bp(cond, frob, ctx)
    assert verdict.is_member
    oracle_bp, _ = brute_force_bp(cond, frob, ctx)
    assert b_p == oracle_bp


def test_wrong_field_gen_rejected():
    from frobint.endoring import EmbeddingFailed

    _, frob, w = setup_curve(7, [3, 4, 1, 5, 5, 1], 2)
    with pytest.raises(EmbeddingFailed):
        embed_field_gen(w, frob.a_p + frob.a_p.field.one)
