"""Acceptance gate: six criteria, one pass/fail line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines.  Criterion 6 needs an externally supplied genus-2 model for the
level-23 surface (set FROBINT_N23_MODEL or drop the file at
data/external/n23_model.txt); it is skipped, not failed, when absent.
"""

import os
import random
import time
from pathlib import Path

import pytest

from frobint.endoring import EndoContext, brute_force_bp, determine_bp
from frobint.frobdata import (
    abs_simple_check,
    canonical_conjugate,
    classify,
    count_to_weil,
    jacobian_order,
    make_hp,
    recover_ap,
    weil_from_frob,
)
from frobint.jacobian import JacobianContext, count_points, good_reduction_check, make_curve, parse_curve_line
from frobint.orders import compute_bOL, make_order_spec
from frobint.pipeline import diff_against_fixture, load_fixture, run_curve_mode, run_eigen_mode
from frobint.realquad import RQField, RQIdeal, parse_element, prime_above
from frobint.sigma import build_sigma, verify_sigma

DATA = Path(__file__).resolve().parent.parent / "data"
FIXTURES = {
    23: DATA / "table1_N23.tsv",
    125: DATA / "table2_N125.tsv",
    133: DATA / "table3_N133.tsv",
}


def _load_all():
    return {level: load_fixture(path) for level, path in FIXTURES.items()}


def test_criterion_1_eigen_reproduces_conductor_column():
    t0 = time.monotonic()
    total = 0
    details = []
    for level, fix in _load_all().items():
        rows = run_eigen_mode(fix)
        report = diff_against_fixture(rows, fix)
        assert report.ok, (level, report.mismatches)
        allowed = {"exact", "label-swap", "known-erratum", "conjugate", "u-class"}
        for p, verdicts in report.verdicts.items():
            assert set(verdicts.split(", ")) <= allowed, (level, p, verdicts)
        total += len(rows)
        n_err = sum("known-erratum" in v for v in report.verdicts.values())
        details.append(f"N={level}: {len(rows)} rows, swaps={report.swap_ells}, errata={n_err}")
    elapsed = time.monotonic() - t0
    assert total >= 280
    assert elapsed < 10
    print(
        f"\ncriterion 1: PASS — conductor column reproduced on all {total} rows "
        f"({'; '.join(details)}) in {elapsed:.1f}s"
    )


def test_criterion_2_printed_u_b_and_sigma():
    t0 = time.monotonic()
    checked = 0
    for level, fix in _load_all().items():
        for row in fix.rows:
            if row.u_p == "-":
                continue
            a_p = parse_element(fix.field, row.a_p)
            frob = make_hp(a_p, row.p)
            u = parse_element(fix.field, row.u_p)
            b = parse_element(fix.field, row.b_p)
            bI = RQIdeal.principal(b)
            # (i) basis conditions for (1, (pi - u)/b)
            assert bI.contains(2 * u - a_p), (level, row.p)
            assert (bI * bI).contains(frob.hp_at(u)), (level, row.p)
            # (ii) (b_p) divides the computed maximal conductor
            cond = compute_bOL(frob)
            assert bI.contains_ideal(cond.b_OL), (level, row.p)
            # (iii)+(iv) sigma: trace, det, integrality, decomposition
            spec = make_order_spec(bI, frob, u=u)
            m = build_sigma(spec)
            rep = verify_sigma(m, spec)
            assert rep.ok, (level, row.p, rep.failures)
            checked += 1
    elapsed = time.monotonic() - t0
    assert checked >= 200
    assert elapsed < 5
    print(
        f"\ncriterion 2: PASS — {checked} printed (u_p, b_p) rows satisfy the basis "
        f"conditions, divide the maximal conductor, and yield verified sigma_p in {elapsed:.1f}s"
    )


def test_criterion_3_divisibility_patterns():
    fixes = _load_all()

    def data_rows(fix):
        return [r for r in fix.rows if r.u_p != "-" and r.marks == "-"]

    # Table 1: p = 1 mod 11 forces the Eisenstein prime into b_p
    fix1 = fixes[23]
    lam11 = prime_above(fix1.field, 11)[0][0]
    n_mazur = 0
    for r in data_rows(fix1):
        if r.p % 11 == 1:
            bI = RQIdeal.principal(parse_element(fix1.field, r.b_p))
            assert lam11.contains_ideal(bI), r.p
            n_mazur += 1
    assert n_mazur >= 20

    # Table 2: p = 1 mod 5 forces the ramified prime above 5 into b_p
    fix2 = fixes[125]
    lam5 = prime_above(fix2.field, 5)[0][0]
    n_five = 0
    for r in data_rows(fix2):
        if r.p % 5 == 1:
            bI = RQIdeal.principal(parse_element(fix2.field, r.b_p))
            assert lam5.contains_ideal(bI), r.p
            n_five += 1
    assert n_five >= 20

    # (2) | b_p happens on exactly these rows among unmarked rows with data
    for level, expected in ((125, {887, 1657, 1699}), (133, {839, 941, 1663, 1783, 1789})):
        fix = fixes[level]
        two = RQIdeal.principal(fix.field(2))
        got = {
            r.p
            for r in data_rows(fix)
            if two.contains_ideal(RQIdeal.principal(parse_element(fix.field, r.b_p)))
        }
        assert got == expected, (level, got)
    print(
        f"\ncriterion 3: PASS — Eisenstein pattern on {n_mazur} rows (N=23), ramified-5 "
        f"pattern on {n_five} rows (N=125), and the exact (2)-divisibility sets hold"
    )


def _random_good_curve(rng, p):
    while True:
        coeffs = [rng.randrange(p) for _ in range(5)] + [1]
        if good_reduction_check(coeffs, p):
            return make_curve(coeffs, p)


def _apply_h4(ctx, w, D):
    """h4(Frobenius) applied to a divisor class."""
    powers = [D]
    for _ in range(4):
        powers.append(ctx.frobenius(powers[-1]))
    coeffs = w.h4()  # lowest degree first
    acc = ctx.identity
    for c, P in zip(coeffs, powers):
        acc = ctx.add(acc, ctx.mul(P, c))
    return acc


def test_criterion_4_genus2_engine_properties():
    t0 = time.monotonic()
    rng = random.Random(20260826)
    primes = [5, 7, 11, 13, 17, 19, 23, 29, 31]
    curves = [_random_good_curve(rng, primes[i % len(primes)]) for i in range(20)]
    n_enumerated = 0
    for curve in curves:
        ctx = JacobianContext(curve)
        w = count_to_weil(count_points(curve, 1), count_points(curve, 2), curve.p)
        order = jacobian_order(w)
        pool = [ctx.random_point(rng) for _ in range(40)]
        for _ in range(1000):
            D1, D2, D3 = (rng.choice(pool) for _ in range(3))
            s12 = ctx.add(D1, D2)
            assert ctx.add(s12, D3) == ctx.add(D1, ctx.add(D2, D3))
            assert s12 == ctx.add(D2, D1)
        for D in pool[:10]:
            assert ctx.add(D, ctx.identity) == D
            assert ctx.add(D, ctx.neg(D)) == ctx.identity
            assert ctx.mul(D, order) == ctx.identity  # point order divides h4(1)
            assert _apply_h4(ctx, w, D) == ctx.identity
        if curve.p <= 11:
            assert len(ctx.enumerate_divisors()) == order
            n_enumerated += 1
    elapsed = time.monotonic() - t0
    assert n_enumerated >= 3
    assert elapsed < 60
    print(
        f"\ncriterion 4: PASS — group law, orders, and h4(Frobenius) verified on 20 random "
        f"curves (10^3 triples each; {n_enumerated} brute-force enumerations) in {elapsed:.1f}s"
    )


# (p, quintic coefficients, display-field discriminant); frozen from a search
# over small models, each ordinary, absolutely simple, nontrivial b_OL
ORACLE_CURVES = [
    (7, [3, 4, 1, 5, 5, 1], 2),
    (7, [6, 2, 6, 2, 0, 1], 2),
    (7, [5, 0, 0, 2, 4, 1], 2),
    (7, [5, 1, 2, 5, 5, 1], 13),
    (11, [6, 4, 0, 8, 9, 1], 3),
    (11, [1, 4, 2, 10, 5, 1], 2),
]

FIELDS = {d: RQField(d, t, n) for d, t, n in ((5, 1, -1), (2, 0, -2), (3, 0, -3), (13, 1, -3))}


def test_criterion_5_endo_conductor_oracle_equivalence():
    t0 = time.monotonic()
    for p, coeffs, d in ORACLE_CURVES:
        curve = make_curve(coeffs, p)
        w = count_to_weil(count_points(curve, 1), count_points(curve, 2), p)
        a_p, _ = recover_ap(w, FIELDS[d])
        frob = make_hp(a_p, p)
        assert classify(frob).is_ordinary
        assert abs_simple_check(w)
        cond = compute_bOL(frob)
        assert not cond.b_OL.is_unit_ideal()  # nontrivial maximal conductor
        ctx = EndoContext(curve, frob, rng=random.Random(p))
        b_p, _, verdict = determine_bp(cond, frob, ctx)
        assert verdict.is_member
        oracle_bp, _ = brute_force_bp(cond, frob, EndoContext(curve, frob, rng=random.Random(p + 1)))
        assert b_p == oracle_bp, (p, coeffs)
    elapsed = time.monotonic() - t0
    assert elapsed < 120
    print(
        f"\ncriterion 5: PASS — determine_bp matches the brute-force coset oracle on "
        f"{len(ORACLE_CURVES)} ordinary absolutely-simple curves in {elapsed:.1f}s"
    )


def _external_model():
    env = os.environ.get("FROBINT_N23_MODEL")
    if env and Path(env).is_file():
        return Path(env)
    default = DATA / "external" / "n23_model.txt"
    return default if default.is_file() else None


def test_criterion_6_curve_mode_against_table1():
    path = _external_model()
    if path is None:
        pytest.skip(
            "no externally supplied level-23 genus-2 model "
            "(set FROBINT_N23_MODEL or add data/external/n23_model.txt)"
        )
    t0 = time.monotonic()
    _, coeffs = parse_curve_line(path.read_text().strip().splitlines()[-1])
    fix = load_fixture(FIXTURES[23])
    expected = {r.p: r for r in fix.rows}
    primes = [p for p in expected if p <= 199]
    rows = run_curve_mode(coeffs, primes, 23, fix=fix, kmax=36, budget=64)
    n_ap = n_bp = 0
    for r in rows:
        exp = expected[r.p]
        if r.bail_reason or r.a_p == "-":
            continue
        got = canonical_conjugate(parse_element(fix.field, r.a_p))
        want = canonical_conjugate(parse_element(fix.field, exp.a_p))
        assert got == want, r.p
        n_ap += 1
        if r.u_p != "-" and exp.u_p != "-":
            got_b = RQIdeal.principal(parse_element(fix.field, r.b_p))
            want_b = RQIdeal.principal(parse_element(fix.field, exp.b_p))
            assert got_b == want_b, r.p  # beyond-cap rows carry dashes, never wrong values
            n_bp += 1
    elapsed = time.monotonic() - t0
    assert n_ap >= 1
    print(
        f"\ncriterion 6: PASS — curve mode reproduced a_p on {n_ap} primes and b_p on "
        f"{n_bp} covered rows for the supplied level-23 model in {elapsed:.1f}s"
    )
