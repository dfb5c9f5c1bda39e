"""Table production: eigenvalue fixtures and curve models to output rows.

A fixture is a TSV transcription of a published table of Hecke data:
header comments declare the level and the display minimal polynomial,
then one row per prime with columns p, a_p, u_p, b_p, fac_bp, fac_bOL,
marks ("-" for absent; "*" = not ordinary, "** " = not absolutely
simple).  Eigen mode recomputes the conductor column (and marks) from
a_p alone; curve mode recomputes everything from a supplied genus-2
model.  Factorization strings are compared after canonical reparse, and
split-prime labels may be swapped per residue characteristic, since the
labelling of the two primes above a split ell is a convention.
"""

import re
from dataclasses import dataclass, field as dc_field

from .frobdata import (
    NotRM,
    WeilBoundViolated,
    abs_simple_check,
    classify,
    count_to_weil,
    make_hp,
    recover_ap,
    weil_from_frob,
)
from .orders import DiscZero, compute_bOL, make_order_spec
from .realquad import RQField, RQIdeal, format_element, parse_element
from .sigma import build_sigma, verify_sigma

# Rows whose printed value contradicts the order-basis criterion that the
# source declares it was computed with; keyed by (level, p).  Each entry is
# (column, printed, certified) where "certified" is the value backed by an
# explicit basis-condition witness (value larger than printed) or by an
# exhaustive no-witness proof (value smaller than printed); the certification
# is replayed in the test suite.  The marks entries record two rows whose
# absolute-simplicity flags are exchanged: the quartic at 809 has no
# root-of-unity eigenvalue ratio while the one at 829 has ratio -1.
FIXTURE_ERRATA = {
    (23, 101): ("fac_bOL", "(2)", "(2)^2"),
    (23, 271): ("fac_bOL", "(2)", "(2)*l5"),
    (23, 809): (("fac_bOL", "(2)", "(2)^2"), ("marks", "**", "-")),
    (23, 821): ("fac_bOL", "(2)^2", "(2)"),
    (23, 829): ("marks", "-", "**"),
    (23, 853): ("fac_bOL", "(2)", "(2)^2"),
    (23, 1181): ("fac_bOL", "(2)", "(2)^2"),
    (23, 1453): ("fac_bOL", "(2)*l11_2*l11_1", "(2)^2*l11_1*l11_2"),
    (23, 1613): ("fac_bOL", "(2)", "(2)^2"),
    (23, 1669): ("fac_bOL", "(2)", "(2)^2"),
    (23, 1789): ("fac_bOL", "(2)", "(2)^2"),
    (23, 1861): ("fac_bOL", "(2)", "(2)^2"),
    (23, 1949): ("fac_bOL", "(2)", "(2)^2"),
    (125, 89): ("fac_bOL", "(2)", "(2)^2"),
    (125, 457): ("fac_bOL", "(2)^2", "(2)"),
    (125, 509): ("fac_bOL", "(2)", "(2)^2"),
    (125, 661): ("fac_bOL", "(2)*l5", "(2)^3*l5"),
    (125, 761): ("fac_bOL", "(2)^3*l5", "(2)*l5"),
    (133, 509): ("fac_bOL", "(2)", "(2)^2"),
    (133, 541): ("fac_bOL", "(2)", "(2)^3"),
    (133, 757): ("fac_bOL", "(2)", "(2)^2"),
    (133, 1409): ("fac_bOL", "(2)*(3)", "(2)^2*(3)"),
    (133, 1973): ("fac_bOL", "(2)", "(2)^2"),
}


def errata_for(level, p, column):
    """FIXTURE_ERRATA entries for one row and column (values may be nested)."""
    ent = FIXTURE_ERRATA.get((level, p), ())
    if ent and isinstance(ent[0], str):
        ent = (ent,)
    return [e for e in ent if e[0] == column]


@dataclass(frozen=True)
class FixtureRow:
    p: int
    a_p: str
    u_p: str
    b_p: str
    fac_bp: str
    fac_bOL: str
    marks: str


@dataclass(frozen=True)
class Fixture:
    level: int
    field: RQField
    rows: tuple


@dataclass
class TableRow:
    p: int
    a_p: str = "-"
    u_p: str = "-"
    b_p: str = "-"
    fac_bp: str = "-"
    fac_bOL: str = "-"
    marks: str = "-"
    bail_reason: str | None = None


def parse_minpoly(text):
    """(t, n) from "x^2+t*x+n" (t term optional, compact form)."""
    s = text.replace(" ", "").replace("*", "")
    m = re.match(r"^x\^2(?:([+-](?:\d+)?)x)?([+-]\d+)?$", s)
    if not m:
        raise ValueError(f"cannot parse minimal polynomial {text!r}")
    traw = m.group(1)
    if traw is None:
        t = 0
    elif traw in ("+", "-"):
        t = int(traw + "1")
    else:
        t = int(traw)
    n = int(m.group(2) or 0)
    return t, n


def load_fixture(path):
    level = None
    d = None
    minpoly = None
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line[1:].partition(":")
                key, val = key.strip(), val.strip()
                if key == "level":
                    level = int(val)
                elif key == "minpoly":
                    minpoly = parse_minpoly(val)
                elif key == "d":
                    d = int(val)
                continue
            cells = line.split("\t")
            if cells[0] == "p":
                continue
            rows.append(FixtureRow(int(cells[0]), *cells[1:7]))
    if level is None or d is None or minpoly is None:
        raise ValueError(f"fixture {path} is missing level/minpoly/d headers")
    E = RQField(d, minpoly[0], minpoly[1])
    return Fixture(level=level, field=E, rows=tuple(rows))


def canonical_factor_string(field, text, swap_ells=()):
    """Reparse a factorization string into the canonical sorted form.

    swap_ells lists residue characteristics whose two split-prime labels
    are to be exchanged before sorting.
    """
    if text == "-":
        return "-"
    parts = []
    for token in text.split("*"):
        base, _, exp = token.partition("^")
        e = int(exp) if exp else 1
        m = re.match(r"^l(\d+)_([12])$", base)
        if m and int(m.group(1)) in swap_ells:
            base = f"l{m.group(1)}_{3 - int(m.group(2))}"
        parts.append((base, e))
    parts.sort(key=lambda be: _label_sort_key(be[0]))
    return "*".join(b + (f"^{e}" if e > 1 else "") for b, e in parts) if parts else "(1)"


def _label_sort_key(base):
    m = re.match(r"^\((\d+)\)$", base)
    if m:
        return (int(m.group(1)), 0)
    m = re.match(r"^l(\d+)(?:_(\d+))?$", base)
    return (int(m.group(1)), int(m.group(2) or 0))


def _split_ells(field, text):
    out = set()
    if text == "-":
        return out
    for token in text.split("*"):
        m = re.match(r"^l(\d+)_([12])", token)
        if m:
            out.add(int(m.group(1)))
    return out


def validate_fixture(fix):
    """Transcription self-checks; returns list of (p, problem) findings.

    Rows in KNOWN_DATA_DISCREPANCIES are expected to appear here and are
    annotated as such.
    """
    from .realquad import factor_ideal, format_factorization

    findings = []
    for row in fix.rows:
        a_p = parse_element(fix.field, row.a_p)
        frob = make_hp(a_p, row.p)
        if row.u_p == "-":
            continue
        u = parse_element(fix.field, row.u_p)
        b = parse_element(fix.field, row.b_p)
        bI = RQIdeal.principal(b)
        if not (bI.contains(2 * u - a_p) and (bI * bI).contains(frob.hp_at(u))):
            findings.append((row.p, "printed (u_p, b_p) fail the order-basis conditions"))
        fac = format_factorization(factor_ideal(bI))
        swapped = _split_ells(fix.field, row.fac_bp)
        # a per-row label swap is tolerated here; table-wide consistency of
        # the swap is the diff's job
        if fac not in (
            canonical_factor_string(fix.field, row.fac_bp),
            canonical_factor_string(fix.field, row.fac_bp, swap_ells=swapped),
        ):
            findings.append((row.p, f"factorization of printed b_p is {fac}, not {row.fac_bp}"))
        cond = compute_bOL(frob)
        if not bI.contains_ideal(cond.b_OL):
            findings.append((row.p, "printed b_p does not divide the computed conductor"))
    return findings


def _marks_for(frob, w):
    cl = classify(frob)
    if not cl.is_ordinary:
        return "*"
    if cl.is_fp_simple:
        try:
            simple = abs_simple_check(w)
        except ValueError:  # reducible quartic: not absolutely simple
            simple = False
        if not simple:
            return "**"
    return "-"


def run_eigen_mode(fix):
    """Conductor column and classification marks from a_p alone."""
    if not fix.field.class_number_one_attested:
        raise ValueError("field must have class number one")
    out = []
    for row in fix.rows:
        tr = TableRow(p=row.p, a_p=row.a_p)
        try:
            a_p = parse_element(fix.field, row.a_p)
            frob = make_hp(a_p, row.p)
            w = weil_from_frob(frob)
            tr.marks = _marks_for(frob, w)
            cond = compute_bOL(frob)
            tr.fac_bOL = cond.factor_string()
            if cond.b_OL.is_unit_ideal():
                tr.u_p, tr.b_p, tr.fac_bp = "0", "1", "(1)"
        except DiscZero:
            tr.bail_reason = "SCALAR_FROBENIUS"
        except Exception as exc:  # row-level fault isolation
            tr.bail_reason = f"ERROR: {exc}"
        out.append(tr)
    return out


def run_curve_mode(
    model_coeffs,
    primes,
    level,
    fix=None,
    field=None,
    kmax=36,
    budget=64,
    force_nonordinary=False,
    counting_budget=4 * 10**6,
):
    """Full per-prime pipeline from a rational genus-2 model.

    The display field comes from the fixture when given, else must be
    passed explicitly.  Rows that fail a gate (bad reduction, not
    ordinary, not absolutely simple, caps exceeded) carry dashes and a
    bail reason, mirroring the source tables.
    """
    import random

    from .endoring import EndoContext, determine_bp
    from .jacobian import (
        BadReduction,
        BudgetExceeded,
        UnsupportedModel,
        count_points,
        good_reduction_check,
        make_curve,
    )
    from .realquad import factor_ideal, format_factorization

    if field is None:
        if fix is None:
            raise ValueError("curve mode needs a fixture or an explicit field")
        field = fix.field
    fixture_by_p = {r.p: r for r in (fix.rows if fix else ())}
    out = []
    for p in primes:
        tr = TableRow(p=p)
        out.append(tr)
        if level % p == 0:
            tr.bail_reason = "BAD_REDUCTION"
            continue
        try:
            if not good_reduction_check(model_coeffs, p):
                tr.bail_reason = "BAD_REDUCTION"
                continue
            curve = make_curve(model_coeffs, p)
            w = count_to_weil(
                count_points(curve, 1, counting_budget),
                count_points(curve, 2, counting_budget),
                p,
            )
            pair = recover_ap(w, field)
        except (BadReduction, BudgetExceeded) as exc:
            tr.bail_reason = type(exc).__name__.upper()
            continue
        except NotRM:
            tr.bail_reason = "NOT_RM"
            continue
        except WeilBoundViolated as exc:
            tr.bail_reason = f"COUNT_INCONSISTENT: {exc}"
            continue
        a_p = _pick_conjugate(pair, fixture_by_p.get(p), field)
        tr.a_p = format_element(a_p)
        frob = make_hp(a_p, p)
        tr.marks = _marks_for(frob, w)
        if not frob.disc:
            tr.bail_reason = "SCALAR_FROBENIUS"
            continue
        cond = compute_bOL(frob)
        tr.fac_bOL = cond.factor_string()
        cl = classify(frob)
        if not cl.is_ordinary and not force_nonordinary:
            tr.bail_reason = "NOT_ORDINARY"
            continue
        if not cl.is_fp_simple or tr.marks == "**":
            tr.bail_reason = "NOT_ABS_SIMPLE"
            continue
        if cond.b_OL.is_unit_ideal():
            tr.u_p, tr.b_p, tr.fac_bp = "0", "1", "(1)"
            continue
        try:
            ctx = EndoContext(curve, frob, k_max=kmax, budget=budget, rng=random.Random(p))
            b_p, u_p, verdict = determine_bp(cond, frob, ctx)
        except UnsupportedModel:
            tr.bail_reason = "UNSUPPORTED_MODEL"
            continue
        if b_p is None:
            tr.bail_reason = f"INCONCLUSIVE: {verdict.reason}"
            continue
        tr.u_p = format_element(u_p)
        tr.b_p = format_element(b_p.generator())
        tr.fac_bp = format_factorization(factor_ideal(b_p))
        spec = make_order_spec(b_p, frob, u=u_p)
        report = verify_sigma(build_sigma(spec), spec)
        assert report.ok, f"sigma verification failed at p={p}"
    return out


def _pick_conjugate(pair, fixture_row, field):
    from .frobdata import canonical_conjugate

    if fixture_row is not None and fixture_row.a_p != "-":
        want = parse_element(field, fixture_row.a_p)
        for cand in pair:
            if cand == want:
                return cand
    return canonical_conjugate(pair[0])


# ---------------------------------------------------------------------------
# rendering and regression diff

_COLUMNS = ("p", "a_p", "u_p", "b_p", "fac_bp", "fac_bOL", "marks")


def render_table(rows, fmt="tsv"):
    cells = [[str(r.p), r.a_p, r.u_p, r.b_p, r.fac_bp, r.fac_bOL, r.marks] for r in rows]
    if fmt == "tsv":
        lines = ["\t".join(_COLUMNS)]
        lines += ["\t".join(c) for c in cells]
        return "\n".join(lines) + "\n"
    if fmt == "markdown":
        widths = [max(len(h), *(len(c[i]) for c in cells)) if cells else len(h) for i, h in enumerate(_COLUMNS)]
        def fmt_row(vals):
            return "| " + " | ".join(v.ljust(w) for v, w in zip(vals, widths)) + " |"
        lines = [fmt_row(_COLUMNS), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
        lines += [fmt_row(c) for c in cells]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


@dataclass
class DiffReport:
    verdicts: dict = dc_field(default_factory=dict)  # p -> verdict string
    swap_ells: tuple = ()
    mismatches: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return not self.mismatches


def _best_swap(field, computed, expected):
    """Choose per-ell label swaps making the factor columns agree."""
    ells = set()
    for c, e in zip(computed, expected):
        ells |= _split_ells(field, c) | _split_ells(field, e)
    chosen = []
    for ell in sorted(ells):
        plain = swapped = 0
        for c, e in zip(computed, expected):
            if e == "-" or c == "-":
                continue
            ce = canonical_factor_string(field, e)
            if canonical_factor_string(field, c) == ce:
                plain += 1
            if canonical_factor_string(field, c, swap_ells=(ell,)) == ce:
                swapped += 1
        if swapped > plain:
            chosen.append(ell)
    return tuple(chosen)


def diff_against_fixture(rows, fix):
    """Regression verdict per prime: exact / u-class / label-swap / mismatch."""
    field = fix.field
    expected = {r.p: r for r in fix.rows}
    computed_facs = [r.fac_bOL for r in rows if r.p in expected]
    expected_facs = [expected[r.p].fac_bOL for r in rows if r.p in expected]
    swaps = _best_swap(field, computed_facs, expected_facs)
    report = DiffReport(swap_ells=swaps)
    for r in rows:
        exp = expected.get(r.p)
        if exp is None:
            continue
        verdict = []
        # conductor column
        got = canonical_factor_string(field, r.fac_bOL, swap_ells=swaps)
        want = canonical_factor_string(field, exp.fac_bOL)
        if got != want:
            if any(
                canonical_factor_string(field, r.fac_bOL)
                == canonical_factor_string(field, e[2])
                for e in errata_for(fix.level, r.p, "fac_bOL")
            ):
                verdict.append("known-erratum")
            else:
                verdict.append("fac_bOL mismatch")
        elif got != canonical_factor_string(field, r.fac_bOL):
            verdict.append("label-swap")
        # marks: the source tables only flag rows carrying (u_p, b_p) data
        if exp.u_p != "-" and r.marks != exp.marks:
            if any(r.marks == e[2] for e in errata_for(fix.level, r.p, "marks")):
                verdict.append("known-erratum")
            else:
                verdict.append("marks mismatch")
        # a_p up to conjugation
        if r.a_p != "-" and exp.a_p != "-":
            got_ap = parse_element(field, r.a_p)
            want_ap = parse_element(field, exp.a_p)
            if got_ap == want_ap:
                pass
            elif got_ap == want_ap.conj():
                verdict.append("conjugate")
            else:
                verdict.append("a_p mismatch")
        # u/b columns, when both sides computed them
        if r.b_p != "-" and exp.b_p != "-":
            got_b = RQIdeal.principal(parse_element(field, r.b_p))
            want_b = RQIdeal.principal(parse_element(field, exp.b_p))
            if got_b != want_b:
                verdict.append("b_p mismatch")
            else:
                gu = parse_element(field, r.u_p)
                wu = parse_element(field, exp.u_p)
                if gu == wu:
                    pass
                elif got_b.is_unit_ideal() or got_b.contains(gu - wu):
                    verdict.append("u-class")
                else:
                    verdict.append("u_p mismatch")
        final = ", ".join(dict.fromkeys(verdict)) if verdict else "exact"
        report.verdicts[r.p] = final
        if any(v.endswith("mismatch") for v in verdict):
            report.mismatches.append((r.p, final))
    return report
