#!/usr/bin/env python3
"""Recompute the three conductor tables from their Hecke-eigenvalue fixtures.

For each fixture this prints the recomputed table and a diff summary
against the transcribed source values (exact / label-swap / known-erratum
verdict counts).  Exits nonzero if any genuine mismatch appears.
"""

import sys
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from frobint.pipeline import diff_against_fixture, load_fixture, render_table, run_eigen_mode

DATA = Path(__file__).resolve().parent.parent / "data"
FIXTURES = ["table1_N23.tsv", "table2_N125.tsv", "table3_N133.tsv"]


def main():
    failed = False
    for name in FIXTURES:
        fix = load_fixture(DATA / name)
        rows = run_eigen_mode(fix)
        print(f"== level {fix.level} ({name}, {len(rows)} rows) ==")
        print(render_table(rows, "tsv"))
        report = diff_against_fixture(rows, fix)
        counts = Counter(report.verdicts.values())
        summary = ", ".join(f"{v}: {n}" for v, n in counts.most_common())
        print(f"diff vs fixture [swapped split labels at {report.swap_ells or 'none'}]: {summary}")
        if not report.ok:
            failed = True
            for p, verdict in report.mismatches:
                print(f"  MISMATCH p={p}: {verdict}")
        print()
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
