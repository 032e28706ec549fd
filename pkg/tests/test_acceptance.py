"""Acceptance criteria.

Each criterion runs one named verification suite (exact checks only, zero
tolerance) and prints a PASS/FAIL line; the suites are the same ones the
command line exposes under `verify`.
"""

import pytest

from dmspace.verify import SUITES, run_suite

CRITERIA = [
    ("1 rank-6 example", "rank6"),
    ("2 circle homothety", "homothety"),
    ("3 zonotope volume", "zonotope"),
    ("4 exact sequence", "exact-seq"),
    ("5 basis unimodularity", "labas"),
    ("6 counting oracle equivalence", "partition-oracle"),
    ("7 big-cell agreement", "big-cell"),
    ("8 local decomposition", "localize"),
    ("9 filtration roundtrip", "filtration"),
    ("10 face inverse identity", "pface"),
]


@pytest.mark.parametrize("label,suite", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_acceptance_criterion(label, suite):
    (report,) = run_suite(suite)
    ok = report["pass"]
    n = len(report["checks"])
    passed = sum(1 for c in report["checks"] if c["pass"])
    print(f"{'PASS' if ok else 'FAIL'} criterion {label}: "
          f"{passed}/{n} checks")
    if not ok:
        for c in report["checks"]:
            if not c["pass"]:
                print(f"  failed: {c['name']} {c.get('detail', '')}")
    assert ok, f"criterion {label} failed"


def test_all_suites_registered():
    assert set(SUITES) == {s for _, s in CRITERIA}
