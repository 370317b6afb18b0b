"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line, visible in ``pytest -v``
output. Run ``python tests/test_acceptance.py`` to get just the eleven lines.
All tolerances are exact.
"""
import contextlib
import sys
from pathlib import Path

import pytest

from imkit import experiments as ex

BASELINE = Path(__file__).parent / "data" / "bounding_baseline.json"


def _report(number, title, results, capsys=None):
    passed = all(r.passed for r in results)
    counters = "; ".join(f"{r.name} {r.counters}" for r in results)
    line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {title} [{counters}]"
    ctx = capsys.disabled() if capsys is not None else contextlib.nullcontext()
    with ctx:
        print("\n" + line if capsys is not None else line)
        for r in results:
            for f in r.failures[:5]:
                print(f"    {r.name}: {f}")
    return passed


def criterion_1():
    return "containment equivalence on all 4x4 hosts", [ex.containment_equivalence(4, 4)]


def criterion_2():
    return "Q1..Q4 witnesses for p=2..6", [ex.non_bounding(range(2, 7))]


def criterion_3():
    return "bounding patterns up to 3x3: certificates and class complexities", [
        ex.certificate_scan(3, 3),
        ex.bounding_regression(ex.load_baseline(BASELINE)),
    ]


def criterion_4():
    return "walk covers on all 4x4 hosts, k=2,3,4", [ex.walk_machinery(4, 4, (2, 3, 4))]


def criterion_5():
    return "line cover equals independent ones", [ex.konig(1000, seed=0)]


def criterion_6():
    return "structure of Q-avoiders up to 4x4", [ex.structure_scan(4)]


def criterion_7():
    return "two-types normal forms up to 4x4", [ex.two_types_scan(4)]


def criterion_8():
    return "non-principal counterexample, p=2..5", [ex.pro_counter(range(2, 6), 4)]


def criterion_9():
    return "critical 0-runs in Av(Q1,Q2) on 4x4", [ex.pro_unbinter(4)]


def criterion_10():
    return "union and intersection bounds on 4x4", [ex.union_intersection(4, 4)]


def criterion_11():
    return "appending an empty column", [ex.empty_column(4, 4)]


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_criterion(number, capsys):
    title, results = CRITERIA[number - 1]()
    assert _report(number, title, results, capsys)


if __name__ == "__main__":
    ok = True
    for i, fn in enumerate(CRITERIA, 1):
        title, results = fn()
        ok &= _report(i, title, results)
    sys.exit(0 if ok else 1)
