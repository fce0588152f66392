"""The twelve acceptance criteria, one test each, plus a summary printout.

Run with ``pytest tests/test_acceptance.py -s`` to see the PASS/FAIL lines.
"""

import pytest

from ellstab import checks
from ellstab.lattice import K3


@pytest.fixture(scope="module")
def report():
    results = checks.run_all(K3)
    print()
    for i, c in enumerate(results, 1):
        print(f"[{i:2d}] {c.line()}")
    return {c.name: c for c in results}


@pytest.mark.parametrize("name", [name for name, _ in checks.CHECKS])
def test_criterion(report, name):
    c = report[name]
    assert c.passed, c.detail


def test_all_criteria_present(report):
    assert len(report) == 12
