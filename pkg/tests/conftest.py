import random
from fractions import Fraction

import pytest

from liework.exactla import Mat
from liework.workbench.catalog import catalog

_acceptance_lines = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance_lines.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_lines:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")


def random_invertible(n, rng, spread=3):
    while True:
        m = Mat.from_rows(
            [[Fraction(rng.randint(-spread, spread), rng.randint(1, 2)) for _ in range(n)] for _ in range(n)],
            cols=n,
        )
        try:
            m.inverse()
        except ZeroDivisionError:
            continue
        return m


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def lie_entries():
    return [e for e in catalog() if e.kind == "lie-algebra"]
