from fractions import Fraction

import pytest

from affine_lab.generators import SplitMix64


@pytest.fixture
def rng():
    return SplitMix64(20240611)


def F(*args):
    return Fraction(*args)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance as acc

    if not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(acc.RESULTS):
        ok, detail = acc.RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
