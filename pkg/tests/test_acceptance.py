"""Acceptance criteria 1-9, one pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -s` to see the lines inline; they are
also repeated in the terminal summary.
"""

import pytest

from reprspace.acceptance import CRITERIA, run_criterion

LINES: list[str] = []


@pytest.mark.parametrize(
    "number",
    [pytest.param(n, marks=pytest.mark.slow) if n == 8 else n for n in sorted(CRITERIA)],
)
def test_criterion(number):
    result = run_criterion(number)
    LINES.append(result.line())
    print(result.line())
    assert result.passed, result.line()
