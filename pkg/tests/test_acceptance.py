"""Acceptance criteria, one test each; every run prints a PASS/FAIL line per criterion."""

import pytest

from oddrank.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
