"""Acceptance criteria, one test each; run with ``-s`` to see the PASS/FAIL lines."""

import pytest

from heyde_padic import acceptance


@pytest.mark.parametrize("criterion", acceptance.CRITERIA, ids=lambda c: c.__name__)
def test_criterion(criterion):
    result = criterion()
    print("\n" + result.line())
    print(f"    detail: {result.detail}")
    assert result.passed, result.detail
    assert result.elapsed < result.limit, f"took {result.elapsed:.2f}s, limit {result.limit}s"
