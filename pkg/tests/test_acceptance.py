"""The acceptance gate: every headline claim, exact, one line per criterion.

Each test runs one named check from ashmlab.acceptance (the same checks the
``ashmlab reproduce`` command executes) and prints its PASS/FAIL line, so the
suite output documents the whole reproduction in one place.
"""

import pytest

from ashmlab import acceptance


@pytest.mark.parametrize("name,func", acceptance.CHECKS, ids=[name for name, _ in acceptance.CHECKS])
def test_acceptance_criterion(name, func):
    ok, detail = func()
    print(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
    assert ok, f"{name}: {detail}"
