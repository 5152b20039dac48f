"""Acceptance suite: every release criterion at its stated tolerance.

Each test prints one PASS/FAIL line (run with -s or -rA to see them all);
the same checks back the ``mixedifs verify`` command.  The two slowest
criteria (numerical geometry, dual tiling) run in a few minutes total.
"""

import pytest

from mixedifs.verify import CRITERIA

_BY_NAME = dict(CRITERIA)


@pytest.mark.parametrize("name", [name for name, _ in CRITERIA])
def test_criterion(name):
    ok, detail = _BY_NAME[name]()
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    assert ok, f"{name}: {detail}"
