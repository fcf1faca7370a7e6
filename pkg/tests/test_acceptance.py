"""Every acceptance criterion at its exact tolerance, one PASS/FAIL line each."""

import pytest

from modinv.verify import CRITERIA, run_criterion

RESULTS = {}


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA], ids=[f"criterion-{n}" for n, _, _ in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    RESULTS[number] = result
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail


def test_summary(capsys):
    missing = [n for n, _, _ in CRITERIA if n not in RESULTS]
    for n in missing:
        RESULTS[n] = run_criterion(n)
    with capsys.disabled():
        print()
        for n in sorted(RESULTS):
            print(RESULTS[n].line())
        passed = sum(r.passed for r in RESULTS.values())
        print(f"{passed}/{len(RESULTS)} acceptance criteria passed")
    assert passed == len(CRITERIA)
