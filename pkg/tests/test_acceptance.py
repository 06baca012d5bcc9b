import pytest

from ramcft.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [n for n, *_ in CRITERIA])
def test_criterion(number, capsys):
    out = run_criterion(number, seed=0)
    with capsys.disabled():
        print()
        print(out.line())
        for d in out.details():
            print("    " + d)
    assert out.passed, out.details()
