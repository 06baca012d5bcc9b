import io
import json

import pytest

from ramcft.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def js(*argv):
    code, out, err = call(*argv)
    assert code == 0, (out, err)
    return json.loads(out)


def test_conductor_example():
    code, out, _ = call("conductor", "--q", "2", "--s", "1", "--f", "x")
    assert code == 0
    assert out.strip() == '{"conductor":"2*inf","schema":1}'


def test_rsw_example():
    rep = js("rsw", "--p", "3", "--E", "F3(u)", "--w", "[u*t^-4 + O(t^4)]")
    assert rep == {"m": 5, "lead": ["2*u", "0"], "schema": 1}


def test_selftest_example():
    code, out, _ = call("selftest", "--seed", "0", "--trials", "50")
    assert code == 0
    assert json.loads(out)["passed"]


@pytest.mark.parametrize("argv,result", [
    (["add", "--p", "2", "--v", "[1; 0]", "--w", "[1; 0]"], "[0; 1]"),
    (["F", "--p", "3", "--E", "F3(u)", "--v", "[t^-1; u]"], "[t^-3; u^3]"),
    (["V", "--p", "3", "--v", "[0]"], "[0; 0]"),
    (["best-form", "--p", "2", "--v", "[t^-2]"], "[t^-1]"),
    (["best-form", "--p", "3", "--E", "F3(u)", "--v", "[u*t^-3]"], "[u*t^-3]"),
])
def test_witt_examples(argv, result):
    assert js("witt", *argv)["result"] == result


def test_witt_conductor_and_fil():
    assert js("witt", "conductor", "--p", "2", "--v", "[t^-2]")["conductor"] == 2
    assert js("witt", "conductor", "--p", "3", "--v", "[t^-1; t^-2]")["conductor"] == 4
    rep = js("witt", "fil", "--p", "3", "--v", "[t^-1; t^-2]", "--m", "3")
    assert rep["in_fillog"] and not rep["in_fil"]
    assert js("witt", "fil", "--p", "3", "--v", "[t^-1; t^-2]", "--m", "4")["in_fil"]


def test_witt_length_overflow_is_a_domain_error():
    code, out, _ = call("witt", "V", "--p", "3", "--v", "[1; 0; 0]")
    assert code == 2 and "error" in json.loads(out)


def test_rsw_surjection():
    rep = js("rsw", "--p", "5", "--level", "3", "--target", "3")
    assert rep["w"] == "[t^-2]" and rep["m"] == 3
    rep = js("rsw", "--p", "3", "--level", "2", "--target", "1")
    assert rep["w"] == "[2*t^-1]"
    assert js("rsw", "--p", "2", "--w", "[t^-3]")["m"] == 4


@pytest.mark.parametrize("q,f,cond", [("2", "x", "2*inf"), ("2", "1/x", "2*[x]"), ("2", "x^2", "2*inf")])
def test_conductor_examples(q, f, cond):
    assert js("conductor", "--q", q, "--f", f)["conductor"] == cond


def test_rayclass():
    rep = js("rayclass", "--q", "2", "--modulus", "2*inf", "--oracle")
    assert rep["invariant_factors"] == [2] and rep["order"] == 2
    assert rep["oracle"]["invariant_factors"] == [2] and rep["oracle"]["converged"]
    assert js("rayclass", "--q", "3", "--modulus", "[x] + inf")["invariant_factors"] == [2]
    assert js("rayclass", "--q", "2", "--modulus", "inf")["order"] == 1


def test_reciprocity():
    rep = js("reciprocity", "--q", "2", "--f", "x", "--modulus", "2*inf", "--trials", "100")
    assert rep["passed"] and rep["counterexample"] is None
    rep = js("reciprocity", "--q", "2", "--f", "x", "--modulus", "inf", "--search")
    assert rep["violation"]


def test_schmid():
    rep = js("schmid", "--q", "3", "--a", "x", "--b", "1+x")
    assert rep["passed"] and rep["sum"] == 0
    assert js("schmid", "--q", "3", "--a", "x", "--b", "1+x", "--place", "[x+1]")["value"] == 2
    assert js("schmid", "--q", "3", "--a", "x", "--b", "1+x", "--place", "inf")["value"] == 1


def test_k2_commands():
    assert js("k2", "gersten", "--q", "3", "--a", "x+y", "--b", "x-y")["passed"]
    rep = js("k2", "claim1", "--p", "3", "--u1", "1", "--u2", "2", "--alpha", "y")
    assert rep["passed"] and {r["label"] for r in rep["rows"]} == {"f", "p1", "p2", "q"}
    rep = js("k2", "claim2", "--p", "3", "--alpha", "1")
    assert rep["passed"]
    assert [r["expected"] for r in rep["rows"] if r["label"] == "f"] == ["y"]
    rep = js("k2", "mu", "--p", "3", "--alpha", "y^2", "--beta", "y^2+y^3")
    assert [t["carrier"] for t in rep["mu"]["terms"]] == ["(x)", "(x + y)"]


def test_text_format():
    code, out, _ = call("k2", "claim1", "--p", "3", "--u1", "1", "--u2", "2", "--alpha", "y",
                        "--format", "text")
    assert code == 0 and "passed: true" in out.lower()


@pytest.mark.parametrize("argv,token,pos", [
    (["conductor", "--q", "2", "--f", "x + * 1"], "*", 4),
    (["conductor", "--q", "6", "--f", "x"], "6", 3),
    (["rsw", "--p", "3", "--w", "[u*t^-4]", "--E", "F3(v"], None, None),
    (["frob"], "frob", 1),
])
def test_usage_errors_name_token_and_position(argv, token, pos):
    code, out, err = call(*argv)
    assert code == 2 and out == ""
    assert "usage error" in err
    if token is not None:
        assert f"token '{token}' at position {pos}" in err


def test_output_is_deterministic():
    argv = ["reciprocity", "--q", "3", "--f", "x^2", "--modulus", "3*inf", "--seed", "7"]
    assert call(*argv) == call(*argv)
    a = call("selftest", "--seed", "3", "--trials", "4")
    b = call("selftest", "--seed", "3", "--trials", "4")
    assert a == b and a[0] == 0
