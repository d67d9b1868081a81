import json

import pytest

from nalg.cli import main
from nalg.expr import parse_polynomial, polynomial_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_derive(capsys):
    code, out, _ = run(capsys, "derive", "--var", "1", "--expr", "(x (x x))")
    assert code == 0 and out.strip() == "3*(x x)"


def test_parse_error_exit_2(capsys):
    code, _, err = run(capsys, "parse", "--expr", "((x1)")
    assert code == 2 and "column 1" in err


def test_domain_error_exit_1(capsys):
    code, _, err = run(capsys, "ode", "solve", "--coeffs", "1", "--init", "x")
    assert code == 1 and "not a constant" in err
    code, _, _ = run(capsys, "generators", "--degree", "2")
    assert code == 1


def test_unknown_flag_rejected(capsys):
    with pytest.raises(SystemExit) as info:
        main(["derive", "--expr", "x", "--bogus"])
    assert info.value.code == 2


def test_global_flags_either_side(capsys):
    a = run(capsys, "--format", "json", "--flavor", "commutative", "parse", "--expr", "(x2 x1)")[1]
    b = run(capsys, "parse", "--expr", "(x2 x1)", "--format", "json", "--flavor", "commutative")[1]
    assert a == b
    assert json.loads(a) == {"flavor": "commutative", "terms": [{"coeff": "1", "monomial": [1, 2]}]}


def test_decompose(capsys):
    code, out, _ = run(capsys, "--format", "json", "decompose", "--flavor", "magma", "--k", "2")
    data = json.loads(out)
    assert code == 0 and data["decomposition"] == [{"partition": [1, 1], "multiplicity": 1}]
    code, out, _ = run(capsys, "decompose", "--k", "4", "--method", "both")
    assert out.splitlines()[:5] == ["[4]  3", "[3,1]  10", "[2,2]  7", "[2,1,1]  10", "[1,1,1,1]  4"]


def test_taylor_expand_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "taylor-expand", "--expr", "(x (x x))")
    data = json.loads(out)
    assert [c["exponent"] for c in data["coefficients"]] == [[0], [3]]


def test_taylor_expand_family(capsys, tmp_path):
    cfg = tmp_path / "jordan.json"
    cfg.write_text('{"family": "jordan"}')
    code, out, _ = run(capsys, "--flavor", "associative", "taylor-expand", "--expr", "(x x)", "--family", str(cfg))
    assert code == 0 and out.strip() == "[2]: 1/4"


def test_constants_and_generators(capsys):
    code, out, _ = run(capsys, "constants", "--degree", "3")
    assert out.splitlines() == ["multidegree [3]: dim 1 (component 2)", "  (x (x x)) - ((x x) x)"]
    code, out, _ = run(capsys, "--format", "json", "constants", "--degree", "1,1", "--flavor", "associative")
    assert json.loads(out)[0]["dimension"] == 1
    code, out, _ = run(capsys, "generators", "--degree", "5")
    assert out.startswith("9 generators in degree 5")


def test_hilbert(capsys):
    code, out, _ = run(capsys, "hilbert", "--flavor", "magma", "--vars", "2", "--max-degree", "4")
    assert code == 0 and all(line.startswith("PASS") for line in out.splitlines())


def test_ode_commands(capsys):
    code, out, _ = run(capsys, "ode", "solve", "--order", "1", "--coeffs", "-1", "--init", "1", "--N", "4")
    assert code == 0
    assert out.splitlines()[:5] == ["c_0 = 1", "c_1 = 1", "c_2 = 1", "c_3 = 1", "c_4 = 1"]
    assert out.splitlines()[-1] == "residual through degree 3: 0"
    code, out, _ = run(capsys, "--format", "json", "ode", "homogeneous", "--roots", "1:2,0:1", "--N", "10")
    data = json.loads(out)
    assert code == 0 and data["residual_zero"] is True and data["coefficients_a"] == ["-2", "1", "0"]
    code, _, _ = run(capsys, "ode", "solve", "--order", "2", "--coeffs", "1", "--init", "1")
    assert code == 1


def test_exp(capsys):
    code, out, _ = run(capsys, "exp", "--N", "3")
    assert out.splitlines() == ["e_0 = 1", "e_1 = x", "e_2 = 1/2*(x x)",
                                "e_3 = 1/12*(x (x x)) + 1/12*((x x) x)"]


def test_verify_exp(capsys):
    code, out, _ = run(capsys, "--format", "json", "verify", "exp")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert all({"name", "expected", "computed", "passed"} <= set(c) for c in data["suites"]["exp"])


def test_text_and_json_agree(capsys):
    text = run(capsys, "derive", "--expr", "((x x) (x x)) + (x2 x1)", "--var", "1")[1].strip()
    js = run(capsys, "--format", "json", "derive", "--expr", "((x x) (x x)) + (x2 x1)", "--var", "1")[1]
    assert parse_polynomial(text) == polynomial_from_json(js)
