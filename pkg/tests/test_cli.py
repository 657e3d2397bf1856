import json

import pytest

from omvar.cli import parse_signs, run
from omvar.fixtures import F3, fixture_path
from omvar.io import dump_covectors

F2_TXT = str(fixture_path("f2.txt"))
F3_JSON = str(fixture_path("f3.json"))
TWOMAX = str(fixture_path("two_max.json"))


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_axioms(capsys, tmp_path):
    code, out = call(capsys, "axioms", "--input", F2_TXT)
    assert code == 0 and out["status"] == "pass"
    p = tmp_path / "bad.txt"
    p.write_text("".join(x + "\n" for x in ["00", "+0", "-0", "0+", "0-", "++", "-+", "--"]))
    code, out = call(capsys, "axioms", "--input", str(p))
    assert code == 1
    assert {w["axiom"] for w in out["report"]["witnesses"]} >= {"composition"}
    p.write_text("+-x\n")
    code, out = call(capsys, "axioms", "--input", str(p))
    assert code == 2 and out["status"] == "error"


def test_det_modes(capsys, tmp_path):
    p = tmp_path / "f1.txt"
    p.write_text("0\n+\n-\n")
    code, out = call(capsys, "det", "--input", str(p), "--mode", "symbolic", "--mode", "modp", "--mode", "formula")
    assert code == 0
    assert out["symbolic"] == "1 - U0^2"
    assert out["symbolic_equals_formula"] and out["modp_equals_formula"] and out["modp_equals_symbolic"]
    code, out = call(capsys, "det", "--input", F3_JSON)
    assert code == 0 and out["modp_equals_formula"] and len(out["modp"]["values"]) == 20
    code, out = call(capsys, "det", "--input", TWOMAX, "--mode", "symbolic")
    assert code == 3 and out["status"] == "guard"


def test_flags_validated(capsys):
    assert call(capsys, "det", "--input", F3_JSON, "--prime", "91")[0] == 2
    assert call(capsys, "det", "--input", F3_JSON, "--trials", "0")[0] == 2
    assert call(capsys, "det", "--input", F3_JSON, "--element-order", "0,0,1")[0] == 2
    assert call(capsys, "det", "--input", F3_JSON, "--element-order", "2,0,1")[0] == 0


def test_factorize(capsys):
    code, out = call(capsys, "factorize", "--input", F2_TXT)
    assert code == 0 and out["report"]["details"]["mode"] == "symbolic"
    code, out = call(capsys, "factorize", "--input", F3_JSON, "--max-symbolic", "4", "--trials", "5")
    assert code == 0 and out["report"]["details"]["mode"] == "modp"


def test_rerun_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(["factorize", "--input", F3_JSON, "--max-symbolic", "2", "--seed", "9", "--json-out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    text = a.read_text()
    assert json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n" == text


def test_supertope(capsys):
    code, out = call(capsys, "supertope", "--input", F3_JSON, "--plus", "0")
    assert code == 0 and out["contractible_surrogate"]
    assert out["closed"] == out["closed_bruteforce"] is True
    assert len(out["bases"]) == 6
    code, out = call(capsys, "supertope", "--input", F3_JSON, "--plus", "0,1", "--minus", "2")
    assert code == 1
    code, out = call(capsys, "supertope", "--input", F3_JSON, "--plus", "0", "--base", "+-0")
    assert code == 2


def test_cone(capsys):
    code, out = call(capsys, "cone", "--input", F3_JSON, "--signs", "0:+")
    assert code == 0
    assert out["report"]["details"]["factors"] == [{"exponent": 1, "zeros": [1]}, {"exponent": 1, "zeros": [2]}]
    code, out = call(capsys, "cone", "--input", F3_JSON, "--signs", "0:+,1:+")
    assert code == 1  # not a closed supertope
    code, out = call(capsys, "cone", "--input", F3_JSON, "--signs", "0:*")
    assert code == 2


def test_parse_signs():
    M = F3()
    assert parse_signs(M, "0:+,2:-") == {0: 1, 2: -1}
    with pytest.raises(Exception):
        parse_signs(M, "0:+,0:-")


def test_invariance_and_matroid(capsys):
    code, out = call(capsys, "invariance", "--input", F3_JSON, "--reorient", "0,2")
    assert code == 0 and out["runs"][0]["reorient"] == [0, 2]
    code, out = call(capsys, "invariance", "--input", F3_JSON)
    assert code == 0 and len(out["runs"]) == 4
    code, out = call(capsys, "matroid", "--input", F3_JSON)
    assert code == 0 and out["beta"] == 1 and out["bounded_topes"] == {"0": 2, "1": 2, "2": 2}


def test_blocks(capsys):
    code, out = call(capsys, "blocks", "--input", F3_JSON, "--element", "2")
    assert code == 0 and len(out["blocks"]) == 1


def test_covector_input_kind(capsys, tmp_path):
    p = tmp_path / "f3.dat"
    p.write_text(dump_covectors(F3()))
    code, out = call(capsys, "matroid", "--input", str(p), "--kind", "covectors")
    assert code == 0
