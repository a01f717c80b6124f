import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from homlie.cli import run
from homlie.lie_core import sl2, to_json

SCHEMA = json.loads(resources.files("homlie").joinpath("schemas/report.schema.json").read_text())


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    report = json.loads(buf.getvalue())
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_hl_sl2():
    code, rep = call("hl", "--algebra", "sl2")
    assert code == 0
    assert rep["results"]["dim"] == 6
    assert rep["results"]["weights"] == {"4": 1, "2": 1, "0": 2, "-2": 1, "-4": 1}
    assert rep["results"]["traceless_equals_der_-1_1_1"] is True


def test_der_sl3_negative_type():
    code, rep = call("der", "--algebra", "sl3", "--type", "-1,1,1")
    assert code == 0 and rep["results"]["dim"] == 0
    code, rep = call("der", "--algebra", "sl2", "--type=-1,1,1")
    assert rep["results"]["dim"] == 5
    assert all(isinstance(v, str) for M in rep["results"]["basis"] for row in M for v in row)


def test_decimal_strings_are_exact():
    code, rep = call("der", "--algebra", "sl2", "--type", "0.5,1,1")
    assert rep["results"]["type"] == ["1/2", "1", "1"]


def test_der_from_file(tmp_path):
    path = tmp_path / "mine.json"
    path.write_text(json.dumps(to_json(sl2())))
    code, rep = call("der", "--algebra", str(path), "--type", "2,1,1")
    assert code == 0 and rep["results"]["dim"] == 1


def test_classify():
    code, rep = call("classify", "--d", "0,0,0,1,0")
    assert code == 0 and rep["results"]["label"] == "RANK1"
    code, rep = call("classify", "--d", "0,1,1/2,3,0")
    assert rep["results"]["label"] == "RANK3_B"
    assert rep["results"]["params"] == {"sigma": "1/2", "lam": "3"}


def test_canon_exact_and_errors():
    code, rep = call("canon", "--d", "0,0,0,0,1")
    assert code == 0 and rep["results"]["canonical"] == ["0", "0", "0", "1", "0"]
    code, rep = call("canon", "--d", "0,0,0,0,0")
    assert code == 1 and rep["results"]["error"]["type"] == "ZeroDerivation"
    code, rep = call("canon", "--d", "-2,0,0,0,0")
    assert code == 1 and rep["results"]["error"]["type"] == "NoCanonicalForm"


def test_canon_approximate():
    code, rep = call("canon", "--d", "1,1,1,1,1")
    assert code == 0 and rep["mode"] in ("exact", "approximate")
    assert rep["results"]["class"]["label"] == "RANK3_B"


def test_rep():
    code, rep = call("rep", "--m", "2", "--d", "1,1,1,1,1")
    assert rep["results"]["solution"] == [["-1", "-2", "-1"], ["-1", "2", "1"], ["-1", "2", "-1"]]
    code, rep = call("rep", "--m", "4", "--d", "1,1,1,1,1")
    assert code == 0 and rep["results"]["solvable"] is False and rep["results"]["solution"] is None


def test_extend():
    code, rep = call("extend", "--d", "1,2,3,4,5", "--module", "2")
    assert code == 0
    assert rep["results"]["jacobi"]["ok"] and rep["results"]["double_extension"]["dim"] == 7
    code, rep = call("extend", "--d", "1,2,3,4,5", "--module", "4")
    assert code == 1 and rep["results"]["double_extension"]["solvable"] is False


@pytest.mark.parametrize("argv", [
    ["classify", "--d", "1,2"],
    ["classify", "--d", "a,b,c,d,e"],
    ["der", "--algebra", "nope", "--type", "1,1,1"],
    ["der", "--algebra", "sl2", "--type", "1/0,1,1"],
    ["der", "--algebra", "sl2", "--type", "x,1,1"],
    ["rep", "--m", "-1", "--d", "1,1,1,1,1"],
    ["frobnicate"],
    [],
])
def test_argument_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        run(argv, stdout=io.StringIO())
    assert exc.value.code == 2
    assert capsys.readouterr().err


def test_output_is_deterministic():
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        run(["canon", "--d", "3,-1,2,1/2,7"], stdout=buf)
        outs.append(buf.getvalue())
    assert outs[0] == outs[1]


def test_verify_subset_and_module_entry_point():
    code, rep = call("verify", "--only", "1,6", "--seed", "3")
    assert code == 0 and rep["seed"] == 3
    assert [c["criterion"] for c in rep["results"]["criteria"]] == [1, 6]
    proc = subprocess.run([sys.executable, "-m", "homlie", "classify", "--d", "0,0,1,0,0"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["results"]["label"] == "RANK2_A"
