import json
import subprocess
import sys

import pytest

from pfisterkit import __version__
from pfisterkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_hilbert_real(capsys):
    code, doc = run(capsys, "hilbert", "-1", "-1", "--place", "real")
    assert code == 0 and doc["verdict"] == -1
    assert set(doc) == {"command", "verdict", "certificate", "inputs", "version"}
    assert doc["version"] == __version__
    assert doc["inputs"]["argv"] == ["hilbert", "-1", "-1", "--place", "real"]


def test_isotropy_with_witness(capsys):
    code, doc = run(capsys, "isotropy", "diag[1,1,-1]@Q", "--place", "p:7")
    assert code == 0 and doc["verdict"] == "isotropic"
    w = [int(c) for c in doc["certificate"]["witness"]]
    assert w[0] ** 2 + w[1] ** 2 - w[2] ** 2 == 0


def test_anisotropic_verdict_still_exits_zero(capsys):
    code, doc = run(capsys, "lgp-verify", "diag[1,1,1]@Q")
    assert code == 0 and doc["verdict"] == "anisotropic"
    assert doc["certificate"]["failing_place"] == "real"


def test_unknown_flag_is_usage_error(capsys):
    code = main(["isotropy", "--bogus"])
    err = capsys.readouterr().err
    assert code == 2 and "--bogus" in err


def test_bad_input_is_usage_error(capsys):
    code, doc = run(capsys, "isotropy", "diag[0,1]@Q", "--place", "p:3")
    assert code == 2 and doc["error"]["type"] == "ZeroInput"
    code, _ = run(capsys, "isotropy", "diag[1,2@Q", "--place", "p:3")
    assert code == 2


def test_failed_hypothesis_exits_one(capsys):
    code, doc = run(capsys, "keyprop", "--field", "Q(t2)(x)", "--place", "x@0", "--ad", "x", "--tau", "1")
    assert code == 1 and doc["error"]["type"] == "HypothesisFailed"


def test_recipe_equality(capsys):
    code, doc = run(capsys, "recipe", "--field", "F5(x)", "--ad", "x^3", "--samples", "100")
    assert code == 0 and doc["verdict"] is True
    assert len(doc["certificate"]["comparison"]) == 100
    assert all(row["reference"] == row["stabilizer"] for row in doc["certificate"]["comparison"])


def test_nice_commands(capsys):
    code, doc = run(capsys, "nice-check", "2", "5")
    assert code == 0 and doc["verdict"] is False
    code, doc = run(capsys, "nice-construct", "--field", "Q", "--ext", "y^2+1", "--P", "p:3")
    assert code == 0 and doc["verdict"] is True
    assert doc["certificate"]["split_place"] == "p:5"


def test_testform_and_keyprop(capsys):
    argv = ["--field", "Q(t2)(x)", "--place", "x@0", "--ad", "x"]
    code, doc = run(capsys, "testform", *argv)
    assert code == 0 and doc["verdict"] == "anisotropic"
    assert doc["certificate"]["entries"][0] == "x"
    code, doc = run(capsys, "keyprop", *argv, "--tau", "x")
    assert code == 0 and doc["verdict"] is True


def test_rt(capsys):
    code, doc = run(capsys, "rt", "--field", "Q(x)", "x/2")
    assert code == 0 and doc["verdict"] is False
    assert doc["certificate"]["witness"] == "comp[x@1, p:2]"
    code, doc = run(capsys, "rt", "--field", "Q(x)", "x+1")
    assert code == 0 and doc["verdict"] is True


def test_json_out_matches_stdout(capsys, tmp_path):
    path = tmp_path / "out.json"
    code = main(["hilbert", "3", "7", "--place", "p:3", "--json-out", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    assert json.loads(path.read_text()) == json.loads(out)


@pytest.mark.parametrize("argv", [
    ["isotropy", "pf[3,2]@Q", "--place", "p:3"],
    ["testform", "--field", "F5(t2)(x)", "--place", "x@0", "--ad", "x^3", "--seed", "7"],
])
def test_output_is_byte_identical(capsys, argv):
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pfisterkit", "hilbert", "-1", "-1", "--place", "p:2"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == -1
