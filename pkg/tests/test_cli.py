from __future__ import annotations

import json
import subprocess
import sys

import pytest

from gerstkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_eval_examples(capsys):
    assert run(capsys, "eval", "bracket", "d1", "x1*d1")[:2] == (0, "d1")
    assert run(capsys, "eval", "wedge", "d2", "d1")[:2] == (0, "-d1/\\d2")
    assert run(capsys, "eval", "delta", "x1*d1", "--c", "c(e1)=0,c(e2)=0")[:2] == (0, "-1")
    assert run(capsys, "eval", "delta", "x1*d1", "--convention", "divergence-side")[:2] == (0, "1")
    code, out, _ = run(capsys, "eval", "derham", '{1: {"2": x1}}', "--json")
    assert code == 0 and json.loads(out)["form"] == {"arity": 2, "values": {"1,2": "1"}}
    code, out, _ = run(capsys, "eval", "derham-g", '{1: {"2": x1}}', "--json")
    data = json.loads(out)
    assert code == 0 and data["matches_classical"] and data["form"]["values"] == {"1,2": "1"}
    assert run(capsys, "eval", "d-hochschild", "I", "d1", "d2")[:2] == (0, "-d1/\\d2")
    assert run(capsys, "eval", "d-chevalley", "I", "d1", "x1")[:2] == (0, "1")


def test_parse_and_usage_errors(capsys):
    assert run(capsys, "eval", "bracket", "d1", "x9")[0] == 2
    assert run(capsys, "eval", "bracket", "d1")[0] == 2
    assert run(capsys, "div-check", "--c", "c(e9)=1")[0] == 2
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "verify", "--algebroid", "/no/such/file.json")[0] == 2
    with pytest.raises(SystemExit) as err:
        main(["verify", "--trials", "0"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["eval", "frobnicate", "x1"])
    assert err.value.code == 2


def test_verify_degenerate_budget(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "gerstenhaber", "--trials", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1 and data["seed"] == 0
    assert all(c["trials"] == 1 for c in data["checks"])


def test_verify_bv_failure(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "bv", "--c", "c(e1)=x1*x2,c(e2)=0", "--trials", "10")
    assert code == 1 and "Div2: (d1, d2)" in out


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--algebroid", "standard(2)", "--seed", "7",
                       "--trials", "10")
    assert code == 0, out


def test_div_and_bv_check(capsys):
    assert run(capsys, "div-check", "--c", "c(e1)=0, c(e2)=0")[0] == 0
    code, out, _ = run(capsys, "div-check", "--c", "c(e1)=x1*x2", "--json")
    data = json.loads(out)
    assert code == 1 and any(c["name"] == "Div2" and c["witness"] for c in data["checks"])
    assert run(capsys, "bv-check", "--c", "c(e1)=0", "--trials", "10")[0] == 0
    assert run(capsys, "bv-check", "--c", "c(e1)=x2", "--trials", "10")[0] == 1


def test_torsor(capsys):
    assert run(capsys, "torsor", "--c1", "c(e1)=2*x1*x2, c(e2)=x1^2", "--c2", "c(e1)=0")[0] == 0
    code, out, _ = run(capsys, "torsor", "--c1", "c(e1)=2*x2", "--c2", "c(e1)=0")
    assert code == 1 and "difference closed" in out


def test_form_files(capsys, tmp_path):
    f = tmp_path / "phi.yaml"
    f.write_text("arity: 1\nvalues:\n  '1': x2\n  '2': x1^2\n")
    code, out, _ = run(capsys, "derham", "--form", str(f), "--json")
    assert code == 0 and json.loads(out)["form"]["values"] == {"1,2": "2*x1 - 1"}
    assert run(capsys, "derham-g", "--op", "d", "--form", str(f))[0] == 0
    assert run(capsys, "derham-g", "--op", "check", "--form", str(f), "--trials", "5")[0] == 0
    assert run(capsys, "derham-g", "--op", "extend", "--form", str(f), "--at", "d1/\\d2")[1] == "-x1^2*d1 + x2*d2"


def test_named_suites(capsys, tmp_path):
    assert run(capsys, "bracket-cocycle", "--trials", "20")[0] == 0
    assert run(capsys, "canonical", "--trials", "20")[0] == 0
    assert run(capsys, "hochschild", "--cochain", "omega", "--trials", "10")[0] == 0
    assert run(capsys, "hochschild", "--cochain", "I", "--at", "x1", "d1")[1] == "x1*d1"
    alg = tmp_path / "rank1.toml"
    alg.write_text('vars = ["x1"]\nanchor = [["1"]]\n')
    assert run(capsys, "canonical", "--algebroid", str(alg), "--trials", "10")[0] == 0


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "gerstkit", "eval", "bracket", "d1", "x1*d1"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "d1"


def test_bundled_data(capsys):
    from pathlib import Path
    data = Path(__file__).resolve().parent.parent / "data"
    assert run(capsys, "verify", "--algebroid", str(data / "sl2_line.json"), "--suite", "algebroid,bv",
               "--trials", "5")[0] == 0
    assert run(capsys, "canonical", "--algebroid", str(data / "plane.toml"), "--trials", "5")[0] == 0
    code, out, _ = run(capsys, "derham", "--form", str(data / "one_form.yaml"))
    assert code == 0 and "2*x1 - 1" in out
