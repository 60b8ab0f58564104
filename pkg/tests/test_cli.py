import json
import subprocess
import sys

import pytest

from nilpoly.cli import main

HEIS = {"n": 3, "N": 1, "entries": [
    {"row": 1, "col": 2, "terms": [{"coeff": "1", "exps": [1]}]},
    {"row": 2, "col": 3, "terms": [{"coeff": "1", "exps": [1]}]},
]}
EXP = {"n": 3, "N": 1, "entries": [
    {"row": 1, "col": 2, "terms": [{"coeff": "1", "exps": [1]}]},
    {"row": 2, "col": 3, "terms": [{"coeff": "1", "exps": [1]}]},
    {"row": 1, "col": 3, "terms": [{"coeff": "1/2", "exps": [2]}]},
]}
GOLDEN = {"n": 3, "N": 2, "entries": [
    {"row": 1, "col": 2, "terms": [{"coeff": "1", "exps": [1, 0]}]},
    {"row": 2, "col": 3, "terms": [{"coeff": "1", "exps": [0, 1]}]},
]}
CONST = {"n": 3, "N": 1, "entries": [{"row": 1, "col": 2, "terms": [{"coeff": "2", "exps": [0]}]}]}


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, obj in (("heis", HEIS), ("exp", EXP), ("golden", GOLDEN), ("const", CONST)):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(obj))
        out[name] = str(path)
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "N": 1, "entries": [{"row": 2, "col": 2, "terms": []}]}')
    out["bad"] = str(bad)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_degree_commands(capsys, files):
    code, out, _ = run(capsys, "degree", files["heis"])
    assert code == 0 and out == {"command": "degree", "degree": 2}
    assert run(capsys, "lc-degree", files["heis"])[1]["lc_degree"] == [1, 2]
    code, out, _ = run(capsys, "bounds", files["exp"])
    assert (out["lower"], out["upper"], out["exact"]) == (1, 2, 1)
    assert out["superadditive_closure"] == [1, 2]


def test_algebra_commands(capsys, files):
    code, out, _ = run(capsys, "inv", files["heis"])
    assert code == 0
    terms = {(e["row"], e["col"]): e["terms"] for e in out["result"]["entries"]}
    assert terms[1, 3] == [{"coeff": "1", "exps": [2]}]
    code, out, _ = run(capsys, "comm", files["heis"], files["exp"])
    assert code == 0 and out["result"]["entries"] == []
    assert run(capsys, "mul", files["heis"], files["heis"])[0] == 0
    assert run(capsys, "conj", files["heis"], files["const"])[0] == 0
    code, out, _ = run(capsys, "conj", files["heis"], files["exp"])
    assert code == 1 and "constant" in out["error"]
    code, out, _ = run(capsys, "ordered-product", files["heis"], "--k", "2")
    assert code == 0 and out["result"]["N"] == 2


def test_symmetrize_and_cocycle(capsys, files):
    code, out, _ = run(capsys, "symmetrize", files["golden"])
    assert code == 0 and out["factor_count"] == 4 and out["rounds"] == 2
    code, out, _ = run(capsys, "cocycle", files["golden"], "--level", "1")
    assert code == 0 and out["identity_violations"] == [] and len(out["values"]) == 2


def test_seq_commands(capsys, files, tmp_path):
    code, out, _ = run(capsys, "seq", "period", files["heis"], "--mod", "4")
    assert code == 0 and out["period"] == 4
    code, _, err = run(capsys, "seq", "period", files["heis"])
    assert code == 2 and "--mod" in err
    samples = {"samples": [{"t": k, "matrix": [["1", str(k)], ["0", "1"]]} for k in range(4)]}
    path = tmp_path / "s.json"
    path.write_text(json.dumps(samples))
    code, out, _ = run(capsys, "seq", "fit", str(path), "--degree", "1")
    assert code == 0 and out["result"]["entries"][0]["terms"] == [{"coeff": "1", "exps": [1]}]
    code, out, _ = run(capsys, "seq", "multiplicity", files["heis"], "--horizon", "50")
    assert out["multiplicity"] == 1 and out["bound"] == 1


def test_demo_and_kamke(capsys):
    code, out, _ = run(capsys, "demo", "fibonacci", "--depth", "8")
    assert code == 0 and out["witness"] and out["message"] == "not polynomial of degree <= 7: witness found"
    code, out, _ = run(capsys, "kamke", "--B", "2", "--k1", "1", "--k", "2=1", "--K", "2=2")
    assert code == 0 and out["n"] == 3 and out["C"] == {"2": "3/2"} and out["D"] == {"2": "1/2"}
    assert out["eps"] == "1/2" and out["sampling"]["members"] == 1000 and out["jacobian"]["rank"] == 2
    code, _, err = run(capsys, "kamke", "--B", "2", "--k1", "1", "--k", "2=2", "--K", "2=1")
    assert code == 2 and "k_2" in err


def test_error_exit_codes(capsys, files, tmp_path):
    code, out, _ = run(capsys, "degree", files["bad"])
    assert code == 1 and "diagonal entry not allowed" in out["error"]
    code, out, _ = run(capsys, "degree", str(tmp_path / "missing.json"))
    assert code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "nilpoly.cli", "degree", files["heis"]],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["degree"] == 2
