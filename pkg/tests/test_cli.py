import json
import subprocess
import sys

import pytest

from seplab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_examples(capsys):
    assert run(capsys, "gen", "p", "1", "--symbolic")[1].strip() == "[-1, 1 + 1*n]"
    assert run(capsys, "gen", "q", "2", "--n", "5")[1].strip() == "[1, -6, 1]"
    code, out, _ = run(capsys, "gen", "p", "3", "--n", "0")
    assert code == 0 and out.startswith("[")
    assert run(capsys, "gen", "L", "--n", "10")[1].strip() == "[-12, 131]"


def test_gen_range_error(capsys):
    code, _, err = run(capsys, "gen", "Q", "4")
    assert code == 1 and "error" in err
    assert run(capsys, "gen", "Q", "4", "--allow-small", "--n", "3")[0] == 0


def test_bad_arguments_exit_one(capsys):
    with pytest.raises(SystemExit) as ei:
        main(["gen", "nope"])
    assert ei.value.code == 1


def test_verify(capsys, tmp_path):
    assert run(capsys, "verify", "eq2", "--dmax", "1")[0] == 0
    out = tmp_path / "v.json"
    code, text, _ = run(capsys, "verify", "all", "--dmax", "12", "--json", str(out))
    assert code == 0
    assert "PASS" in text and "FAIL" not in text
    assert all(r["passed"] for r in json.loads(out.read_text()))


def test_verify_fault(capsys):
    code, text, _ = run(capsys, "verify", "eq2", "--dmax", "4", "--inject-fault")
    assert code == 1 and "FAIL" in text


def test_sweep_csv(capsys, tmp_path):
    out = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sweep", "--family", "P", "--degrees", "4,5,6", "--n", "10,100,1000",
                     "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == ("family,d,n,degree,height,sep_lo,sep_hi,e_lo,e_hi,target,"
                        "bound_satisfied,precision_bits")
    assert len(lines) == 10
    rows = [l.split(",") for l in lines[1:]]
    for d in ("4", "5", "6"):
        e = [float(r[7]) for r in rows if r[1] == d]
        assert e == sorted(e) and len(set(e)) == 3
    meta = json.loads((tmp_path / "s.csv.meta.json").read_text())
    assert meta["rows"] == 9


def test_sweep_json_hex(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "Q", "--degrees", "6", "--n", "1000",
                       "--format", "json")
    assert code == 0
    (row,) = json.loads(out)
    assert float.fromhex(row["sep_hi"]) <= 2 / 1000 ** 9
    assert row["bound_satisfied"] is True and row["target"] == "3/1"


def test_sweep_validation(capsys):
    assert run(capsys, "sweep", "--family", "P", "--degrees", "4", "--n", "")[0] == 1
    assert run(capsys, "sweep", "--family", "p", "--degrees", "4", "--n", "10")[0] == 1
    assert run(capsys, "sweep", "--family", "P", "--degrees", "4", "--n", "10",
               "--prec", "512", "--cap", "256")[0] == 1


def test_certify(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", "p", "3", "--n", "100")
    assert code == 0 and json.loads(out)["verdict"] == "Irreducible"
    f = tmp_path / "poly.txt"
    f.write_text("-1 1 -1 1\n")  # (x - 1)(x^2 + 1)
    code, out, _ = run(capsys, "certify", "--file", str(f))
    assert code == 2 and json.loads(out)["witness"] == [-1, 1]
    code, out, _ = run(capsys, "certify", "r", "8", "--n", "10", "--budget", "0")
    assert code == 3 and json.loads(out)["verdict"] == "Inconclusive"
    assert run(capsys, "certify")[0] == 1


def test_cluster(capsys):
    code, out, _ = run(capsys, "cluster", "--delta", "4", "--h", "0", "--n", "100")
    rep = json.loads(out)
    assert code == 0 and rep["k"] == 3 and rep["degree"] == 8
    code, out, _ = run(capsys, "cluster", "--delta", "4", "--h", "1", "--n", "100")
    assert code == 0 and json.loads(out)["degree"] == 13
    assert run(capsys, "cluster", "--delta", "4", "--h", "0", "--n", "100", "--k", "4")[0] == 1


def test_env_cap_respected(capsys, monkeypatch):
    monkeypatch.setenv("SEPLAB_PRECISION_CAP", "64")
    code, _, err = run(capsys, "sweep", "--family", "P", "--degrees", "4", "--n", "100")
    assert code == 1 and "cap" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "seplab", "gen", "q", "2", "--n", "5"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.strip() == "[1, -6, 1]"
