import json
import subprocess
import sys

import pytest

from twisted_terada.cli import run


def out_of(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr()


def test_faces_json(capsys):
    code, cap = out_of(capsys, ["faces", "--n", "3", "--json"])
    assert code == 0
    assert json.loads(cap.out) == {"n": 3, "fvector": [1, 9, 21, 14]}


def test_faces_text(capsys):
    code, cap = out_of(capsys, ["faces", "--n", "2"])
    assert code == 0 and "(1, 5, 5)" in cap.out


def test_jn_text(capsys):
    code, cap = out_of(capsys, ["jn", "--n", "2"])
    assert code == 0
    assert "(a*b*g - 1)" in cap.out and "(a*b*g^2 - 1)" in cap.out


def test_jn_check_json_roundtrip(capsys):
    code, cap = out_of(capsys, ["jn", "--n", "3", "--check", "--json"])
    assert code == 0
    d = json.loads(cap.out)
    assert d["equal"] is True and d["term_count"] == 45
    assert json.loads(json.dumps(d)) == d
    assert set(d) >= {"n", "equal", "enumerated", "closed_factors", "term_count"}


def test_enumeration_cap(capsys):
    code, cap = out_of(capsys, ["faces", "--n", "7"])
    assert code == 2 and "--force" in cap.err


def test_malformed_flags(capsys):
    assert run(["jn", "--n", "x"]) == 2
    assert run(["jn"]) == 2
    assert run(["nonsense"]) == 2
    assert run([]) == 2
    assert run(["reciprocity", "--n", "2", "--alpha", "0.2"]) == 2


def test_neighbors(capsys):
    code, cap = out_of(capsys, ["neighbors", "--n", "4"])
    assert code == 0
    assert "0241356 0314256" in cap.out
    code, cap = out_of(capsys, ["neighbors", "--n", "3", "--json"])
    d = json.loads(cap.out)
    assert len(d["neighbors"]) == 5 and d["non_touching"] == []


def test_cohomology(capsys):
    code, cap = out_of(capsys, ["cohomology", "--n", "3", "--check", "--json"])
    assert code == 0
    d = json.loads(cap.out)
    assert d["two_pi_i_power"] == 3 and d["equal"] is True


def test_qcheck(capsys):
    code, cap = out_of(capsys, ["qcheck", "--n-max", "3"])
    assert code == 0 and "FAIL" not in cap.out


def test_reciprocity_single_and_draws(capsys):
    code, cap = out_of(capsys, ["reciprocity", "--n", "2", "--alpha", "0.23", "--beta", "0.31",
                                "--gamma", "0.17", "--json"])
    assert code == 0
    d = json.loads(cap.out)
    assert d["params"] == [0.23, 0.31, 0.17] and d["residual"] < 1e-8 and "seed" in d
    code, cap = out_of(capsys, ["reciprocity", "--n", "3", "--seed", "5", "--draws", "4"])
    assert code == 0 and cap.out.count("seed=5") == 4


def test_pole_margin_exit_code(capsys):
    code, cap = out_of(capsys, ["reciprocity", "--n", "1", "--alpha", "0", "--beta", "0.3", "--gamma", "0.2"])
    assert code == 3 and "pole" in cap.err


def test_verify(capsys):
    code, cap = out_of(capsys, ["verify", "--n-max", "4"])
    assert code == 0 and "FAIL" not in cap.out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "twisted_terada", "faces", "--n", "1", "--json"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["fvector"] == [1, 2]
