import json
import subprocess
import sys

import pytest

from skein.cli import load_record, main, parse_params, run
from skein.diagram import par, parse_diagrams, square


def result(argv):
    status, record = run(argv)
    return status, record["result"] if record else None


def test_enumerate_count(capsys):
    status, res = result(["enumerate", "--n", "6", "--k", "2", "--variant", "square"])
    assert status == 0 and res["count"] == 44
    assert len(parse_diagrams("\n".join(res["records"]))) == 44


def test_det_empty_basis_is_one(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    status, res = result(["det", "--basis", str(empty)])
    assert status == 0 and res["value"] == "1"


def test_det_from_basis_file(tmp_path):
    f = tmp_path / "basis.txt"
    f.write_text(par().to_text() + "\n" + square().to_text() + "\n")
    status, res = result(["det", "--basis", str(f), "--params", "d=2,t=1/3"])
    assert status == 0 and res["size"] == 2


def test_eval_named(capsys):
    status, res = result(["eval", "--diagram", "tetrahedron", "--params", "d=3,t=1/2"])
    assert status == 0 and res["values"] == ["3/2"]
    status, res = result(["eval", "--diagram", "cube", "--relations", "chromatic", "--params", "n=3"])
    assert res["values"] == ["2"]


def test_verify_exit_codes(capsys):
    status, res = result(["verify", "--n", "4", "--k", "0", "--factors",
                          "d:4,Q_1_1:1", "--constant", "1"])
    assert status == 1 and res["refuted"]
    status, _ = result(["det", "--n", "9", "--k", "0"])
    assert status == 2
    status, _ = result(["verify", "--n", "4", "--k", "0", "--factors", "nosuch:1"])
    assert status == 2
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


def test_rerun_is_byte_identical(tmp_path, capsys):
    argv = ["verify", "--n", "5", "--k", "0", "--factors", "d:10,P_ABA:2,P_SO3:4,Q_1_2:1",
            "--trials", "5", "--seed", "7"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    ra, rb = load_record(a), load_record(b)
    assert json.dumps(ra["result"], sort_keys=True) == json.dumps(rb["result"], sort_keys=True)
    assert ra["seed"] == 7 and ra["parameters"]["trials"] == 5
    assert set(ra) == {"command", "parameters", "seed", "runtime", "result", "version"}


def test_params_parsing():
    assert parse_params("d=2,t=-1/2") == {"d": 2, "t": pytest.approx(-0.5)}
    assert parse_params("") == {}


def test_reproduce_subprocess():
    out = subprocess.run([sys.executable, "-m", "skein", "reproduce", "delta-4-0"],
                         capture_output=True, text=True, timeout=300)
    assert out.returncode == 0
    assert "PASS" in out.stderr
    record = json.loads(out.stdout)
    assert record["result"]["outcomes"][0]["passed"] is True


def test_reproduce_list(capsys):
    status, res = result(["reproduce", "--list"])
    assert status == 0
    assert sorted(map(int, res["criteria"])) == list(range(1, 14))
    assert "delta-6-1-exact" in res["facts"]


def test_kernel_and_rank(capsys):
    status, res = result(["kernel", "--n", "4", "--k", "0", "--params", "d=3,t=1/2"])
    assert status == 0
    status, res = result(["rank", "--n", "4", "--k", "0", "--prime", "10007",
                          "--residues", "d=3,t=5004"])
    assert status == 0 and res["rank"] == 3


def test_other_commands(capsys):
    assert result(["aba-dim", "--n", "7"])[0] == 0
    assert result(["intersect", "P_ABA", "P_SO3*Q_1_1"])[0] == 0
    assert result(["braid-check", "--crossing", "s3", "--relations", "so3", "--params", "d=2"])[0] == 0
    assert result(["idempotents", "--params", "d=5,t=1/3"])[0] == 0
    assert result(["guess", "--n", "4", "--k", "0", "--primes", "101,103,107,109"])[0] == 0
    assert result(["gram", "--n", "4", "--k", "0"])[0] == 0
