import json
import subprocess
import sys

import pytest

from jacobiforms.cli import main
from jacobiforms.rationals import parse_rational


@pytest.fixture()
def a1_path(tmp_path):
    path = tmp_path / "a1.json"
    path.write_text(json.dumps({"name": "a1", "gram": [[2]]}))
    return str(path)


@pytest.fixture()
def scaled_path(tmp_path):
    path = tmp_path / "a1s.json"
    path.write_text(json.dumps({"name": "a1s", "gram": [[8]]}))
    return str(path)


@pytest.fixture()
def square2_path(tmp_path):
    path = tmp_path / "sq.json"
    path.write_text(json.dumps({"name": "sq", "gram": [[2, 0], [0, 2]]}))
    return str(path)


class TestInfo:
    def test_a1(self, a1_path, capsys):
        assert main(["info", "--lattice", a1_path]) == 0
        out = capsys.readouterr().out
        assert "det   2" in out and "Delta 4" in out and "level 4" in out
        assert out.count("order") == 1  # iso = {0}

    def test_scaled_isotropy(self, scaled_path, capsys):
        assert main(["info", "--lattice", scaled_path]) == 0
        out = capsys.readouterr().out
        assert "(4)" in out  # second isotropic class

    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert main(["info", "--lattice", str(path)]) == 2
        err = capsys.readouterr().err
        assert json.loads(err)["error"] == "JSONDecodeError"

    def test_invalid_lattice(self, tmp_path, capsys):
        path = tmp_path / "odd.json"
        path.write_text(json.dumps({"name": "odd", "gram": [[2, 1], [1, 1]]}))
        assert main(["info", "--lattice", str(path)]) == 2
        assert json.loads(capsys.readouterr().err)["error"] == "OddDiagonalError"


class TestEisensteinCommand:
    def test_exact_values(self, a1_path, tmp_path, capsys):
        out_path = tmp_path / "exp.json"
        code = main([
            "eisenstein", "--lattice", a1_path, "-k", "4", "-r", "0",
            "--n-max", "1", "--mode", "exact", "-o", str(out_path),
        ])
        assert code == 0
        doc = json.loads(out_path.read_text())
        values = sorted(parse_rational(e["value"]) for e in doc["entries"])
        assert values == [1, 56, 126]

    def test_odd_weight_all_zero(self, a1_path, capsys):
        code = main([
            "eisenstein", "--lattice", a1_path, "-k", "5", "-r", "0",
            "--n-max", "1", "--mode", "exact",
        ])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["entries"] and all(parse_rational(e["value"]) == 0 for e in doc["entries"])

    def test_byte_stable(self, a1_path, tmp_path):
        paths = []
        for i in (0, 1):
            out_path = tmp_path / f"run{i}.json"
            main([
                "eisenstein", "--lattice", a1_path, "-k", "6", "-r", "0",
                "--n-max", "2", "--mode", "numeric", "--c-max", "40",
                "-o", str(out_path),
            ])
            paths.append(out_path.read_bytes())
        assert paths[0] == paths[1]

    def test_table_format(self, a1_path, capsys):
        code = main([
            "eisenstein", "--lattice", a1_path, "-k", "4", "-r", "0",
            "--n-max", "1", "--mode", "exact", "--format", "table",
        ])
        assert code == 0
        out = capsys.readouterr().out
        assert "126/1" in out and "56/1" in out


class TestPoincareCommand:
    def test_convergence_domain_exit(self, square2_path, capsys):
        code = main([
            "poincare", "--lattice", square2_path, "-k", "4", "-D=-1",
            "-r", "0,0", "--n-max", "1", "--c-max", "10",
        ])
        assert code == 3
        assert json.loads(capsys.readouterr().err)["error"] == "ConvergenceDomainError"

    def test_rank_one_weight_ten(self, a1_path, capsys):
        code = main([
            "poincare", "--lattice", a1_path, "-k", "10", "-D=-3/4",
            "-r", "1", "--n-max", "1", "--c-max", "60",
        ])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["series"] == "poincare"
        assert all(parse_rational(e["D"]) < 0 for e in doc["entries"])


class TestRepCommand:
    def test_generators_default(self, a1_path, capsys):
        assert main(["rep", "--lattice", a1_path]) == 0
        doc = json.loads(capsys.readouterr().out)
        labels = [m["label"] for m in doc["matrices"]]
        assert labels == ["T", "S"]
        t_matrix = doc["matrices"][0]["matrix"]
        assert t_matrix[1][1] == {"re": 0.0, "im": 1.0}

    def test_word_and_legend(self, a1_path, capsys):
        assert main(["rep", "--lattice", a1_path, "--word", "T,T^-1"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["matrices"][0]["index"] == [[0], [1]]


class TestVerifyCommand:
    def test_exp_sums_suite(self, capsys):
        assert main(["verify", "exp_sums"]) == 0
        out = capsys.readouterr().out
        assert "kloosterman decomposition: ok" in out

    def test_entry_point_runs(self):
        proc = subprocess.run(
            [sys.executable, "-m", "jacobiforms", "verify", "poincare"],
            capture_output=True, text=True, timeout=300,
        )
        assert proc.returncode == 0, proc.stdout + proc.stderr
        assert "passed, 0 failed" in proc.stdout
