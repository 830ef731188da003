import json
import subprocess
import sys

import pytest

from runstat import closedform
from runstat.cli import main
from runstat.model import Specification
from runstat.oracle import enumerate_stats
from runstat.serialize import dumps_csv, dumps_json, loads_csv, loads_json

from conftest import golden_23_counts


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestDist:
    def test_rsb_json(self, capsys):
        code, out, _ = run(capsys, "dist", "--spec", "2,3", "--mode", "rsb", "--path", "recursive", "--format", "json")
        assert code == 0
        record = json.loads(out)
        assert record["spec"] == [2, 3]
        assert record["mode"] == "rsb"
        assert record["provenance"] == "recursive"
        got = {(e["r"], e["s"], e["b"]): e["count"] for e in record["entries"]}
        assert got == {
            (0, 1, 2): "1", (1, 0, 2): "1", (1, 1, 3): "3",
            (1, 2, 4): "2", (2, 1, 4): "2", (2, 2, 5): "1",
        }

    def test_single_entry(self, capsys):
        code, out, _ = run(capsys, "dist", "--spec", "4", "--mode", "rslb")
        assert code == 0
        assert json.loads(out)["entries"] == [{"r": 0, "s": 0, "l": 3, "b": 1, "b_per": None, "count": "1"}]

    @pytest.mark.parametrize("path", ["recursive", "matrix", "explicit", "oracle"])
    def test_golden_23(self, capsys, path):
        code, out, _ = run(capsys, "dist", "--spec", "2,3", "--mode", "rslB", "--path", path)
        assert code == 0
        assert loads_json(out).entries == golden_23_counts()

    def test_entries_sorted(self, capsys):
        _, out, _ = run(capsys, "dist", "--spec", "2,1,2", "--mode", "rslB")
        keys = [(e["r"], e["s"], e["l"], e["b"], e["b_per"]) for e in json.loads(out)["entries"]]
        assert keys == sorted(keys)

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "dist", "--spec", "2,3", "--mode", "rslB", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "r,s,l,b,b_per,count"
        assert loads_csv(out, Specification((2, 3))).entries == golden_23_counts()

    def test_deterministic(self, capsys):
        _, first, _ = run(capsys, "dist", "--spec", "3,1,2", "--mode", "rslB", "--path", "matrix")
        _, second, _ = run(capsys, "dist", "--spec", "3,1,2", "--mode", "rslB", "--path", "oracle")
        assert json.loads(first)["entries"] == json.loads(second)["entries"]


class TestGf:
    @pytest.mark.parametrize("spec, expected", [
        ("2,3", "u + w + 3*w*u + 2*w*u^2 + 2*w^2*u + w^2*u^2"),
        ("1", "1"),
        ("1,1", "u + w"),
    ])
    def test_rs(self, capsys, spec, expected):
        code, out, _ = run(capsys, "gf", "--spec", spec, "--mode", "rs")
        assert code == 0
        assert out.strip() == expected

    def test_oracle_path(self, capsys):
        _, gf_out, _ = run(capsys, "gf", "--spec", "2,2,1", "--mode", "rslB")
        _, oracle_out, _ = run(capsys, "gf", "--spec", "2,2,1", "--mode", "rslB", "--path", "oracle")
        assert gf_out == oracle_out


class TestValues:
    def test_closed(self, capsys):
        assert run(capsys, "closed", "--spec", "2,3", "--r", "1", "--s", "1")[1].strip() == "3"

    @pytest.mark.parametrize("path", ["closed", "recursive", "matrix", "explicit", "oracle"])
    def test_closed_every_path(self, capsys, path):
        assert run(capsys, "closed", "--spec", "2,3", "--r", "2", "--s", "1", "--path", path)[1].strip() == "2"

    def test_eulerian(self, capsys):
        assert run(capsys, "eulerian", "--k", "1")[1].strip() == "1"
        assert run(capsys, "eulerian", "--k", "4")[1].strip() == "1 11 11 1"
        assert run(capsys, "eulerian", "--k", "4", "--path", "oracle")[1].strip() == "1 11 11 1"

    def test_newcomb(self, capsys):
        assert run(capsys, "newcomb", "--spec", "2,2", "--r", "1")[1].strip() == "4"
        assert run(capsys, "newcomb", "--spec", "2,2", "--r", "1", "--path", "oracle")[1].strip() == "4"


class TestExitCodes:
    def test_constraint_violation(self, capsys):
        code, _, err = run(capsys, "closed", "--spec", "2,3", "--r", "3", "--s", "2")
        assert code == 2
        assert "r + s" in err

    @pytest.mark.parametrize("argv", [
        ["gf", "--spec", "2,x"],
        ["gf", "--spec", "2,0"],
        ["dist", "--spec", "2", "--mode", "bogus"],
        ["dist", "--spec", "2", "--path", "nowhere"],
    ])
    def test_parse_failure(self, capsys, argv):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2

    def test_oracle_bound(self, capsys, monkeypatch):
        monkeypatch.setenv("RUNSTAT_ORACLE_BOUND", "4")
        code, _, err = run(capsys, "dist", "--spec", "2,3", "--path", "oracle")
        assert code == 3
        assert "bound 4" in err
        code, _, _ = run(capsys, "verify", "--max-n", "5", "--max-k", "2")
        assert code == 3

    def test_newcomb_range(self, capsys):
        assert run(capsys, "newcomb", "--spec", "2,2", "--r", "4")[0] == 2


class TestVerify:
    def test_trivial(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-n", "1", "--max-k", "1")
        assert code == 0
        assert "1/1 specifications passed" in out

    def test_small_sweep_with_seed(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-n", "5", "--max-k", "3", "--seed", "7")
        assert code == 0
        code2, out2, _ = run(capsys, "verify", "--max-n", "5", "--max-k", "3", "--seed", "1")
        assert out == out2

    def test_mutation_sign_flip(self, capsys, monkeypatch):
        original = closedform.f_term
        monkeypatch.setattr(closedform, "f_term", lambda n, m, d, t: -original(n, m, d, t))
        code, out, err = run(capsys, "verify", "--max-n", "4", "--max-k", "2")
        assert code == 1
        assert "FAILED: spec [1] check closed" in err
        assert "r=0, s=0" in err
        assert "FAIL" in out


def test_json_roundtrip():
    table = enumerate_stats((2, 1, 2))
    assert loads_json(dumps_json(table, "rslB", "oracle")).entries == table.entries
    assert loads_csv(dumps_csv(table), table.spec).entries == table.entries


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "runstat", "closed", "--spec", "2,3", "--r", "1", "--s", "2"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.strip() == "2"
