"""Command-line surface: exit codes, schemas, determinism."""

import io
import json
import contextlib

import pytest

from modcycles.cli import main


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def run_json(argv):
    code, out = run(argv)
    return code, json.loads(out)


class TestCheckCycle:
    def test_generator_cycle_inline(self, tmp_path):
        code, rep = run_json([
            "check-cycle", "--inline", "1 - 3*t1*t2*y1",
            "--field", "Fp:7", "--modulus", "1,1",
        ])
        assert code == 0
        assert rep == {"face": "pass", "modulus": "Certified"}

    def test_degree_violation_exits_1(self):
        code, rep = run_json([
            "check-cycle", "--inline", "1 - t1*t2*y1^2",
            "--field", "Fp:7", "--modulus", "1,1",
        ])
        assert code == 1 and rep["modulus"] == "ViolatesNecessary"

    def test_file_input(self, tmp_path):
        blob = {
            "field": {"char": 7}, "model": "PSI", "r": 2, "n": 1,
            "modulus": {"exponents": [1, 1]},
            "terms": [{"mult": 1, "poly": "1 - t1*t2*(3*y1 + 2)"}],
        }
        path = tmp_path / "z.json"
        path.write_text(json.dumps(blob))
        code, rep = run_json(["check-cycle", "--file", str(path)])
        assert code == 0 and rep["modulus"] == "Certified"


class TestRho:
    def test_spec_example(self):
        code, rep = run_json([
            "rho", "--inline", "1 - t1*t2*(3*y1+2)",
            "--field", "Fp:7", "--modulus", "1,1",
        ])
        assert code == 0 and rep == {"rho": "3"}

    def test_rational(self):
        code, rep = run_json([
            "rho", "--inline", "1 - t1*t2*(1/2*y1)",
            "--field", "Q", "--modulus", "1,1",
        ])
        assert code == 0 and rep == {"rho": "1/2"}


class TestBoundary:
    def test_boundary_flag(self):
        code, rep = run_json([
            "boundary", "--inline", "1 - 3*t1*t2*y1",
            "--field", "Fp:7", "--modulus", "1,1",
        ])
        assert code == 0 and rep["terms"] == []
        code, rep = run_json([
            "boundary", "--inline", "1 - 3*t1*t2*y1",
            "--field", "Fp:7", "--modulus", "1,1", "--level0-degeneracy", "off",
        ])
        assert rep["terms"] == [{"mult": 1, "poly": "4*t1*t2 + 1"}]


class TestWitnesses:
    def test_bounding(self):
        code, rep = run_json([
            "witness-bounding", "--inline", "1 - t1*t2*(t1 + 3)",
            "--field", "Fp:7", "--modulus", "1,1", "--n", "0",
        ])
        assert code == 0
        assert all(e["status"] == "pass" for e in rep["transcript"])

    def test_zero_cycle_and_verify(self, tmp_path):
        blob = {
            "field": {"char": 7}, "model": "ORIGINAL", "r": 2, "n": 0,
            "modulus": {"exponents": [1, 1]},
            "points": [{"mult": 1, "t": ["2", "3"], "y": []}],
        }
        src = tmp_path / "z0.json"
        src.write_text(json.dumps(blob))
        out = tmp_path / "cert.json"
        code, _ = run(["witness-zero-cycle", "--file", str(src), "--out", str(out)])
        assert code == 0
        code, rep = run_json(["verify", "--file", str(out)])
        assert code == 0 and rep == {"valid": True}

    def test_generator(self):
        code, rep = run_json(["generator", "--a", "3", "--r", "2", "--field", "Fp:7"])
        assert code == 0 and rep["rho"] == "3"


class TestKTheory:
    def test_k2_table(self):
        code, rep = run_json(["ktheory", "k2-table", "--max-q", "9"])
        assert code == 0
        assert [row["q"] for row in rep["k2"]] == [2, 3, 4, 5, 7, 8, 9]
        assert all(row["trivial"] for row in rep["k2"])

    def test_tame(self, tmp_path):
        blob = {
            "field": {"char": 5}, "function_field": True,
            "symbols": [{"mult": 1, "entries": ["t - 2", "3*t^2"]}],
        }
        path = tmp_path / "sym.json"
        path.write_text(json.dumps(blob))
        code, rep = run_json(["ktheory", "tame", "--file", str(path), "--pi", "t"])
        assert code == 0
        assert rep["residue"]["symbols"] == [{"mult": 2, "entries": ["3"]}]

    def test_reduce_theorem_backed(self, tmp_path):
        blob = {
            "field": {"char": 7},
            "symbols": [{"mult": 1, "entries": ["2", "3"]}],
        }
        path = tmp_path / "sym.json"
        path.write_text(json.dumps(blob))
        code, rep = run_json(["ktheory", "reduce", "--file", str(path)])
        assert code == 0 and rep["result"]["symbols"] == []
        assert rep["theorem_backed"] == "Steinberg"
        code, rep = run_json(["ktheory", "reduce", "--file", str(path), "--certificate"])
        assert rep["oracle"]["trivial"] is True

    def test_delta(self, tmp_path):
        blob = {
            "field": {"char": 5}, "function_field": True,
            "symbols": [{"mult": 1, "entries": ["t", "t - 1"]}],
        }
        path = tmp_path / "sym.json"
        path.write_text(json.dumps(blob))
        code, rep = run_json(["ktheory", "delta", "--file", str(path)])
        assert code == 0
        places = [row["place"] for row in rep["residues"]]
        assert places == [{"pi": "t"}, {"infinity": True}]


class TestCurves:
    def test_totaro_steinberg(self):
        code, rep = run_json([
            "curves", "totaro", "--relation", "steinberg",
            "--field", "Fp:7", "--entries", "3",
        ])
        assert code == 0 and rep["identity"] is True
        assert rep["boundary"]["points"] == [{"mult": 1, "t": [], "y": ["3", "5"]}]

    def test_totaro_mult(self):
        code, rep = run_json([
            "curves", "totaro", "--relation", "mult",
            "--field", "Fp:7", "--entries", "2,3",
        ])
        assert code == 0 and rep["identity"] is True and rep["sign"] == -1

    def test_xi(self):
        code, rep = run_json([
            "curves", "xi", "--field", "Fp:5", "--entries", "t - 2",
            "--unit", "3", "--pi", "t - 1", "--power", "2",
        ])
        assert code == 0 and rep["identity"] is True


class TestConvert:
    def test_psi_to_original_and_back(self, tmp_path):
        blob = {
            "field": {"char": 7}, "model": "PSI", "r": 2, "n": 1,
            "terms": [{"mult": 1, "poly": "1 - t1*t2*(3*y1 + 2)"}],
        }
        path = tmp_path / "z.json"
        path.write_text(json.dumps(blob))
        code, rep = run_json(["convert-model", "--file", str(path), "--to", "original"])
        assert code == 0 and rep["model"] == "ORIGINAL"
        path.write_text(json.dumps(rep))
        code, rep2 = run_json(["convert-model", "--file", str(path), "--to", "psi"])
        assert rep2["terms"] == [{"mult": 1, "poly": "4*t1*t2*y1 + 5*t1*t2 + 1"}]


class TestSuiteCommand:
    def test_seed_determinism(self):
        args = ["suite", "--seed", "42", "--sizes", "small",
                "--only", "k2-table,degree-bound,tame-formula"]
        _, first = run(args)
        _, second = run(args)
        assert first == second

    def test_exit_code(self):
        code, rep = run_json(["suite", "--seed", "7", "--sizes", "small",
                              "--only", "k2-table"])
        assert code == 0 and rep["all_passed"] is True


class TestErrorPaths:
    def test_input_error_exits_2(self):
        code, rep = run_json(["rho", "--inline", "1 - t9", "--field", "Fp:7",
                              "--modulus", "1,1"])
        assert code == 2 and rep["error"]["type"] == "UnknownVariable"

    def test_missing_file_exits_2(self):
        code, rep = run_json(["verify", "--file", "/nonexistent.json"])
        assert code == 2
