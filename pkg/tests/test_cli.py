import json
import subprocess
import sys
from pathlib import Path

import pytest

SRC = str(Path(__file__).resolve().parent.parent / "src")


def run_cli(*args, env_jobs=None):
    import os

    env = dict(os.environ)
    env["PYTHONPATH"] = SRC + os.pathsep + env.get("PYTHONPATH", "")
    if env_jobs is not None:
        env["OPERAHEDRA_JOBS"] = str(env_jobs)
    return subprocess.run(
        [sys.executable, "-m", "operahedra.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


class TestDiagonalCommand:
    def test_count_hexagon(self):
        result = run_cli("diagonal", "--tree", "[[0],[0],[0]]", "--count")
        assert result.returncode == 0
        assert result.stdout.strip() == "8"

    def test_pairs_document(self):
        result = run_cli("diagonal", "--tree", "[[0],[0]]")
        doc = json.loads(result.stdout)
        assert doc["count"] == 2
        assert doc["pairs"] == [
            {"left": [[1], [1, 2]], "right": [[1, 2]]},
            {"left": [[1, 2]], "right": [[1, 2], [2]]},
        ]

    def test_dimension_cap(self):
        big = json.dumps([[0]] * 7)
        result = run_cli("diagonal", "--tree", big, "--count")
        assert result.returncode == 4

    def test_cap_is_adjustable(self):
        result = run_cli(
            "diagonal", "--tree", "[[0],[0],[0]]", "--count", "--max-dim", "1"
        )
        assert result.returncode == 4
        result = run_cli(
            "diagonal", "--tree", "[[0],[0],[0]]", "--count", "--max-dim", "2"
        )
        assert result.returncode == 0
        assert result.stdout.strip() == "8"

    def test_malformed_tree(self):
        result = run_cli("diagonal", "--tree", "[[0, 7]]", "--count")
        assert result.returncode == 2

    def test_wall_vector(self):
        result = run_cli(
            "diagonal",
            "--tree",
            "[[0],[0],[0]]",
            "--vector",
            "1,1,0",
            "--allow-any-chamber",
            "--count",
        )
        assert result.returncode == 3

    def test_non_principal_vector_needs_override(self):
        result = run_cli(
            "diagonal", "--tree", "[[0],[0],[0]]", "--vector", "1,2,4", "--count"
        )
        assert result.returncode == 3
        ok = run_cli(
            "diagonal",
            "--tree",
            "[[0],[0],[0]]",
            "--vector",
            "1,2,4",
            "--allow-any-chamber",
            "--count",
        )
        assert ok.returncode == 0


class TestRealizeCommand:
    def test_interval(self):
        result = run_cli("realize", "--tree", "[[[0]]]")
        doc = json.loads(result.stdout)
        assert doc["vertices"] == [["1", "2"], ["2", "1"]]
        assert doc["equalities"] == [{"a": ["1", "1"], "b": "3"}]

    def test_corolla_point(self):
        result = run_cli("realize", "--tree", "[0,0]")
        doc = json.loads(result.stdout)
        assert doc["vertices"] == [[]]
        assert doc["dimension"] == 0

    def test_csv_hexagon(self):
        result = run_cli("realize", "--tree", "[[0],[0],[0]]", "--format", "csv")
        rows = result.stdout.strip().splitlines()
        assert len(rows) == 6

    def test_weighted(self):
        result = run_cli("realize", "--tree", "[[0]]", "--weight", "2,3")
        doc = json.loads(result.stdout)
        assert doc["vertices"] == [["6"]]


class TestOffExport:
    def test_permutahedron_off(self, tmp_path):
        out = tmp_path / "perm.off"
        result = run_cli(
            "realize",
            "--tree",
            "[[0],[0],[0],[0]]",
            "--format",
            "off",
            "--output",
            str(out),
        )
        assert result.returncode == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "OFF"
        counts = lines[2].split()
        assert counts[:2] == ["24", "14"]
        sidecar = json.loads((tmp_path / "perm.off.json").read_text())
        assert len(sidecar["vertices"]) == 24

    def test_subdivision_has_fifty_cells(self, tmp_path):
        out = tmp_path / "sub.off"
        result = run_cli(
            "diagonal",
            "--tree",
            "[[0],[0],[0],[0]]",
            "--format",
            "off",
            "--output",
            str(out),
        )
        assert result.returncode == 0
        lines = out.read_text().splitlines()
        assert lines[1] == "# cells: 50"

    def test_off_rejected_off_dimension_three(self):
        result = run_cli("realize", "--tree", "[[0],[0]]", "--format", "off")
        assert result.returncode != 0


class TestOracleCheckCommand:
    def test_cone_method(self):
        result = run_cli(
            "oracle-check", "--tree", "[[0],[0],[0]]", "--method", "cone"
        )
        assert result.returncode == 0
        assert result.stdout.strip() == "8/8 agree"

    def test_projection_method(self):
        result = run_cli(
            "oracle-check", "--tree", "[[[0]]]", "--method", "projection"
        )
        assert result.returncode == 0
        assert "agrees" in result.stdout


class TestArrangementCommand:
    def test_d3(self):
        result = run_cli("arrangement", "--n", "3")
        doc = json.loads(result.stdout)
        assert doc["count"] == 3

    def test_brute(self):
        result = run_cli("arrangement", "--brute", "--tree", "[[0],[0],[0]]")
        doc = json.loads(result.stdout)
        assert doc["count"] == 3


class TestOperadCommands:
    def test_differential(self):
        result = run_cli("differential", "--tree", "[[[0]]]")
        doc = json.loads(result.stdout)
        assert doc["terms"] == [
            {"term": [[1], [1, 2]], "coeff": -1},
            {"term": [[1, 2], [2]], "coeff": 1},
        ]

    def test_tensor(self):
        result = run_cli("tensor", "--tree", "[[0]]")
        doc = json.loads(result.stdout)
        assert doc["terms"] == [
            {"left": [[1]], "right": [[1]], "coeff": 1}
        ]


class TestDeterminism:
    def test_byte_identical_across_runs_and_jobs(self):
        args = ("diagonal", "--tree", "[[0],[0],[0],[0]]")
        first = run_cli(*args, env_jobs=1)
        second = run_cli(*args, env_jobs=1)
        third = run_cli(*args, env_jobs=4)
        assert first.stdout == second.stdout == third.stdout
        assert first.returncode == 0

    def test_nestings_listing_is_sorted(self):
        result = run_cli("nestings", "--tree", "[[0],[0],[0]]")
        doc = json.loads(result.stdout)
        assert doc["count"] == 13
        assert doc["nestings"] == sorted(doc["nestings"])


class TestReproduceCommand:
    def test_quick_profile_passes(self):
        result = run_cli("reproduce", "--quick")
        assert result.returncode == 0, result.stdout + result.stderr
        assert "all checks passed" in result.stdout
