"""End-to-end checks of the kmx command line: exit codes, JSON schemas,
deterministic output bytes, and the KMX_SEED override."""

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from kmx import jsonio
from kmx.base_lie import finite_element
from kmx.cli import main
from kmx.kac_moody import km_bracket
from kmx.loop_algebra import monomial
from kmx.scalars import EC
from kmx.suites import SuiteResult


def run_cli(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestClassify:
    def test_named_finite(self, capsys):
        rc, out, _ = run_cli(capsys, "classify", "--name", "G2")
        data = json.loads(out)
        assert rc == 0
        assert data["class"] == "finite"
        assert data["name"] == "G2"
        assert data["matrix"] == [[2, -1], [-3, 2]]

    def test_named_twisted(self, capsys):
        rc, out, _ = run_cli(capsys, "classify", "--name", "A~1'")
        data = json.loads(out)
        assert rc == 0
        assert data["class"] == "affine"
        assert data["twist"] == 2
        assert data["alias"] == "2A~2"

    def test_matrix_file(self, tmp_path, capsys):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"matrix": [[2, -2], [-2, 2]]}))
        rc, out, _ = run_cli(capsys, "classify", "--matrix", str(path))
        data = json.loads(out)
        assert rc == 0
        assert data["class"] == "affine"
        assert data["name"] == "A~1"

    def test_matrix_unnamed_indefinite(self, tmp_path, capsys):
        path = tmp_path / "m.json"
        path.write_text(json.dumps([[2, -3], [-3, 2]]))
        rc, out, _ = run_cli(capsys, "classify", "--matrix", str(path))
        data = json.loads(out)
        assert rc == 0
        assert data["class"] == "indefinite"
        assert data["name"] is None

    def test_axiom_violation_exits_2(self, tmp_path, capsys):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"matrix": [[2, -1], [0, 2]]}))
        rc, _, err = run_cli(capsys, "classify", "--matrix", str(path))
        assert rc == 2
        assert "axiom" in err

    def test_decomposable_components(self, tmp_path, capsys):
        path = tmp_path / "m.json"
        path.write_text(json.dumps([[2, 0], [0, 2]]))
        rc, out, _ = run_cli(capsys, "classify", "--matrix", str(path))
        data = json.loads(out)
        assert rc == 0
        assert data["components"] == [[0], [1]]

    def test_missing_source_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["classify"])
        assert exc.value.code == 2


class TestConstruct:
    def test_a1_triples_realize_bracket(self, capsys):
        rc, out, _ = run_cli(capsys, "construct", "--name", "A~1")
        data = json.loads(out)
        assert rc == 0
        assert data["rank"] == 1
        assert len(data["triples"]) == 2
        t0 = data["triples"][0]
        e0 = jsonio.element_from_json(t0["e"], n=2)
        f0 = jsonio.element_from_json(t0["f"], n=2)
        h0 = jsonio.element_from_json(t0["h"], n=2)
        assert h0.r_c == EC(1)
        assert (km_bracket(e0, f0) - h0).is_zero()

    def test_unsupported_type_exits_2(self, capsys):
        rc, _, err = run_cli(capsys, "construct", "--name", "E~8")
        assert rc == 2
        assert "untwisted A~n" in err

    def test_finite_type_exits_2(self, capsys):
        rc, _, _ = run_cli(capsys, "construct", "--name", "A2")
        assert rc == 2


class TestVerify:
    def test_single_suite_schema(self, capsys):
        rc, out, _ = run_cli(
            capsys, "verify", "--suite", "jacobi", "--trials", "5", "--seed", "2"
        )
        data = json.loads(out)
        assert rc == 0
        assert data["seed"] == 2
        (suite,) = data["suites"]
        assert suite["name"] == "jacobi"
        assert suite["cases_run"] == 5
        assert suite["failures"] == 0
        assert "max_residual" not in suite

    def test_all_runs_at_least_eight_suites(self, capsys):
        rc, out, _ = run_cli(
            capsys, "verify", "--all", "--trials", "3", "--steps", "1024",
            "--tol", "1e-6", "--seed", "0",
        )
        data = json.loads(out)
        assert rc == 0
        names = [s["name"] for s in data["suites"]]
        assert len(names) >= 8
        for expected in ("jacobi", "cocycle", "serre", "ad-invariance",
                         "curvature", "duality", "weyl", "flats"):
            assert expected in names
        flats = next(s for s in data["suites"] if s["name"] == "flats")
        assert flats["max_residual"] < 1e-6

    def test_reruns_byte_identical(self, capsys):
        _, out1, _ = run_cli(
            capsys, "verify", "--suite", "metric", "--trials", "7", "--seed", "5"
        )
        _, out2, _ = run_cli(
            capsys, "verify", "--suite", "metric", "--trials", "7", "--seed", "5"
        )
        assert out1 == out2

    def test_env_seed_overrides_flag(self, capsys, monkeypatch):
        monkeypatch.setenv("KMX_SEED", "11")
        rc, out, _ = run_cli(
            capsys, "verify", "--suite", "weyl", "--trials", "4", "--seed", "3"
        )
        assert rc == 0
        assert json.loads(out)["seed"] == 11

    def test_unknown_suite_exits_2(self, capsys):
        rc, _, err = run_cli(capsys, "verify", "--suite", "nope")
        assert rc == 2
        assert "unknown suite" in err

    def test_failure_exits_1_with_report(self, capsys, monkeypatch):
        def broken(rng, trials):
            return SuiteResult("jacobi", trials, trials)

        monkeypatch.setitem(
            __import__("kmx.suites", fromlist=["SUITES"]).SUITES,
            "jacobi", broken,
        )
        rc, out, _ = run_cli(
            capsys, "verify", "--suite", "jacobi", "--trials", "2"
        )
        assert rc == 1
        data = json.loads(out)
        assert data["suites"][0]["failures"] == 2

    def test_report_file_written(self, tmp_path, capsys):
        path = tmp_path / "report.json"
        rc, out, _ = run_cli(
            capsys, "verify", "--suite", "cocycle", "--trials", "3",
            "--report", str(path),
        )
        assert rc == 0
        assert path.read_text() == out


def write_diag_loop(path, num, den):
    q = Fraction(num, den)
    x = finite_element([[EC(0, q), 0], [0, EC(0, -q)]])
    path.write_text(jsonio.dumps({"loop": jsonio.loop_to_json(monomial(x, 0))}))


class TestFlat:
    def test_constant_diagonal_kernel(self, tmp_path, capsys):
        path = tmp_path / "loop.json"
        write_diag_loop(path, 3, 10)
        rc, out, _ = run_cli(
            capsys, "flat", "--algebra", "sl2", "--loop", str(path),
            "--steps", "1024", "--tol", "1e-6",
        )
        data = json.loads(out)
        assert rc == 0
        assert data["kernel_dim"] == 1
        assert data["flat_dim"] == 3
        assert data["residual"] < 1e-6
        assert len(data["kernel_basis"]) == 1

    def test_non_reality_loop_exits_2(self, tmp_path, capsys):
        path = tmp_path / "loop.json"
        x = finite_element([[0, 1], [0, 0]])
        path.write_text(jsonio.dumps({"loop": jsonio.loop_to_json(monomial(x, 1))}))
        rc, _, err = run_cli(
            capsys, "flat", "--algebra", "sl2", "--loop", str(path)
        )
        assert rc == 2
        assert "reality" in err

    def test_missing_file_exits_2(self, capsys):
        rc, _, _ = run_cli(capsys, "flat", "--loop", "/nonexistent.json")
        assert rc == 2


class TestCurvature:
    def test_report_schema_and_file(self, tmp_path, capsys):
        path = tmp_path / "report.json"
        rc, out, _ = run_cli(
            capsys, "curvature", "--samples", "4", "--algebra", "sl2",
            "--seed", "1", "--report", str(path),
        )
        data = json.loads(out)
        assert rc == 0
        assert data["bianchi_ok"] is True
        assert data["symmetry_ok"] == [True, True, True]
        assert data["estimate_ok"] is True
        assert data["all_nonnegative"] is True
        assert len(data["sign_samples"]) == 4
        assert path.read_text() == out

    def test_deterministic_for_seed(self, capsys):
        _, out1, _ = run_cli(capsys, "curvature", "--samples", "3", "--seed", "4")
        _, out2, _ = run_cli(capsys, "curvature", "--samples", "3", "--seed", "4")
        assert out1 == out2


class TestSlice:
    def test_csv_columns(self, tmp_path, capsys):
        path = tmp_path / "slice.csv"
        rc, out, _ = run_cli(
            capsys, "slice", "--level", "-2", "--rd", "1", "--samples", "5",
            "--csv", str(path),
        )
        assert rc == 0
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "a,r_c,r_d"
        assert len(lines) == 6
        assert lines[3] == "0,1,1"  # the timelike point c + d
        data = json.loads(out)
        assert data["points"][2] == {"a": "0", "rc": "1", "rd": "1"}

    def test_empty_slice_exits_2(self, capsys):
        rc, _, err = run_cli(
            capsys, "slice", "--level", "3", "--rd", "0", "--samples", "4"
        )
        assert rc == 2
        assert "no rational solution" in err


class TestWeyl:
    def test_orbit_values(self, capsys):
        rc, out, _ = run_cli(capsys, "weyl", "--orbit", "1/2", "--radius", "2")
        data = json.loads(out)
        assert rc == 0
        assert data["orbit"] == ["-3/2", "-1/2", "1/2", "3/2", "5/2"]
        assert data["singular"] is False

    def test_integer_singular(self, capsys):
        rc, out, _ = run_cli(capsys, "weyl", "--orbit", "2", "--radius", "8")
        assert rc == 0
        assert json.loads(out)["singular"] is True


class TestConsoleScript:
    def test_entry_point_runs(self):
        proc = subprocess.run(
            [sys.executable, "-m", "kmx.cli", "classify", "--name", "A~1"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["class"] == "affine"

    def test_no_subcommand_exits_2(self):
        proc = subprocess.run(
            [sys.executable, "-m", "kmx.cli"], capture_output=True, text=True
        )
        assert proc.returncode == 2
