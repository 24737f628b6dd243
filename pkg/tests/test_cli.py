import json

import pytest

from app import join_signed_values
from config import CFG
from exceptions import GeometryCheckError


class TestDim:
    @pytest.mark.parametrize("text,dim", [("1,2", 3), ("4", 1), ("1,1,2", 12)])
    def test_dim(self, cli, text, dim):
        result = cli("dim", "--partition", text)
        assert result.code == 0
        assert result.doc["dim"] == dim
        assert result.doc["schema"] == CFG.schema_version
        assert result.doc["command"] == "dim"

    def test_bad_partition(self, cli):
        result = cli("dim", "--partition", "1,x")
        assert result.code == 2
        assert result.out == ""
        assert "Invalid partition" in result.err

    def test_missing_flag_is_usage_error(self, cli):
        assert cli("dim").code == 2

    def test_unknown_command(self, cli):
        assert cli("plot", "--partition", "1").code == 2


class TestRep:
    def test_case_II_goldens(self, cli):
        result = cli("rep", "--case", "II", "--partition", "1,1")
        assert result.code == 0
        doc = result.doc
        assert doc["family"]["sigma_1"] == [["0", "-1"], ["1", "2"]]
        assert doc["microlocal"]["kappa_1"] == [["2", "1"], ["-1", "0"]]
        assert doc["verification"]["passed"]
        assert all(check["passed"] for check in doc["verification"]["checks"])

    def test_case_I_goldens(self, cli):
        doc = cli("rep", "--case", "i", "--partition", "1,1").doc
        assert doc["family"]["sigma_1"] == [["0", "1"], ["1", "0"]]
        assert doc["microlocal"]["kappa_1"] == [["0", "-1"], ["-1", "0"]]
        assert doc["basis"] == [[1, 2], [2, 1]]

    def test_single_part_gives_1x1(self, cli):
        doc = cli("rep", "--case", "I", "--partition", "3").doc
        assert doc["dim"] == 1
        assert doc["family"] == {"sigma_1": [["1"]], "sigma_2": [["1"]]}
        assert doc["microlocal"] == {}

    def test_requested_colored_braid(self, cli):
        result = cli("rep", "--partition", "1,2", "--colored-braid", "1 1")
        assert result.code == 0
        doc = result.doc
        assert len(doc["microlocal"]["1 1"]) == 3
        checks = {check["name"]: check["passed"] for check in doc["verification"]["checks"]}
        assert checks["commutation"]

    def test_family_word(self, cli):
        doc = cli("rep", "--case", "II", "--partition", "1,1", "--braid", "1 -1").doc
        assert doc["braid"] == {"word": "1 -1", "matrix": [["1", "0"], ["0", "1"]]}

    def test_color_violation(self, cli):
        result = cli("rep", "--partition", "1,2", "--colored-braid", "1")
        assert result.code == 2
        assert "colored braid group" in result.err

    def test_bad_braid(self, cli):
        result = cli("rep", "--partition", "1,1", "--braid", "5")
        assert result.code == 2
        assert "Invalid braid word" in result.err


class TestTrack:
    def test_transposition(self, cli):
        result = cli("track", "--partition", "1,1", "--braid", "1")
        assert result.code == 0
        assert result.doc["permutation"] == [1, 0]
        assert result.doc["verdict"] == "match"

    def test_identity(self, cli):
        doc = cli("track", "--partition", "1,2").doc
        assert doc["permutation"] == [0, 1, 2]
        assert doc["verdict"] == "match"
        assert doc["min_gap_observed"] is None

    def test_colored(self, cli):
        doc = cli("track", "--partition", "2,2", "--braid", "1", "--colored").doc
        assert len(doc["permutation"]) == 6
        assert doc["verdict"] == "match"
        assert doc["input"]["colored"] is True

    def test_explicit_configuration(self, cli):
        result = cli("track", "--partition", "1,1", "--lambdas", "-1,1", "--us", "1j,-1j", "--braid", "-1", "--tau", "2")
        assert result.code == 0
        doc = result.doc
        assert doc["input"]["us"] == [[0.0, 1.0], [0.0, -1.0]]
        assert doc["input"]["tau"] == [2.0, 0.0]
        assert doc["verdict"] == "match"

    def test_colliding_configuration(self, cli):
        result = cli("track", "--partition", "1,1", "--lambdas", "1,1", "--us", "1,2")
        assert result.code == 1
        assert "collided" in result.err

    def test_bad_numbers(self, cli):
        assert cli("track", "--partition", "1,1", "--lambdas", "a,b").code == 2


class TestGeometry:
    def test_verify_sampled(self, cli):
        result = cli("geometry", "--case", "I", "--partition", "1,2", "--verify")
        assert result.code == 0
        doc = result.doc
        assert doc["normal_form"]["passed"]
        assert doc["orbit"] == [1, 2]
        assert doc["conormal"]

    def test_trivial_single_block(self, cli):
        result = cli("geometry", "--case", "I", "--partition", "3", "--us", "0", "--verify")
        assert result.code == 0
        assert result.doc["differential_rank"] == 2
        assert result.doc["pair"]["u"] == ["0"]

    @pytest.mark.parametrize("case", ["II", "III"])
    def test_other_cases(self, cli, case):
        result = cli("geometry", "--case", case, "--partition", "1,1", "--us", "1/2,-1/2", "--verify")
        assert result.code == 0
        assert "form" in result.doc["pair"]

    def test_critical_points(self, cli):
        result = cli("geometry", "--case", "I", "--partition", "1,1", "--critical-points")
        assert result.code == 0
        points = result.doc["critical_points"]
        assert len(points) == 2
        assert all(point["morse"] for point in points)
        assert result.doc["slice"]["transversal"]

    def test_critical_points_need_case_I(self, cli):
        result = cli("geometry", "--case", "II", "--partition", "1,1", "--critical-points")
        assert result.code == 2
        assert "Geometry input rejected" in result.err

    def test_trace_condition(self, cli):
        assert cli("geometry", "--partition", "1,1", "--us", "1,2").code == 2


class TestRunSettings:
    def test_output_is_deterministic(self, cli):
        argv = ("geometry", "--case", "I", "--partition", "1,1", "--critical-points", "--seed", "4")
        assert cli(*argv).out == cli(*argv).out

    def test_out_file(self, cli, tmp_path):
        target = tmp_path / "dim.json"
        result = cli("dim", "--partition", "1,2", "--out", str(target))
        assert result.code == 0
        assert result.out == ""
        assert json.loads(target.read_text())["dim"] == 3

    def test_invalid_tolerance(self, cli):
        result = cli("dim", "--partition", "1,2", "--tol", "-1")
        assert result.code == 2
        assert "exact_tol must be positive" in result.err

    def test_flags_do_not_leak(self, cli):
        before = CFG.exact_tol, CFG.seed
        cli("track", "--partition", "1,1", "--braid", "1", "--seed", "9", "--tol", "1e-7")
        assert (CFG.exact_tol, CFG.seed) == before

    def test_debug_logs_to_stderr(self, cli):
        result = cli("track", "--partition", "1,1", "--braid", "1", "--debug")
        assert result.code == 0
        assert "[DEBUG]" in result.err
        json.loads(result.out)


class TestSignedValues:
    def test_join_signed_values(self):
        argv = ["track", "--lambdas", "-1,1", "--us", "-2,2", "--braid", "-1"]
        assert join_signed_values(argv) == ["track", "--lambdas=-1,1", "--us=-2,2", "--braid=-1"]

    def test_negative_lambdas_for_track(self, cli):
        result = cli("track", "--partition", "1,1", "--lambdas", "-1,1", "--us", "1,-1", "--braid", "1")
        assert result.code == 0
        assert result.doc["input"]["lambdas"] == [[-1.0, 0.0], [1.0, 0.0]]
        assert result.doc["permutation"] == [1, 0]

    def test_negative_lambdas_for_critical_points(self, cli):
        result = cli("geometry", "--partition", "1,1", "--us", "-1,1", "--lambdas", "-0.5,0.5", "--critical-points")
        assert result.code == 0
        assert len(result.doc["critical_points"]) == 2

    def test_braid_starting_with_inverse_letter(self, cli):
        result = cli("rep", "--partition", "1,1,1", "--braid", "-1 2")
        assert result.code == 0
        assert result.doc["braid"]["word"] == "-1 2"
        result = cli("rep", "--partition", "1,2", "--colored-braid", "-1 -1")
        assert result.code == 0
        assert "-1 -1" in result.doc["microlocal"]


class TestGeometryCheckFailures:
    def test_internal_geometry_failure_exits_1(self, cli, monkeypatch):
        def broken(*args, **kwargs):
            raise GeometryCheckError("critical points (1, 2) and (2, 1) coincide")

        monkeypatch.setattr("handlers.numerics.slice_and_critical_points_I", broken)
        result = cli("geometry", "--partition", "1,1", "--critical-points")
        assert result.code == 1
        assert "Geometry check failed" in result.err

    def test_bad_geometry_input_still_exits_2(self, cli):
        result = cli("geometry", "--partition", "1,1", "--us", "1,1")
        assert result.code == 2
        assert "Geometry input rejected" in result.err
