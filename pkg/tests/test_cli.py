"""CLI surface: subcommands, formats, exit codes, and determinism."""

from __future__ import annotations

import json
import math

import pytest

from endogrow.cli import main


def write_spec(tmp_path, payload, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


SWAP_SPEC = {
    "group": {"kind": "free_abelian", "rank": 2},
    "endo": {"kind": "matrix", "rows": [[0, 2], [1, 0]]},
    "options": {"max_m": 20},
}


class TestEstimate:
    def test_reports_inf_bound_on_final_line(self, tmp_path, capsys):
        spec = write_spec(tmp_path, SWAP_SPEC)
        assert main(["estimate", spec]) == 0
        final = capsys.readouterr().out.strip().splitlines()[-1]
        assert final.startswith("#")
        assert "inf_bound=1.41421356" in final

    def test_identity_estimate_is_one(self, tmp_path, capsys):
        spec = write_spec(
            tmp_path,
            {"group": {"kind": "free_abelian", "rank": 2},
             "endo": {"kind": "matrix", "rows": [[1, 0], [0, 1]]}},
        )
        assert main(["estimate", spec, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["ratio_estimate"] == pytest.approx(1.0)

    def test_fibonacci_ratio(self, tmp_path, capsys):
        spec = write_spec(
            tmp_path,
            {"group": {"kind": "free", "rank": 2},
             "endo": {"kind": "words", "images": [[1, 2], [1]]},
             "options": {"max_m": 12}},
        )
        assert main(["estimate", spec, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert abs(payload["ratio_estimate"] - (1 + math.sqrt(5)) / 2) <= 0.02

    def test_tsv_table_shape(self, tmp_path, capsys):
        spec = write_spec(tmp_path, SWAP_SPEC)
        assert main(["estimate", spec, "--max-m", "4"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "m\tK_m\troot\tinf_bound\tratio_estimate"
        assert len(lines) == 1 + 4 + 1  # header, rows, summary

    def test_length_mode_override_to_bfs(self, tmp_path, capsys):
        spec = write_spec(tmp_path, SWAP_SPEC)
        code = main(
            ["estimate", spec, "--max-m", "8", "--length-mode", "bfs",
             "--radius", "6", "--format", "json"]
        )
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        # truncated where images leave the enumerated ball, lengths still exact
        assert payload["status"] == "truncated"
        assert payload["table"] == [2, 2, 4, 4]

    def test_length_mode_override_rejected_for_products(self, tmp_path, capsys):
        spec = write_spec(
            tmp_path,
            {"group": {"kind": "direct_product",
                       "factors": [{"kind": "free_abelian", "rank": 1},
                                    {"kind": "free_abelian", "rank": 1}]},
             "endo": {"kind": "product",
                      "factors": [{"kind": "matrix", "rows": [[2]]},
                                   {"kind": "matrix", "rows": [[3]]}]}},
        )
        assert main(["estimate", spec, "--length-mode", "quasi"]) == 2


class TestSpectral:
    def test_swap_doubling(self, tmp_path, capsys):
        spec = write_spec(tmp_path, SWAP_SPEC)
        assert main(["spectral", spec, "--format", "json"]) == 0
        value = json.loads(capsys.readouterr().out)["growth_rate"]
        assert value == pytest.approx(math.sqrt(2), abs=1e-9)

    def test_rank_one(self, tmp_path, capsys):
        spec = write_spec(
            tmp_path,
            {"group": {"kind": "free_abelian", "rank": 1},
             "endo": {"kind": "matrix", "rows": [[3]]}},
        )
        assert main(["spectral", spec, "--format", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["growth_rate"] == pytest.approx(3.0)

    def test_word_endo_has_no_spectral_route(self, tmp_path, capsys):
        spec = write_spec(
            tmp_path,
            {"group": {"kind": "free", "rank": 2},
             "endo": {"kind": "words", "images": [[1, 2], [1]]}},
        )
        assert main(["spectral", spec]) == 2


class TestBall:
    def test_counts_and_queries(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {"group": {"kind": "free_abelian", "rank": 2}})
        code = main(["ball", spec, "--radius", "4", "--query", "[1,1]", "--query", "[3,-1]"])
        assert code == 0
        out = capsys.readouterr().out
        assert "0\t1" in out and "4\t41" in out
        assert "# length\t[1,1]\t2" in out
        assert "# length\t[3,-1]\t4" in out

    def test_out_of_range_query_is_computation_failure(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {"group": {"kind": "free_abelian", "rank": 2}})
        assert main(["ball", spec, "--radius", "2", "--query", "[3,-2]"]) == 3

    def test_json_format(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {"group": {"kind": "free", "rank": 2}})
        assert main(["ball", spec, "--radius", "3", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["counts"] == [1, 5, 17, 53]
        assert payload["complete"] is True


class TestDistortion:
    def test_semidirect_profile_and_rate(self, tmp_path, capsys):
        spec = write_spec(
            tmp_path,
            {"group": {"kind": "semidirect", "base_rank": 2, "quotient_rank": 1,
                       "action": [[[2, 1], [1, 1]]]},
             "options": {"max_m": 8, "radius": 7}},
        )
        assert main(["distortion", spec, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["rate"] == pytest.approx((3 + math.sqrt(5)) / 2, abs=1e-9)
        assert payload["sqrt_rate"] == pytest.approx(math.sqrt((3 + math.sqrt(5)) / 2), abs=1e-9)
        assert payload["profile"][3] >= 3

    def test_semidirect_tsv_carries_both_tables(self, tmp_path, capsys):
        spec = write_spec(
            tmp_path,
            {"group": {"kind": "semidirect", "base_rank": 2, "quotient_rank": 1,
                       "action": [[[2, 1], [1, 1]]]},
             "options": {"max_m": 6, "radius": 5}},
        )
        assert main(["distortion", spec]) == 0
        out = capsys.readouterr().out
        assert out.startswith("n\trho\trho_root")
        assert "m\tK_m\troot\tinf_bound\tratio_estimate" in out
        assert "# K=2.61803399\tK_sqrt=1.61803399" in out

    def test_lattice_profile_needs_subgroup(self, tmp_path, capsys):
        spec = write_spec(tmp_path, {"group": {"kind": "free_abelian", "rank": 2}})
        assert main(["distortion", spec]) == 2

    def test_lattice_profile_with_subgroup(self, tmp_path, capsys):
        spec = write_spec(
            tmp_path,
            {"group": {"kind": "free_abelian", "rank": 2},
             "subgroup": {"kind": "sublattice", "basis": [[1], [0]]},
             "options": {"radius": 5}},
        )
        assert main(["distortion", spec, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["profile"] == [0, 1, 2, 3, 4, 5]


class TestVerify:
    def test_custom_suite_passes(self, tmp_path, capsys):
        suite = {
            "seed": 20250811,
            "checks": [
                {"id": "thm4.1-abelian",
                 "instance": {"group": {"kind": "free_abelian", "rank": 2},
                              "endo": {"kind": "matrix", "rows": [[0, 2], [1, 0]]},
                              "options": {"max_m": 20}}},
                {"id": "lemma4.3-lcs",
                 "instance": {"group": {"kind": "heisenberg", "generators": 3},
                              "endo": {"kind": "heisenberg", "lambda": 2, "gamma": 2}}},
            ],
        }
        path = write_spec(tmp_path, suite, "suite.json")
        assert main(["verify", "--suite", path]) == 0
        out = capsys.readouterr().out
        assert "2 checks, 2 pass" in out

    def test_empty_suite_succeeds(self, tmp_path, capsys):
        path = write_spec(tmp_path, {"checks": []}, "suite.json")
        assert main(["verify", "--suite", path]) == 0

    def test_unknown_law_id_is_spec_error(self, tmp_path, capsys):
        path = write_spec(
            tmp_path, {"checks": [{"id": "thm0.0-none", "instance": {}}]}, "suite.json"
        )
        assert main(["verify", "--suite", path]) == 2

    def test_unattainable_tolerance_fails_with_exit_one(self, tmp_path, capsys):
        # quasi-length estimate cannot match the layer formula to 1e-18
        suite = {
            "checks": [
                {"id": "thm4.4-nilpotent",
                 "instance": {"group": {"kind": "heisenberg", "generators": 3},
                              "endo": {"kind": "heisenberg", "lambda": 2, "gamma": 2},
                              "options": {"tolerance": 1e-18}}},
            ]
        }
        path = write_spec(tmp_path, suite, "suite.json")
        assert main(["verify", "--suite", path]) == 1
        assert "1 fail" in capsys.readouterr().out


class TestErrorsAndDeterminism:
    def test_bad_spec_exits_two(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"group": {"kind": "nope"}}')
        assert main(["spectral", str(path)]) == 2
        assert "group.kind" in capsys.readouterr().err

    def test_invalid_json_reports_position(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"group": ')
        assert main(["spectral", str(path)]) == 2
        err = capsys.readouterr().err
        assert ":1:" in err  # line:column annotation

    def test_missing_file_exits_two(self, capsys):
        assert main(["estimate", "/nonexistent/spec.json"]) == 2

    def test_byte_identical_output_for_same_spec(self, tmp_path, capsys):
        spec = write_spec(tmp_path, SWAP_SPEC)
        assert main(["estimate", spec]) == 0
        first = capsys.readouterr().out
        assert main(["estimate", spec]) == 0
        second = capsys.readouterr().out
        assert first == second
