import json

import pytest

from sumsetlab.cli import main, parse_int_set, parse_points
from sumsetlab.groups import CyclicGroup


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsers:
    def test_int_set_literal(self):
        assert parse_int_set("0, 1,3").elements == (0, 1, 3)

    def test_bad_literal(self):
        from sumsetlab.errors import SumsetlabError

        with pytest.raises(SumsetlabError):
            parse_int_set("0,a,2")

    def test_points_compact_and_json(self):
        c5 = CyclicGroup(5)
        compact = parse_points(c5, "(0,2),(1,3),(2,4)")
        as_json = parse_points(c5, "[[0, 2], [1, 3], [2, 4]]")
        assert compact == as_json == [(0, 2), (1, 3), (2, 4)]


class TestSumsetCommand:
    def test_pretty(self, capsys):
        code, out, _ = run(capsys, "sumset", "--set", "0,1,2")
        assert code == 0
        assert "[0, 1, 2, 3, 4]" in out and "b=0" in out

    def test_json_stats(self, capsys):
        code, out, _ = run(capsys, "sumset", "--set", "0,1,3", "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["size"] == 6 and data["stats"]["b"] == 1

    def test_two_sets(self, capsys):
        code, out, _ = run(capsys, "sumset", "--set", "0,1", "--set2", "0,10", "--format", "json")
        assert code == 0
        assert json.loads(out)["sumset"] == [0, 1, 10, 11]

    def test_group_square(self, capsys):
        code, out, _ = run(
            capsys,
            "sumset",
            "--group",
            "heisenberg",
            "--set",
            "[[0,0,0],[1,0,0],[0,1,0]]",
            "--format",
            "json",
        )
        assert code == 0
        assert json.loads(out)["size"] == 7


class TestDetectCommand:
    def test_structured_interval(self, capsys):
        code, out, _ = run(capsys, "detect", "--set", "0,1,2,4")
        assert code == 0 and "structured: True" in out

    def test_unstructured_exits_1(self, capsys):
        code, out, _ = run(capsys, "detect", "--set", "0,1,3,4,6")
        assert code == 1 and "structured: False" in out

    def test_product_witness(self, capsys):
        code, out, _ = run(
            capsys,
            "detect",
            "--product",
            "--inner",
            "cyclic:5",
            "--points",
            "(0,2),(1,3),(2,4)",
        )
        assert code == 0 and "witness x=1 y=2" in out

    def test_group_weak_structure(self, capsys):
        code, out, _ = run(
            capsys,
            "detect",
            "--group",
            "heisenberg",
            "--set",
            "[[0,0,1],[1,0,1],[2,0,1]]",
        )
        assert code == 0 and "weakly structured: True" in out


class TestVerifyCommand:
    def test_holds(self, capsys):
        code, out, _ = run(capsys, "verify", "--theorem", "thm_A", "--set", "0,1,2")
        assert code == 0 and "holds" in out

    def test_hypothesis_not_met(self, capsys):
        code, out, _ = run(capsys, "verify", "--theorem", "thm_A", "--set", "0,1,9")
        assert code == 0 and "hypothesis not met" in out

    def test_alias_accepted(self, capsys):
        code, out, _ = run(capsys, "verify", "--theorem", "thm_A_3k4", "--set", "0,1,2")
        assert code == 0

    def test_cauchy_davenport(self, capsys):
        code, out, _ = run(
            capsys,
            "verify",
            "--theorem",
            "cauchy_davenport",
            "--set",
            "0,1,2",
            "--set2",
            "0,1",
            "--p",
            "5",
            "--format",
            "json",
        )
        assert code == 0
        assert json.loads(out)["conclusion_holds"] is True

    def test_ordered_group_theorem(self, capsys):
        code, out, _ = run(
            capsys,
            "verify",
            "--theorem",
            "thm_4",
            "--group",
            "heisenberg",
            "--set",
            "[[0,0,1],[1,0,1],[2,0,1]]",
            "--format",
            "json",
        )
        assert code == 0
        data = json.loads(out)
        assert data["details"]["reading"] == "N"

    def test_malformed_exits_2(self, capsys):
        code, _, err = run(capsys, "verify", "--theorem", "thm_A", "--set", "0,x")
        assert code == 2 and "error" in err

    def test_unknown_theorem_exits_2(self, capsys):
        code, _, err = run(capsys, "verify", "--theorem", "thm_9", "--set", "0,1")
        assert code == 2


class TestSweepCommand:
    def test_small_sweep_ok(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--theorem", "thm_A", "--nmax", "8", "--format", "json"
        )
        assert code == 0
        data = json.loads(out)
        assert data["complete"] and not data["counterexamples"]

    def test_limit_exits_3(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--theorem", "thm_A", "--nmax", "10", "--limit", "20"
        )
        assert code == 3 and "INCOMPLETE" in out

    def test_random_needs_seed(self, capsys):
        code, _, err = run(
            capsys,
            "sweep",
            "--theorem",
            "thm_1",
            "--mode",
            "random",
            "--count",
            "10",
        )
        assert code == 2 and "seed" in err

    def test_seeded_sweep_reproducible(self, capsys, tmp_path):
        argv = [
            "sweep",
            "--theorem",
            "thm_1",
            "--inner",
            "cyclic:5",
            "--amax",
            "7",
            "--mode",
            "random",
            "--count",
            "300",
            "--seed",
            "42",
            "--format",
            "json",
        ]
        out_a, out_b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(argv + ["--output", str(out_a)]) == 0
        assert main(argv + ["--output", str(out_b)]) == 0
        a = json.loads(out_a.read_text())
        b = json.loads(out_b.read_text())
        a.pop("elapsed"), b.pop("elapsed")
        assert a == b

    def test_csv_output(self, capsys):
        code, out, _ = run(
            capsys,
            "sweep",
            "--theorem",
            "cauchy_davenport",
            "--p",
            "3",
            "--format",
            "csv",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("theorem,") and lines[1].startswith("cauchy_davenport,")

    def test_heisenberg_readings_line(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--theorem", "thm_4", "--box=-1,1"
        )
        assert code == 0 and "window readings" in out

    def test_workers_flag(self, capsys):
        code, out, _ = run(
            capsys,
            "sweep",
            "--theorem",
            "lemma_2",
            "--nmax",
            "9",
            "--workers",
            "2",
            "--format",
            "json",
        )
        assert code == 0 and json.loads(out)["complete"]

    def test_output_file_written(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code = main(
            [
                "sweep",
                "--theorem",
                "thm_A",
                "--nmax",
                "8",
                "--format",
                "json",
                "--output",
                str(path),
            ]
        )
        assert code == 0
        assert json.loads(path.read_text())["schema_version"] == 1
