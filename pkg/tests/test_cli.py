import json
import os

import pytest

import golden_cases
from psiest import DataParseError, EmptyData, NegativeWeight
from psiest.cli import main, read_data

GOLDEN_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "golden")


class TestReadData:
    def test_plain_file(self, tmp_path):
        p = tmp_path / "d.txt"
        p.write_text("1\n2\n3\n")
        s = read_data(str(p))
        assert s.xs == (1.0, 2.0, 3.0)
        assert s.weights == (1.0, 1.0, 1.0)

    def test_weight_column(self, tmp_path):
        p = tmp_path / "d.txt"
        p.write_text("1,2\n3,1\n")
        s = read_data(str(p))
        assert s.xs == (1.0, 3.0)
        assert s.weights == (2.0, 1.0)

    def test_comments_and_blanks(self, tmp_path):
        p = tmp_path / "d.txt"
        p.write_text("# header\n1  # one\n\n2\n")
        assert read_data(str(p)).xs == (1.0, 2.0)

    def test_negative_weight(self, tmp_path):
        p = tmp_path / "d.txt"
        p.write_text("1,-1\n")
        with pytest.raises(NegativeWeight) as exc:
            read_data(str(p))
        assert exc.value.line == 1

    def test_bad_number(self, tmp_path):
        p = tmp_path / "d.txt"
        p.write_text("1\nfoo\n")
        with pytest.raises(DataParseError) as exc:
            read_data(str(p))
        assert exc.value.line == 2

    def test_empty(self, tmp_path):
        p = tmp_path / "d.txt"
        p.write_text("# nothing\n")
        with pytest.raises(EmptyData):
            read_data(str(p))

    def test_inline_literal(self):
        s = read_data("[1,-2.5,3]")
        assert s.xs == (1.0, -2.5, 3.0)

    def test_separate_weights_file(self, tmp_path):
        d = tmp_path / "d.txt"
        d.write_text("1\n2\n")
        w = tmp_path / "w.txt"
        w.write_text("3\n4\n")
        s = read_data(str(d), str(w))
        assert s.weights == (3.0, 4.0)

    def test_weights_length_mismatch(self, tmp_path):
        d = tmp_path / "d.txt"
        d.write_text("1\n2\n")
        w = tmp_path / "w.txt"
        w.write_text("3\n")
        with pytest.raises(DataParseError):
            read_data(str(d), str(w))


class TestExitCodes:
    def test_usage_error(self, capsys):
        assert main(["estimate", "--data", "[1]"]) == 1
        capsys.readouterr()

    def test_unknown_family(self, capsys):
        assert main(["estimate", "--family", "nope", "--data", "[1]"]) == 1
        capsys.readouterr()

    def test_missing_file(self, capsys):
        assert main(["estimate", "--family", "expectile",
                     "--param", "alpha=0.5", "--data", "/no/such/file"]) == 1
        capsys.readouterr()

    def test_solver_failure(self, capsys):
        # a kernel that is negative everywhere never shows a positive part
        assert main(["estimate", "--psi", "0 - 1", "--theta", "0,1",
                     "--data", "[1]"]) == 2
        capsys.readouterr()

    def test_counterexample_exit(self, capsys):
        code = main(golden_cases.CASES["compare_expectile_reversed"])
        capsys.readouterr()
        assert code == 3


class TestEstimate:
    def test_expression_kernel(self, capsys):
        code = main(["estimate", "--psi", "x - t", "--theta=-inf,inf",
                     "--data", "[1,2,3]"])
        out = capsys.readouterr().out
        assert code == 0
        report = json.loads(out)
        assert abs(report["theta"] - 2.0) <= 1e-10

    def test_closed_form_flag(self, capsys):
        code = main(["estimate", "--family", "laplace_scale", "--param", "mu=0",
                     "--data", "[1,-2,3]", "--closed-form"])
        out = capsys.readouterr().out
        assert code == 0
        report = json.loads(out)
        assert report["method"] == "closed_form"
        assert report["theta"] == 2.0

    def test_seed_env_fallback(self, capsys, monkeypatch):
        argv = golden_cases.CASES["compare_expectile_forward"]
        monkeypatch.setenv("PSIEST_SEED", "7")
        main(argv)
        out7 = capsys.readouterr().out
        assert json.loads(out7)["seed"] == 7
        monkeypatch.delenv("PSIEST_SEED")
        main(argv)
        assert json.loads(capsys.readouterr().out)["seed"] == 0


class TestGoldenDeterminism:
    @pytest.mark.parametrize("name", sorted(golden_cases.CASES))
    def test_matches_golden_and_repeats(self, name):
        argv = golden_cases.CASES[name]
        code1, out1 = golden_cases.run_case(argv)
        code2, out2 = golden_cases.run_case(argv)
        assert code1 == code2 == golden_cases.EXPECTED_EXIT[name]
        assert out1 == out2  # byte-identical across runs
        with open(os.path.join(GOLDEN_DIR, name + ".json"), encoding="utf-8") as fh:
            assert out1 == fh.read()

    @pytest.mark.parametrize("name", sorted(golden_cases.CASES))
    def test_golden_is_valid_json(self, name):
        with open(os.path.join(GOLDEN_DIR, name + ".json"), encoding="utf-8") as fh:
            json.loads(fh.read())
