"""Command-line interface: subcommands, exit codes, determinism."""

import json
from fractions import Fraction

import pytest

from voaf import cli
from voaf.fock import Sector

F = Fraction


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestTable41:
    def test_text_output(self, capsys):
        code, out, err = run(capsys, "table41")
        assert code == 0
        assert "M+" in out and "Mtheta-" in out
        assert "3/128" in out and "-45/128" in out

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "table41", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["verified"] is True
        rows = {r["module"]: (r["a"], r["b"]) for r in data["rows"]}
        assert rows["M-"] == ("1", "-6")
        assert rows["Mtheta+"] == ("1/16", "3/128")


class TestChar:
    def test_mplus_q4_coefficient(self, capsys):
        code, out, _ = run(capsys, "char", "--module", "M+", "--cutoff", "4",
                           "--json")
        assert code == 0
        data = json.loads(out)
        terms = {k: Fraction(v) for k, v in data["terms"]}
        assert terms[str(F(4) - F(1, 24))] == 3

    def test_charged_module(self, capsys):
        code, out, _ = run(capsys, "char", "--module", "M(s=2)")
        assert code == 0
        assert "q^" in out

    def test_twisted_combined(self, capsys):
        code, out, _ = run(capsys, "char", "--module", "Mtheta", "--cutoff", "3")
        assert code == 0

    def test_bad_module_exit_2(self, capsys):
        code, _, err = run(capsys, "char", "--module", "bogus")
        assert code == 2
        assert "error" in err

    def test_cutoff_env(self, capsys, monkeypatch):
        monkeypatch.setenv("VOAF_CUTOFF", "3")
        code, out3, _ = run(capsys, "char", "--module", "M+", "--json")
        monkeypatch.setenv("VOAF_CUTOFF", "5")
        code5, out5, _ = run(capsys, "char", "--module", "M+", "--json")
        assert code == 0 and code5 == 0
        assert len(json.loads(out5)["terms"]) > len(json.loads(out3)["terms"])


class TestFusion:
    def test_verdict_line(self, capsys):
        code, out, _ = run(capsys, "fusion", "--m", "M-", "--n", "M-",
                           "--l", "M+")
        assert code == 0
        assert out.strip() == "N(M-, M-; M+) = 1"

    def test_certificate_json(self, capsys):
        code, out, _ = run(capsys, "fusion", "--m", "Mtheta+", "--n", "Mtheta+",
                           "--l", "Mtheta+", "--certificate")
        assert code == 0
        data = json.loads(out)
        assert data["verdict"] == 0
        assert data["reason"]

    def test_bad_label_exit_2(self, capsys):
        code, _, err = run(capsys, "fusion", "--m", "M?", "--n", "M+",
                           "--l", "M+")
        assert code == 2
        assert "error" in err

    def test_missing_argument_exit_2(self, capsys):
        code, _, _ = run(capsys, "fusion", "--m", "M+")
        assert code == 2


class TestFusionTable:
    def test_csv_deterministic(self, capsys):
        code, out1, _ = run(capsys, "fusion-table", "--lambda-squares", "2")
        code2, out2, _ = run(capsys, "fusion-table", "--lambda-squares", "2")
        assert code == 0 and code2 == 0
        assert out1 == out2
        header = out1.splitlines()[0]
        assert "verdict" in header

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "fusion-table", "--lambda-squares", "2",
                           "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert all(entry["verdict"] in (0, 1) for entry in data)


class TestReduce:
    def test_descendant_coordinates(self, capsys):
        code, out, _ = run(capsys, "reduce", "--module", "M+",
                           "--expr", "h(-1)h(-1)|0>")
        assert code == 0
        assert "coordinates:" in out
        assert "contraction polynomials:" in out

    def test_foreign_state_exit_2(self, capsys):
        code, _, err = run(capsys, "reduce", "--module", "M+",
                           "--expr", "h(-1)|0>")
        assert code == 2
        assert "error" in err

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run(capsys, "reduce", "--module", "M+",
                           "--expr", "h(-1)h(")
        assert code == 2


class TestParseState:
    def test_descendant(self):
        v = cli.parse_state("h(-3)h(-1)|0>", Sector.untwisted(None))
        assert v.coefficient((F(3), F(1))) == 1

    def test_scalar_prefix_and_sum(self):
        v = cli.parse_state("2*h(-1)h(-1)|0> - h(-2)|0>",
                            Sector.untwisted(None))
        assert v.coefficient((F(1), F(1))) == 2
        assert v.coefficient((F(2),)) == -1

    def test_charged_terminal(self):
        v = cli.parse_state("h(-1)e^lam", Sector.untwisted(F(2)))
        assert v.coefficient((F(1),)) == 1

    def test_twisted_half_modes(self):
        v = cli.parse_state("h(-1/2)1theta", Sector.twisted_sector())
        assert v.coefficient((F(1, 2),)) == 1

    def test_wrong_terminal_raises(self):
        with pytest.raises(ValueError):
            cli.parse_state("e^lam", Sector.untwisted(None))

    def test_garbage_raises(self):
        with pytest.raises(ValueError):
            cli.parse_state("x(-1)|0>", Sector.untwisted(None))


class TestVerify:
    def test_characters_suite_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "characters")
        assert code == 0
        assert "FAIL" not in out

    def test_unknown_suite_exit_2(self, capsys):
        code, _, _ = run(capsys, "verify", "--suite", "nonsense")
        assert code == 2
