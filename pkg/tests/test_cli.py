"""
Tests for the gnd command line
"""
import io

import pytest

from gnd_core.cli import EXIT_NEGATIVE, EXIT_OK, EXIT_REJECTED, EXIT_USAGE, Invocation, main
from gnd_core.hilbert import check_hilbert, parse_hilbert
from gnd_core.kernel import check_script
from gnd_core.scripts import Mode, parse_script

REJECTED_SCRIPT = """system: G
1. p -> p ; axiom
2. p -> q => p ; imp-intro 1
"""


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInvocation:

    def test_flags_are_scoped_to_their_subcommand(self):
        with pytest.raises(ValueError):
            Invocation(subcommand="prove", target="-> p", intuitionistic=True)
        with pytest.raises(ValueError):
            Invocation(subcommand="check", target="x.gnd", out="y.gnd")
        with pytest.raises(ValueError):
            Invocation(subcommand="translate", target="x.gnd")

    def test_corpus_needs_no_target(self):
        assert Invocation(subcommand="corpus").target is None


class TestCheck:

    def test_golden_script_by_name(self, capsys):
        code, out, _ = _run(capsys, "check", "paradox2.gnd")
        assert code == EXIT_OK
        assert out.strip().endswith("ACCEPTED")

    def test_hilbert_script(self, capsys):
        code, out, _ = _run(capsys, "check", "hl3_contraposition.hil")
        assert code == EXIT_OK
        assert "ACCEPTED" in out

    def test_rejected(self, capsys, tmp_path):
        path = tmp_path / "bad.gnd"
        path.write_text(REJECTED_SCRIPT)
        code, out, _ = _run(capsys, "check", str(path))
        assert code == EXIT_REJECTED
        assert "line 2:" in out
        assert "REJECTED (1 violations)" in out

    def test_strict_rejects_macros(self, capsys):
        code, out, _ = _run(capsys, "check", "--strict", "contraction.gnd")
        assert code == EXIT_REJECTED
        assert "line 3:" in out

    def test_porcelain(self, capsys):
        code, out, _ = _run(capsys, "check", "--porcelain", "dne.gnd")
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "verdict=accepted"
        assert "rule.raa=1" in lines

    def test_parse_error(self, capsys, tmp_path):
        path = tmp_path / "broken.gnd"
        path.write_text("system: G\n1. p -> p ; axiom\n2. p -> p => ; thin 1\n")
        code, _, err = _run(capsys, "check", str(path))
        assert code == EXIT_USAGE
        assert err.startswith("Error:")

    def test_missing_file(self, capsys):
        code, _, err = _run(capsys, "check", "no_such_proof.gnd")
        assert code == EXIT_USAGE
        assert "Error:" in err


class TestProveAndDecide:

    def test_prove(self, capsys):
        code, out, _ = _run(capsys, "prove", "~~p -> p")
        assert code == EXIT_OK
        assert out.startswith("# generated-by gnd prove")
        assert check_script(parse_script(out)).accepted

    def test_countermodel(self, capsys):
        code, out, _ = _run(capsys, "prove", "-> p")
        assert code == EXIT_NEGATIVE
        assert out.strip() == "countermodel: p=F"

    @pytest.mark.parametrize("system,connective", [("C", " . "), ("GBot", "#")])
    def test_prove_into_other_systems(self, capsys, system, connective):
        code, out, _ = _run(capsys, "prove", "--system", system, "-> ~~p => p")
        assert code == EXIT_OK
        script = parse_script(out)
        assert script.system.value == system
        assert connective in str(script.conclusion)
        assert check_script(script).accepted

    def test_prove_is_deterministic(self, capsys):
        first = _run(capsys, "prove", "p => q, q => r -> p => r")
        second = _run(capsys, "prove", "p => q, q => r -> p => r")
        assert first == second

    def test_decide(self, capsys):
        assert _run(capsys, "decide", "p => p")[:2] == (EXIT_OK, "valid\n")
        assert _run(capsys, "decide", "p => q -> q")[:2] == (EXIT_NEGATIVE, "countermodel: p=F q=F\n")

    def test_decide_porcelain(self, capsys):
        code, out, _ = _run(capsys, "decide", "--porcelain", "q => p")
        assert code == EXIT_NEGATIVE
        assert out.splitlines() == ["verdict=invalid", "value.p=F", "value.q=T"]

    def test_decide_intuitionistic(self, capsys):
        assert _run(capsys, "decide", "--int", "~~p => p")[:2] == (EXIT_NEGATIVE, "int-invalid\n")
        assert _run(capsys, "decide", "--int", "~(p . ~p)")[:2] == (EXIT_OK, "int-valid\n")

    def test_decide_parse_error(self, capsys):
        code, _, err = _run(capsys, "decide", "p => $")
        assert code == EXIT_USAGE
        assert err.startswith("Error:")

    @pytest.mark.parametrize("subcommand", ["decide", "prove"])
    def test_deeply_nested_input(self, capsys, subcommand):
        code, _, err = _run(capsys, subcommand, "~" * 1200 + "p")
        assert code == EXIT_USAGE
        assert err.startswith("Error:")
        assert "nesting depth" in err


class TestPipeline:

    def test_prove_elaborate_check_through_files(self, capsys, tmp_path):
        proof, strict = tmp_path / "proof.gnd", tmp_path / "strict.gnd"
        assert _run(capsys, "prove", "~p -> p => q", "--out", str(proof))[0] == EXIT_OK
        assert _run(capsys, "elaborate", str(proof), "--out", str(strict))[0] == EXIT_OK
        assert parse_script(strict.read_text()).mode is Mode.STRICT
        code, out, _ = _run(capsys, "check", "--strict", str(strict))
        assert code == EXIT_OK
        assert "ACCEPTED" in out

    def test_elaborate_from_stdin(self, capsys, monkeypatch, corpus):
        monkeypatch.setattr("sys.stdin", io.StringIO(corpus.load("paradox2_macro.gnd")))
        code, out, _ = _run(capsys, "elaborate", "-")
        assert code == EXIT_OK
        assert parse_script(out).lines == parse_script(corpus.load("paradox2.gnd")).lines

    def test_out_is_not_written_on_failure(self, capsys, tmp_path):
        target = tmp_path / "never.gnd"
        assert _run(capsys, "prove", "-> p", "--out", str(target))[0] == EXIT_NEGATIVE
        assert not target.exists()


class TestTranslate:

    def test_g_to_c(self, capsys):
        code, out, _ = _run(capsys, "translate", "--from", "G", "--to", "C", "dne.gnd")
        assert code == EXIT_OK
        script = parse_script(out)
        assert str(script.conclusion) == "~~p -> p"
        assert check_script(script).accepted

    def test_g_to_hl3(self, capsys):
        code, out, _ = _run(capsys, "translate", "--from", "G", "--to", "HL3", "paradox1.gnd")
        assert code == EXIT_OK
        assert check_hilbert(parse_hilbert(out)).accepted

    def test_hilbert_to_g(self, capsys):
        code, out, _ = _run(capsys, "translate", "--from", "HLT", "--to", "G", "hlt_lemma.hil")
        assert code == EXIT_OK
        assert check_script(parse_script(out)).accepted

    def test_declared_system_must_match(self, capsys):
        code, _, err = _run(capsys, "translate", "--from", "C", "--to", "G", "dne.gnd")
        assert code == EXIT_USAGE
        assert "Error:" in err

    def test_rejected_input(self, capsys, tmp_path):
        path = tmp_path / "bad.gnd"
        path.write_text(REJECTED_SCRIPT)
        assert _run(capsys, "translate", "--from", "G", "--to", "C", str(path))[0] == EXIT_REJECTED

    def test_no_route(self, capsys):
        code, _, err = _run(capsys, "translate", "--from", "C", "--to", "GBot", "weak_raa.gnd")
        assert code == EXIT_USAGE
        assert err.startswith("Error:")


class TestUsage:

    def test_corpus_listing(self, capsys):
        code, out, _ = _run(capsys, "corpus")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "Golden scripts:"
        assert "  paradox2.gnd" in out.splitlines()

    def test_unknown_subcommand(self, capsys):
        assert _run(capsys, "frobnicate")[0] == EXIT_USAGE

    def test_intuitionistic_porcelain(self, capsys):
        assert _run(capsys, "decide", "--int", "--porcelain", "p")[:2] == (EXIT_NEGATIVE, "verdict=int-invalid\n")

    def test_prove_cannot_write_hilbert(self, capsys):
        code, _, err = _run(capsys, "prove", "--system", "HL3", "-> p => p")
        assert code == EXIT_USAGE
        assert err.startswith("Error:")

    def test_unknown_system(self, capsys):
        assert _run(capsys, "prove", "--system", "K", "-> p")[0] == EXIT_USAGE
