import pytest

from app.directive_result import FAILED, OK, DirectiveResult
from app.exceptions import ConfigurationError, ParseError, TeqError, ValidationError
from app.parser import parse_sequent
from app.syntax import Effect
from app.teq_config import TeqConfig
from app.toolchain import Toolchain


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_toolchain_rejects_invalid_config(tmp_path):
    with pytest.raises(ConfigurationError):
        Toolchain(TeqConfig(base_dir=tmp_path, fuel=-1))


def test_check_program_accepts(toolchain, corpus_dir):
    (result,) = toolchain.check_program(corpus_dir / "plus.teqt")
    assert result == DirectiveResult("check", str(corpus_dir / "plus.teqt"), "plus", OK,
                                     "plus : Pi ! x1:nat. Pi ! x2:nat. nat")
    assert toolchain.results == [result]


def test_check_program_reports_rule(toolchain, tmp_path):
    path = write(tmp_path, "bad.teqt", "def bad = abort nat\ncheck bad : nat at !")
    (result,) = toolchain.check_program(path)
    assert result.status == FAILED
    assert result.detail.startswith("A_Abort (premise 0)")


def test_effect_override(toolchain, tmp_path):
    path = write(tmp_path, "bad.teqt", "def bad = abort nat\ncheck bad : nat at !")
    (result,) = toolchain.check_program(path, effect=Effect.GENERAL)
    assert result.ok


def test_declared_type_mismatch(toolchain, tmp_path):
    path = write(tmp_path, "z.teqt", "def z = 0\ncheck z : Pi ! x : nat . nat at !")
    (result,) = toolchain.check_program(path)
    assert result.detail.startswith("check (premise 0)")
    assert "inferred type differs" in result.detail


def test_join_fuel_is_passed_through(toolchain, tmp_path):
    path = write(tmp_path, "j.teqt", "def j = join ((\\! x : nat . x) 0) 0\ncheck j : (\\! x : nat . x) 0 = 0 at !")
    assert toolchain.check_program(path, fuel=1)[0].ok
    assert not toolchain.check_program(path, fuel=0)[0].ok


def test_parse_errors_propagate(toolchain, tmp_path):
    path = write(tmp_path, "broken.teqt", "def x = = 0")
    with pytest.raises(ParseError):
        toolchain.check_program(path)


def test_undefined_names_propagate(toolchain, tmp_path):
    path = write(tmp_path, "undefined.teqt", "check x : nat at !")
    with pytest.raises(ValidationError):
        toolchain.check_program(path)


def test_evaluate_program(toolchain, corpus_dir):
    (result,) = toolchain.evaluate_program(corpus_dir / "plus.teqt", fuel=100)
    assert result.output.startswith("plus23 = Suc (Suc (Suc (Suc (Suc 0))))  [")
    assert result.output.endswith(" steps]")


def test_evaluate_reports_exhausted_fuel(toolchain, tmp_path):
    path = write(tmp_path, "loop.teqt", "def loop = (rec f (x : nat) : nat = f x) 0\neval loop")
    (result,) = toolchain.evaluate_program(path, fuel=10)
    assert result.output.endswith("[10 steps] (fuel exhausted)")


def test_erase_program(toolchain, corpus_dir):
    results = toolchain.erase_program(corpus_dir / "plus.teqt")
    assert [r.name for r in results] == ["plus", "plus23"]
    assert results[0].output.startswith("plus = \\x2. rec f (x1) = ")
    assert results[1].output == "plus23 = plus (Suc (Suc 0)) (Suc (Suc (Suc 0)))"


@pytest.mark.parametrize("example", ["example1", "example2", "example3", "example4"])
def test_translate_matches_golden(example, toolchain, corpus_dir, tmp_path):
    target = tmp_path / f"{example}.obl"
    (result,) = toolchain.translate_program(corpus_dir / f"{example}.teqt", target)
    golden = parse_sequent((corpus_dir / "golden" / f"{example}.obl").read_text())
    assert result.ok
    assert parse_sequent(target.read_text()) == golden
    assert parse_sequent(result.output) == golden


def test_translate_default_output(toolchain, corpus_dir, tmp_path):
    path = write(tmp_path, "plus.teqt", (corpus_dir / "plus.teqt").read_text())
    (result,) = toolchain.translate_program(path)
    assert (tmp_path / "plus.obl").read_text() == result.output + "\n"


def test_translate_skips_rejected_checks(toolchain, tmp_path):
    path = write(tmp_path, "bad.teqt", "def bad = abort nat\ncheck bad : nat at !\nobligation bad")
    (result,) = toolchain.translate_program(path, tmp_path / "bad.obl")
    assert result.status == FAILED
    assert (tmp_path / "bad.obl").read_text() == ""


def test_obligation_of_general_check(toolchain, tmp_path):
    path = write(tmp_path, "g.teqt", "def g = abort nat\ncheck g : nat at ?\nobligation g")
    (result,) = toolchain.translate_program(path, tmp_path / "g.obl")
    assert parse_sequent(result.output).goal == parse_sequent("goal: Term abort => True").goal


def test_check_script(toolchain, corpus_dir):
    path = corpus_dir / "proofs" / "term0.wp"
    (result,) = toolchain.check_script(path)
    assert result.ok
    assert result.name == "term0.wp"
    assert result.output == f"{path}: proved Term 0"


def test_check_script_failure(toolchain, corpus_dir):
    (result,) = toolchain.check_script(corpus_dir / "proofs" / "bad_assume.wp")
    assert result.status == FAILED
    assert result.detail.startswith("Pv_Assume at proof")


def test_report_round_trip(toolchain, corpus_dir, tmp_path):
    toolchain.check_program(corpus_dir / "lte.teqt")
    toolchain.check_script(corpus_dir / "proofs" / "bad_opsem.wp")
    target = toolchain.save_report(tmp_path / "report.csv")
    assert toolchain.load_report(target) == toolchain.results


def test_report_uses_configured_file(toolchain):
    toolchain.record(DirectiveResult("eval", "a", "b", OK, "b = 0"))
    target = toolchain.save_report()
    assert target == toolchain.config.report_file
    assert toolchain.load_report() == toolchain.results


def test_empty_report(toolchain, tmp_path):
    target = toolchain.save_report(tmp_path / "empty.csv")
    assert toolchain.load_report(target) == []


def test_load_missing_report(toolchain, tmp_path):
    with pytest.raises(TeqError, match="Failed to load report"):
        toolchain.load_report(tmp_path / "missing.csv")
