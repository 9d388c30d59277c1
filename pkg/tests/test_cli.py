import json
import subprocess
import sys

import pytest

from omegafrag.cli import EXIT_INPUT, EXIT_LIMIT, EXIT_OK, main
from omegafrag.fragments import classify
from omegafrag.expressions import compile_text

L1 = "alphabet: abc; (a|b|c)*ab(a|b|c)^oo"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- exit codes ---------------------------------------------------------------------


def test_success_exit_code(capsys):
    code, out, _ = run(capsys, "member", "-e", "alphabet: ab; a*b", "--word", "ab")
    assert code == EXIT_OK and out.strip() == "yes"


def test_parse_error_exits_with_input_status(capsys):
    code, out, err = run(capsys, "classify", "-e", "alphabet: ab; (a")
    assert code == EXIT_INPUT
    assert out == "" and err.startswith("error:")


def test_monoid_bound_exits_with_limit_status(capsys):
    code, _, err = run(capsys, "monoid", "-e", L1, "--max-monoid", "2")
    assert code == EXIT_LIMIT
    assert "--max-monoid" in err


def test_bad_option_value_is_an_input_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify", "-e", L1, "--max-monoid", "0"])
    assert exc.value.code == EXIT_INPUT


def test_missing_input_is_an_input_error(capsys):
    code, _, err = run(capsys, "classify")
    assert code == EXIT_INPUT and "exactly one input" in err


# -- classify -------------------------------------------------------------------------


def test_classify_l1(capsys):
    code, out, _ = run(capsys, "classify", "-e", L1, "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["flags"]["sigma2"] is True and data["flags"]["fo2"] is False
    assert data["syntactic_monoid_size"] == 6


def test_everything_has_every_flag(capsys):
    _, out, _ = run(capsys, "classify", "-e", "alphabet: abc; {a,b,c}^oo", "--format", "json")
    assert all(json.loads(out)["flags"].values())


def test_json_output_is_deterministic_and_matches_library(capsys):
    _, first, _ = run(capsys, "classify", "-e", L1, "--format", "json", "--witness")
    _, second, _ = run(capsys, "classify", "-e", L1, "--format", "json", "--witness")
    assert first == second
    expected = classify(compile_text(L1), witness=True, language=L1).to_json()
    assert first.strip() == expected.strip()


def test_text_report(capsys):
    _, out, _ = run(capsys, "classify", L1)
    assert "syntactic monoid size: 6" in out
    assert "sigma2      yes" in out


def test_batch_mode_writes_one_report_per_file(tmp_path, capsys):
    (tmp_path / "l1.txt").write_text(L1 + "\n")
    (tmp_path / "broken.txt").write_text("alphabet: ab; (a\n")
    code, out, _ = run(capsys, "classify", "--batch", str(tmp_path), "--format", "json")
    assert code == EXIT_INPUT
    assert json.loads((tmp_path / "l1.txt.report.json").read_text())["flags"]["sigma2"]
    assert (tmp_path / "broken.txt.report.json").read_text().startswith("error:")
    assert "l1.txt.report.json: ok" in out and "broken.txt.report.json: failed" in out


def test_automaton_file_input(tmp_path, capsys):
    _, dumped, _ = run(capsys, "closure", "-e", "alphabet: ab; a(a|b)^oo")
    path = tmp_path / "aut.txt"
    path.write_text(dumped)
    code, out, _ = run(capsys, "member", "-f", str(path), "--word", "ab")
    assert code == EXIT_OK and out.strip() == "yes"


# -- other commands ---------------------------------------------------------------------


def test_member_on_lasso(capsys):
    _, out, _ = run(capsys, "member", "-e", "alphabet: abc; ((a|b|c)*ab)^w", "--word", "(cab)^w", "--format", "json")
    assert json.loads(out)["member"] is True


def test_equiv_reports_counterexample(capsys):
    _, out, _ = run(capsys, "equiv", "-e", "alphabet: ab; a*", "-e", "alphabet: ab; (a|b)*")
    assert out.strip() == "not equivalent: b is only in the second language"
    _, out, _ = run(capsys, "equiv", "-e", "alphabet: ab; (a|b)^oo", "-e", "alphabet: ab; (a|b)*|(a|b)^w", "--format", "json")
    assert json.loads(out) == {"counterexample": None, "equivalent": True}


def test_equiv_needs_two_inputs(capsys):
    code, _, _ = run(capsys, "equiv", "-e", L1)
    assert code == EXIT_INPUT


def test_synth(capsys):
    _, out, _ = run(capsys, "synth", "-e", "alphabet: ab; (a|b)*ab(a|b)^oo", "--unambiguous")
    assert out.strip() == "[ {b}a {a}b {a,b}^oo ]"
    _, out, _ = run(capsys, "synth", "-e", "alphabet: abc; (a|b|c)^w", "--format", "json")
    assert json.loads(out)["found"] is False


@pytest.mark.parametrize("fmt,marker", [("text", "in DA: no"), ("dot", "digraph"), ("json", '"size": 6')])
def test_monoid_formats(capsys, fmt, marker):
    code, out, _ = run(capsys, "monoid", "-e", L1, "--format", fmt)
    assert code == EXIT_OK and marker in out


@pytest.mark.parametrize(
    "text,verdict",
    [
        ("alphabet: ab; 0", "clopen"),
        ("alphabet: ab; a*(ab)^w", "closed"),
        ("alphabet: ab; IM{a}", "neither open nor closed"),
        (L1, "open"),
        ("alphabet: abc; ab{a,c}^oo", "clopen"),
    ],
)
def test_closure_verdicts(capsys, text, verdict):
    _, out, _ = run(capsys, "closure", "-e", text, "--format", "json")
    assert json.loads(out)["verdict"] == verdict


def test_interior_output_is_an_automaton(capsys):
    _, out, _ = run(capsys, "closure", "-e", "alphabet: ab; a(a|b)^oo", "--interior")
    assert out.startswith("alphabet: ab\nstates:")


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "omegafrag.cli", "classify", "-e", L1, "--format", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == EXIT_OK
    assert json.loads(proc.stdout)["flags"]["sigma2"] is True
