"""Analysis reports, JSON round trip, and the command-line interface."""

import json

import pytest

from sonckit.cli import main
from sonckit.forms import make_form, save_form_file
from sonckit.report import analyze, report_to_dict, verdicts_from_dict
from sonckit.corpus import (
    FORM_BUILDERS,
    motzkin,
    robinson1,
    square_trinomial,
)


def _conclusions(report):
    return {v.conclusion for v in report.verdicts}


def test_analyze_motzkin_verdicts():
    report = analyze(motzkin())
    conclusions = _conclusions(report)
    assert {"nonnegative", "SONC", "not SOS"} <= conclusions
    assert "not SONC" not in conclusions
    assert report.circuit_boundary is True
    assert all(v.certificate == "exact" for v in report.verdicts)


def test_analyze_robinson_not_sonc():
    report = analyze(robinson1())
    verdict = next(v for v in report.verdicts if v.conclusion == "not SONC")
    assert verdict.certificate == "exact"
    assert "6" in verdict.reason and "3" in verdict.reason


def test_analyze_zero_form():
    report = analyze(make_form(3, {}, zero_degree=6))
    assert report.zero_form
    assert report.verdicts == []


def test_analyze_search_square_trinomial():
    report = analyze(square_trinomial(), search=True)
    verdict = next(v for v in report.verdicts if v.conclusion == "not SONC")
    assert verdict.certificate == "numeric"
    assert "margin" in verdict.reason


def test_analyze_search_budget_exceeded_is_reported():
    from sonckit.corpus import p_family

    report = analyze(p_family(2, 6), search=True)
    assert report.feasibility is None
    assert report.feasibility_note is not None
    assert "BudgetExceeded" in report.feasibility_note
    # the exact equality-case disproof still stands
    assert "not SONC" in _conclusions(report)


def test_analyze_hilbert_flag():
    from sonckit.corpus import p_family

    assert analyze(p_family(2, 6)).hilbert_case  # two variables
    assert not analyze(motzkin()).hilbert_case


def test_analyze_whole_corpus_consistent():
    for builder in FORM_BUILDERS.values():
        report = analyze(builder())
        conclusions = _conclusions(report)
        assert not ({"SONC", "not SONC"} <= conclusions)
        assert not ({"SOS", "not SOS"} <= conclusions)


def test_json_round_trip():
    report = analyze(motzkin())
    payload = json.loads(json.dumps(report_to_dict(report)))
    assert payload["schema"] == 1
    assert verdicts_from_dict(payload) == report.verdicts


def test_json_rationals_as_strings():
    report = analyze(square_trinomial())
    payload = report_to_dict(report)
    assert payload["necessary_condition"]["outer_sum"] == "33/4"
    assert payload["necessary_condition"]["inner_sum"] == "4"


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

@pytest.fixture
def motzkin_file(tmp_path):
    path = tmp_path / "motzkin.poly"
    save_form_file(str(path), motzkin())
    return str(path)


def test_cli_analyze_text(motzkin_file, capsys):
    assert main(["analyze", motzkin_file]) == 0
    out = capsys.readouterr().out
    assert "not SOS" in out
    assert "nonnegative" in out


def test_cli_analyze_json(motzkin_file, capsys):
    assert main(["analyze", motzkin_file, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == 1
    conclusions = {v["conclusion"] for v in payload["verdicts"]}
    assert "SONC" in conclusions


def test_cli_analyze_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.poly"
    path.write_text("x1^2 + x2^3\n")
    assert main(["analyze", str(path)]) == 1
    assert "error" in capsys.readouterr().err


def test_cli_analyze_missing_file(capsys):
    assert main(["analyze", "/nonexistent/f.poly"]) == 1


def test_cli_corpus_filter(capsys):
    assert main(["corpus", "--filter", "robinson1"]) == 0
    out = capsys.readouterr().out
    assert "robinson1" in out
    assert "FAIL" not in out


def test_cli_corpus_json(capsys):
    assert main(["corpus", "--filter", "motzkin_tilde", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows and all(row["ok"] for row in rows)
    assert {"entry", "check", "expected", "got", "ok", "citation"} <= set(rows[0])


def test_cli_corpus_deterministic(capsys):
    assert main(["corpus", "--filter", "p_2_6"]) == 0
    first = capsys.readouterr().out
    assert main(["corpus", "--filter", "p_2_6"]) == 0
    second = capsys.readouterr().out
    assert first == second


def test_cli_mms(capsys):
    assert main(["mms", "--points", "4,2,0; 2,4,0; 0,0,6"]) == 0
    out = capsys.readouterr().out
    assert "MSimplex" in out
    assert "(2, 2, 2)" not in out.split("star:")[1].splitlines()[0]


def test_cli_mms_unit_triangle(capsys):
    assert main(["mms", "--points", "0,0; 2,0; 0,2"]) == 0
    assert "HSimplex" in capsys.readouterr().out


def test_cli_mms_odd_point(capsys):
    assert main(["mms", "--points", "1,1"]) == 1
    assert "error" in capsys.readouterr().err


def test_cli_grid(tmp_path, capsys):
    path = tmp_path / "r1.poly"
    save_form_file(str(path), robinson1())
    assert main(["grid", str(path), "--grid", "X"]) == 0
    out = capsys.readouterr().out
    assert "8/9 grid points vanish" in out


def test_cli_grid_arity_mismatch(motzkin_file, capsys):
    assert main(["grid", motzkin_file, "--grid", "Y"]) == 1
    assert "arity" in capsys.readouterr().err


def test_cli_corpus_empty_filter(capsys):
    assert main(["corpus", "--filter", "no_such_entry"]) == 0
    assert "0/0 checks passed" in capsys.readouterr().out


def test_cli_corpus_mismatch_exit_code(monkeypatch, capsys):
    from sonckit import cli as cli_mod
    from sonckit.corpus import CorpusRow

    def fake_run_corpus(name_filter=None, threads=1):
        return [
            CorpusRow(
                entry="fake",
                check="necessary",
                expected="a",
                got="b",
                ok=False,
                citation="none",
            )
        ]

    monkeypatch.setattr(cli_mod, "run_corpus", fake_run_corpus)
    assert main(["corpus"]) == 3
    assert "FAIL" in capsys.readouterr().out


def test_cli_invariant_violation_exit_code(monkeypatch, motzkin_file, capsys):
    from sonckit import cli as cli_mod
    from sonckit.errors import InternalInvariantViolation

    def broken_analyze(*args, **kwargs):
        raise InternalInvariantViolation("synthetic")

    monkeypatch.setattr(cli_mod, "analyze", broken_analyze)
    assert main(["analyze", motzkin_file]) == 2
    assert "invariant" in capsys.readouterr().err


def test_cli_analyze_zero_form(tmp_path, capsys):
    path = tmp_path / "zero.poly"
    path.write_text("# name: zero\nx1^2 - x1^2\n")
    assert main(["analyze", str(path)]) == 0
    assert "zero form" in capsys.readouterr().out


def test_cli_analyze_mms_detail(motzkin_file, capsys):
    assert main(["analyze", motzkin_file, "--mms"]) == 0
    out = capsys.readouterr().out
    assert "mediated set detail" in out
    assert "MSimplex" in out


def test_cli_analyze_with_search_flags(tmp_path, capsys):
    from sonckit.corpus import square_trinomial

    path = tmp_path / "square.poly"
    save_form_file(str(path), square_trinomial())
    assert main(
        ["analyze", str(path), "--search", "--seeds", "2", "--iters", "4000"]
    ) == 0
    out = capsys.readouterr().out
    assert "InfeasibleWithMargin" in out
    assert "not SONC" in out
