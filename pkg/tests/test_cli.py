"""Command-line front end: modes, formats, and exit codes."""

import io
import json

import pytest

from wcdp.cli import EXIT_GRAMMAR, EXIT_IO, EXIT_OK, build_parser, run
from wcdp.fixtures import path as fixture_path

TOY_GRAM = str(fixture_path("toy.gram"))
TOY_LEX = str(fixture_path("toy.lex"))


def run_cli(*argv):
    parser = build_parser()
    args = parser.parse_args(["parse", *argv])
    out, err = io.StringIO(), io.StringIO()
    status = run(args, out=out, err=err)
    return status, out.getvalue(), err.getvalue()


def test_propagate_text_output():
    status, out, err = run_cli("-g", TOY_GRAM, "-l", TOY_LEX,
                               "-s", "Pferde fressen Gras")
    assert status == EXIT_OK and err == ""
    assert "syn SUBJ->2" in out and "sem AG->2" in out
    assert "score: 1.0" in out


def test_propagate_json_lines_fields():
    status, out, _ = run_cli("-g", TOY_GRAM, "-l", TOY_LEX,
                             "-s", "Gras fressen Pferde",
                             "--format", "json-lines")
    assert status == EXIT_OK
    record = json.loads(out.strip())
    assert [w["form"] for w in record["words"]] == \
        ["Gras", "fressen", "Pferde"]
    first = record["words"][0]
    assert set(first) == {"position", "form", "syn_label", "syn_head",
                          "sem_label", "sem_head"}
    assert first["syn_label"] == "OBJ"
    assert abs(record["score"] - 0.6) < 1e-12
    assert [v["constraint"] for v in record["violations"]] == ["sy3"]


def test_oracle_mode_top_k():
    status, out, _ = run_cli("-g", TOY_GRAM, "-l", TOY_LEX,
                             "-s", "Gräser fressen Pferd",
                             "--mode", "oracle", "--top-k", "2",
                             "--format", "json-lines")
    assert status == EXIT_OK
    first, second = (json.loads(line) for line in out.strip().splitlines())
    assert (first["rank"], second["rank"]) == (1, 2)
    assert abs(first["score"] - 0.07) < 1e-9
    assert abs(second["score"] - 0.06) < 1e-9


def test_diagnose_reports_agreement_error():
    status, out, _ = run_cli("-g", TOY_GRAM, "-l", TOY_LEX,
                             "-s", "Pferd fressen Gras",
                             "--diagnose", "--format", "json-lines")
    assert status == EXIT_OK
    record = json.loads(out.strip())
    assert [v["constraint"] for v in record["violations"]] == ["sy2"]
    assert "diagnosis" in record


def test_trace_included_on_request():
    status, out, _ = run_cli("-g", TOY_GRAM, "-l", TOY_LEX,
                             "-s", "Pferde fressen Gras",
                             "--trace", "--format", "json-lines")
    assert status == EXIT_OK
    record = json.loads(out.strip())
    assert any(event.startswith("PRUNE ") for event in record["trace"])


def test_zero_score_analysis_still_succeeds():
    status, out, _ = run_cli("-g", TOY_GRAM, "-l", TOY_LEX,
                             "-s", "Gras Auto Geld",
                             "--format", "json-lines")
    assert status == EXIT_OK
    assert json.loads(out.strip())["score"] == 0.0


def test_input_file_and_batch(tmp_path):
    batch = tmp_path / "in.txt"
    batch.write_text("Pferde fressen Gras\n\nGras fressen Pferde\n",
                     encoding="utf-8")
    status, out, _ = run_cli("-g", TOY_GRAM, "-l", TOY_LEX,
                             "-i", str(batch), "--format", "json-lines")
    assert status == EXIT_OK
    assert len(out.strip().splitlines()) == 2


def test_missing_lexicon_is_io_error(tmp_path):
    status, _, err = run_cli("-g", TOY_GRAM, "-l", str(tmp_path / "nope.lex"),
                             "-s", "Pferde")
    assert status == EXIT_IO and "error:" in err


def test_bad_grammar_is_grammar_error(tmp_path):
    bad = tmp_path / "bad.gram"
    bad.write_text("label-set syn SUBJ\nconstraint x layer=syn arity=1 "
                   "pf=1.5 : lab(X)=SUBJ\n", encoding="utf-8")
    status, _, err = run_cli("-g", str(bad), "-l", TOY_LEX, "-s", "Pferde")
    assert status == EXIT_GRAMMAR and "error:" in err


def test_top_k_must_be_positive():
    status, _, err = run_cli("-g", TOY_GRAM, "-l", TOY_LEX, "-s", "Pferde",
                             "--mode", "oracle", "--top-k", "0")
    assert status == EXIT_IO and "top-k" in err


def test_output_is_byte_identical_across_runs():
    argv = ("-g", TOY_GRAM, "-l", TOY_LEX, "-s", "Geld fressen Autos",
            "--trace", "--diagnose", "--format", "json-lines")
    assert run_cli(*argv) == run_cli(*argv)
