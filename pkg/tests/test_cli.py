import json

import pytest

from skyset.cli import main

from golden_corpus import EXAMPLES

GLOSSARY = "tests/data/server_training_glossary.txt"
STUDENT_TABLES = ["tests/data/debate_charter.tsv",
                  "tests/data/baking_syllabus.tsv",
                  "tests/data/music_requirements.tsv"]


@pytest.fixture
def ex_file(tmp_path):
    def write(number):
        path = tmp_path / f"ex{number}.txt"
        path.write_text(EXAMPLES[number])
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_translate_clean_document(capsys, ex_file):
    code, out, err = run(capsys, "translate", ex_file(1), "--doc-id", "ex1")
    assert code == 0
    assert err == ""
    lines = out.splitlines()
    assert lines[0].startswith("#doc\tex1")
    assert lines[1].split("\t")[:5] == [
        "TOPIC/ROLE", "SERVICE", "PRODUCT/RESOURCE",
        "PROCESS/REQ/RECIPIENT", "CONDITION"]
    assert lines[2].startswith("scout bee\treports\tlocation of food")


def test_translate_reports_candidates_with_exit_one(capsys, ex_file,
                                                    tmp_path):
    findings_path = tmp_path / "findings.json"
    code, out, _ = run(capsys, "translate", ex_file(2), "--doc-id", "ex2",
                       "--findings", str(findings_path))
    assert code == 1
    assert out.count("\ncandidate") == 0  # rows carry status, not prose
    payload = json.loads(findings_path.read_text())
    assert len(payload) == 1
    assert payload[0]["kind"] == "Ambiguous"


def test_translate_resolve_settles_group(capsys, ex_file):
    code, out, _ = run(capsys, "translate", ex_file(2), "--doc-id", "ex2",
                       "--resolve", "ex2:s0=0")
    assert code == 0
    rows = [l for l in out.splitlines()
            if l and not l.startswith(("#doc", "TOPIC/ROLE"))]
    assert len(rows) == 1
    assert rows[0].split("\t")[-2] == "final"


def test_translate_resolve_rejects_bad_spec(capsys, ex_file):
    code, _, err = run(capsys, "translate", ex_file(2), "--resolve", "ex2:s0")
    assert code == 2
    assert "skyset:" in err
    code, _, err = run(capsys, "translate", ex_file(2),
                       "--resolve", "nope=0")
    assert code == 2


def test_translate_json_output_to_file(capsys, ex_file, tmp_path):
    out_path = tmp_path / "table.json"
    code, out, _ = run(capsys, "translate", ex_file(1), "--format", "json",
                       "--output", str(out_path))
    assert code == 0
    assert out == ""
    payload = json.loads(out_path.read_text())
    assert payload["rows"][0]["cells"]["SERVICE"] == "reports"


def test_translate_missing_input(capsys, tmp_path):
    code, _, err = run(capsys, "translate", str(tmp_path / "absent.txt"))
    assert code == 2
    assert "skyset:" in err


def test_lint_text_and_json(capsys, ex_file):
    code, out, _ = run(capsys, "lint", ex_file(4), "--glossary", GLOSSARY)
    assert code == 1
    assert out.startswith("Vague")
    assert "long fork" in out
    code, out, _ = run(capsys, "lint", ex_file(4), "--glossary", GLOSSARY,
                       "--json")
    assert code == 1
    assert json.loads(out)[0]["column"] == "PRODUCT/RESOURCE"


def test_lint_clean_document(capsys, ex_file):
    code, out, _ = run(capsys, "lint", ex_file(1))
    assert code == 0
    assert out == "no findings\n"


def test_lint_required_category(capsys, ex_file):
    code, out, _ = run(capsys, "lint", ex_file(5), "--required", "TopicRole",
                       "--required", "Service", "--required", "Process")
    assert code == 1
    assert "no Process stated" in out


def test_query_filter_and_sort(capsys, tmp_path):
    merged = tmp_path / "merged.tsv"
    code, _, _ = run(capsys, "concat", *STUDENT_TABLES, "--output", str(merged))
    assert code == 0
    code, out, _ = run(capsys, "query", str(merged),
                       "--filter", "TOPIC/ROLE contains debate")
    assert code == 0
    rows = [l for l in out.splitlines()
            if l and not l.startswith(("#doc", "TOPIC/ROLE"))]
    assert len(rows) == 1
    code, out, _ = run(capsys, "query", str(merged), "--sort", "SERVICE")
    rows = [l.split("\t")[1] for l in out.splitlines()
            if l and not l.startswith(("#doc", "TOPIC/ROLE"))]
    assert rows == sorted(rows)


def test_query_search_prints_cells(capsys, tmp_path):
    merged = tmp_path / "merged.tsv"
    run(capsys, "concat", *STUDENT_TABLES, "--output", str(merged))
    code, out, _ = run(capsys, "query", str(merged), "--search", "uniform")
    assert code == 0
    (line,) = out.splitlines()
    index, column, text = line.split("\t")
    assert column == "PRODUCT/RESOURCE"
    assert "uniform" in text


def test_query_bad_filter(capsys, tmp_path):
    merged = tmp_path / "merged.tsv"
    run(capsys, "concat", *STUDENT_TABLES, "--output", str(merged))
    code, _, err = run(capsys, "query", str(merged),
                       "--filter", "SUBJECT equals x")
    assert code == 2
    assert "unknown column" in err


def test_concat_to_stdout(capsys):
    code, out, _ = run(capsys, "concat", *STUDENT_TABLES)
    assert code == 0
    rows = [l for l in out.splitlines()
            if l and not l.startswith(("#doc", "TOPIC/ROLE"))]
    assert len(rows) == 3
    assert out.count("#doc") == 3


def test_render_saved_table(capsys, ex_file, tmp_path):
    table_path = tmp_path / "table.tsv"
    run(capsys, "translate", ex_file(5), "--doc-id", "ex5",
        "--output", str(table_path))
    code, out, _ = run(capsys, "render", str(table_path))
    assert code == 0
    assert out == "Professor distributes assignment before class begins.\n"
    code, out, _ = run(capsys, "render", str(table_path),
                       "--voice", "passive")
    assert out == ("Assignment is distributed by professor before class "
                   "begins.\n")


def test_stats_report(capsys):
    code, out, _ = run(capsys, "stats")
    assert code == 0
    assert "Q4     9  200.2222" in out
    assert "q=3.8316" in out
    assert "Q4-Q1" in out
    assert "5.3x" in out
    assert "censored at 300" in out
    assert "participant 6" in out and "participant 7" in out


def test_stats_custom_data_and_limit(capsys, tmp_path):
    path = tmp_path / "exp.csv"
    path.write_text(
        "participant,A,B\n1,10,20\n2,11,21\n3,12,22\n4,13,23\n")
    code, out, _ = run(capsys, "stats", "--data", str(path))
    assert code == 0
    assert "B-A" in out
    assert "censored" not in out
    code, out, _ = run(capsys, "stats", "--data", str(path),
                       "--limit", "23")
    assert "censored at 23: B participant 4" in out


def test_stats_output_deterministic(capsys):
    _, first, _ = run(capsys, "stats")
    _, second, _ = run(capsys, "stats")
    assert first == second


def test_translate_deterministic(capsys, ex_file):
    path = ex_file(8)
    _, first, _ = run(capsys, "translate", path, "--doc-id", "ex8")
    _, second, _ = run(capsys, "translate", path, "--doc-id", "ex8")
    assert first == second


def test_lexicon_env_override(capsys, ex_file, tmp_path, monkeypatch):
    from skyset.lexicon import default_lexicon, save_lexicon
    from skyset.lexicon import default_lexicon_path  # noqa: F401
    custom = tmp_path / "lexicon.txt"
    save_lexicon(default_lexicon(), custom)
    monkeypatch.setenv("SKYSET_LEXICON", str(custom))
    code, out, _ = run(capsys, "translate", ex_file(1))
    assert code == 0
    assert "scout bee" in out
    monkeypatch.setenv("SKYSET_LEXICON", str(tmp_path / "missing.txt"))
    code, _, err = run(capsys, "translate", ex_file(1))
    assert code == 2


def test_stdin_input(capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin",
                        io.StringIO(EXAMPLES[1]))
    code, out, _ = run(capsys, "translate", "-")
    assert code == 0
    assert "scout bee" in out
