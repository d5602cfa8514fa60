import json

import pytest

from cli.fixtures import FIXTURES, fixture_names, load_fixture
from cli.graph_file import load_graph, parse_graph, serialize_graph
from cli.racg import EXIT_INTERNAL, EXIT_OK, EXIT_PARSE, EXIT_USAGE, run
from utils.errors import GraphParseError, InputError


def test_parse_graph_keeps_declaration_order():
    graph = parse_graph("# comment\nvertices b a c\nedge a b\n\nedge c a\n")
    assert graph.names == ("b", "a", "c")
    assert graph.edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("vertices a b\nvertices c\n", 2, 1),
        ("vertices a a\n", 1, 12),
        ("vertices a b-c\n", 1, 12),
        ("edge a b\n", 1, 1),
        ("vertices a b\nedge a\n", 2, 1),
        ("vertices a b\nedge a q\n", 2, 8),
        ("vertices a b\nedge a a\n", 2, 8),
        ("vertices a b\nedge a b\nedge b a\n", 3, 1),
        ("vertices a b\nloop a\n", 2, 1),
        ("# nothing\n", 1, 1),
    ],
)
def test_parse_errors_are_positioned(text, line, column):
    with pytest.raises(GraphParseError) as info:
        parse_graph(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith(f"line {line}, column {column}:")


def test_serialize_is_canonical(g7):
    text = serialize_graph(g7)
    assert text.splitlines()[0] == "vertices c1 c2 k1 k2 x y z"
    assert parse_graph(text) == g7
    assert serialize_graph(parse_graph(text)) == text


def test_load_graph(tmp_path, c5):
    path = tmp_path / "c5.graph"
    path.write_text(serialize_graph(c5), encoding="utf-8")
    assert load_graph(str(path)) == c5


def test_fixtures():
    assert set(fixture_names()) == set(FIXTURES)
    assert load_fixture("C5").size() == 5
    with pytest.raises(InputError):
        load_fixture("C9")


def test_classify_command(capsys):
    assert run(["classify", "--fixture", "C5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "LocallyConnected"
    assert "MainTheorem" in out


def test_classify_json(capsys):
    assert run(["classify", "--json", "--fixture", "G7"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "NotLocallyConnected"
    assert payload["trace"][0]["rule"] == "VfsNonSuspended"
    assert payload["trace"][0]["certificate"]["K"] == ["k1", "k2"]


def test_classify_graph_file(tmp_path, capsys):
    path = tmp_path / "bowtie.graph"
    path.write_text(FIXTURES["BOWTIE"], encoding="utf-8")
    assert run(["classify", str(path)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("NotLocallyConnected")


def test_separators_command(capsys):
    assert run(["separators", "--json", "--fixture", "G7"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["product"] == {"type": "ProductSeparator", "A": ["c1", "c2"], "B": ["k1", "k2"]}
    assert payload["vfs"]["suspended"] is False
    assert payload["suspended"] == []

    assert run(["separators", "--suspended", "--fixture", "SUS4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("suspended:")
    assert "product" not in out


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["reduce", "a b a", "--fixture", "C5"], "b"),
        (["reduce", "b b", "--fixture", "C5"], "()"),
        (["geodesic", "a c a", "--fixture", "C5"], "true"),
        (["geodesic", "a b a", "--fixture", "C5"], "false"),
        (["nf", "e a", "--fixture", "C5"], "a e"),
        (["descent", "a b", "--fixture", "C5"], "a b"),
        (["project", "c a", "--subset", "a", "--fixture", "C5"], "c"),
        (["extend", "a", "--letter", "b", "--fixture", "C5"], "a b"),
        (["ends", "--fixture", "BOWTIE"], "Infinite"),
        (["ends", "--fixture", "P3"], "Two"),
    ],
)
def test_word_commands(argv, expected, capsys):
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out.strip() == expected


def test_walls_command(capsys):
    assert run(["walls", "a c", "--fixture", "C5"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["a: a", "c: a c a"]


def test_align_command(capsys):
    assert run(["align", "--alpha", "a c", "--target", "a", "--fixture", "C5"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[1] == "beta': a"
    assert out[2] == "common prefix: 1"


def test_oracle_command(capsys):
    assert run(["oracle", "ball", "--fixture", "C5", "--radius", "1"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["radius,count", "0,1", "1,5"]


def test_filter_command(tmp_path, capsys):
    dot = tmp_path / "c5.dot"
    argv = ["filter", "--fixture", "C5", "--alpha", "a c a c a", "--beta", "a d a d a", "--depth", "3", "--check", "--dot", str(dot)]
    assert run(argv) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("level,vertices,distinct_elements,apexes,non_tree_edges")
    assert "facts: pass" in out
    assert dot.read_text(encoding="utf-8").startswith("digraph filter {")


def test_filter_warns_outside_hypotheses(caplog):
    argv = ["filter", "--fixture", "G7", "--alpha", "x c1", "--beta", "x c2", "--depth", "0"]
    assert run(argv) == EXIT_OK
    assert "product separator or VFS" in caplog.text


def test_serialize_command(capsys):
    assert run(["serialize", "--fixture", "P3"]) == EXIT_OK
    assert capsys.readouterr().out == "vertices a b c\nedge a b\nedge b c\n"


def test_survey_command(capsys):
    assert run(["--quiet", "survey", "--size-limit", "3", "--exhaustive"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("verdict,count")
    assert "undetermined: 0" in out


def test_survey_needs_seed(capsys):
    assert run(["survey", "--size-limit", "3", "--samples", "2"]) == EXIT_USAGE
    assert run(["--quiet", "survey", "--size-limit", "3", "--samples", "2", "--seed", "1"]) == EXIT_OK


def test_usage_errors(capsys):
    assert run([]) == EXIT_USAGE
    assert run(["classify"]) == EXIT_USAGE
    assert run(["classify", "--fixture", "C9"]) == EXIT_USAGE
    assert run(["reduce", "a q", "--fixture", "C5"]) == EXIT_USAGE
    assert run(["align", "--alpha", "a b a", "--target", "a", "--fixture", "C5"]) == EXIT_USAGE
    assert run(["--help"]) == EXIT_OK


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.graph"
    path.write_text("vertices a b\nedge a c\n", encoding="utf-8")
    assert run(["classify", str(path)]) == EXIT_PARSE
    assert "line 2, column 8" in capsys.readouterr().err


def test_resource_guard_exit_code(monkeypatch, capsys):
    monkeypatch.setenv("RACG_ELEMENT_CAP", "3")
    assert run(["oracle", "ball", "--fixture", "C5", "--radius", "2"]) == EXIT_INTERNAL


def test_missing_graph_file(tmp_path, capsys):
    assert run(["classify", str(tmp_path / "absent.graph")]) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_undecodable_graph_file(tmp_path, capsys):
    path = tmp_path / "latin1.graph"
    path.write_bytes(b"vertices a b\nedge a \xe9\n")
    with pytest.raises(GraphParseError) as info:
        load_graph(str(path))
    assert (info.value.line, info.value.column) == (2, 8)
    assert run(["classify", str(path)]) == EXIT_PARSE
    assert "line 2, column 8" in capsys.readouterr().err


@pytest.mark.parametrize("value", ["abc", "0", "-4"])
def test_bad_element_cap_override(monkeypatch, capsys, value):
    monkeypatch.setenv("RACG_ELEMENT_CAP", value)
    assert run(["oracle", "ball", "--fixture", "C5", "--radius", "1"]) == EXIT_USAGE
    assert "RACG_ELEMENT_CAP" in capsys.readouterr().err
