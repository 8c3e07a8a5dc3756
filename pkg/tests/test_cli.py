import io

import pytest

from groupcolor.cli import main
from groupcolor.generator import EXAMPLE_4_COLORING, EXAMPLE_TEXT
from groupcolor.textio import emit_graph, parse_graph


def run(capsys, monkeypatch, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_round_trips(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch,
                       ["generate", "--ni", "6", "--no", "12", "--di", "2", "--do", "3",
                        "--chi", "4", "--seed", "1"])
    assert code == 0
    assert emit_graph(parse_graph(out)) == out


@pytest.mark.parametrize("method,count", [("basic", 7), ("thin", 6), ("mincolor", 5),
                                          ("recolor", 5)])
def test_color_example_from_stdin(capsys, monkeypatch, method, count):
    code, out, _ = run(capsys, monkeypatch, ["color", "--multigraph", "--method", method],
                       stdin=EXAMPLE_TEXT)
    assert code == 0
    assert len(out.splitlines()) == count


def test_color_fewcolors_k(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch,
                       ["color", "--fixture", "example", "--method", "fewcolors", "--k", "2"])
    assert code == 0 and len(out.splitlines()) == 5


def test_dump_menus(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch,
                       ["color", "--fixture", "example", "--method", "greedymenu",
                        "--dump-menus"])
    assert code == 0
    assert err.splitlines()[0].startswith("0: [")


def test_verify_exit_codes(tmp_path, capsys, monkeypatch):
    graph = tmp_path / "g.txt"
    graph.write_text(EXAMPLE_TEXT)
    good = tmp_path / "good.txt"
    good.write_text(EXAMPLE_4_COLORING)
    code, out, _ = run(capsys, monkeypatch,
                       ["verify", str(graph), "--multigraph", "--coloring", str(good)])
    assert code == 0 and "valid: 4 colors" in out

    partial = tmp_path / "partial.txt"
    partial.write_text("1: a(f i.) b(h j) c(e) d(k l)\n")
    code, out, _ = run(capsys, monkeypatch,
                       ["verify", str(graph), "--multigraph", "--coloring", str(partial)])
    assert code == 2

    bad = tmp_path / "bad.txt"
    bad.write_text("1: a(f i l) a(g k)\n")
    code, out, _ = run(capsys, monkeypatch,
                       ["verify", str(graph), "--multigraph", "--coloring", str(bad)])
    assert code == 1 and "conflict" in out


def test_exact(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["exact", "--fixture", "d2chi3"])
    assert code == 0 and len(out.splitlines()) == 3
    code, out, _ = run(capsys, monkeypatch, ["exact", "--fixture", "d2chi3", "--max-colors", "2"])
    assert code == 1


def test_exact_too_large(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["exact", "--fixture", "example", "--cap", "5"])
    assert code != 0 and err.count("\n") == 1


def test_malformed_graph_names_line(capsys, monkeypatch):
    code, _, err = run(capsys, monkeypatch, ["color", "--method", "basic"],
                       stdin="[a: (x)]\n[b: (y) (y)]\n")
    assert code != 0
    assert "line 2" in err and err.count("\n") == 1


def test_unknown_method(capsys, monkeypatch):
    with pytest.raises(SystemExit) as info:
        main(["color", "--method", "nope"])
    assert info.value.code != 0


def test_bench_to_file(tmp_path, capsys, monkeypatch):
    out = tmp_path / "b.csv"
    summary = tmp_path / "s.csv"
    code, _, _ = run(capsys, monkeypatch,
                     ["bench", "--family", "skew", "--methods", "basic,fewcolors",
                      "--points", "0.5,1", "--trials", "2", "--out", str(out),
                      "--summary", str(summary)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("family,point,method") and len(lines) == 1 + 8
    assert len(summary.read_text().splitlines()) == 1 + 4
