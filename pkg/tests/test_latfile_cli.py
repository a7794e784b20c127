import json

import pytest

from latmon.cli import main
from latmon.corpus import boolean, chain, default_corpus, m3
from latmon.dot import emit_dot
from latmon.errors import KindMismatch, ParseError
from latmon.latfile import emit_lat, parse_lat
from latmon.order import are_isomorphic

DIAMOND = """\
# the four-element Boolean lattice
object diamond
kind: dlat
elements: 0 a b 1
covers: 0<a, 0<b, a < 1, b<1
"""


def test_parse_singleton():
    lf = parse_lat("object pt\nkind: mlat\nelements: x\n")
    assert lf.carrier.size == 1 and lf.covers == ()


def test_parse_diamond():
    lf = parse_lat(DIAMOND)
    assert lf.name == "diamond" and lf.labels == ("0", "a", "b", "1")
    assert are_isomorphic(lf.carrier, boolean(2)) is not None


@pytest.mark.parametrize("text,line", [
    ("object x\nkind: poset\nelements: a\ncovers: a<a\n", 4),
    ("object x\nkind: poset\nelements: a b\ncovers: a<c\n", 4),
    ("object x\nkind: poset\nelements: a b\ncovers: a<b b<a\n", 4),
    ("object x\nkind: poset\nelements: a a\n", 3),
    ("object x\nkind: groupoid\nelements: a\n", 2),
    ("object x\nkind: poset\nkind: poset\nelements: a\n", 3),
    ("object x\ncolour: red\n", 2),
    ("object x\nkind: poset\n", 2),
    ("object x\nnonsense\n", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_lat(text)
    assert exc.value.line == line


def test_kind_mismatch():
    with pytest.raises(KindMismatch):
        parse_lat(emit_lat("M3", m3(), kind="dlat"))
    with pytest.raises(KindMismatch):
        parse_lat("object v\nkind: lattice\nelements: 0 a b\ncovers: 0<a 0<b\n")


@pytest.mark.parametrize("e", default_corpus("lattice", 5), ids=lambda e: e.name)
def test_roundtrip(e):
    lf = parse_lat(emit_lat(e.name, e.carrier))
    assert lf.name == e.name
    assert lf.carrier.labels == e.carrier.labels and lf.carrier.down == e.carrier.down


def test_dot_singleton():
    text = emit_dot(chain(1), "order", "pt")
    assert text.count("->") == 0 and '"0";' in text


def test_dot_order_and_totally_below(c3):
    order = emit_dot(c3, "order", "C3")
    assert order.startswith('digraph "C3" {\n  rankdir=BT;')
    assert order.count("->") == 2
    assert emit_dot(c3, "totally-below").count("->") == 5
    with pytest.raises(ValueError):
        emit_dot(c3, "below")


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, x in (("C3", chain(3)), ("M3", m3()), ("B2", boolean(2))):
        p = tmp_path / f"{name}.lat"
        p.write_text(emit_lat(name, x), encoding="utf-8")
        out[name] = str(p)
    bad = tmp_path / "bad.lat"
    bad.write_text("object b\nkind: poset\nelements: a\ncovers: a<a\n", encoding="utf-8")
    out["bad"] = str(bad)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_cli_tower(files, capsys):
    code, out = run(capsys, "--json", "tower", "--monad", "downset", files["C3"])
    assert code == 0
    rep = json.loads(out.out)
    assert rep["schema"] == 1 and rep["verdict"] == "pass" and "timings" not in rep
    code, out = run(capsys, "tower", "--monad", "downset", files["M3"], "--json")
    assert code == 0 and json.loads(out.out)["verdict"] == "negative"


def test_cli_usage_errors(files, capsys, tmp_path):
    assert run(capsys, "tower", "--monad", "downset", str(tmp_path / "missing.lat"))[0] == 2
    assert run(capsys, "laws", "--monad", "downset", str(tmp_path / "missing.lat"))[0] == 2
    assert run(capsys, "validate", files["bad"])[0] == 2
    assert run(capsys, "tower", files["C3"])[0] == 2
    assert run(capsys, "apply", "--monad", "ideal", files["M3"])[0] == 2
    assert run(capsys, "apply", "--monad", "downset", "--iterate", "0", files["C3"])[0] == 2


def test_cli_commands(files, capsys):
    for argv in (["validate", files["B2"]],
                 ["apply", "--monad", "downset", "--iterate", "2", files["C3"]],
                 ["laws", "--monad", "downset", files["B2"]],
                 ["lax", "--monad", "ideal", files["B2"]],
                 ["fakir", "--monad", "downset", files["C3"]],
                 ["stone", "--monad", "ideal", files["B2"]],
                 ["projective", "--monad", "downset", files["C3"]],
                 ["dot", "--relation", "totally-below", files["C3"]],
                 ["corpus", "--max-size", "3"]):
        code, out = run(capsys, *argv)
        assert code == 0, (argv, out.err)
        assert out.out


def test_cli_timings(files, capsys):
    code, out = run(capsys, "validate", files["C3"], "--json", "--timings")
    assert code == 0 and "seconds" in json.loads(out.out)["timings"]


def test_cli_corpus_emit(tmp_path, capsys):
    code, _ = run(capsys, "corpus", "--max-size", "4", "--emit", str(tmp_path / "out"))
    assert code == 0
    for f in (tmp_path / "out").iterdir():
        parse_lat(f.read_text(encoding="utf-8"))
