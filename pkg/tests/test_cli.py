import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chirahedra.cli import main, parse_grid
from chirahedra.groups import build_group
from chirahedra.io import dumps_patch, export_obj, loads_patch, parse_rat, rat_str
from chirahedra.wythoff import construct_patch


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("fam,p,text", [
    ("p3", "0,1", "regular {∞,4}_{·,*3}"),
    ("p2", "1,0", "regular {∞,3}^{(b)}"),
    ("p1", "2,5", "chiral"),
    ("p1", "1,-1", "regular {∞,3}^{(a)}"),
])
def test_classify(capsys, fam, p, text):
    code, out, _ = run(capsys, "classify", "--family", fam, "--params", p)
    assert code == 0 and out.strip() == text


def test_degenerate_exit_code(capsys, tmp_path):
    code, _, err = run(capsys, "build", "--family", "p2", "--params", "0,0",
                       "--out", str(tmp_path / "x.json"))
    assert code == 2 and "degenerate" in err


def test_parse_error_exit_code(capsys):
    assert run(capsys, "classify", "--family", "p1", "--params", "1,x")[0] == 3
    assert run(capsys, "verify", "--lemma", "stars", "--family", "p1", "--grid", "1..")[0] == 3


def test_unknown_family_exits_3(capsys):
    with pytest.raises(SystemExit) as e:
        main(["classify", "--family", "p9", "--params", "1,2"])
    assert e.value.code == 3


def test_build_p1(capsys, tmp_path):
    out = tmp_path / "p.json"
    assert run(capsys, "build", "--family", "p1", "--params", "1,3", "--radius", "4",
               "--out", str(out))[0] == 0
    d = json.loads(out.read_text())
    assert len({v["coset"] for v in d["vertices"]}) == 4
    assert d["params"] == ["1/1", "3/1"]


def test_build_tetrahedron_and_export(capsys, tmp_path):
    js, obj = tmp_path / "t.json", tmp_path / "t.obj"
    run(capsys, "build", "--family", "p1", "--params", "1,1", "--radius", "2", "--out", str(js))
    assert len(json.loads(js.read_text())["vertices"]) == 4
    assert run(capsys, "export", "--in", str(js), "--out", str(obj))[0] == 0
    lines = obj.read_text().splitlines()
    assert sum(l.startswith("v ") for l in lines) == 4
    assert sum(l.startswith("f ") for l in lines) == 4


@pytest.mark.parametrize("fam,p,turns,n", [("P2", (1, 4), 2, 8), ("P3", (1, 2), 3, 9)])
def test_export_polyline_lengths(fam, p, turns, n):
    text = export_obj(construct_patch(build_group(fam, p), 2), turns)
    polylines = [l.split()[1:] for l in text.splitlines() if l.startswith("l ")]
    assert polylines and all(len(pl) == n for pl in polylines)


def test_verify_exit_codes(capsys, tmp_path):
    code, out, err = run(capsys, "verify", "--lemma", "translation-lattice", "--family", "p1",
                         "--grid", "-1..1/1")
    assert code == 0 and "8/8" in err
    rows = [json.loads(l) for l in out.splitlines()]
    assert len(rows) == 8 and all(r["ok"] for r in rows)
    code, out, _ = run(capsys, "verify", "--lemma", "covering", "--family", "p3", "--grid", "1..3/1")
    assert code == 0 and all(json.loads(l)["detail"]["census"] == [6, 12, 8] for l in out.splitlines())
    assert run(capsys, "verify", "--lemma", "phi2", "--family", "p66", "--grid", "-2..2/1")[0] == 0


def test_verify_reports_refutations(capsys):
    # phi2 has no source rule for P1, so every point fails
    code, out, _ = run(capsys, "verify", "--lemma", "phi2", "--family", "p1", "--grid", "1..1/1")
    assert code == 1 and not json.loads(out.splitlines()[0])["ok"]


def test_verify_parallel_matches_serial(capsys):
    args = ["verify", "--lemma", "stars", "--family", "p2", "--grid", "-1..1/2"]
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--jobs", "3")
    assert serial == parallel


def test_survey(capsys):
    code, out, _ = run(capsys, "survey", "--family", "p2", "--grid", "1..2/1")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 4
    row = next(r for r in rows if r["params"] == "1,2")
    assert row["multiplicity"] == 2 and row["verdict"].startswith("degenerate")


def test_parse_grid():
    g = parse_grid("-1..1/2")
    assert len(g) == 8 and (Fraction(-1, 2), Fraction(1, 2)) in g and (0, 0) not in g
    assert parse_grid("1..2/1", 1) == [(1,), (2,)]


@given(st.fractions(max_denominator=50))
def test_rat_round_trip(x):
    assert parse_rat(rat_str(x)) == x


@pytest.mark.parametrize("fam,p", [("P1", (1, 3)), ("P66", (1, 3)), ("Q46", (2, 1)),
                                   ("P3", (Fraction(1, 2), 1))])
def test_json_round_trip(fam, p):
    patch = construct_patch(build_group(fam, p), 2)
    text = dumps_patch(patch)
    assert loads_patch(text) == patch
    assert dumps_patch(loads_patch(text)) == text
