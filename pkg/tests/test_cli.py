import io
import json

import pytest

from anchorlab.anchor import anchor_number
from anchorlab.cli import main, parse_range
from anchorlab.deck import deck
from anchorlab.enumeration import enumerate_graphs
from anchorlab.graph import complete_graph, decode_graph6, encode_graph6, path_graph


def run(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_range():
    assert parse_range("7") == [7]
    assert parse_range("5..8") == [5, 6, 7, 8]
    for bad in ("8..5", "x", "1..y"):
        with pytest.raises(Exception):
            parse_range(bad)


def test_analyze():
    code, out, _ = run("analyze", "Dhc", "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["anchor_number"] == anchor_number(decode_graph6("Dhc"))
    assert rec["n"] == 5 and rec["graph6"] == "Dhc"


def test_analyze_anchor_free():
    code, out, _ = run("analyze", encode_graph6(path_graph(4)), "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["anchor_number"] == 4 and rec["anchor"] is None


def test_json_and_text_agree():
    _, js, _ = run("analyze", "Dhc", "--format", "json")
    _, text, _ = run("analyze", "Dhc")
    rec = json.loads(js)
    fields = dict(line.split(": ", 1) for line in text.strip().splitlines())
    assert set(fields) == set(rec)
    for k, v in rec.items():
        want = json.dumps(v, sort_keys=True) if isinstance(v, (list, dict)) else str(v)
        if v is None:
            want = "None"
        assert fields[k] == want


def test_anchors_listing():
    code, out, _ = run("anchors", encode_graph6(path_graph(3)), "--format", "json")
    assert code == 0
    assert json.loads(out) == {"graph6": "Bg", "order": 2, "vertices": [0, 2]}
    code, out, _ = run("anchors", encode_graph6(path_graph(5)), "--max-order", "3", "--format", "csv")
    assert code == 0 and out.splitlines() == ["graph6,order,vertices", "DhC,3,\"[0, 2, 4]\""]
    assert run("anchors", encode_graph6(path_graph(4)), "--format", "csv") == (0, "", "")


def test_classify():
    code, out, _ = run("classify", "Dhc", "--format", "json")
    assert code == 0 and json.loads(out)["reason"] != "Unexplained"
    code, out, _ = run("classify", encode_graph6(path_graph(4)), "--complement", "--format", "json")
    assert code == 0 and "reason" in json.loads(out)


def test_deck_and_count():
    code, out, _ = run("deck", "Bg", "--format", "json")
    cards = json.loads(out)
    assert code == 0 and sorted(c["multiplicity"] for c in cards) == [1, 2]
    code, out, _ = run("deck", "Bg", "--count", "A_", "--format", "json")
    assert json.loads(out)["count"] == 2


def test_stdin_and_file(tmp_path):
    code, out, _ = run("analyze", "-", "--format", "csv", stdin="Bg\nBw\n")
    assert code == 0 and len(out.splitlines()) == 3
    f = tmp_path / "graphs.g6"
    f.write_text("# two graphs\nBg\nDhc\n")
    code, out, _ = run("analyze", str(f), "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 3


def test_reconstruct(tmp_path):
    f = tmp_path / "deck.g6"
    f.write_text(deck(complete_graph(3)).to_graph6_lines() + "\n")
    code, out, _ = run("reconstruct", str(f), "--format", "json")
    assert code == 0 and json.loads(out)["graph6"] == "Bw"
    code, out, _ = run("reconstruct", "-", "--format", "json", stdin="A_\nA_\nA_\n")
    assert code == 0 and json.loads(out)["graph6"] == "Bw"


def test_census():
    code, out, _ = run("census", "--n", "3..5", "--format", "json")
    recs = json.loads(out)
    assert code == 0 and [r["graphs"] for r in recs] == [4, 11, 34]
    assert all(r["collisions"] == 0 and r["ok"] for r in recs)


def test_tables():
    code, out, _ = run("tables", "--n", "5", "--format", "json")
    assert code == 0 and json.loads(out)["histogram"] == {"2": 2, "3": 17, "4": 12, "5": 3}
    code, out, _ = run("tables", "--n", "5..6", "--format", "csv")
    assert code == 0 and "5,3,17" in out.splitlines()
    code, out, _ = run("tables", "--n", "5..6")
    assert code == 0 and "Total" in out
    code, out, _ = run("tables", "--n", "6", "--table", "free", "--format", "json")
    assert json.loads(out)["total"] == 20
    code, out, _ = run("tables", "--n", "9", "--table", "asym", "--samples", "10", "--seed", "3", "--format", "json")
    assert code == 0 and json.loads(out)["total"] == 10


def test_domain_errors_exit_one():
    code, _, err = run("analyze", "D!c")
    assert code == 1 and "offset" in err and err.startswith("anchorlab: error:")
    code, _, err = run("tables", "--n", "9")
    assert code == 1 and "--long" in err
    code, _, err = run("analyze", "L" + "~" * 11)
    assert code == 1
    code, _, _ = run("reconstruct", "-", stdin="# nothing\n")
    assert code == 1
    code, _, _ = run("analyze", "-", stdin="\n")
    assert code == 1


def test_usage_errors_exit_two():
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("analyze", "Bg", "--format", "xml")[0] == 2
    assert run("tables")[0] == 2
    assert run("tables", "--n", "9..5")[0] == 2


def test_graph6_round_trip():
    for n in range(1, 8):
        for g in enumerate_graphs(n):
            assert decode_graph6(encode_graph6(g)) == g


def test_console_entry_point():
    import subprocess
    import sys

    r = subprocess.run([sys.executable, "-m", "anchorlab.cli", "analyze", "Bg", "--format", "json"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["anchor_number"] == 2
