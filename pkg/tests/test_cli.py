import json
from pathlib import Path

import pytest

from mbkit import graphs as gr
from mbkit.cli import main
from mbkit.graph6 import encode_graph6

DATA = Path(__file__).parent / "data"
FAST = ["--restarts", "20", "--max-iters", "200"]


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_summary_and_round_trip(tmp_path, capsys):
    f = tmp_path / "p2.json"
    code, out, _ = run(capsys, "construct", "path-p2", '{"n":5}', "--out", f)
    assert code == 0 and "n=10 k=4" in out and out.strip().endswith("ok")
    original = f.read_text()
    code, out, _ = run(capsys, "verify", f)
    assert code == 0 and json.loads(out)["valid"]
    # a second construction is byte-identical
    g = tmp_path / "again.json"
    run(capsys, "construct", "path-p2", '{"n":5}', "--out", g)
    assert g.read_text() == original


@pytest.mark.parametrize("name, params", [
    ("multipartite-b", {"parts": [2, 2]}),
    ("ring", {"k": 3}),
    ("canonical-blocks", {"blocks": [[1, 2], [2, 1]]}),
    ("three-cliques", {"sizes": [2, 3, 2, 2, 2, 3]}),
    ("bipartite-hole", {"alpha": 1, "a": [4, 3], "b": [3, 3]}),
    ("two-edges-removed", {"a": [3, 3], "b": [3, 3], "w": [1, 2]}),
    ("path-of-cliques", {"sizes": [2, 3, 2]}),
    ("join-empty-n", {"graph6": encode_graph6(gr.path_graph(3))}),
    ("join-empty-n-minus-1", {"graph6": encode_graph6(gr.path_graph(3))}),
    ("join-with-empty", {"base": {"name": "path-p2", "params": {"n": 3}}}),
    ("join-equal-mb", {"left": {"name": "ring", "params": {"k": 2}},
                       "right": {"name": "ring", "params": {"k": 2}}}),
    ("clone", {"base": {"name": "path-p2", "params": {"n": 3}}, "vertex": 0}),
])
def test_every_construction_verifies(tmp_path, capsys, name, params):
    f = tmp_path / "c.json"
    code, _, _ = run(capsys, "construct", name, json.dumps(params), "--out", f)
    assert code == 0
    code, out, _ = run(capsys, "verify", f)
    assert code == 0, out


def test_multipartite_three_eigenvalues(tmp_path, capsys):
    f = tmp_path / "b.json"
    run(capsys, "construct", "multipartite-b", '{"parts":[2,2]}', "--out", f)
    d = json.loads(f.read_text())
    assert d["kind"] == "three-eigenvalue"
    assert dict(zip(d["eigenvalues"], d["multiplicities"])) == {-1.0: 1, 0.0: 2, 1.0: 1}


def test_ring_order_error(capsys):
    code, _, err = run(capsys, "construct", "ring", '{"k":6}')
    assert code == 1 and "order must be 2..5" in err


def test_usage_errors(capsys):
    assert run(capsys, "construct", "no-such-thing")[0] == 2
    assert run(capsys, "construct", "path-p2", "{not json")[0] == 2
    assert run(capsys, "construct", "path-p2", "{}")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def _tamper(tmp_path, capsys, edit):
    f = tmp_path / "c.json"
    run(capsys, "construct", "path-p2", '{"n":3}', "--out", f)
    d = json.loads(f.read_text())
    edit(d)
    f.write_text(json.dumps(d))
    return run(capsys, "verify", f)


def test_verify_detects_zeroed_edge(tmp_path, capsys):
    def zero_edge(d):
        i, j = 0, 1
        d["matrix"][i][j] = d["matrix"][j][i] = 0.0

    code, out, _ = _tamper(tmp_path, capsys, zero_edge)
    report = json.loads(out)
    assert code == 1 and not report["valid"]
    assert "pattern" in report


def test_verify_detects_perturbed_spectrum(tmp_path, capsys):
    def bump(d):
        d["matrix"][0][0] += 0.1

    code, out, _ = _tamper(tmp_path, capsys, bump)
    assert code == 1 and not json.loads(out)["valid"]


def test_verify_unreadable(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text("{")
    assert run(capsys, "verify", f)[0] == 1


def test_bounds_examples(capsys):
    code, out, _ = run(capsys, "bounds", encode_graph6(gr.cycle_graph(5)))
    rep = json.loads(out)
    assert code == 1 and rep["status"] == "q>2 witnessed"
    assert any(w["kind"] == "common-neighbour-deficit" for w in rep["obstructions"])

    code, out, _ = run(capsys, "bounds", encode_graph6(gr.complete_multipartite([3, 3])))
    assert code == 0 and json.loads(out)["lower_bound"] == 3

    code, out, _ = run(capsys, "bounds", encode_graph6(gr.path_graph(4)))
    rep = json.loads(out)
    path = [b for b in rep["lower"] if b["source"] == "induced-path"][0]
    assert path["value"] == 3 and len(path["witness"]) == 4


def test_search_command(tmp_path, capsys):
    f = tmp_path / "s.json"
    code, _, _ = run(capsys, "search", encode_graph6(gr.cycle_graph(4)), "--k", 2, "--out", f, *FAST)
    assert code == 0 and json.loads(f.read_text())["status"] == "found"
    code, _, _ = run(capsys, "search", encode_graph6(gr.path_graph(4)), "--k", 2, *FAST)
    assert code == 1


def test_atlas_connected5_and_idempotence(tmp_path, capsys):
    out = tmp_path / "atlas"
    code, _, _ = run(capsys, "atlas", DATA / "connected5.g6", "--out", out, *FAST)
    assert code == 0
    index = out / "atlas.jsonl"
    lines = index.read_text().splitlines()
    assert len(lines) == 21
    entries = [json.loads(line) for line in lines]
    for e in entries:
        for rel in e["certificates"].values():
            assert run(capsys, "verify", out / rel)[0] == 0
    snapshot = {p: p.read_bytes() for p in out.rglob("*") if p.is_file()}
    code, msg, _ = run(capsys, "atlas", DATA / "connected5.g6", "--out", out, *FAST)
    assert code == 0 and "0 new entries" in msg
    assert {p: p.read_bytes() for p in out.rglob("*") if p.is_file()} == snapshot


def test_atlas_is_byte_identical_across_runs(tmp_path, capsys):
    cat = tmp_path / "cat.g6"
    cat.write_text("\n".join(encode_graph6(G) for G in (gr.cycle_graph(4), gr.complete_graph(4))) + "\n")
    for d in ("a", "b"):
        run(capsys, "atlas", cat, "--out", tmp_path / d, *FAST)
    assert (tmp_path / "a" / "atlas.jsonl").read_bytes() == (tmp_path / "b" / "atlas.jsonl").read_bytes()


def test_atlas_complements_of_paths(tmp_path, capsys):
    cat = tmp_path / "cat.g6"
    cat.write_text("\n".join(encode_graph6(gr.complement(gr.path_graph(n))) for n in (6, 7)) + "\n")
    out = tmp_path / "atlas"
    assert run(capsys, "atlas", cat, "--out", out, "--k-max", 3)[0] == 0
    entries = [json.loads(line) for line in (out / "atlas.jsonl").read_text().splitlines()]
    assert [e["mb"] for e in entries] == [3, 3]


def test_atlas_empty_and_malformed(tmp_path, capsys):
    empty = tmp_path / "empty.g6"
    empty.write_text("")
    out = tmp_path / "atlas"
    assert run(capsys, "atlas", empty, "--out", out)[0] == 0
    assert (out / "atlas.jsonl").read_text() == ""
    bad = tmp_path / "bad.g6"
    bad.write_text("C~\n\x01\x02\n")
    code, _, err = run(capsys, "atlas", bad, "--out", tmp_path / "b", *FAST)
    assert code == 1 and "skipped" in err


def test_seed_from_environment(tmp_path, capsys, monkeypatch):
    g6 = encode_graph6(gr.complete_multipartite([2, 2, 2]))
    monkeypatch.setenv("MBKIT_SEED", "5")
    run(capsys, "search", g6, "--k", 3, "--out", tmp_path / "env.json", *FAST)
    monkeypatch.delenv("MBKIT_SEED")
    run(capsys, "search", g6, "--k", 3, "--seed", 5, "--out", tmp_path / "flag.json", *FAST)
    env = json.loads((tmp_path / "env.json").read_text())
    assert env["certificate"]["provenance"]["seed"] == 5
    assert (tmp_path / "env.json").read_bytes() == (tmp_path / "flag.json").read_bytes()
    monkeypatch.setenv("MBKIT_SEED", "x")
    assert run(capsys, "bounds", g6)[0] == 2
