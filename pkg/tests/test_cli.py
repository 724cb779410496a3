import json

import pytest

from listpacking.cli import main
from listpacking.covers import cover_to_json, random_cover
from listpacking.graphs import generate, graph_to_json


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def write_json(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


class TestBasics:
    def test_gen_girth_pipeline(self, tmp_path, capsys):
        code, out = run(capsys, "gen", "cycle", "5")
        assert code == 0
        g = write_json(tmp_path, "c5.json", json.loads(out))
        code, out = run(capsys, "girth", "--graph", g)
        assert code == 0 and json.loads(out) == {"girth": 5}

    def test_girth_forest_null(self, tmp_path, capsys):
        path = write_json(tmp_path, "p4.json", graph_to_json(generate("path", 4)))
        code, out = run(capsys, "girth", "--graph", path)
        assert code == 0 and json.loads(out) == {"girth": None}

    def test_mad_exact_string(self, tmp_path, capsys):
        path = write_json(tmp_path, "p3.json", graph_to_json(generate("path", 3)))
        code, out = run(capsys, "mad", "--graph", path)
        assert code == 0 and json.loads(out)["mad"] == "4/3"

    def test_discharge(self, tmp_path, capsys):
        path = write_json(tmp_path, "k34.json", graph_to_json(generate("complete_bipartite", 3, 4)))
        code, out = run(capsys, "discharge", "--graph", path, "--rule", "P4")
        payload = json.loads(out)
        assert code == 0
        assert payload["min_final"] == "8/3"
        assert payload["passes_exclusions"] is False

    def test_gen_round_trip(self, capsys):
        code, out = run(capsys, "gen", "dodecahedron")
        emitted = json.loads(out)
        assert emitted == graph_to_json(generate("dodecahedron"))


class TestSolving:
    def test_chromatic(self, tmp_path, capsys):
        path = write_json(tmp_path, "c5.json", graph_to_json(generate("cycle", 5)))
        code, out = run(capsys, "chromatic", "--graph", path, "--mode", "correspondence", "--upper", "5")
        assert code == 0 and json.loads(out)["value"] == 4

    def test_adversary_and_solve(self, tmp_path, capsys):
        path = write_json(tmp_path, "c5.json", graph_to_json(generate("cycle", 5)))
        code, out = run(capsys, "adversary", "--graph", path, "--mode", "correspondence", "--k", "3")
        assert code == 1
        witness = json.loads(out)["cover"]
        cover_path = write_json(tmp_path, "bad.json", witness)
        code, out = run(capsys, "solve", "--cover", cover_path)
        assert code == 1 and json.loads(out) == {"status": "none"}

    def test_solve_list(self, tmp_path, capsys):
        g = generate("cycle", 4)
        payload = {
            "k": 2,
            "graph": graph_to_json(g),
            "lists": {"0": [1, 2], "1": [1, 2], "2": [1, 3], "3": [2, 3]},
        }
        path = write_json(tmp_path, "gadget.json", payload)
        code, out = run(capsys, "solve-list", "--lists", path)
        assert code == 1 and json.loads(out) == {"status": "none"}

    def test_pack(self, tmp_path, capsys):
        cover = random_cover(generate("dodecahedron"), 4, 3)
        path = write_json(tmp_path, "cover.json", cover_to_json(cover))
        trace_path = str(tmp_path / "trace.json")
        code, out = run(capsys, "pack", "--regime", "girth5_k4", "--cover", path, "--trace", trace_path)
        assert code == 0
        payload = json.loads(out)
        assert payload["success"] is True
        trace = json.loads((tmp_path / "trace.json").read_text())
        assert trace["success"] is True

    def test_classify(self, tmp_path, capsys):
        path = write_json(tmp_path, "h.json", {"s": 8, "rows": [7, 7, 7, 7, 7, 248, 248, 248]})
        code, out = run(capsys, "classify", "--bigraph", path)
        assert code == 1
        assert json.loads(out)["obstruction"]["otype"] == 1


class TestVerifyLemma:
    def test_exhaustive(self, capsys):
        code, out = run(capsys, "verify-lemma", "canalwaysswap", "--exhaustive")
        payload = json.loads(out)
        assert code == 0
        assert payload["counterexamples"] == []
        assert "elapsed" not in payload  # byte-determinism of reports

    def test_randomized_seeded(self, capsys):
        code, out1 = run(capsys, "verify-lemma", "switcher_simple", "--trials", "200", "--seed", "5")
        assert code == 0
        code, out2 = run(capsys, "verify-lemma", "switcher_simple", "--trials", "200", "--seed", "5")
        assert out1 == out2


class TestExitCodes:
    def test_input_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _ = run(capsys, "girth", "--graph", str(bad))
        assert code == 2

    def test_unknown_rule(self, tmp_path, capsys):
        path = write_json(tmp_path, "c5.json", graph_to_json(generate("cycle", 5)))
        code, _ = run(capsys, "discharge", "--graph", path, "--rule", "P7")
        assert code == 2

    def test_resource_cap(self, tmp_path, capsys):
        path = write_json(tmp_path, "c5.json", graph_to_json(generate("cycle", 5)))
        code, _ = run(capsys, "adversary", "--graph", path, "--mode", "correspondence", "--k", "4", "--cap", "3")
        assert code == 3


class TestDeterminism:
    def test_chromatic_bytes(self, tmp_path, capsys):
        path = write_json(tmp_path, "c4.json", graph_to_json(generate("cycle", 4)))
        _, out1 = run(capsys, "chromatic", "--graph", path, "--mode", "list", "--upper", "3")
        _, out2 = run(capsys, "chromatic", "--graph", path, "--mode", "list", "--upper", "3")
        assert out1 == out2

    def test_emitted_graphs_reparse_equal(self, capsys):
        _, out = run(capsys, "gen", "grid", "3", "3")
        g = generate("grid", 3, 3)
        assert json.loads(out) == graph_to_json(g)
