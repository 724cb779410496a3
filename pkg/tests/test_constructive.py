import json
import random

import pytest

from listpacking.constructive import (
    ClassViolationError,
    PackOutcome,
    Reduction,
    RepairTrace,
    extend_with_repair,
    find_reduction,
    pack_constructive,
)
from listpacking.covers import (
    CorrespondenceCover,
    Packing,
    Perm,
    random_cover,
    validate_packing,
)
from listpacking.graphs import generate, graph_from_edges


def star_cover(k: int, leaves: int) -> CorrespondenceCover:
    g = graph_from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
    return CorrespondenceCover(g, k, {e: Perm.identity(k) for e in g.sorted_edges()})


class TestFindReduction:
    def test_dodecahedron(self):
        red = find_reduction(generate("dodecahedron"), "girth5_k4")
        assert red.kind == "path_3_3_3"
        assert red.removable() == (red.vertices[1],)

    def test_icosahedron(self):
        g = generate("icosahedron")
        red = find_reduction(g, "planar_k8")
        assert red.kind == "light_triangle"
        assert sum(g.degree(v) for v in red.vertices) == 15

    def test_tree(self):
        for regime in ("mad4_k5", "girth5_k4", "planar_k8"):
            red = find_reduction(generate("path", 5), regime)
            assert red.kind == "low_degree_vertex"

    def test_light_edge(self):
        # a 3-vertex adjacent to a 4-vertex, minimum degree 3
        g = generate("complete_bipartite", 3, 4)  # degrees 4 and 3
        red = find_reduction(g, "mad4_k5")
        assert red.kind == "light_edge"
        assert g.degree(red.vertices[0]) == 3
        assert g.degree(red.vertices[1]) <= 4

    def test_five_with_four_threes(self):
        # center 0 of degree 5 sees four 3-vertices; all other degrees high
        edges = [(0, i) for i in range(1, 6)]
        hub = list(range(6, 10))
        for w in range(1, 5):  # the four degree-3 neighbors
            edges += [(w, hub[w - 1]), (w, hub[w % 4])]
        edges += [(5, h) for h in hub] + [(5, 10), (10, 6), (10, 7), (10, 8)]
        for a, b in ((6, 7), (7, 8), (8, 9), (9, 6), (6, 8), (7, 9)):
            edges.append((a, b))
        g = graph_from_edges(11, edges)
        assert g.degree(0) == 5
        assert all(g.degree(w) == 3 for w in range(1, 5))
        red = find_reduction(g, "mad4_k5")
        assert red.kind == "five_with_four_threes"
        assert red.vertices[0] == 0
        assert red.removable() == red.vertices

    def test_out_of_class(self):
        with pytest.raises(ClassViolationError):
            find_reduction(generate("complete", 5), "girth5_k4")
        with pytest.raises(ClassViolationError):
            find_reduction(generate("complete", 6), "mad4_k5")

    def test_unknown_regime(self):
        with pytest.raises(ValueError):
            find_reduction(generate("path", 2), "k9")


class TestExtendWithRepair:
    def test_direct_extension_low_degree(self):
        # two packed neighbors, k=4: the extension bigraph is a (4,2)-bigraph
        cover = star_cover(4, 2)
        packing = Packing(4, {1: (0, 1, 2, 3), 2: (1, 0, 3, 2)})
        trace = RepairTrace()
        got = extend_with_repair(cover, packing, (0,), budget=2, trace=trace)
        assert got is not None
        assert trace.steps[-1].budget_used == 0
        assert validate_packing(cover, got).ok

    def _blocked_star(self):
        # three leaves packed so that two colorings both need color 3 at the
        # center: the direct extension is blocked
        cover = star_cover(4, 3)
        packing = Packing(
            4, {1: (0, 1, 2, 3), 2: (1, 2, 3, 0), 3: (2, 0, 1, 3)}
        )
        return cover, packing

    def test_budget_zero_fails(self):
        cover, packing = self._blocked_star()
        trace = RepairTrace()
        assert extend_with_repair(cover, packing, (0,), budget=0, trace=trace) is None
        assert trace.steps[-1].success is False

    def test_budget_one_repairs(self):
        cover, packing = self._blocked_star()
        trace = RepairTrace()
        got = extend_with_repair(cover, packing, (0,), budget=1, trace=trace)
        assert got is not None
        assert validate_packing(cover, got).ok
        step = trace.steps[-1]
        assert step.budget_used == 1 and len(step.repacked) == 1

    def test_frontier_must_be_unpacked(self):
        cover = star_cover(4, 2)
        packing = Packing(4, {0: (0, 1, 2, 3), 1: (1, 0, 3, 2), 2: (1, 0, 3, 2)})
        with pytest.raises(ValueError):
            extend_with_repair(cover, packing, (0,))


class TestPackConstructive:
    @pytest.mark.parametrize("seed", range(8))
    def test_dodecahedron(self, seed):
        cover = random_cover(generate("dodecahedron"), 4, seed)
        out = pack_constructive(cover, "girth5_k4")
        assert out.success
        assert validate_packing(cover, out.packing).ok
        assert out.trace.max_budget_used() <= 2

    @pytest.mark.parametrize("seed", range(8))
    def test_grid(self, seed):
        cover = random_cover(generate("grid", 4, 5), 5, seed)
        out = pack_constructive(cover, "mad4_k5")
        assert out.success
        assert validate_packing(cover, out.packing).ok

    @pytest.mark.parametrize("seed", range(4))
    def test_icosahedron_k8(self, seed):
        cover = random_cover(generate("icosahedron"), 8, seed)
        out = pack_constructive(cover, "planar_k8")
        assert out.success
        assert validate_packing(cover, out.packing).ok

    def test_k5_out_of_class(self):
        g = generate("complete", 5)
        cover = CorrespondenceCover(g, 4, {e: Perm.identity(4) for e in g.sorted_edges()})
        out = pack_constructive(cover, "girth5_k4")
        assert not out.success
        assert out.reason.startswith("class_violation")

    def test_k_mismatch(self):
        cover = random_cover(generate("dodecahedron"), 5, 0)
        with pytest.raises(ValueError):
            pack_constructive(cover, "girth5_k4")

    def test_frontier_sizes_sum_to_n(self):
        cover = random_cover(generate("dodecahedron"), 4, 11)
        out = pack_constructive(cover, "girth5_k4")
        assert sum(len(s.frontier) for s in out.trace.steps if s.success) == 20

    def test_deterministic_replay(self):
        cover = random_cover(generate("grid", 4, 5), 5, 77)
        a = pack_constructive(cover, "mad4_k5")
        b = pack_constructive(cover, "mad4_k5")
        assert a.packing.assign == b.packing.assign
        assert json.dumps(a.trace.as_json()) == json.dumps(b.trace.as_json())
