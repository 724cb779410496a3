"""Correspondence covers, list assignments, packings, and the bridges
between them.

A cover stores one permutation per edge, keyed by the orientation the input
declared; queries against the reverse arc use the inverse permutation, so
callers never need to care which direction was stored.  A packing stores,
per vertex, the tuple of colors used by colorings ``0..k-1``; a partial
packing simply omits unpacked vertices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from listpacking.bigraph import Bigraph
from listpacking.graphs import Graph, graph_from_json, graph_to_json


@dataclass(frozen=True)
class Perm:
    """A permutation of ``0..k-1`` stored as its image tuple."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        k = len(self.image)
        if sorted(self.image) != list(range(k)):
            raise ValueError(f"{self.image} is not a permutation")

    @property
    def k(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def inverse(self) -> "Perm":
        inv = [0] * self.k
        for i, j in enumerate(self.image):
            inv[j] = i
        return Perm(tuple(inv))

    def after(self, other: "Perm") -> "Perm":
        """Composition self(other(x))."""

        return Perm(tuple(self.image[other.image[i]] for i in range(self.k)))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.image))

    @staticmethod
    def identity(k: int) -> "Perm":
        return Perm(tuple(range(k)))


@dataclass(frozen=True)
class CorrespondenceCover:
    """An orientation plus one permutation per arc.

    ``arcs`` maps ordered pairs (u, v) to the permutation carrying colors of
    u onto the colors they forbid at v; exactly one of (u, v), (v, u) is
    keyed per edge.
    """

    graph: Graph
    k: int
    arcs: Mapping[tuple[int, int], Perm]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("covers need k >= 1")
        seen = set()
        for (u, v), perm in self.arcs.items():
            if not self.graph.has_edge(u, v):
                raise ValueError(f"arc {(u, v)} is not an edge of the graph")
            if perm.k != self.k:
                raise ValueError("permutation size does not match k")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"edge {key} keyed twice")
            seen.add(key)
        if len(seen) != self.graph.m:
            raise ValueError("every edge needs exactly one arc")

    def perm_along(self, u: int, v: int) -> Perm:
        """The u -> v constraint map, inverting a stored (v, u) arc."""

        if (u, v) in self.arcs:
            return self.arcs[(u, v)]
        return self.arcs[(v, u)].inverse()


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex color lists, all of the same size k.  Color identifiers
    are arbitrary non-negative integers from a global universe."""

    graph: Graph
    k: int
    lists: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.lists) != self.graph.n:
            raise ValueError("need one list per vertex")
        for v, colors in enumerate(self.lists):
            if len(set(colors)) != self.k:
                raise ValueError(f"list at vertex {v} does not have {self.k} distinct colors")
            if any(c < 0 for c in colors):
                raise ValueError("colors are non-negative integers")
            if tuple(sorted(colors)) != colors:
                raise ValueError(f"list at vertex {v} is not sorted")


def list_assignment(graph: Graph, k: int, lists: Iterable[Iterable[int]]) -> ListAssignment:
    return ListAssignment(graph, k, tuple(tuple(sorted(colors)) for colors in lists))


def random_cover(graph: Graph, k: int, seed: int) -> CorrespondenceCover:
    """A seeded cover: every edge oriented low-to-high with a uniformly
    random permutation."""

    rng = random.Random(seed)
    arcs = {}
    for u, v in graph.sorted_edges():
        image = list(range(k))
        rng.shuffle(image)
        arcs[(u, v)] = Perm(tuple(image))
    return CorrespondenceCover(graph, k, arcs)


@dataclass
class Packing:
    """Colorings 0..k-1, stored per vertex: ``assign[v][j]`` is the color of
    coloring j at v.  Vertices absent from ``assign`` are unpacked."""

    k: int
    assign: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def packed(self) -> set[int]:
        return set(self.assign)

    def is_complete(self, graph: Graph) -> bool:
        return len(self.assign) == graph.n and all(v in self.assign for v in range(graph.n))

    def copy(self) -> "Packing":
        return Packing(self.k, dict(self.assign))


@dataclass(frozen=True)
class Check:
    ok: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# Straightening: relabel colors vertex by vertex so that every arc of a
# chosen forest carries the identity, preserving packings bijectively.
# ---------------------------------------------------------------------------


def _check_forest(graph: Graph, tree_edges) -> list[tuple[int, int]]:
    edges = []
    parent = list(range(graph.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in tree_edges:
        if not graph.has_edge(u, v):
            raise ValueError(f"tree edge {(u, v)} is not in the graph")
        ru, rv = find(u), find(v)
        if ru == rv:
            raise ValueError("tree edge set contains a cycle")
        parent[ru] = rv
        edges.append((u, v) if u < v else (v, u))
    return edges


def straighten(cover: CorrespondenceCover, tree_edges) -> tuple[CorrespondenceCover, dict[int, Perm]]:
    """Return an equivalent cover whose arcs along ``tree_edges`` (a forest)
    are all the identity, together with the per-vertex relabeling.

    The relabeling rho satisfies: phi is a packing of the original cover
    exactly when v |-> rho_v(phi(v)) columnwise is a packing of the result.
    """

    edges = _check_forest(cover.graph, tree_edges)
    g = cover.graph
    ident = Perm.identity(cover.k)
    rho: dict[int, Perm] = {v: ident for v in range(g.n)}
    tree_adj: dict[int, list[int]] = {}
    for u, v in edges:
        tree_adj.setdefault(u, []).append(v)
        tree_adj.setdefault(v, []).append(u)
    seen: set[int] = set()
    for root in sorted(tree_adj):
        if root in seen:
            continue
        seen.add(root)
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for v in sorted(tree_adj[u]):
                    if v in seen:
                        continue
                    seen.add(v)
                    # make the u->v constraint the identity after relabeling
                    rho[v] = rho[u].after(cover.perm_along(u, v).inverse())
                    nxt.append(v)
            frontier = nxt
    new_arcs = {
        (u, v): rho[v].after(perm).after(rho[u].inverse()) for (u, v), perm in cover.arcs.items()
    }
    return CorrespondenceCover(g, cover.k, new_arcs), rho


def apply_relabel(packing: Packing, rho: Mapping[int, Perm], inverse: bool = False) -> Packing:
    """Push a packing through a straightening relabeling (or pull it back)."""

    out = {}
    for v, colors in packing.assign.items():
        p = rho[v].inverse() if inverse else rho[v]
        out[v] = tuple(p(c) for c in colors)
    return Packing(packing.k, out)


# ---------------------------------------------------------------------------
# List assignments as covers.
# ---------------------------------------------------------------------------


def list_to_cover(la: ListAssignment) -> tuple[CorrespondenceCover, tuple[tuple[int, ...], ...]]:
    """Encode a list assignment as a cover plus the per-vertex color indexing.

    Each vertex's list is indexed in sorted order.  Per edge, indices of
    shared colors are matched, and the partial matching is completed to a
    permutation by smallest-index greedy choice.  Every packing of the cover
    pulls back to a valid list packing (the converse direction does not hold:
    the completion edges forbid some color pairs that differ as colors).
    """

    indexing = la.lists  # already sorted tuples
    pos = [{c: i for i, c in enumerate(colors)} for colors in indexing]
    arcs = {}
    for u, v in la.graph.sorted_edges():
        image: dict[int, int] = {}
        used = set()
        for c in indexing[u]:
            if c in pos[v]:
                image[pos[u][c]] = pos[v][c]
                used.add(pos[v][c])
        free_targets = [j for j in range(la.k) if j not in used]
        for i in range(la.k):
            if i not in image:
                image[i] = free_targets.pop(0)
        arcs[(u, v)] = Perm(tuple(image[i] for i in range(la.k)))
    return CorrespondenceCover(la.graph, la.k, arcs), indexing


def pull_back_list_packing(indexing: tuple[tuple[int, ...], ...], packing: Packing) -> Packing:
    """Map a cover packing (values are list indices) to actual list colors."""

    return Packing(
        packing.k,
        {v: tuple(indexing[v][i] for i in cols) for v, cols in packing.assign.items()},
    )


# ---------------------------------------------------------------------------
# Extension bigraphs: which (color, coloring) pairs remain possible at an
# unpacked vertex, given the packing of its neighbors.
# ---------------------------------------------------------------------------


def extension_bigraph(cover: CorrespondenceCover, packing: Packing, v: int) -> Bigraph:
    """Rows indexed by color i, bit j set when coloring j may still use
    color i at v.  Unpacked neighbors impose nothing."""

    if v in packing.assign:
        raise ValueError(f"vertex {v} is already packed")
    k = cover.k
    full = (1 << k) - 1
    rows = [full] * k
    for w in cover.graph.adjacency[v]:
        got = packing.assign.get(w)
        if got is None:
            continue
        to_v = cover.perm_along(w, v)
        for j, c in enumerate(got):
            rows[to_v(c)] &= ~(1 << j)
    return Bigraph(k, tuple(rows))


def list_extension_bigraph(la: ListAssignment, packing: Packing, v: int) -> Bigraph:
    """Same as :func:`extension_bigraph` but for list constraints: color
    slot i of v conflicts with coloring j when some packed neighbor uses the
    identical color in coloring j."""

    if v in packing.assign:
        raise ValueError(f"vertex {v} is already packed")
    k = la.k
    full = (1 << k) - 1
    rows = [full] * k
    colors = la.lists[v]
    for w in la.graph.adjacency[v]:
        got = packing.assign.get(w)
        if got is None:
            continue
        for j, c in enumerate(got):
            for i in range(k):
                if colors[i] == c:
                    rows[i] &= ~(1 << j)
    return Bigraph(k, tuple(rows))


# ---------------------------------------------------------------------------
# Validation.
# ---------------------------------------------------------------------------


def validate_packing(cover: CorrespondenceCover, packing: Packing) -> Check:
    """Full check of a (complete) packing against a cover: every vertex
    assigned, per-vertex injectivity, values in range, all arc constraints."""

    bad: list[str] = []
    g = cover.graph
    for v in range(g.n):
        if v not in packing.assign:
            bad.append(f"vertex {v} unpacked")
    if packing.k != cover.k:
        bad.append(f"packing has k={packing.k}, cover has k={cover.k}")
    for v, colors in packing.assign.items():
        if len(colors) != cover.k:
            bad.append(f"vertex {v}: expected {cover.k} entries")
            continue
        if any(not 0 <= c < cover.k for c in colors):
            bad.append(f"vertex {v}: color out of range")
        if len(set(colors)) != len(colors):
            bad.append(f"vertex {v}: colorings collide")
    if bad:
        return Check(False, tuple(bad))
    for (u, v), perm in cover.arcs.items():
        cu, cv = packing.assign[u], packing.assign[v]
        for j in range(cover.k):
            if perm(cu[j]) == cv[j]:
                bad.append(f"arc ({u},{v}) coloring {j}: constraint violated")
    return Check(not bad, tuple(bad))


def validate_partial_packing(cover: CorrespondenceCover, packing: Packing) -> Check:
    """Like :func:`validate_packing` but only over packed vertices."""

    bad: list[str] = []
    for v, colors in packing.assign.items():
        if len(set(colors)) != cover.k or any(not 0 <= c < cover.k for c in colors):
            bad.append(f"vertex {v}: malformed column")
    for (u, v), perm in cover.arcs.items():
        cu, cv = packing.assign.get(u), packing.assign.get(v)
        if cu is None or cv is None:
            continue
        for j in range(cover.k):
            if perm(cu[j]) == cv[j]:
                bad.append(f"arc ({u},{v}) coloring {j}: constraint violated")
    return Check(not bad, tuple(bad))


def validate_list_packing(la: ListAssignment, packing: Packing) -> Check:
    """Each coloring is a proper coloring from the lists, and per vertex the
    k colorings use k distinct colors."""

    bad: list[str] = []
    g = la.graph
    for v in range(g.n):
        colors = packing.assign.get(v)
        if colors is None:
            bad.append(f"vertex {v} unpacked")
            continue
        if len(colors) != la.k:
            bad.append(f"vertex {v}: expected {la.k} entries")
            continue
        if len(set(colors)) != len(colors):
            bad.append(f"vertex {v}: colorings collide")
        for c in colors:
            if c not in la.lists[v]:
                bad.append(f"vertex {v}: color {c} outside its list")
    if bad:
        return Check(False, tuple(bad))
    for u, v in g.sorted_edges():
        for j in range(la.k):
            if packing.assign[u][j] == packing.assign[v][j]:
                bad.append(f"edge ({u},{v}) coloring {j}: endpoints share a color")
    return Check(not bad, tuple(bad))


# ---------------------------------------------------------------------------
# JSON wire formats.
# ---------------------------------------------------------------------------


def cover_to_json(cover: CorrespondenceCover) -> dict:
    return {
        "k": cover.k,
        "graph": graph_to_json(cover.graph),
        "arcs": [
            {"u": u, "v": v, "perm": list(perm.image)}
            for (u, v), perm in sorted(cover.arcs.items())
        ],
    }


def cover_from_json(obj: dict) -> CorrespondenceCover:
    try:
        g = graph_from_json(obj["graph"])
        k = int(obj["k"])
        arcs = {
            (int(a["u"]), int(a["v"])): Perm(tuple(int(x) for x in a["perm"]))
            for a in obj["arcs"]
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed cover JSON: {exc}") from exc
    return CorrespondenceCover(g, k, arcs)


def list_assignment_to_json(la: ListAssignment) -> dict:
    return {
        "k": la.k,
        "graph": graph_to_json(la.graph),
        "lists": {str(v): list(colors) for v, colors in enumerate(la.lists)},
    }


def list_assignment_from_json(obj: dict) -> ListAssignment:
    try:
        k = int(obj["k"])
        g = graph_from_json(obj["graph"])
        lists = [tuple(sorted(int(c) for c in obj["lists"][str(v)])) for v in range(g.n)]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed list-assignment JSON: {exc}") from exc
    return ListAssignment(g, k, tuple(lists))


def packing_to_json(packing: Packing) -> dict:
    return {
        "k": packing.k,
        "assign": {str(v): list(colors) for v, colors in sorted(packing.assign.items())},
    }


def packing_from_json(obj: dict) -> Packing:
    try:
        k = int(obj["k"])
        assign = {int(v): tuple(int(c) for c in colors) for v, colors in obj["assign"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed packing JSON: {exc}") from exc
    return Packing(k, assign)
