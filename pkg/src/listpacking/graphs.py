"""Undirected simple graphs: representation, measurements, and generators.

Graphs are immutable and hashable, so expensive measurements (girth, exact
maximum average degree) can be cached per instance.  Vertex numbering of
every named generator is frozen; see the individual docstrings.  All density
arithmetic is exact (:class:`fractions.Fraction`), never floating point.
"""

from __future__ import annotations

import math
import random
from array import array
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph on vertices ``0..n-1``.

    ``edges`` holds normalized pairs ``(u, v)`` with ``u < v``; loops and
    parallel edges are rejected at construction.
    """

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (u < v):
                raise ValueError(f"edge {(u, v)} is not normalized")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbr: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbr[u].append(v)
            nbr[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbr)

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __repr__(self) -> str:  # compact; edge dumps get long
        return f"Graph(n={self.n}, m={self.m})"


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph, normalizing edge orientation and dropping duplicates."""

    return Graph(n, frozenset(_normalize_edge(u, v) for u, v in edges))


# ---------------------------------------------------------------------------
# Named generators.  Numbering is frozen so results are bit-reproducible.
# ---------------------------------------------------------------------------

# Nested-ring construction: outer 5-cycle 0-4, attachment ring 5-9,
# mid ring 10-14, inner 5-cycle 15-19.  3-regular, girth 5, 30 edges.
_DODECAHEDRON_EDGES = (
    [(i, (i + 1) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)]
    + [(5, 10), (10, 6), (6, 11), (11, 7), (7, 12), (12, 8), (8, 13), (13, 9), (9, 14), (14, 5)]
    + [(10 + i, 15 + i) for i in range(5)]
    + [(15 + i, 15 + (i + 1) % 5) for i in range(5)]
)

# Hub 0 over upper ring 1-5, hub 11 under lower ring 6-10, rings joined by a
# zigzag band.  5-regular, 30 edges, girth 3.
_ICOSAHEDRON_EDGES = (
    [(0, i) for i in range(1, 6)]
    + [(1 + i, 1 + (i + 1) % 5) for i in range(5)]
    + [(6 + i, 6 + (i + 1) % 5) for i in range(5)]
    + [(11, i) for i in range(6, 11)]
    + [(1, 6), (1, 7), (2, 7), (2, 8), (3, 8), (3, 9), (4, 9), (4, 10), (5, 10), (5, 6)]
)

# Oriented triangular faces of the icosahedron above (used by the
# triangulation generators).
_ICOSAHEDRON_FACES = (
    [(0, 1 + i, 1 + (i + 1) % 5) for i in range(5)]
    + [(11, 6 + (i + 1) % 5, 6 + i) for i in range(5)]
    + [(1, 6, 7), (2, 7, 8), (3, 8, 9), (4, 9, 10), (5, 10, 6)]
    + [(1, 7, 2), (2, 8, 3), (3, 9, 4), (4, 10, 5), (5, 6, 1)]
)


def generate(kind: str, *params: int) -> Graph:
    """Return a named graph.

    Kinds and their canonical numbering:

    * ``cycle k`` (k >= 3): vertices ``0..k-1``, edges ``(i, i+1 mod k)``.
    * ``path k`` (k >= 1): ``k`` vertices in a chain.
    * ``complete t`` (t >= 1).
    * ``complete_bipartite a b``: part ``0..a-1`` against ``a..a+b-1``.
    * ``grid r c``: vertex ``i*c + j``; edges to the right and down.
    * ``dodecahedron``, ``icosahedron``, ``cube``: fixed edge lists.
    """

    def need(count: int) -> None:
        if len(params) != count:
            raise ValueError(f"{kind} expects {count} parameter(s), got {len(params)}")
        if any(p <= 0 for p in params):
            raise ValueError(f"{kind} parameters must be positive")

    if kind == "cycle":
        need(1)
        k = params[0]
        if k < 3:
            raise ValueError("cycle needs k >= 3")
        return graph_from_edges(k, ((i, (i + 1) % k) for i in range(k)))
    if kind == "path":
        need(1)
        k = params[0]
        return graph_from_edges(k, ((i, i + 1) for i in range(k - 1)))
    if kind == "complete":
        need(1)
        t = params[0]
        return graph_from_edges(t, combinations(range(t), 2))
    if kind == "complete_bipartite":
        need(2)
        a, b = params
        return graph_from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))
    if kind == "grid":
        need(2)
        r, c = params
        edges = []
        for i in range(r):
            for j in range(c):
                if j + 1 < c:
                    edges.append((i * c + j, i * c + j + 1))
                if i + 1 < r:
                    edges.append((i * c + j, (i + 1) * c + j))
        return graph_from_edges(r * c, edges)
    if kind == "dodecahedron":
        need(0)
        return graph_from_edges(20, _DODECAHEDRON_EDGES)
    if kind == "icosahedron":
        need(0)
        return graph_from_edges(12, _ICOSAHEDRON_EDGES)
    if kind == "cube":
        need(0)
        return graph_from_edges(8, ((u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)))
    raise ValueError(f"unknown graph kind {kind!r}")


# ---------------------------------------------------------------------------
# Measurements.
# ---------------------------------------------------------------------------


def _bfs_dist(adj: tuple[tuple[int, ...], ...], src: int, dst: int, skip: tuple[int, int]) -> int | None:
    """Shortest path length src -> dst avoiding the single edge ``skip``."""

    if src == dst:
        return 0
    dist = {src: 0}
    frontier = [src]
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if (u, w) == skip or (w, u) == skip:
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    if w == dst:
                        return dist[w]
                    nxt.append(w)
        frontier = nxt
    return None


@lru_cache(maxsize=None)
def girth(g: Graph) -> int | float:
    """Length of the shortest cycle; ``math.inf`` for forests.

    Uses the delete-an-edge oracle: the shortest cycle through edge (u, v)
    is 1 + dist(u, v) in the graph without that edge.
    """

    best: int | float = math.inf
    for u, v in g.sorted_edges():
        d = _bfs_dist(g.adjacency, u, v, (u, v))
        if d is not None and d + 1 < best:
            best = d + 1
            if best == 3:
                break
    return best


def degeneracy(g: Graph) -> tuple[int, tuple[int, ...]]:
    """Peel minimum-degree vertices; return (d, removal order).

    Read back-to-front, no vertex in the order has more than ``d`` neighbors
    among later-removed vertices.
    """

    if g.n == 0:
        raise ValueError("degeneracy needs at least one vertex")
    deg = list(g.degrees())
    alive = [True] * g.n
    order: list[int] = []
    d = 0
    for _ in range(g.n):
        v = min((x for x in range(g.n) if alive[x]), key=lambda x: (deg[x], x))
        d = max(d, deg[v])
        order.append(v)
        alive[v] = False
        for w in g.adjacency[v]:
            if alive[w]:
                deg[w] -= 1
    return d, tuple(order)


def _mad_exhaustive(g: Graph) -> Fraction:
    """Exact densest induced subgraph by subset dynamic programming (n <= 20)."""

    n = g.n
    masks = g.adj_masks
    edge_count = array("l", bytes(8 * (1 << n)))
    best_num, best_den = 0, 1
    for s in range(1, 1 << n):
        low = s & -s
        v = low.bit_length() - 1
        prev = s ^ low
        c = edge_count[prev] + (masks[v] & prev).bit_count()
        edge_count[s] = c
        size = s.bit_count()
        if 2 * c * best_den > best_num * size:
            best_num, best_den = 2 * c, size
    return Fraction(best_num, best_den)


class _Dinic:
    """Max-flow with exact Fraction capacities (small networks only)."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[Fraction] = []

    def add(self, u: int, v: int, c: Fraction) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(Fraction(0))

    def max_flow(self, s: int, t: int) -> Fraction:
        flow = Fraction(0)
        while True:
            level = [-1] * self.n
            level[s] = 0
            q = [s]
            while q:
                nq = []
                for u in q:
                    for e in self.head[u]:
                        if self.cap[e] > 0 and level[self.to[e]] < 0:
                            level[self.to[e]] = level[u] + 1
                            nq.append(self.to[e])
                q = nq
            if level[t] < 0:
                return flow
            it = [0] * self.n

            def dfs(u: int, pushed: Fraction) -> Fraction:
                if u == t:
                    return pushed
                while it[u] < len(self.head[u]):
                    e = self.head[u][it[u]]
                    v = self.to[e]
                    if self.cap[e] > 0 and level[v] == level[u] + 1:
                        got = dfs(v, min(pushed, self.cap[e]))
                        if got > 0:
                            self.cap[e] -= got
                            self.cap[e ^ 1] += got
                            return got
                    it[u] += 1
                return Fraction(0)

            while True:
                pushed = dfs(s, Fraction(10**18))
                if pushed <= 0:
                    break
                flow += pushed


def _dense_excess(g: Graph, guess: Fraction) -> Fraction:
    """max over S of e(S) - guess*|S|, via edge-selection min cut."""

    m = g.m
    src, snk = 0, 1
    net = _Dinic(2 + m + g.n)
    for idx, (u, v) in enumerate(g.sorted_edges()):
        node = 2 + idx
        net.add(src, node, Fraction(1))
        big = Fraction(m + 1)
        net.add(node, 2 + m + u, big)
        net.add(node, 2 + m + v, big)
    for v in range(g.n):
        net.add(2 + m + v, snk, guess)
    return Fraction(m) - net.max_flow(src, snk)


def _mad_flow(g: Graph) -> Fraction:
    """Exact densest subgraph via parametric min-cut binary search."""

    n, m = g.n, g.m
    if m == 0:
        return Fraction(0)
    lo, hi = Fraction(0), Fraction(m)  # density rho = e/|S| lies in (0, m]
    gap = Fraction(1, 2 * n * n + 1)  # below the spacing of denominator<=n fractions
    while hi - lo > gap:
        mid = (lo + hi) / 2
        if _dense_excess(g, mid) > 0:
            lo = mid
        else:
            hi = mid
    rho = ((lo + hi) / 2).limit_denominator(n)
    if _dense_excess(g, rho) != 0:
        raise AssertionError("densest-subgraph search failed to converge exactly")
    return 2 * rho


@lru_cache(maxsize=None)
def mad(g: Graph) -> Fraction:
    """Exact maximum average degree: max over nonempty subgraphs H of
    2|E(H)|/|V(H)|.  Exhaustive subset DP for n <= 20, parametric flow above.
    """

    if g.n == 0:
        raise ValueError("mad needs at least one vertex")
    if g.n <= 20:
        return _mad_exhaustive(g)
    return _mad_flow(g)


def find_light_triangle(g: Graph, max_sum: int = 17) -> tuple[int, int, int] | None:
    """First triangle (u, v, w), u < v < w lexicographic, with degree sum
    at most ``max_sum``; None when no such triangle exists."""

    masks = g.adj_masks
    deg = g.degrees()
    for u in range(g.n):
        for v in g.adjacency[u]:
            if v <= u:
                continue
            mm = (masks[u] & masks[v]) >> (v + 1)
            base = v + 1
            while mm:
                low = mm & -mm
                w = base + low.bit_length() - 1
                if deg[u] + deg[v] + deg[w] <= max_sum:
                    return (u, v, w)
                mm ^= low
    return None


# ---------------------------------------------------------------------------
# JSON wire format.
# ---------------------------------------------------------------------------


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


def graph_from_json(obj: dict) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed graph JSON: {exc}") from exc
    return graph_from_edges(n, edges)


# ---------------------------------------------------------------------------
# Planar triangulations with minimum degree 5.
#
# These are produced constructively (subdivide the icosahedron, then apply
# random degree-guarded diagonal flips and vertex splits), so planarity and
# the triangulation property hold by construction and are never re-tested.
# ---------------------------------------------------------------------------


def _geodesic_icosahedron(nu: int) -> tuple[int, set[frozenset[int]]]:
    """Subdivide every icosahedron face into nu^2 triangles.

    Original vertices keep degree 5; all created vertices have degree 6.
    Returns (vertex count, face set).
    """

    coords: dict[tuple, int] = {}
    counter = 12

    def vertex_id(face: tuple[int, int, int], a: int, b: int, c: int) -> int:
        nonlocal counter
        p, q, r = face
        if a == nu:
            return p
        if b == nu:
            return q
        if c == nu:
            return r
        # Edge points are keyed by the weight of the smaller endpoint, which
        # is the same from both incident faces.
        if c == 0:
            key = ("e", min(p, q), max(p, q), a if p < q else b)
        elif b == 0:
            key = ("e", min(p, r), max(p, r), a if p < r else c)
        elif a == 0:
            key = ("e", min(q, r), max(q, r), b if q < r else c)
        else:
            key = ("f", p, q, r, a, b)
        if key not in coords:
            coords[key] = counter
            counter += 1
        return coords[key]

    faces: set[frozenset[int]] = set()
    for face in _ICOSAHEDRON_FACES:
        grid = {}
        for a in range(nu + 1):
            for b in range(nu + 1 - a):
                grid[(a, b)] = vertex_id(face, a, b, nu - a - b)
        for a in range(nu):
            for b in range(nu - a):
                faces.add(frozenset({grid[(a, b)], grid[(a + 1, b)], grid[(a, b + 1)]}))
                if a + b < nu - 1:
                    faces.add(frozenset({grid[(a + 1, b)], grid[(a, b + 1)], grid[(a + 1, b + 1)]}))
    return counter, faces


def _faces_to_graph(n: int, faces: set[frozenset[int]]) -> Graph:
    edges = set()
    for f in faces:
        a, b, c = sorted(f)
        edges.update([(a, b), (a, c), (b, c)])
    return Graph(n, frozenset(edges))


def _rotation(faces_at: dict[int, list[frozenset[int]]], v: int) -> list[int]:
    """Cyclic neighbor order around v, recovered from incident faces."""

    pairs = [tuple(sorted(f - {v})) for f in faces_at[v]]
    nxt: dict[int, list[int]] = {}
    for a, b in pairs:
        nxt.setdefault(a, []).append(b)
        nxt.setdefault(b, []).append(a)
    start = min(nxt)
    cycle = [start]
    prev = None
    while True:
        options = [x for x in nxt[cycle[-1]] if x != prev]
        if not options:
            raise ValueError("faces around vertex do not close a disk")
        prev = cycle[-1]
        cycle.append(min(options) if len(cycle) == 1 else options[0])
        if cycle[-1] == start:
            return cycle[:-1]


def _incidence(faces: set[frozenset[int]]) -> dict[int, list[frozenset[int]]]:
    at: dict[int, list[frozenset[int]]] = {}
    for f in faces:
        for v in f:
            at.setdefault(v, []).append(f)
    return at


def random_planar_triangulation_min5(seed: int, moves: int = 40) -> Graph:
    """Seeded planar triangulation with minimum degree 5.

    Starts from the nu=2 geodesic subdivision of the icosahedron (42
    vertices) and applies ``moves`` random degree-guarded operations:
    diagonal flips and vertex splits, both of which preserve planarity,
    the triangulation property, and minimum degree 5.
    """

    rng = random.Random(seed)
    n, faces = _geodesic_icosahedron(2)
    degree: dict[int, int] = {}

    def recount() -> None:
        degree.clear()
        for f in faces:
            for v in f:
                degree[v] = degree.get(v, 0) + 1

    recount()

    def try_flip() -> bool:
        edge_faces: dict[tuple[int, int], list[frozenset[int]]] = {}
        for f in faces:
            a, b, c = sorted(f)
            for e in ((a, b), (a, c), (b, c)):
                edge_faces.setdefault(e, []).append(f)
        candidates = []
        for (u, v), fs in edge_faces.items():
            if len(fs) != 2 or degree[u] <= 5 or degree[v] <= 5:
                continue
            a = next(iter(fs[0] - {u, v}))
            b = next(iter(fs[1] - {u, v}))
            if a == b or tuple(sorted((a, b))) in edge_faces:
                continue
            candidates.append((u, v, a, b, fs[0], fs[1]))
        if not candidates:
            return False
        u, v, a, b, f0, f1 = candidates[rng.randrange(len(candidates))]
        faces.discard(f0)
        faces.discard(f1)
        faces.add(frozenset({a, b, u}))
        faces.add(frozenset({a, b, v}))
        degree[u] -= 1
        degree[v] -= 1
        degree[a] += 1
        degree[b] += 1
        return True

    def try_split() -> bool:
        nonlocal n
        splittable = [v for v, d in degree.items() if d >= 6]
        if not splittable:
            return False
        v = splittable[rng.randrange(len(splittable))]
        at = _incidence(faces)
        ring = _rotation(at, v)
        d = len(ring)
        # v keeps a contiguous segment of its rotation; the new vertex takes
        # the rest.  Both endpoints of the cut stay adjacent to both copies.
        seg = rng.randrange(4, d - 2 + 1)
        start = rng.randrange(d)
        keep = [ring[(start + i) % d] for i in range(seg)]
        rest = [ring[(start + seg - 1 + i) % d] for i in range(d - seg + 2)]
        new = n
        n += 1
        for f in at[v]:
            faces.discard(f)
        for i in range(len(keep) - 1):
            faces.add(frozenset({v, keep[i], keep[i + 1]}))
        for i in range(len(rest) - 1):
            faces.add(frozenset({new, rest[i], rest[i + 1]}))
        faces.add(frozenset({v, new, keep[0]}))
        faces.add(frozenset({v, new, keep[-1]}))
        recount()
        return True

    for _ in range(moves):
        op = rng.random()
        if op < 0.5:
            try_flip()
        else:
            try_split()
    return _faces_to_graph(n, faces)
