"""Exact packing decision and adversarial search.

The solver core works over "forbidden maps": for each ordered adjacent pair
(u, v), an array taking the value placed at u in coloring j to the value it
forbids at v in the same coloring (-1 when it forbids nothing).  Covers
induce total maps (the arc permutations); list assignments induce partial
maps (shared colors, identified by list position).  On top of one core this
gives both exact solvers.

Adversarial list search does not enumerate raw color lists.  Two
assignments whose per-edge shared-color position patterns agree are
solvable or unsolvable together, so the search enumerates those patterns
directly, one representative per per-vertex relabeling orbit, realizes each
candidate back into an honest list assignment, and solves that.  This is
the same quotient the cover search takes with a spanning forest pinned to
identity permutations, and it is what makes exhausting list size 3 on small
cycles affordable.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterator, Sequence

from listpacking.bigraph import _raw_max_matching
from listpacking.covers import (
    CorrespondenceCover,
    ListAssignment,
    Packing,
    Perm,
    validate_packing,
)
from listpacking.graphs import Graph, degeneracy


class ResourceCapError(RuntimeError):
    """An adversarial enumeration exceeded its candidate cap."""


# ---------------------------------------------------------------------------
# Core backtracking engine.
# ---------------------------------------------------------------------------


def _solve_order(g: Graph) -> tuple[int, ...]:
    """Reverse degeneracy order: each vertex sees few already-assigned
    neighbors when its turn comes."""

    if g.n == 0:
        return ()
    _, order = degeneracy(g)
    return tuple(reversed(order))


def _rows_for(v: int, k: int, adj: Sequence[Sequence[int]], maps, assign) -> list[int]:
    full = (1 << k) - 1
    rows = [full] * k
    for u in adj[v]:
        got = assign[u]
        if got is None:
            continue
        fmap = maps[(u, v)]
        for j in range(k):
            t = fmap[got[j]]
            if t >= 0:
                rows[t] &= ~(1 << j)
    return rows


def _iter_row_factors(k: int, rows: list[int]) -> Iterator[tuple[int, ...]]:
    """Yield per-column values: out[j] = the row assigned to column j."""

    cols = [0] * k

    def rec(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if i == k:
            out = [0] * k
            for row, col in enumerate(cols):
                out[col] = row
            yield tuple(out)
            return
        avail = ~used
        for r in range(i + 1, k):
            if not rows[r] & avail:
                return
        m = rows[i] & avail
        while m:
            low = m & -m
            cols[i] = low.bit_length() - 1
            m ^= low
            yield from rec(i + 1, used | low)

    yield from rec(0, 0)


def _core_solve(
    g: Graph,
    k: int,
    maps,
    order: Sequence[int] | None = None,
) -> dict[int, tuple[int, ...]] | None:
    """Complete backtracking over per-vertex assignments.

    ``maps[(u, v)]`` is the forbidden map described in the module docstring.
    After each tentative assignment every unpacked vertex is Hall-checked
    (its remaining options must admit a 1-factor) and the branch is dropped
    on failure.
    """

    if order is None:
        order = _solve_order(g)
    n = g.n
    adj = g.adjacency
    assign: list[tuple[int, ...] | None] = [None] * n

    def viable(v: int) -> bool:
        rows = _rows_for(v, k, adj, maps, assign)
        for r in rows:
            if not r:
                return False
        return all(x >= 0 for x in _raw_max_matching(k, rows))

    def rec(idx: int) -> bool:
        if idx == n:
            return True
        v = order[idx]
        rows = _rows_for(v, k, adj, maps, assign)
        for choice in _iter_row_factors(k, rows):
            assign[v] = choice
            # unpacked vertices are exactly order[idx+1:]; only those with a
            # packed neighbor can have lost options
            ok = True
            for i in range(idx + 1, n):
                u = order[i]
                if any(assign[w] is not None for w in adj[u]) and not viable(u):
                    ok = False
                    break
            if ok and rec(idx + 1):
                return True
        assign[v] = None
        return False

    if rec(0):
        return {v: val for v, val in enumerate(assign) if val is not None}
    return None


# ---------------------------------------------------------------------------
# Cover solving.
# ---------------------------------------------------------------------------


def _cover_maps(cover: CorrespondenceCover) -> dict[tuple[int, int], tuple[int, ...]]:
    maps = {}
    for (u, v), perm in cover.arcs.items():
        maps[(u, v)] = perm.image
        maps[(v, u)] = perm.inverse().image
    return maps


def solve_packing(cover: CorrespondenceCover) -> Packing | None:
    """A valid packing of the cover, or None when none exists."""

    found = _core_solve(cover.graph, cover.k, _cover_maps(cover))
    if found is None:
        return None
    packing = Packing(cover.k, found)
    check = validate_packing(cover, packing)
    if not check.ok:
        raise AssertionError(f"solver produced an invalid packing: {check.violations}")
    return packing


# ---------------------------------------------------------------------------
# List solving via position patterns.
# ---------------------------------------------------------------------------


def _list_pattern_maps(la: ListAssignment) -> dict[tuple[int, int], tuple[int, ...]]:
    """Partial forbidden maps between list positions: position i at u forbids
    position j at v exactly when they hold the same color."""

    maps = {}
    for u, v in la.graph.sorted_edges():
        pos_v = {c: i for i, c in enumerate(la.lists[v])}
        fwd = [-1] * la.k
        rev = [-1] * la.k
        for i, c in enumerate(la.lists[u]):
            j = pos_v.get(c)
            if j is not None:
                fwd[i] = j
                rev[j] = i
        maps[(u, v)] = tuple(fwd)
        maps[(v, u)] = tuple(rev)
    return maps


def solve_list_packing(la: ListAssignment) -> Packing | None:
    """A valid list packing (colors drawn from the lists), or None.

    Solves the position pattern directly rather than completing it to a
    cover: an arbitrary completion adds constraints between distinct colors
    and can report "none" on solvable assignments.
    """

    found = _core_solve(la.graph, la.k, _list_pattern_maps(la))
    if found is None:
        return None
    return Packing(
        la.k,
        {v: tuple(la.lists[v][slot] for slot in slots) for v, slots in found.items()},
    )


def _find_list_coloring(la: ListAssignment) -> tuple[int, ...] | None:
    """One proper coloring from the lists, by plain backtracking."""

    g = la.graph
    color: list[int | None] = [None] * g.n

    def rec(v: int) -> bool:
        if v == g.n:
            return True
        taken = {color[u] for u in g.adjacency[v] if u < v}
        for c in la.lists[v]:
            if c not in taken:
                color[v] = c
                if rec(v + 1):
                    return True
        color[v] = None
        return False

    if rec(0):
        return tuple(color)  # type: ignore[arg-type]
    return None


def pack_by_peeling(la: ListAssignment, known_k: int) -> Packing | None:
    """Pack lists of size s >= known_k by peeling single colorings.

    Finds one coloring, removes its colors from the lists, and recurses
    until the lists have size ``known_k``, where the exact solver takes
    over.  The caller asserts that the graph packs at ``known_k``; a None
    result means that assertion failed or a peel step found no coloring.
    """

    if la.k < known_k:
        raise ValueError("list size below the claimed packing number")
    if la.k == known_k:
        return solve_list_packing(la)
    coloring = _find_list_coloring(la)
    if coloring is None:
        return None
    reduced = ListAssignment(
        la.graph,
        la.k - 1,
        tuple(
            tuple(c for c in la.lists[v] if c != coloring[v])
            for v in range(la.graph.n)
        ),
    )
    rest = pack_by_peeling(reduced, known_k)
    if rest is None:
        return None
    return Packing(
        la.k,
        {v: rest.assign[v] + (coloring[v],) for v in range(la.graph.n)},
    )


# ---------------------------------------------------------------------------
# Adversarial cover search (spanning forest pinned to the identity).
# ---------------------------------------------------------------------------


def _spanning_forest(g: Graph) -> set[tuple[int, int]]:
    seen: set[int] = set()
    tree: set[tuple[int, int]] = set()
    for root in range(g.n):
        if root in seen:
            continue
        seen.add(root)
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for v in g.adjacency[u]:
                    if v not in seen:
                        seen.add(v)
                        tree.add((u, v) if u < v else (v, u))
                        nxt.append(v)
            frontier = nxt
    return tree


def adversarial_cover_search(
    g: Graph, k: int, cap: int = 1_000_000
) -> CorrespondenceCover | None:
    """First unsolvable k-cover in the gauge-reduced enumeration, or None.

    A spanning forest is fixed to identity permutations (every cover is
    equivalent to one of this shape), all edges are oriented low-to-high,
    and the free edges run through all permutation tuples in lexicographic
    order.  Raises ResourceCapError after ``cap`` candidates.
    """

    tree = _spanning_forest(g)
    free = [e for e in g.sorted_edges() if e not in tree]
    ident = Perm.identity(k)
    perms = [Perm(p) for p in permutations(range(k))]
    base = {e: ident for e in tree}

    def candidates() -> Iterator[CorrespondenceCover]:
        def rec(idx: int, chosen: dict) -> Iterator[CorrespondenceCover]:
            if idx == len(free):
                arcs = dict(base)
                arcs.update(chosen)
                yield CorrespondenceCover(g, k, arcs)
                return
            for p in perms:
                chosen[free[idx]] = p
                yield from rec(idx + 1, chosen)
            del chosen[free[idx]]

        yield from rec(0, {})

    count = 0
    for cover in candidates():
        if count >= cap:
            raise ResourceCapError(f"cover enumeration exceeded cap={cap}")
        count += 1
        if solve_packing(cover) is None:
            return cover
    return None


# ---------------------------------------------------------------------------
# Adversarial list search over shared-color position patterns.
# ---------------------------------------------------------------------------


def _padded_subset_order(k: int) -> list[tuple[int, ...]]:
    """All subsets of range(k), ordered so their realizations (shared
    positions first, fresh colors after) come out in list-lex order."""

    subs = []
    for size in range(k + 1):
        for comb in combinations(range(k), size):
            subs.append(comb)
    return sorted(subs, key=lambda c: tuple(list(c) + [k] * (k - len(c))))


def _injection_order(k: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All partial injections of range(k), as (sorted domain, images)."""

    out = []
    for dom in _padded_subset_order(k):
        for img in permutations(range(k), len(dom)):
            out.append((dom, img))
    return out


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.trail: list[int] = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.trail.append(rb)
        return True

    def mark(self) -> int:
        return len(self.trail)

    def rollback(self, mark: int) -> None:
        while len(self.trail) > mark:
            x = self.trail.pop()
            self.parent[x] = x


def _realize_lists(
    g: Graph, k: int, uf: _UnionFind, universe: int
) -> ListAssignment | None:
    """Color the pattern's classes and produce an actual assignment.

    Classes sharing a vertex or facing each other across an edge must get
    distinct colors; a greedy pass in first-appearance order does it.  None
    when more than ``universe`` colors would be needed.
    """

    roots_by_vertex = [[uf.find(v * k + i) for i in range(k)] for v in range(g.n)]
    conflicts: dict[int, set[int]] = {}
    order: list[int] = []
    seen: set[int] = set()
    for v in range(g.n):
        for r in roots_by_vertex[v]:
            if r not in seen:
                seen.add(r)
                order.append(r)
                conflicts[r] = set()
    for v in range(g.n):
        rs = roots_by_vertex[v]
        for a, b in combinations(rs, 2):
            conflicts[a].add(b)
            conflicts[b].add(a)
    for u, v in g.edges:
        for a in roots_by_vertex[u]:
            for b in roots_by_vertex[v]:
                if a != b:
                    conflicts[a].add(b)
                    conflicts[b].add(a)
    color: dict[int, int] = {}
    for r in order:
        used = {color[o] for o in conflicts[r] if o in color}
        c = 0
        while c in used:
            c += 1
        if c >= universe:
            return None
        color[r] = c
    lists = tuple(tuple(sorted(color[r] for r in roots_by_vertex[v])) for v in range(g.n))
    return ListAssignment(g, k, lists)


def adversarial_list_search(
    g: Graph, k: int, universe: int, cap: int = 4_000_000
) -> ListAssignment | None:
    """First unsolvable k-assignment (canonical representative), or None.

    Enumerates shared-color position patterns, one per relabeling orbit:
    vertex by vertex, the edges back to earlier vertices choose which list
    positions coincide.  Each complete, self-consistent pattern is realized
    into an assignment over at most ``universe`` colors and solved exactly.
    Candidates whose sharing graph is a forest are skipped when k >= 2
    (forests always pack).  Raises ResourceCapError after ``cap`` solved
    candidates.
    """

    n = g.n
    if n == 0:
        return None
    order = _solve_order(g)
    subset_order = _padded_subset_order(k)
    injections = _injection_order(k)
    uf = _UnionFind(n * k)
    back_edges: list[list[int]] = [sorted(u for u in g.adjacency[v] if u < v) for v in range(n)]
    chosen: dict[tuple[int, int], list[tuple[int, int]]] = {}
    budget = [cap]

    def vertex_ok(v: int) -> bool:
        roots = [uf.find(v * k + i) for i in range(k)]
        return len(set(roots)) == k

    def closure_ok() -> bool:
        # every same-class position pair across an edge must be a chosen pair
        for (u, v), pairs in chosen.items():
            pair_set = set(pairs)
            for i in range(k):
                ru = uf.find(u * k + i)
                for j in range(k):
                    if ru == uf.find(v * k + j) and (i, j) not in pair_set:
                        return False
        return True

    def effective_forest() -> bool:
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (u, v), pairs in chosen.items():
            if not pairs:
                continue
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def test_candidate() -> ListAssignment | None:
        if k >= 2 and effective_forest():
            return None
        if not closure_ok():
            return None
        real = _realize_lists(g, k, uf, universe)
        if real is None:
            return None
        if budget[0] <= 0:
            raise ResourceCapError("list-pattern enumeration exceeded its cap")
        budget[0] -= 1
        maps = {}
        for (u, v), pairs in chosen.items():
            fwd = [-1] * k
            rev = [-1] * k
            for i, j in pairs:
                fwd[i] = j
                rev[j] = i
            maps[(u, v)] = tuple(fwd)
            maps[(v, u)] = tuple(rev)
        if _core_solve(g, k, maps, order) is None:
            return real
        return None

    def place(v: int, edge_idx: int) -> ListAssignment | None:
        if v == n:
            return test_candidate()
        backs = back_edges[v]
        if edge_idx == len(backs):
            if not all(vertex_ok(w) for w in range(v + 1)):
                return None
            return place(v + 1, 0)
        u = backs[edge_idx]
        if edge_idx == 0:
            # this vertex's labels are still free: pin targets to a prefix
            for dom in subset_order:
                mark = uf.mark()
                pairs = [(src, t) for t, src in enumerate(dom)]
                ok = True
                for src, t in pairs:
                    uf.union(u * k + src, v * k + t)
                chosen[(u, v)] = pairs
                got = place(v, edge_idx + 1)
                if got is not None:
                    return got
                del chosen[(u, v)]
                uf.rollback(mark)
            return None
        for dom, img in injections:
            mark = uf.mark()
            pairs = list(zip(dom, img))
            for src, t in pairs:
                uf.union(u * k + src, v * k + t)
            chosen[(u, v)] = pairs
            got = place(v, edge_idx + 1)
            if got is not None:
                return got
            del chosen[(u, v)]
            uf.rollback(mark)
        return None

    return place(0, 0)


def packing_number(
    g: Graph, mode: str, upper: int, cap: int = 4_000_000
) -> int:
    """Least k <= upper with no adversarial witness.

    ``mode`` is "list" or "correspondence".  List search uses the fully
    general universe k * n.  Raises ResourceCapError when every k up to
    ``upper`` still has a witness.
    """

    if mode not in ("list", "correspondence"):
        raise ValueError("mode must be 'list' or 'correspondence'")
    for k in range(1, upper + 1):
        if mode == "correspondence":
            witness = adversarial_cover_search(g, k, cap=cap)
        else:
            witness = adversarial_list_search(g, k, universe=max(1, k * g.n), cap=cap)
        if witness is None:
            return k
    raise ResourceCapError(f"no packing below the bound: witnesses exist up to k={upper}")
