"""Balanced bipartite graphs on parts of size at most 16, as bitmask rows.

Part A is ``a_0 .. a_{s-1}`` (colors), part B is ``b_0 .. b_{s-1}``
(colorings); bit ``j`` of ``rows[i]`` is set when ``a_i ~ b_j``.  Everything
here is deterministic: matchings use a fixed augmenting order, searches use
lexicographic subset order, so downstream results are reproducible.

The hot primitives (:func:`max_matching`, :func:`hall_violator`, the
allowed-edge analysis) also exist as module-private functions over raw
``(s, rows)`` pairs so the verification harness can call them in tight loops
without object churn.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator


Matching = frozenset[tuple[int, int]]


@dataclass(frozen=True)
class Bigraph:
    s: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.s <= 16:
            raise ValueError("part size must be between 1 and 16")
        if len(self.rows) != self.s:
            raise ValueError("need exactly one row bitmask per A-vertex")
        full = (1 << self.s) - 1
        for r in self.rows:
            if r & ~full:
                raise ValueError("row bitmask has bits beyond the part size")

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def column_masks(self) -> tuple[int, ...]:
        cols = [0] * self.s
        for i, r in enumerate(self.rows):
            m = r
            while m:
                low = m & -m
                cols[low.bit_length() - 1] |= 1 << i
                m ^= low
        return tuple(cols)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i, r in enumerate(self.rows):
            m = r
            while m:
                low = m & -m
                out.append((i, low.bit_length() - 1))
                m ^= low
        return out

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows)


def bigraph_from_edges(s: int, edges) -> Bigraph:
    rows = [0] * s
    for i, j in edges:
        if not (0 <= i < s and 0 <= j < s):
            raise ValueError(f"edge {(i, j)} out of range")
        rows[i] |= 1 << j
    return Bigraph(s, tuple(rows))


def swap(h: Bigraph) -> Bigraph:
    """Transpose: the same bigraph with the roles of A and B exchanged."""

    return Bigraph(h.s, h.column_masks())


def degree_profile(h: Bigraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Nondecreasing degree sequences of (A, B)."""

    a = sorted(r.bit_count() for r in h.rows)
    b = sorted(c.bit_count() for c in h.column_masks())
    return tuple(a), tuple(b)


def is_st(h: Bigraph, s: int, t: int) -> bool:
    """True when the part size is ``s`` and the minimum degree is >= ``t``."""

    if h.s != s:
        return False
    a, b = degree_profile(h)
    lo = min(a[0], b[0]) if s else 0
    return lo >= t


# ---------------------------------------------------------------------------
# Matching kernel over raw rows.
# ---------------------------------------------------------------------------


def _raw_max_matching(s: int, rows) -> list[int]:
    """Deterministic augmenting-path matching; returns match_of_a (-1 free).

    A-vertices are processed in index order, candidate B-vertices in
    ascending bit order, so the result is a pure function of the rows.
    """

    match_a = [-1] * s
    match_b = [-1] * s

    def augment(i: int, seen: int) -> tuple[bool, int]:
        m = rows[i] & ~seen
        # grab a free b first; only then recurse
        probe = m
        while probe:
            low = probe & -probe
            j = low.bit_length() - 1
            if match_b[j] < 0:
                match_a[i] = j
                match_b[j] = i
                return True, seen
            probe ^= low
        while m:
            low = m & -m
            j = low.bit_length() - 1
            m ^= low
            if seen >> j & 1:
                continue
            seen |= 1 << j
            ok, seen = augment(match_b[j], seen)
            if ok:
                match_a[i] = j
                match_b[j] = i
                return True, seen
        return False, seen

    for i in range(s):
        augment(i, 0)
    return match_a


def _raw_has_one_factor(s: int, rows) -> bool:
    for r in rows:
        if not r:
            return False
    return all(x >= 0 for x in _raw_max_matching(s, rows))


def max_matching(h: Bigraph) -> Matching:
    """Maximum-cardinality matching as a set of (a, b) index pairs."""

    match_a = _raw_max_matching(h.s, h.rows)
    return frozenset((i, j) for i, j in enumerate(match_a) if j >= 0)


def has_one_factor(h: Bigraph) -> bool:
    return _raw_has_one_factor(h.s, h.rows)


def _raw_hall_violator(s: int, rows) -> tuple[int, int] | None:
    """A maximum-cardinality Hall violator as (X mask, N(X) mask), or None.

    A largest violator is always of the form {a : N(a) is inside T} for some
    T (take T = N(X) of any violator X to get one at least as large), so the
    search runs over all T in ascending mask order.  Violators of maximum
    deficiency need not have maximum cardinality, so this is a genuine
    subset search, not an alternating-path computation; ties keep the first
    T, which makes the result deterministic.
    """

    if _raw_has_one_factor(s, rows):
        return None
    best: tuple[int, int] | None = None
    best_size = 0
    for t_mask in range(1 << s):
        x_mask = 0
        n_mask = 0
        for i in range(s):
            if rows[i] & ~t_mask == 0:
                x_mask |= 1 << i
                n_mask |= rows[i]
        size = x_mask.bit_count()
        if size > n_mask.bit_count() and size > best_size:
            best, best_size = (x_mask, n_mask), size
    return best


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def hall_violator(h: Bigraph) -> tuple[frozenset[int], frozenset[int]] | None:
    """None when a 1-factor exists; otherwise the maximal-cardinality
    violator X (subset of A) together with N(X)."""

    raw = _raw_hall_violator(h.s, h.rows)
    if raw is None:
        return None
    x_mask, n_mask = raw
    return _mask_to_set(x_mask), _mask_to_set(n_mask)


def one_factor_with(h: Bigraph, include: Matching = frozenset(), exclude=frozenset()) -> Matching | None:
    """A 1-factor containing every ``include`` pair and no ``exclude`` edge,
    or None when impossible.  ``include`` must be a matching of h.
    """

    used_a = used_b = 0
    for i, j in include:
        if not h.has_edge(i, j):
            raise ValueError(f"include pair {(i, j)} is not an edge")
        if used_a >> i & 1 or used_b >> j & 1:
            raise ValueError("include pairs are not a matching")
        used_a |= 1 << i
        used_b |= 1 << j
    excl = {tuple(e) for e in exclude}
    if any(tuple(e) in excl for e in include):
        return None
    rows = list(h.rows)
    for i, j in excl:
        rows[i] &= ~(1 << j)
    free_a = [i for i in range(h.s) if not used_a >> i & 1]
    sub_rows = []
    free_b = [j for j in range(h.s) if not used_b >> j & 1]
    b_pos = {j: p for p, j in enumerate(free_b)}
    for i in free_a:
        m = rows[i] & ~used_b
        packed = 0
        while m:
            low = m & -m
            packed |= 1 << b_pos[low.bit_length() - 1]
            m ^= low
        sub_rows.append(packed)
    k = len(free_a)
    if k == 0:
        return frozenset(include)
    match = _raw_max_matching(k, sub_rows)
    if any(j < 0 for j in match):
        return None
    pairs = set(include)
    for p, i in enumerate(free_a):
        pairs.add((i, free_b[match[p]]))
    return frozenset(pairs)


def iter_one_factors(h: Bigraph, exclude=frozenset()) -> Iterator[tuple[int, ...]]:
    """Yield 1-factors as tuples ``cols`` with ``cols[i]`` = the B-vertex
    matched to ``a_i``, in lexicographic order of that tuple."""

    excl_rows = list(h.rows)
    for i, j in exclude:
        excl_rows[i] &= ~(1 << j)
    s = h.s
    cols = [0] * s

    def rec(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if i == s:
            yield tuple(cols)
            return
        # cheap feasibility: every remaining row must still have options
        avail = ~used
        for r in range(i, s):
            if not excl_rows[r] & avail:
                return
        m = excl_rows[i] & avail
        while m:
            low = m & -m
            j = low.bit_length() - 1
            m ^= low
            cols[i] = j
            yield from rec(i + 1, used | low)

    yield from rec(0, 0)


def count_one_factors(h: Bigraph) -> int:
    """Exact number of 1-factors (the permanent of the biadjacency matrix),
    by dynamic programming over subsets of B."""

    s = h.s
    rows = h.rows
    size = 1 << s
    f = [0] * size
    f[0] = 1
    for mask in range(1, size):
        i = mask.bit_count() - 1
        m = rows[i] & mask
        acc = 0
        while m:
            low = m & -m
            acc += f[mask ^ low]
            m ^= low
        f[mask] = acc
    return f[size - 1]


# ---------------------------------------------------------------------------
# Allowed/forced edge analysis.
#
# Given one perfect matching, an edge lies in some 1-factor iff it is a
# matching edge or joins two vertices in the same strongly connected
# component of the digraph with non-matching edges directed A->B and
# matching edges directed B->A.  A matching edge can be avoided by some
# 1-factor under the same same-component condition.
# ---------------------------------------------------------------------------


def _raw_allowed_columns(s: int, rows, match_a) -> list[int]:
    """For each a_i, the bitmask of B-vertices j such that edge (i, j) lies
    in at least one 1-factor.  Requires a perfect matching ``match_a``."""

    # Condense to a digraph on A-vertices: i -> i' when a_i has a
    # non-matching edge into the b matched with a_i'.
    succ = [0] * s
    match_b = [0] * s
    for i, j in enumerate(match_a):
        match_b[j] = i
    for i in range(s):
        m = rows[i] & ~(1 << match_a[i])
        out = 0
        while m:
            low = m & -m
            out |= 1 << match_b[low.bit_length() - 1]
            m ^= low
        succ[i] = out

    comp = _scc(s, succ)
    allowed = [0] * s
    for i in range(s):
        mask = 1 << match_a[i]
        m = rows[i] & ~(1 << match_a[i])
        while m:
            low = m & -m
            j = low.bit_length() - 1
            m ^= low
            if comp[i] == comp[match_b[j]]:
                mask |= low
        allowed[i] = mask
    return allowed


def _scc(n: int, succ) -> list[int]:
    """Tarjan SCC over a successor-bitmask digraph; returns component ids."""

    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = 0
    comps = 0

    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, succ[root])]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, remaining = work[-1]
            if remaining:
                lowbit = remaining & -remaining
                work[-1] = (v, remaining ^ lowbit)
                w = lowbit.bit_length() - 1
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, succ[w]))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    pv = work[-1][0]
                    low[pv] = min(low[pv], low[v])
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = comps
                        if w == v:
                            break
                    comps += 1
    return comp


def allowed_edges(h: Bigraph) -> Matching | None:
    """All edges lying in at least one 1-factor, or None when h has none."""

    match_a = _raw_max_matching(h.s, h.rows)
    if any(j < 0 for j in match_a):
        return None
    allowed = _raw_allowed_columns(h.s, h.rows, match_a)
    out = set()
    for i, mask in enumerate(allowed):
        m = mask
        while m:
            low = m & -m
            out.add((i, low.bit_length() - 1))
            m ^= low
    return frozenset(out)


def removable_edges(h: Bigraph, m: Matching) -> Matching:
    """All e in the 1-factor ``m`` such that h - e still has a 1-factor."""

    pairs = sorted(m)
    if len(pairs) != h.s or {i for i, _ in pairs} != set(range(h.s)):
        raise ValueError("m is not a 1-factor of h")
    match_a = [0] * h.s
    for i, j in pairs:
        if not h.has_edge(i, j):
            raise ValueError(f"pair {(i, j)} is not an edge of h")
        match_a[i] = j
    succ = [0] * h.s
    match_b = [0] * h.s
    for i, j in enumerate(match_a):
        match_b[j] = i
    for i in range(h.s):
        mm = h.rows[i] & ~(1 << match_a[i])
        out = 0
        while mm:
            low = mm & -mm
            out |= 1 << match_b[low.bit_length() - 1]
            mm ^= low
        succ[i] = out
    comp = _scc(h.s, succ)
    # matching edge (i, match_a[i]) is avoidable iff i lies on a cycle of the
    # condensed digraph, i.e. shares a component with one of its successors.
    out_pairs = set()
    for i, j in enumerate(match_a):
        mm = succ[i]
        ok = False
        while mm:
            low = mm & -mm
            if comp[low.bit_length() - 1] == comp[i]:
                ok = True
                break
            mm ^= low
        if ok:
            out_pairs.add((i, j))
    return frozenset(out_pairs)


# ---------------------------------------------------------------------------
# Obstruction classification for part size 8.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Obstruction:
    """A Hall violator with its refined category.

    ``side`` records whether the violator was found among the rows ("A") or
    in the transpose ("B").  Categories follow the size/neighborhood shape:

    * type 1: |X| = 5 and |N(X)| = 3;
    * type 2: |X| = 4, |N(X)| = 3, and some outside vertex x1 adds exactly
      one new neighbor, reached by the single edge e1;
    * type 3: as type 2 but x1 adds exactly two new neighbors via e1, e2;
    * type 4: |X| = 4, |N(X)| = 3, with no earlier-category obstruction.
    """

    side: str
    x: frozenset[int]
    nbhd: frozenset[int]
    otype: int
    x1: int | None = None
    e1: tuple[int, int] | None = None
    e2: tuple[int, int] | None = None

    def as_json(self) -> dict:
        return {
            "side": self.side,
            "x": sorted(self.x),
            "nbhd": sorted(self.nbhd),
            "otype": self.otype,
            "x1": self.x1,
            "e1": list(self.e1) if self.e1 else None,
            "e2": list(self.e2) if self.e2 else None,
        }


def _neighborhood(rows, subset) -> int:
    n = 0
    for i in subset:
        n |= rows[i]
    return n


def _find_type(rows, otype: int) -> Obstruction | None:
    s = 8
    if otype == 1:
        for comb in combinations(range(s), 5):
            n = _neighborhood(rows, comb)
            if n.bit_count() == 3:
                return Obstruction("A", frozenset(comb), _mask_to_set(n), 1)
        return None
    for comb in combinations(range(s), 4):
        n = _neighborhood(rows, comb)
        if n.bit_count() != 3:
            continue
        if otype == 4:
            return Obstruction("A", frozenset(comb), _mask_to_set(n), 4)
        want = 1 if otype == 2 else 2
        inside = set(comb)
        for x1 in range(s):
            if x1 in inside:
                continue
            outside = rows[x1] & ~n
            if outside.bit_count() != want:
                continue
            bits = []
            m = outside
            while m:
                low = m & -m
                bits.append(low.bit_length() - 1)
                m ^= low
            e1 = (x1, bits[0])
            e2 = (x1, bits[1]) if otype == 3 else None
            return Obstruction("A", frozenset(comb), _mask_to_set(n), otype, x1, e1, e2)
    return None


def classify_obstruction(h: Bigraph) -> Obstruction | None:
    """Classify why an 8x8 bigraph has no 1-factor.

    Searches categories in order 1, 2, 3, 4, each on the rows first and then
    on the transpose, using lexicographic subset order throughout; the first
    hit is returned.  None when a 1-factor exists.  Inputs with minimum
    degree below 3 may admit no category; that raises ValueError.
    """

    if h.s != 8:
        raise ValueError("classification is specific to part size 8")
    if has_one_factor(h):
        return None
    sides = (("A", h.rows), ("B", Bigraph(8, h.column_masks()).rows))
    for otype in (1, 2, 3, 4):
        for side, rows in sides:
            found = _find_type(rows, otype)
            if found is not None:
                if side == "B":
                    found = Obstruction("B", found.x, found.nbhd, found.otype, found.x1, found.e1, found.e2)
                return found
    raise ValueError("no typed obstruction: input is not a (8,3)-bigraph")


# ---------------------------------------------------------------------------
# JSON wire format.
# ---------------------------------------------------------------------------


def bigraph_to_json(h: Bigraph) -> dict:
    return {"s": h.s, "rows": list(h.rows)}


def bigraph_from_json(obj: dict) -> Bigraph:
    try:
        s = int(obj["s"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed bigraph JSON: {exc}") from exc
    if "rows" in obj:
        return Bigraph(s, tuple(int(r) for r in obj["rows"]))
    if "edges" in obj:
        return bigraph_from_edges(s, [(int(i), int(j)) for i, j in obj["edges"]])
    raise ValueError("bigraph JSON needs 'rows' or 'edges'")
