"""Seeded verification of the standalone matching facts this package is
built on, by exhaustive or randomized search over bigraph instances.

Every verifier is registered by name in :data:`REGISTRY` and run through
:func:`verify`, which returns a :class:`VerifierReport`.  Randomized trials
are pure functions of (lemma name, seed, trial index); exhaustive runs
iterate a documented canonical enumeration (all labeled 4x4 bit-matrices,
filtered to the precondition).  Counterexamples are shrunk by greedy
precondition-preserving edge removal before they are reported.  A lemma
verifier reporting a counterexample is a release-blocking event; the
uniqueness observations about typed obstructions are weaker lore and are
surfaced as warnings instead.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterator

from listpacking.bigraph import (
    Bigraph,
    allowed_edges,
    bigraph_to_json,
    classify_obstruction,
    has_one_factor,
    max_matching,
    removable_edges,
    _raw_has_one_factor,
)
from listpacking.covers import CorrespondenceCover, Perm
from listpacking.graphs import graph_from_edges
from listpacking.solver import solve_packing

_SEED_STRIDE = 1_000_003


@dataclass
class VerifierReport:
    lemma: str
    strategy: str
    instances_checked: int
    counterexamples: list[dict]
    warnings: list[str]
    seed: int
    elapsed: float

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def as_json(self, with_elapsed: bool = False) -> dict:
        out = {
            "lemma": self.lemma,
            "strategy": self.strategy,
            "instances_checked": self.instances_checked,
            "counterexamples": self.counterexamples,
            "warnings": self.warnings,
            "seed": self.seed,
        }
        if with_elapsed:
            out["elapsed"] = self.elapsed
        return out


@dataclass
class StructuredInstance:
    """A bigraph together with the planted decorations tests key on."""

    h: Bigraph
    decorations: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Instance generation.
# ---------------------------------------------------------------------------


def _repair_min_degree(rng: random.Random, s: int, rows: list[int], t: int) -> list[int]:
    for i in range(s):
        while rows[i].bit_count() < t:
            rows[i] |= 1 << rng.randrange(s)
    while True:
        cols = [0] * s
        for i in range(s):
            m = rows[i]
            while m:
                low = m & -m
                cols[low.bit_length() - 1] |= 1 << i
                m ^= low
        weak = [j for j in range(s) if cols[j].bit_count() < t]
        if not weak:
            return rows
        for j in weak:
            rows[rng.randrange(s)] |= 1 << j


def random_st_bigraph(rng: random.Random, s: int, t: int, p: float = 0.45) -> Bigraph:
    rows = [sum(1 << j for j in range(s) if rng.random() < p) for _ in range(s)]
    return Bigraph(s, tuple(_repair_min_degree(rng, s, rows, t)))


def _mask_of(items) -> int:
    m = 0
    for x in items:
        m |= 1 << x
    return m


def planted_obstruction(rng: random.Random, otype: int) -> StructuredInstance:
    """An (8,3)-bigraph whose only typed obstruction is the planted one.

    Follows the canonical shapes: X rows see exactly N(X) (three columns);
    remaining rows cover the complement; the type 2/3 witness row reaches
    one/two columns outside N(X).  Random extra edges are added only where
    they cannot disturb the classification.
    """

    s = 8
    a_perm = rng.sample(range(s), s)
    b_perm = rng.sample(range(s), s)
    x_size = 5 if otype == 1 else 4
    x = a_perm[:x_size]
    nbhd = b_perm[:3]
    n_mask = _mask_of(nbhd)
    rows = [0] * s
    for i in x:
        rows[i] = n_mask
    rest = a_perm[x_size:]
    outside = [j for j in b_perm if j not in nbhd]
    deco: dict = {"x": sorted(x), "nbhd": sorted(nbhd), "otype": otype}

    if otype == 1 or otype == 4:
        for i in rest:
            rows[i] = _mask_of(outside)
    elif otype == 2:
        x1, others = rest[0], rest[1:]
        e1_col = outside[0]
        rows[x1] = _mask_of(rng.sample(nbhd, rng.choice((2, 3)))) | 1 << e1_col
        far = [j for j in outside if j != e1_col]
        for i in others:
            rows[i] = _mask_of(far)
        for i in rng.sample(others, 2):
            rows[i] |= 1 << e1_col
        deco.update(x1=x1, e1=(x1, e1_col))
    else:  # otype == 3
        x1, others = rest[0], rest[1:]
        e_cols = outside[:2]
        rows[x1] = _mask_of(rng.sample(nbhd, rng.choice((1, 2, 3)))) | _mask_of(e_cols)
        for i in others:
            rows[i] = _mask_of(outside)
        deco.update(x1=x1, e1=(x1, e_cols[0]), e2=(x1, e_cols[1]))

    # harmless extras: non-configuration rows may also reach into N(X)
    for i in rest if otype in (1, 4) else rest[1:]:
        for j in nbhd:
            if rng.random() < 0.3:
                rows[i] |= 1 << j
    return StructuredInstance(Bigraph(s, tuple(rows)), deco)


def build_structured(kind: str, seed: int) -> StructuredInstance:
    """Seeded structured instances for the harder matching facts.

    Kinds: ``cycle10_plus_M5`` and ``cycle6_4_plus_M5`` build (8,4)-bigraphs
    decorated with the planted cycles (10 vertices) and a size-5 matching;
    ``violator_type_t`` (t in 1..4) plants the typed obstruction;
    ``switcher_double_instance`` plants the deficiency-2 shape used by the
    two-matching exchange fact (k = 4).
    """

    rng = random.Random(seed)
    if kind.startswith("violator_type_"):
        return planted_obstruction(rng, int(kind.rsplit("_", 1)[1]))
    if kind == "switcher_double_instance":
        return _switcher_double_plant(rng, 4)
    if kind == "cycle10_plus_M5":
        return _planted_cycles(rng, (10,))
    if kind == "cycle6_4_plus_M5":
        return _planted_cycles(rng, (6, 4))
    raise ValueError(f"unknown structured kind {kind!r}")


def _planted_cycles(rng: random.Random, lengths: tuple[int, ...]) -> StructuredInstance:
    s = 8
    total = sum(lengths) // 2
    xs = rng.sample(range(s), total)
    ys = rng.sample(range(s), total)
    rows = [0] * s
    cycles = []
    pos = 0
    for length in lengths:
        half = length // 2
        cx = xs[pos : pos + half]
        cy = ys[pos : pos + half]
        pos += half
        cyc = []
        for i in range(half):
            rows[cx[i]] |= 1 << cy[i]
            rows[cx[(i + 1) % half]] |= 1 << cy[i]
            cyc.extend([("a", cx[i]), ("b", cy[i])])
        cycles.append(cyc)
    m_a = rng.sample(range(s), 5)
    m_b = rng.sample(range(s), 5)
    matching = list(zip(m_a, m_b))
    for i, j in matching:
        rows[i] |= 1 << j
    rows = _repair_min_degree(rng, s, rows, 4)
    return StructuredInstance(
        Bigraph(s, tuple(rows)), {"cycles": cycles, "matching": matching}
    )


def _switcher_double_plant(rng: random.Random, k: int) -> StructuredInstance:
    s = 2 * k
    a_perm = rng.sample(range(s), s)
    b_perm = rng.sample(range(s), s)
    x = a_perm[: k + 1]
    nbhd = b_perm[: k - 1]
    rows = [0] * s
    for i in x:
        rows[i] = _mask_of(nbhd)
    outside = [j for j in b_perm if j not in nbhd]
    for i in a_perm[k + 1 :]:
        rows[i] = _mask_of(outside)
    tilde = []
    if rng.random() < 0.5:
        e = (rng.choice(x), rng.choice(outside))
        rows[e[0]] |= 1 << e[1]
        tilde.append(e)
    return StructuredInstance(
        Bigraph(s, tuple(rows)),
        {"x": sorted(x), "nbhd": sorted(nbhd), "tilde": tilde, "k": k},
    )


# ---------------------------------------------------------------------------
# Shrinking.
# ---------------------------------------------------------------------------


def shrink_bigraph(
    h: Bigraph,
    precondition: Callable[[Bigraph], bool],
    still_fails: Callable[[Bigraph], bool],
) -> Bigraph:
    """Greedy edge removal to a local minimum that keeps the precondition
    and keeps the property failing."""

    changed = True
    while changed:
        changed = False
        for i, j in h.edges():
            rows = list(h.rows)
            rows[i] &= ~(1 << j)
            cand = Bigraph(h.s, tuple(rows))
            if precondition(cand) and still_fails(cand):
                h = cand
                changed = True
                break
    return h


def _is_st_rows(h: Bigraph, t: int) -> bool:
    cols = h.column_masks()
    return all(r.bit_count() >= t for r in h.rows) and all(c.bit_count() >= t for c in cols)


def _counterexample(h: Bigraph, note: str, precondition, still_fails) -> dict:
    shrunk = shrink_bigraph(h, precondition, still_fails)
    return {"note": note, "instance": bigraph_to_json(h), "shrunk": bigraph_to_json(shrunk)}


# ---------------------------------------------------------------------------
# The individual verifiers.  Each trial returns (ok, failure dict | None,
# warning | None).
# ---------------------------------------------------------------------------

TrialResult = tuple[bool, dict | None, str | None]


def _iter_4x4(t: int) -> Iterator[Bigraph]:
    """All labeled 4x4 bit-matrices with minimum degree >= t on both parts."""

    pop = [bin(x).count("1") for x in range(16)]
    for code in range(1 << 16):
        r0 = code & 15
        r1 = code >> 4 & 15
        r2 = code >> 8 & 15
        r3 = code >> 12 & 15
        if min(pop[r0], pop[r1], pop[r2], pop[r3]) < t:
            continue
        c_ok = True
        for j in range(4):
            bit = 1 << j
            col = (1 if r0 & bit else 0) + (1 if r1 & bit else 0) + (1 if r2 & bit else 0) + (1 if r3 & bit else 0)
            if col < t:
                c_ok = False
                break
        if not c_ok:
            continue
        yield Bigraph(4, (r0, r1, r2, r3))


def _trial_easy_prop(rng: random.Random) -> TrialResult:
    t = rng.choice((3, 4))
    h = random_st_bigraph(rng, 2 * t, t)
    if not has_one_factor(h):
        pre = lambda b: _is_st_rows(b, t)
        return False, _counterexample(h, f"(2t,t)-bigraph t={t} without 1-factor", pre, lambda b: not has_one_factor(b)), None
    # violator size bounds on a looser instance
    s, t2 = rng.choice(((5, 2), (6, 2), (7, 3), (8, 3)))
    h2 = random_st_bigraph(rng, s, t2, p=0.3)
    for size in range(1, s + 1):
        if t2 + 1 <= size <= s - t2:
            continue
        for comb in combinations(range(s), size):
            n = 0
            for i in comb:
                n |= h2.rows[i]
            if n.bit_count() < size:
                pre = lambda b: _is_st_rows(b, t2)
                return False, _counterexample(h2, f"violator of size {size} outside bounds in ({s},{t2})-bigraph", pre, lambda b: False), None
    return True, None, None


def _exhaustive_easy_prop() -> Iterator[TrialResult]:
    for h in _iter_4x4(2):
        if has_one_factor(h):
            yield True, None, None
        else:
            pre = lambda b: _is_st_rows(b, 2)
            yield False, _counterexample(h, "(4,2)-bigraph without 1-factor", pre, lambda b: not has_one_factor(b)), None


def _trial_matching_lem_1(rng: random.Random) -> TrialResult:
    k = rng.choice((2, 3))
    h = random_st_bigraph(rng, 2 * k + 1, k + 1)
    allowed = allowed_edges(h)
    if allowed is None:
        return False, _counterexample(h, f"(2k+1,k+1)-bigraph k={k} without 1-factor", lambda b: _is_st_rows(b, k + 1), lambda b: not has_one_factor(b)), None
    if allowed != frozenset(h.edges()):
        missing = sorted(set(h.edges()) - allowed)
        return (
            False,
            _counterexample(
                h,
                f"edges in no 1-factor: {missing}",
                lambda b: _is_st_rows(b, k + 1),
                lambda b: (allowed_edges(b) or frozenset()) != frozenset(b.edges()),
            ),
            None,
        )
    return True, None, None


def _plant_no_factor(rng: random.Random, k: int) -> Bigraph:
    """A (2k+1,k)-bigraph with no 1-factor: a (k+1)-by-(k+1) empty block."""

    s = 2 * k + 1
    a_perm = rng.sample(range(s), s)
    b_perm = rng.sample(range(s), s)
    x = a_perm[: k + 1]
    y = b_perm[: k + 1]
    x_mask, y_mask = _mask_of(x), _mask_of(y)
    full = (1 << s) - 1
    rows = [0] * s
    for i in x:
        rows[i] = full & ~y_mask
    for i in a_perm[k + 1 :]:
        rows[i] = y_mask | sum(1 << j for j in b_perm[k + 1 :] if rng.random() < 0.5)
    return Bigraph(s, tuple(rows))


def _trial_matching_lem_2(rng: random.Random) -> TrialResult:
    k = rng.choice((2, 3))
    s = 2 * k + 1
    h = _plant_no_factor(rng, k)
    if has_one_factor(h):
        return False, {"note": "planted instance unexpectedly has a 1-factor", "instance": bigraph_to_json(h)}, None
    # exhaustive witness search for the complete-bipartite split
    splits = []
    for comb in combinations(range(s), k + 1):
        n = 0
        for i in comb:
            n |= h.rows[i]
        if n.bit_count() <= k:
            splits.append((comb, n))
    ok = len(splits) == 1
    if ok:
        comb, n = splits[0]
        y_mask = ((1 << s) - 1) & ~n
        ok = y_mask.bit_count() == k + 1
        # X complete to B minus Y, Y complete to A minus X
        for i in comb:
            ok = ok and h.rows[i] == n
        cols = h.column_masks()
        x_mask = _mask_of(comb)
        mm = y_mask
        while mm and ok:
            low = mm & -mm
            ok = cols[low.bit_length() - 1] == ((1 << s) - 1) & ~x_mask
            mm ^= low
    if not ok:
        return (
            False,
            {"note": f"split structure violated (found {len(splits)} candidate splits)", "instance": bigraph_to_json(h)},
            None,
        )
    return True, None, None


def _trial_one_gives_two(rng: random.Random) -> TrialResult:
    k = rng.choice((2, 3))
    for _ in range(50):
        h = random_st_bigraph(rng, 2 * k + 1, k)
        if has_one_factor(h):
            break
    else:
        return True, None, "generator never produced a 1-factor instance"
    allowed = allowed_edges(h)
    assert allowed is not None
    per_vertex = [0] * h.s
    for i, _ in allowed:
        per_vertex[i] += 1
    exceptional = sum(1 for c in per_vertex if c < 2)
    if exceptional > 1:
        return (
            False,
            _counterexample(
                h,
                f"{exceptional} A-vertices lack two usable incident edges",
                lambda b: _is_st_rows(b, k) and has_one_factor(b),
                lambda b: sum(1 for i in range(b.s) if sum(1 for e in (allowed_edges(b) or ()) if e[0] == i) < 2) > 1,
            ),
            None,
        )
    return True, None, None


def _exhaustive_canalwaysswap() -> Iterator[TrialResult]:
    for h in _iter_4x4(2):
        allowed = allowed_edges(h)
        if allowed is None:
            yield False, _counterexample(h, "(4,2)-bigraph without 1-factor", lambda b: _is_st_rows(b, 2), lambda b: not has_one_factor(b)), None
            continue
        count_a = [0] * 4
        count_b = [0] * 4
        for i, j in allowed:
            count_a[i] += 1
            count_b[j] += 1
        if min(min(count_a), min(count_b)) < 2:
            yield (
                False,
                _counterexample(
                    h,
                    "vertex with fewer than two usable incident edges",
                    lambda b: _is_st_rows(b, 2),
                    lambda b: (lambda al: al is None or min(
                        min(sum(1 for e in al if e[0] == v) for v in range(4)),
                        min(sum(1 for e in al if e[1] == v) for v in range(4)),
                    ) < 2)(allowed_edges(b)),
                ),
                None,
            )
        else:
            yield True, None, None


def _trial_canalwaysswap(rng: random.Random) -> TrialResult:
    h = random_st_bigraph(rng, 4, 2)
    allowed = allowed_edges(h)
    if allowed is None:
        return False, {"note": "(4,2)-bigraph without 1-factor", "instance": bigraph_to_json(h)}, None
    count_a = [0] * 4
    count_b = [0] * 4
    for i, j in allowed:
        count_a[i] += 1
        count_b[j] += 1
    ok = min(min(count_a), min(count_b)) >= 2
    return ok, None if ok else {"note": "vertex below two usable edges", "instance": bigraph_to_json(h)}, None


def _girth5_exception(h: Bigraph) -> bool:
    """Two degree-1 vertices in one part that share their only neighbor."""

    for side in (h.rows, h.column_masks()):
        seen = set()
        for m in side:
            if m.bit_count() == 1:
                if m in seen:
                    return True
                seen.add(m)
    return False


def _exhaustive_girth5_condition() -> Iterator[TrialResult]:
    for h in _iter_4x4(1):
        if _girth5_exception(h) or has_one_factor(h):
            yield True, None, None
        else:
            yield (
                False,
                _counterexample(
                    h,
                    "no 1-factor and no shared-degree-1 pair",
                    lambda b: _is_st_rows(b, 1),
                    lambda b: not _girth5_exception(b) and not has_one_factor(b),
                ),
                None,
            )


def _trial_girth5_condition(rng: random.Random) -> TrialResult:
    h = random_st_bigraph(rng, 4, 1, p=0.35)
    ok = _girth5_exception(h) or has_one_factor(h)
    return ok, None if ok else {"note": "no 1-factor and no shared-degree-1 pair", "instance": bigraph_to_json(h)}, None


def _second_same_type(h: Bigraph, obs) -> bool:
    """Is there a second same-type obstruction with a different vertex set?"""

    rows = h.rows if obs.side == "A" else h.column_masks()
    size = 5 if obs.otype == 1 else 4
    for comb in combinations(range(8), size):
        if frozenset(comb) == obs.x:
            continue
        n = 0
        for i in comb:
            n |= rows[i]
        if n.bit_count() != 3:
            continue
        if obs.otype == 1 and size == 5:
            return True
        if obs.otype == 4:
            return True
        want = 1 if obs.otype == 2 else 2
        for x1 in range(8):
            if x1 in comb:
                continue
            if (rows[x1] & ~n).bit_count() == want:
                return True
    return False


def _trial_type_prop(rng: random.Random) -> TrialResult:
    otype = rng.randrange(1, 5)
    inst = planted_obstruction(rng, otype)
    h = inst.h if rng.random() < 0.5 else Bigraph(8, inst.h.column_masks())
    if has_one_factor(h):
        return False, {"note": "planted no-factor instance has a 1-factor", "instance": bigraph_to_json(h)}, None
    try:
        obs = classify_obstruction(h)
    except ValueError as exc:
        return False, {"note": f"classification failed: {exc}", "instance": bigraph_to_json(h)}, None
    assert obs is not None
    rows = h.rows if obs.side == "A" else h.column_masks()
    n = 0
    for i in obs.x:
        n |= rows[i]
    sizes_ok = (len(obs.x), n.bit_count()) == ((5, 3) if obs.otype == 1 else (4, 3))
    if not sizes_ok or frozenset(_bits(n)) != obs.nbhd:
        return False, {"note": "classified obstruction fails its own cardinalities", "instance": bigraph_to_json(h), "obstruction": obs.as_json()}, None
    if obs.otype in (2, 3):
        want = 1 if obs.otype == 2 else 2
        if obs.x1 is None or (rows[obs.x1] & ~n).bit_count() != want:
            return False, {"note": "typed witness vertex fails its degree condition", "instance": bigraph_to_json(h), "obstruction": obs.as_json()}, None
    if obs.otype in (1, 2):
        flipped = Bigraph(8, h.column_masks())
        try:
            obs2 = classify_obstruction(flipped)
        except ValueError:
            obs2 = None
        if obs2 is None or obs2.otype != obs.otype:
            return False, {"note": "type 1/2 not mirrored in the transpose", "instance": bigraph_to_json(h)}, None
    warning = None
    if _second_same_type(h, obs):
        warning = f"second type-{obs.otype} obstruction present (uniqueness lore violated)"
    return True, None, warning


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _profile_positions(h: Bigraph) -> tuple[list[int], list[int]]:
    a_sorted = sorted(range(8), key=lambda i: (h.rows[i].bit_count(), i))
    cols = h.column_masks()
    b_sorted = sorted(range(8), key=lambda j: (cols[j].bit_count(), j))
    return a_sorted, b_sorted


def _meets_profile(h: Bigraph, mins: tuple[int, ...]) -> bool:
    a, b = (sorted(r.bit_count() for r in h.rows), sorted(c.bit_count() for c in h.column_masks()))
    return all(x >= m for x, m in zip(a, mins)) and all(x >= m for x, m in zip(b, mins))


def _tight_block(h: Bigraph) -> bool:
    """Do the four lowest-degree vertices of one part see only 3 vertices?"""

    a_sorted, b_sorted = _profile_positions(h)
    n_a = 0
    for i in a_sorted[:4]:
        n_a |= h.rows[i]
    cols = h.column_masks()
    n_b = 0
    for j in b_sorted[:4]:
        n_b |= cols[j]
    return n_a.bit_count() == 3 or n_b.bit_count() == 3


def _trial_matching_inc(rng: random.Random) -> TrialResult:
    mins_weak = (1, 2, 3, 3, 4, 4, 4, 4)
    mins_strong = (1, 2, 3, 4, 4, 4, 4, 4)
    if rng.random() < 0.5:
        # near-threshold: four A-rows confined to three columns
        h = planted_obstruction(rng, 4).h
    else:
        rows = list(random_st_bigraph(rng, 8, 1, p=0.5).rows)
        for i in range(8):
            while rows[i].bit_count() < rng.choice((3, 4)):
                rows[i] |= 1 << rng.randrange(8)
        h = Bigraph(8, tuple(rows))
    if not _meets_profile(h, mins_weak):
        return True, None, None  # generator missed the precondition; skip
    if has_one_factor(h):
        return True, None, None
    if not _tight_block(h):
        return (
            False,
            _counterexample(
                h,
                "degree profile met, no 1-factor, and no tight low-degree block",
                lambda b: _meets_profile(b, mins_weak),
                lambda b: not has_one_factor(b) and not _tight_block(b),
            ),
            None,
        )
    if _meets_profile(h, mins_strong):
        return False, {"note": "strong degree profile without 1-factor", "instance": bigraph_to_json(h)}, None
    return True, None, None


def _random_matching(rng: random.Random, s: int, size: int) -> list[tuple[int, int]]:
    return list(zip(rng.sample(range(s), size), rng.sample(range(s), size)))


def _apply_matchings(h: Bigraph, add, remove) -> Bigraph:
    rows = list(h.rows)
    for i, j in add:
        rows[i] |= 1 << j
    for i, j in remove:
        rows[i] &= ~(1 << j)
    return Bigraph(h.s, tuple(rows))


def _switcher_trial(rng: random.Random, otype: int) -> TrialResult:
    inst = planted_obstruction(rng, otype)
    h = inst.h
    deco = inst.decorations
    x = deco["x"]
    nbhd = set(deco["nbhd"])
    outside = [j for j in range(8) if j not in nbhd]
    sources = list(x) + ([deco["x1"]] if otype in (2, 3) else [])
    need = 1 if otype == 4 else 2
    src = rng.sample(sources, need)
    dst = rng.sample(outside, need)
    required = list(zip(src, dst))
    for attempt in range(60):
        extra_add = [p for p in _random_matching(rng, 8, rng.randrange(0, 3)) if p[0] not in src and p[1] not in dst]
        add = required + extra_add
        remove = [p for p in _random_matching(rng, 8, rng.randrange(0, 9)) if p not in add]
        h2 = _apply_matchings(h, add, remove)
        if _is_st_rows(h2, 3):
            break
    else:
        h2 = _apply_matchings(h, required, [])
        if not _is_st_rows(h2, 3):
            return True, None, "could not build a min-degree-3 exchanged instance"
    if not has_one_factor(h2):
        return (
            False,
            {
                "note": f"type-{otype} exchange left no 1-factor",
                "instance": bigraph_to_json(h),
                "exchanged": bigraph_to_json(h2),
                "required": [list(p) for p in required],
            },
            None,
        )
    return True, None, None


def _trial_switcher_simple(rng: random.Random) -> TrialResult:
    for _ in range(50):
        h = random_st_bigraph(rng, 8, 3, p=0.4)
        if has_one_factor(h):
            break
    else:
        return True, None, "generator never produced a 1-factor instance"
    m = max_matching(h)
    rem = removable_edges(h, m)
    if len(rem) < 6:
        return (
            False,
            _counterexample(
                h,
                f"only {len(rem)} removable 1-factor edges",
                lambda b: _is_st_rows(b, 3) and has_one_factor(b),
                lambda b: has_one_factor(b) and len(removable_edges(b, max_matching(b))) < 6,
            ),
            None,
        )
    return True, None, None


def _trial_switcher_double(rng: random.Random, k: int) -> TrialResult:
    inst = _switcher_double_plant(rng, k)
    h = inst.h
    s = 2 * k
    x = inst.decorations["x"]
    tilde = inst.decorations["tilde"]
    # targets live in B minus the neighborhood taken without the tilde edge
    h_minus = _apply_matchings(h, [], tilde)
    n_mask = 0
    for i in x:
        n_mask |= h_minus.rows[i]
    targets = [j for j in range(s) if not n_mask >> j & 1]
    src = rng.sample(x, 2)
    dst = rng.sample(targets, 2)
    required = list(zip(src, dst))
    for attempt in range(60):
        a1 = required[:1] + [p for p in _random_matching(rng, s, rng.randrange(0, k)) if p[0] != required[0][0] and p[1] != required[0][1]]
        a2 = required[1:] + [p for p in _random_matching(rng, s, rng.randrange(0, k)) if p[0] != required[1][0] and p[1] != required[1][1]]
        r1 = [p for p in _random_matching(rng, s, rng.randrange(0, s)) if p not in a1 and p not in a2]
        r2 = [p for p in _random_matching(rng, s, rng.randrange(0, s)) if p not in a1 and p not in a2]
        h2 = _apply_matchings(_apply_matchings(h, a1, r1), a2, r2)
        if _is_st_rows(h2, k - 1):
            break
    else:
        h2 = _apply_matchings(h, required, [])
        if not _is_st_rows(h2, k - 1):
            return True, None, "could not build a min-degree exchanged instance"
    if not has_one_factor(h2):
        return (
            False,
            {
                "note": f"two-matching exchange (k={k}) left no 1-factor",
                "instance": bigraph_to_json(h),
                "exchanged": bigraph_to_json(h2),
                "required": [list(p) for p in required],
            },
            None,
        )
    return True, None, None


def _cycle_p3s(cycle: list[tuple[str, int]]) -> list[list[tuple[str, int]]]:
    n = len(cycle)
    return [[cycle[i], cycle[(i + 1) % n], cycle[(i + 2) % n]] for i in range(n)]


def _p3_edges(p3) -> list[tuple[int, int]]:
    out = []
    for (sa, va), (sb, vb) in zip(p3, p3[1:]):
        out.append((va, vb) if sa == "a" else (vb, va))
    return out


def _cycle_edges(cycle: list[tuple[str, int]]) -> list[tuple[int, int]]:
    n = len(cycle)
    out = []
    for i in range(n):
        (sa, va), (sb, vb) = cycle[i], cycle[(i + 1) % n]
        out.append((va, vb) if sa == "a" else (vb, va))
    return out


def _trial_key1factor(rng: random.Random, kind: str) -> TrialResult:
    inst = _planted_cycles(rng, (10,) if kind == "cycle10_plus_M5" else (6, 4))
    h = inst.h
    matching = inst.decorations["matching"]
    p3s: list[list[tuple[str, int]]] = []
    for cyc in inst.decorations["cycles"]:
        p3s.extend(_cycle_p3s(cyc))
    # candidate path pairs: vertex-disjoint, plus a planted 4-cycle as a
    # whole (its edges split into two edge-disjoint 2-edge paths)
    candidates: list[list[tuple[int, int]]] = []
    for p, q in combinations(p3s, 2):
        if not (set(p) & set(q)):
            candidates.append(_p3_edges(p) + _p3_edges(q))
    for cyc in inst.decorations["cycles"]:
        if len(cyc) == 4:
            candidates.append(_cycle_edges(cyc))
    for base in candidates:
        for e1, e2 in combinations(matching, 2):
            rows = list(h.rows)
            for i, j in base + [e1, e2]:
                rows[i] &= ~(1 << j)
            if _raw_has_one_factor(8, rows):
                return True, None, None
    return (
        False,
        {
            "note": f"no path-pair plus matching-pair leaves a 1-factor ({kind})",
            "instance": bigraph_to_json(h),
            "decorations": {k: str(v) for k, v in inst.decorations.items()},
        },
        None,
    )


def _trial_k_kplus1(rng: random.Random) -> TrialResult:
    k = 3
    cover_k = 2 * k - 1
    for _ in range(200):
        n = rng.randrange(5, 8)
        edges = {tuple(sorted(e)) for e in combinations(range(n), 2) if rng.random() < 0.5}
        g = graph_from_edges(n, edges)
        deg = g.degrees()
        pick = None
        for u, v in g.sorted_edges():
            if deg[u] == k and deg[v] <= k + 1:
                pick = (u, v)
                break
            if deg[v] == k and deg[u] <= k + 1:
                pick = (v, u)
                break
        if pick:
            break
    else:
        return True, None, "no qualifying edge found"
    v = pick[0]
    perms = [Perm(tuple(rng.sample(range(cover_k), cover_k))) for _ in g.sorted_edges()]
    arcs = dict(zip(g.sorted_edges(), perms))
    cover = CorrespondenceCover(g, cover_k, arcs)
    reduced_graph = graph_from_edges(g.n, [e for e in g.edges if v not in e])
    reduced = CorrespondenceCover(
        reduced_graph, cover_k, {e: p for e, p in arcs.items() if v not in e}
    )
    if solve_packing(reduced) is None:
        return True, None, None  # hypothesis unmet: G - v does not pack
    if solve_packing(cover) is None:
        return (
            False,
            {
                "note": "G-v packs but G does not, despite the light edge",
                "n": g.n,
                "edges": [list(e) for e in g.sorted_edges()],
                "edge": list(pick),
            },
            None,
        )
    return True, None, None


# ---------------------------------------------------------------------------
# Registry and runner.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LemmaSpec:
    name: str
    trial: Callable[[random.Random], TrialResult] | None
    exhaustive: Callable[[], Iterator[TrialResult]] | None
    default_trials: int


REGISTRY: dict[str, LemmaSpec] = {
    spec.name: spec
    for spec in [
        LemmaSpec("easy_prop", _trial_easy_prop, _exhaustive_easy_prop, 100_000),
        LemmaSpec("matching_lem_1", _trial_matching_lem_1, None, 100_000),
        LemmaSpec("matching_lem_2", _trial_matching_lem_2, None, 100_000),
        LemmaSpec("one_gives_two", _trial_one_gives_two, None, 100_000),
        LemmaSpec("canalwaysswap", _trial_canalwaysswap, _exhaustive_canalwaysswap, 100_000),
        LemmaSpec("girth5_condition", _trial_girth5_condition, _exhaustive_girth5_condition, 100_000),
        LemmaSpec("type_prop", _trial_type_prop, None, 100_000),
        LemmaSpec("matching_inc", _trial_matching_inc, None, 100_000),
        LemmaSpec("switcher_general_type1", lambda rng: _switcher_trial(rng, 1), None, 100_000),
        LemmaSpec("switcher_general_type2", lambda rng: _switcher_trial(rng, 2), None, 100_000),
        LemmaSpec("switcher_general_type3", lambda rng: _switcher_trial(rng, 3), None, 100_000),
        LemmaSpec("switcher_general_type4", lambda rng: _switcher_trial(rng, 4), None, 100_000),
        LemmaSpec("switcher_simple", _trial_switcher_simple, None, 100_000),
        LemmaSpec("switcher_double_k4", lambda rng: _trial_switcher_double(rng, 4), None, 100_000),
        LemmaSpec("switcher_double_k5", lambda rng: _trial_switcher_double(rng, 5), None, 100_000),
        LemmaSpec("key1factor", lambda rng: _trial_key1factor(rng, "cycle10_plus_M5"), None, 100_000),
        LemmaSpec("key1factorB", lambda rng: _trial_key1factor(rng, "cycle6_4_plus_M5"), None, 100_000),
        LemmaSpec("k_kplus1", _trial_k_kplus1, None, 300),
    ]
}


def verify(
    name: str,
    trials: int | None = None,
    seed: int = 0,
    exhaustive: bool = False,
    max_counterexamples: int = 5,
) -> VerifierReport:
    """Run one registered verifier and report.

    Randomized runs draw each trial from ``Random(seed * stride + index)``,
    so reports are reproducible and trials are independent of each other.
    """

    spec = REGISTRY.get(name)
    if spec is None:
        raise ValueError(f"unknown lemma {name!r}; known: {', '.join(sorted(REGISTRY))}")
    start = time.perf_counter()
    counterexamples: list[dict] = []
    warnings: list[str] = []
    checked = 0
    if exhaustive:
        if spec.exhaustive is None:
            raise ValueError(f"lemma {name!r} has no exhaustive enumeration")
        for ok, failure, warning in spec.exhaustive():
            checked += 1
            if warning and warning not in warnings:
                warnings.append(warning)
            if not ok and failure is not None and len(counterexamples) < max_counterexamples:
                counterexamples.append(failure)
        strategy = "exhaustive"
    else:
        if spec.trial is None:
            raise ValueError(f"lemma {name!r} is exhaustive-only")
        n = trials if trials is not None else spec.default_trials
        for i in range(n):
            rng = random.Random(seed * _SEED_STRIDE + i)
            ok, failure, warning = spec.trial(rng)
            checked += 1
            if warning and warning not in warnings:
                warnings.append(warning)
            if not ok and failure is not None and len(counterexamples) < max_counterexamples:
                failure = dict(failure, trial=i)
                counterexamples.append(failure)
        strategy = f"randomized(trials={n})"
    return VerifierReport(
        lemma=name,
        strategy=strategy,
        instances_checked=checked,
        counterexamples=counterexamples,
        warnings=warnings,
        seed=seed,
        elapsed=time.perf_counter() - start,
    )
