"""Charge ledgers and local discharging rules, with exact rational
arithmetic throughout.

A rule is a list of clauses ``(recipient predicate, donor predicate,
amount)`` over vertex degrees.  Auditing a graph gives every vertex an
initial charge equal to its degree and applies one transfer per (edge,
matching clause, direction).  Three preset rules ship with the package:

* ``P4``:    every 3-vertex takes 1/3 from each neighbor;
* ``P5``:    every 3-vertex takes 1/6 from each neighbor of degree >= 4;
* ``openB``: every 3-vertex takes 1/4 from each neighbor (the k = 3 case of
  the degree-k rule, available via :func:`degree_k_rule`).

Each preset has a companion exclusion predicate describing the graphs the
rule is meant for; on those graphs the audited minimum final charge is
bounded below by the rule's threshold (4, 10/3, and 3 + 3/4 respectively).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable

from listpacking.graphs import Graph, graph_from_edges


@dataclass(frozen=True)
class Clause:
    label: str
    recipient: Callable[[int], bool]
    donor: Callable[[int], bool]
    amount: Fraction

    def __post_init__(self) -> None:
        if self.amount <= 0:
            raise ValueError("transfer amounts are positive")


@dataclass(frozen=True)
class DischargingRule:
    name: str
    clauses: tuple[Clause, ...]


@dataclass(frozen=True)
class ChargeLedger:
    """Initial charges, the applied transfers, and the exact final charges."""

    initial: tuple[Fraction, ...]
    transfers: tuple[tuple[int, int, Fraction], ...]  # (donor, recipient, amount)

    @cached_property
    def final(self) -> tuple[Fraction, ...]:
        out = list(self.initial)
        for donor, recipient, amount in self.transfers:
            out[donor] -= amount
            out[recipient] += amount
        return tuple(out)

    def conserved(self) -> bool:
        return sum(self.final) == sum(self.initial)

    def min_final(self) -> Fraction:
        return min(self.final) if self.final else Fraction(0)

    def as_json(self) -> dict:
        return {
            "initial": [str(c) for c in self.initial],
            "final": [str(c) for c in self.final],
            "transfers": [[d, r, str(a)] for d, r, a in self.transfers],
            "min_final": str(self.min_final()),
        }


def discharge_audit(g: Graph, rule: DischargingRule) -> ChargeLedger:
    """Apply a rule to a graph: initial charge d(v), one transfer per
    (edge, clause, direction) whose predicates match."""

    deg = g.degrees()
    transfers = []
    for u, v in g.sorted_edges():
        for clause in rule.clauses:
            if clause.recipient(deg[u]) and clause.donor(deg[v]):
                transfers.append((v, u, clause.amount))
            if clause.recipient(deg[v]) and clause.donor(deg[u]):
                transfers.append((u, v, clause.amount))
    return ChargeLedger(tuple(Fraction(d) for d in deg), tuple(transfers))


def degree_k_rule(k: int) -> DischargingRule:
    """Every k-vertex takes 1/(k+1) from each neighbor."""

    return DischargingRule(
        f"open_{k}",
        (Clause(f"deg{k}-takes", lambda d, k=k: d == k, lambda d: True, Fraction(1, k + 1)),),
    )


RULES: dict[str, DischargingRule] = {
    "P4": DischargingRule(
        "P4", (Clause("3-takes-1/3", lambda d: d == 3, lambda d: True, Fraction(1, 3)),)
    ),
    "P5": DischargingRule(
        "P5", (Clause("3-takes-1/6", lambda d: d == 3, lambda d: d >= 4, Fraction(1, 6)),)
    ),
    "openB": DischargingRule(
        "openB", (Clause("3-takes-1/4", lambda d: d == 3, lambda d: True, Fraction(1, 4)),)
    ),
}

RULE_THRESHOLDS: dict[str, Fraction] = {
    "P4": Fraction(4),
    "P5": Fraction(10, 3),
    "openB": Fraction(3) + Fraction(3, 4),
}


# ---------------------------------------------------------------------------
# Exclusion predicates: the reduced configurations each rule's class forbids.
# ---------------------------------------------------------------------------


def passes_exclusions(g: Graph, rule_name: str) -> bool:
    if rule_name not in ("P4", "P5", "openB"):
        raise ValueError(f"no exclusion predicate for rule {rule_name!r}")
    deg = g.degrees()
    if g.n == 0:
        return True
    if min(deg) < 3:
        return False
    if rule_name == "P4":
        for u, v in g.edges:
            du, dv = sorted((deg[u], deg[v]))
            if du == 3 and dv <= 4:
                return False
        for v in range(g.n):
            if deg[v] == 5 and sum(1 for w in g.adjacency[v] if deg[w] == 3) >= 4:
                return False
        return True
    if rule_name == "P5":
        for v in range(g.n):
            if deg[v] == 3 and sum(1 for w in g.adjacency[v] if deg[w] == 3) >= 2:
                return False
        return True
    for v in range(g.n):  # openB: every 3-vertex sees only degree >= 5
        if deg[v] == 3 and any(deg[w] <= 4 for w in g.adjacency[v]):
            return False
    return True


# ---------------------------------------------------------------------------
# Seeded in-class instance generators.
#
# All three builders start from a circulant core of degree >= 5 and attach
# extra vertices whose wiring keeps every exclusion intact: attached
# 3-vertices only see high-degree vertices, and the optional tight gadget
# for P4 is a 5-vertex with exactly three 3-neighbors.
# ---------------------------------------------------------------------------


def _circulant(n: int, offsets: tuple[int, ...]) -> Graph:
    edges = set()
    for v in range(n):
        for o in offsets:
            edges.add(tuple(sorted((v, (v + o) % n))))
    return graph_from_edges(n, edges)


def generate_rule_instance(rule_name: str, seed: int) -> Graph:
    """A pseudorandom graph satisfying ``passes_exclusions`` for the rule."""

    rng = random.Random(seed)
    core_n = rng.randrange(12, 24)
    core = _circulant(core_n, (1, 2, 3))  # 6-regular
    edges = set(core.edges)
    n = core_n

    def attach_three(targets: list[int]) -> None:
        nonlocal n
        for t in targets:
            edges.add(tuple(sorted((n, t))))
        n += 1

    # plain degree-3 pendants on distinct core vertices
    for _ in range(rng.randrange(1, 5)):
        attach_three(rng.sample(range(core_n), 3))

    if rule_name == "P4" and rng.random() < 0.7:
        # tight gadget: a 5-vertex x seeing three 3-vertices and two cores
        x = n
        n += 1
        anchors = rng.sample(range(core_n), 2)
        for a in anchors:
            edges.add(tuple(sorted((x, a))))
        for _ in range(3):
            spread = rng.sample(range(core_n), 2)
            w = n
            n += 1
            edges.add(tuple(sorted((w, x))))
            for a in spread:
                edges.add(tuple(sorted((w, a))))

    g = graph_from_edges(n, edges)
    if not passes_exclusions(g, rule_name):
        raise AssertionError(f"instance generator for {rule_name} produced an out-of-class graph")
    return g
