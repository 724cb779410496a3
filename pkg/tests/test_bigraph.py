import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from listpacking.bigraph import (
    Bigraph,
    Obstruction,
    allowed_edges,
    bigraph_from_edges,
    bigraph_from_json,
    bigraph_to_json,
    classify_obstruction,
    count_one_factors,
    degree_profile,
    hall_violator,
    has_one_factor,
    is_st,
    iter_one_factors,
    max_matching,
    one_factor_with,
    removable_edges,
    swap,
)
from oracles import oracle_one_factor_count

# the four reference obstruction shapes (types 1..4, reading clockwise from
# the canonical drawings): X rows see three columns, the rest see the others
TYPE1 = Bigraph(8, (7, 7, 7, 7, 7, 248, 248, 248))
TYPE2 = Bigraph(8, (7, 7, 7, 7, 0b1011, 248, 240, 248))
TYPE3 = Bigraph(8, (7, 7, 7, 7, 0b11001, 248, 248, 248))
TYPE4 = Bigraph(8, (7, 7, 7, 7, 248, 248, 248, 248))


def bigraphs(max_s=6):
    return st.integers(1, max_s).flatmap(
        lambda s: st.builds(
            lambda rows: Bigraph(s, tuple(rows)),
            st.lists(st.integers(0, (1 << s) - 1), min_size=s, max_size=s),
        )
    )


class TestMatching:
    def test_k44(self):
        assert len(max_matching(Bigraph(4, (15,) * 4))) == 4

    def test_all_zero(self):
        assert len(max_matching(Bigraph(3, (0, 0, 0)))) == 0

    def test_reference_instance(self):
        assert len(max_matching(TYPE1)) == 6

    def test_every_4_2_bigraph_has_factor_sample(self):
        rng = random.Random(0)
        for _ in range(300):
            rows = [rng.randrange(16) for _ in range(4)]
            h = Bigraph(4, tuple(rows))
            if is_st(h, 4, 2):
                assert has_one_factor(h)

    def test_deterministic(self):
        h = Bigraph(5, (7, 7, 28, 28, 31))
        assert max_matching(h) == max_matching(Bigraph(5, h.rows))

    @given(bigraphs())
    @settings(max_examples=200, deadline=None)
    def test_matching_is_valid(self, h):
        m = max_matching(h)
        assert len({i for i, _ in m}) == len(m) == len({j for _, j in m})
        for i, j in m:
            assert h.has_edge(i, j)


class TestHallDuality:
    @given(bigraphs())
    @settings(max_examples=300, deadline=None)
    def test_three_way_equivalence(self, h):
        factor = has_one_factor(h)
        assert (hall_violator(h) is None) == factor
        assert (count_one_factors(h) > 0) == factor

    def test_three_way_equivalence_exhaustive_small(self):
        # every labeled bigraph with part size at most 3, plus all of s=4
        for s in (1, 2, 3):
            for rows in product(range(1 << s), repeat=s):
                h = Bigraph(s, rows)
                factor = has_one_factor(h)
                assert (hall_violator(h) is None) == factor
                assert (count_one_factors(h) > 0) == factor
        for code in range(1 << 16):
            rows = (code & 15, code >> 4 & 15, code >> 8 & 15, code >> 12 & 15)
            h = Bigraph(4, rows)
            assert has_one_factor(h) == (count_one_factors(h) > 0)

    def test_three_way_equivalence_random_s8(self):
        rng = random.Random(11)
        for _ in range(400):
            s = rng.randrange(5, 9)
            h = Bigraph(s, tuple(rng.randrange(1 << s) for _ in range(s)))
            factor = has_one_factor(h)
            assert (hall_violator(h) is None) == factor
            assert (count_one_factors(h) > 0) == factor

    @given(bigraphs(max_s=5))
    @settings(max_examples=200, deadline=None)
    def test_violator_is_maximum_cardinality(self, h):
        got = hall_violator(h)
        best = 0
        for size in range(1, h.s + 1):
            for comb in combinations(range(h.s), size):
                n = 0
                for i in comb:
                    n |= h.rows[i]
                if n.bit_count() < size:
                    best = max(best, size)
        if got is None:
            assert best == 0
        else:
            x, nbhd = got
            n = 0
            for i in x:
                n |= h.rows[i]
            assert {j for j in range(h.s) if n >> j & 1} == set(nbhd)
            assert len(nbhd) < len(x) == best

    def test_examples(self):
        h = Bigraph(2, (1, 1))
        assert hall_violator(h) == (frozenset({0, 1}), frozenset({0}))
        x, nbhd = hall_violator(TYPE1)
        assert (len(x), len(nbhd)) == (5, 3)
        rng = random.Random(1)
        for _ in range(100):
            rows = [rng.randrange(64) | 1 << rng.randrange(6) for _ in range(6)]
            h = Bigraph(6, tuple(rows))
            if is_st(h, 6, 3):
                assert hall_violator(h) is None  # (2t,t)-bigraph


class TestOneFactorWith:
    def test_forced_partner_excluded(self):
        k22 = Bigraph(2, (3, 3))
        assert one_factor_with(k22, frozenset({(0, 0)}), {(1, 1)}) is None

    def test_include_edge(self):
        rng = random.Random(2)
        for _ in range(100):
            k = rng.choice((2, 3))
            s = 2 * k + 1
            rows = [rng.randrange(1 << s) for _ in range(s)]
            h = Bigraph(s, tuple(rows))
            if not is_st(h, s, k + 1):
                continue
            for e in h.edges():
                got = one_factor_with(h, frozenset({e}))
                assert got is not None and e in got

    def test_plain_factor(self):
        h = Bigraph(3, (0b110, 0b101, 0b011))
        got = one_factor_with(h)
        assert got is not None and len(got) == 3

    def test_include_must_be_matching(self):
        with pytest.raises(ValueError):
            one_factor_with(Bigraph(2, (3, 3)), frozenset({(0, 0), (1, 0)}))
        with pytest.raises(ValueError):
            one_factor_with(Bigraph(2, (1, 2)), frozenset({(0, 1)}))


class TestCounting:
    def test_examples(self):
        assert count_one_factors(Bigraph(4, (15,) * 4)) == 24
        assert count_one_factors(Bigraph(3, (0b110, 0b101, 0b011))) == 2
        two_blocks = Bigraph(6, tuple([0b000111] * 3 + [0b111000] * 3))
        assert count_one_factors(two_blocks) == 36

    @given(bigraphs())
    @settings(max_examples=150, deadline=None)
    def test_matches_enumeration(self, h):
        assert count_one_factors(h) == oracle_one_factor_count(h)
        assert count_one_factors(h) == sum(1 for _ in iter_one_factors(h))


class TestAllowedAndRemovable:
    @given(bigraphs(max_s=5))
    @settings(max_examples=150, deadline=None)
    def test_allowed_matches_brute_force(self, h):
        got = allowed_edges(h)
        if not has_one_factor(h):
            assert got is None
            return
        expected = set()
        for cols in iter_one_factors(h):
            expected.update((i, j) for i, j in enumerate(cols))
        assert got == frozenset(expected)

    def test_k44_all_removable(self):
        h = Bigraph(4, (15,) * 4)
        m = max_matching(h)
        assert removable_edges(h, m) == m

    def test_eight_cycle(self):
        # C_8 as a 2-regular bigraph: deleting any single factor edge leaves
        # the complementary factor intact
        c8 = Bigraph(4, (0b0011, 0b0110, 0b1100, 0b1001))
        m = max_matching(c8)
        assert removable_edges(c8, m) == m

    def test_requires_one_factor(self):
        h = Bigraph(3, (0b110, 0b101, 0b011))
        with pytest.raises(ValueError):
            removable_edges(h, frozenset({(0, 1)}))

    def test_eight_three_sample(self):
        rng = random.Random(3)
        for _ in range(50):
            rows = [rng.randrange(256) for _ in range(8)]
            h = Bigraph(8, tuple(rows))
            if not is_st(h, 8, 3) or not has_one_factor(h):
                continue
            assert len(removable_edges(h, max_matching(h))) >= 6


class TestSwapAndProfiles:
    @given(bigraphs())
    @settings(max_examples=100, deadline=None)
    def test_swap_involution(self, h):
        assert swap(swap(h)) == h

    def test_swap_mirrors(self):
        h = bigraph_from_edges(5, [(0, 1), (2, 3), (4, 0)])
        assert swap(h) == bigraph_from_edges(5, [(1, 0), (3, 2), (0, 4)])

    def test_profiles(self):
        assert is_st(Bigraph(4, (15,) * 4), 4, 4)
        for fig in (TYPE1, TYPE2, TYPE3, TYPE4):
            assert is_st(fig, 8, 3)
        assert is_st(Bigraph(1, (0,)), 1, 0)
        assert not is_st(Bigraph(1, (0,)), 1, 1)
        a, b = degree_profile(TYPE2)
        assert a == tuple(sorted(r.bit_count() for r in TYPE2.rows))
        assert sum(a) == sum(b)


class TestClassification:
    def test_reference_types(self):
        for expect, fig in ((1, TYPE1), (2, TYPE2), (3, TYPE3), (4, TYPE4)):
            obs = classify_obstruction(fig)
            assert obs is not None and obs.otype == expect and obs.side == "A"
            assert len(obs.x) == (5 if expect == 1 else 4)
            assert len(obs.nbhd) == 3

    def test_witnesses(self):
        obs = classify_obstruction(TYPE2)
        assert obs.x1 == 4 and obs.e1 == (4, 3) and obs.e2 is None
        obs = classify_obstruction(TYPE3)
        assert obs.x1 == 4 and obs.e1 == (4, 3) and obs.e2 == (4, 4)

    def test_b_side(self):
        obs = classify_obstruction(swap(TYPE3))
        assert obs is not None and obs.otype == 3 and obs.side == "B"

    def test_one_factor_means_none(self):
        assert classify_obstruction(Bigraph(8, (255,) * 8)) is None

    def test_requires_s8(self):
        with pytest.raises(ValueError):
            classify_obstruction(Bigraph(4, (15,) * 4))

    def test_degenerate_input_rejected(self):
        # a row of degree 1 admits no typed category
        rows = (1, 1, 255, 255, 255, 255, 255, 255)
        with pytest.raises(ValueError):
            classify_obstruction(Bigraph(8, rows))

    def test_soundness_re_check(self):
        obs = classify_obstruction(TYPE1)
        n = 0
        for i in obs.x:
            n |= TYPE1.rows[i]
        assert {j for j in range(8) if n >> j & 1} == set(obs.nbhd)


class TestJson:
    def test_round_trip(self):
        assert bigraph_from_json(bigraph_to_json(TYPE2)) == TYPE2

    def test_edge_list_form(self):
        h = bigraph_from_json({"s": 3, "edges": [[0, 1], [1, 2], [2, 0]]})
        assert h == bigraph_from_edges(3, [(0, 1), (1, 2), (2, 0)])

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            bigraph_from_json({"s": 3})
