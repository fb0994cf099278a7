from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from hypermatch import (
    AbsorbParams,
    AbsorbingStructure,
    InvalidInput,
    absorb,
    absorbing_witness,
    build_absorbing_structure,
    complete,
    empty,
    extremal_construction,
    find_absorber_gadget,
    from_edges,
    is_absorber,
    validate_matching,
)

K312 = complete(3, 12)
EXT12 = extremal_construction(3, 12)
K360 = complete(3, 60)


class TestIsAbsorber:
    def test_examples(self):
        assert is_absorber(K312, range(3, 9), [0, 1, 2])
        only_t = from_edges(3, 12, [(0, 1, 2)])
        assert not is_absorber(only_t, range(3, 9), [0, 1, 2])
        # six B-vertices absorb an all-A triple: two B-edges, or three {a, b, b'} edges
        for W in [range(5, 11), range(6, 12), [5, 6, 7, 9, 10, 11]]:
            assert is_absorber(EXT12, W, [0, 1, 2])
        # W with two A-vertices leaves five A-vertices for three edges
        assert not is_absorber(EXT12, range(3, 9), [0, 1, 2])

    @pytest.mark.parametrize(
        "W,T", [(range(3, 8), [0, 1, 2]), (range(3, 9), [0, 1]), (range(2, 8), [0, 1, 2])]
    )
    def test_shape_errors(self, W, T):
        with pytest.raises(InvalidInput):
            is_absorber(K312, W, T)

    def test_witness_matchings(self):
        pm_w, pm_wt = absorbing_witness(K312, range(3, 9), [0, 1, 2])
        assert validate_matching(K312, pm_w) and {v for e in pm_w for v in e} == set(range(3, 9))
        assert {v for e in pm_wt for v in e} == set(range(9))


class TestGadget:
    def test_complete(self):
        rng = np.random.default_rng(0)
        for T in [(0, 1, 2), (3, 7, 11), (9, 10, 11)]:
            a = find_absorber_gadget(K312, T, [], rng)
            assert a is not None and a.T == T and is_absorber(K312, a.W, a.T)
            assert len(a.W) == 6 and not set(a.W) & set(T)

    def test_forbidden_respected(self):
        rng = np.random.default_rng(1)
        a = find_absorber_gadget(K312, (0, 1, 2), range(3, 6), rng)
        assert a is not None and not set(a.W) & {3, 4, 5}

    def test_barrier_triple_gadget_is_sound(self):
        a = find_absorber_gadget(EXT12, (0, 1, 2), [], np.random.default_rng(0))
        assert a is not None and is_absorber(EXT12, a.W, a.T)
        # each column edge already holds one A-vertex of T
        assert not set(a.W) & set(range(5))

    def test_no_gadget_when_t_blocks_columns(self):
        # with B forbidden only two candidate vertices remain
        a = find_absorber_gadget(EXT12, (0, 1, 2), range(5, 12), np.random.default_rng(0))
        assert a is None

    def test_isolated_vertex_in_t(self):
        h = from_edges(3, 12, [e for e in K312.edges if 0 not in e])
        assert find_absorber_gadget(h, (0, 1, 2), [], np.random.default_rng(0)) is None

    def test_k4(self):
        h = complete(4, 20)
        a = find_absorber_gadget(h, (0, 1, 2, 3), [], np.random.default_rng(2))
        assert a is not None and len(a.W) == 12 and is_absorber(h, a.W, a.T)


class TestStructure:
    def test_complete_60(self):
        s = build_absorbing_structure(K360, AbsorbParams(beta=Fraction(1, 10)))
        assert s.capacity >= 1
        assert len(s.A) <= 6
        assert len(s.A) == 6 * len(s.family)
        seen = set()
        for a in s.family:
            assert seen.isdisjoint(a.W) and is_absorber(K360, a.W, a.T)
            seen |= set(a.W)

    def test_empty(self):
        s = build_absorbing_structure(empty(3, 12), AbsorbParams())
        assert s.capacity == 0 and s.A == frozenset()

    def test_barrier_structure_is_sound(self):
        h = extremal_construction(3, 60)
        s = build_absorbing_structure(h, AbsorbParams(beta=Fraction(1, 4), seed=3))
        assert s.family
        for a in s.family:
            assert is_absorber(h, a.W, a.T)
        counts = s.diagnostics["per_T_counts"]
        assert s.capacity == min(c for _, c in counts)
        free_a = [v for v in range(21) if v not in s.A]
        for T in list(combinations(free_a, 3))[:5]:
            # an A-triple is absorbed exactly by the members lying inside B
            got = sum(is_absorber(h, a.W, T) for a in s.family)
            assert got == sum(1 for a in s.family if not set(a.W) & set(range(21)))

    def test_round_trip(self):
        s = build_absorbing_structure(K360, AbsorbParams(beta=Fraction(1, 5), seed=4))
        assert AbsorbingStructure.from_dict(s.to_dict()) == s

    def test_deterministic(self):
        p = AbsorbParams(beta=Fraction(1, 5), seed=9)
        assert build_absorbing_structure(K360, p) == build_absorbing_structure(K360, p)

    def test_family_size_concentrates(self):
        p0 = AbsorbParams(beta=Fraction(1, 5))
        target = int(p0.beta * 60 / 6)
        sizes = [len(build_absorbing_structure(K360, AbsorbParams(beta=p0.beta, seed=s)).family) for s in range(100)]
        assert sum(target / 2 <= x <= 2 * target for x in sizes) >= 95

    def test_params(self):
        p = AbsorbParams(beta=Fraction(1, 10), alpha=Fraction(1, 10))
        assert p.c(3) == 3 * Fraction(1, 100) * 720 * 10**6
        assert 0 <= p.p(3, 60) <= 1
        for bad in [dict(beta=0), dict(alpha=Fraction(3, 4)), dict(sample_prob=2.0)]:
            with pytest.raises(InvalidInput):
                AbsorbParams(**bad)


@pytest.fixture(scope="module")
def structure():
    return build_absorbing_structure(K360, AbsorbParams(beta=Fraction(1, 5), seed=1))


class TestAbsorb:
    def test_empty_s(self, structure):
        m = absorb(K360, [], structure)
        assert sorted(m) == sorted(e for a in structure.family for e in a.pm_W)

    def test_absorbs_leftover(self, structure):
        S = [v for v in range(60) if v not in structure.A][: 3 * structure.capacity]
        m = absorb(K360, S, structure)
        assert validate_matching(K360, m)
        assert {v for e in m for v in e} == set(structure.A) | set(S)

    def test_preconditions(self, structure):
        free = [v for v in range(60) if v not in structure.A]
        with pytest.raises(InvalidInput):
            absorb(K360, free[: 3 * (structure.capacity + 1)], structure)
        with pytest.raises(InvalidInput):
            absorb(K360, free[:2], structure)
        with pytest.raises(InvalidInput):
            absorb(K360, [min(structure.A)] + free[:2], structure)
