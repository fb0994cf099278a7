from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import hypergraphs
from hypermatch import (
    Hypergraph,
    InvalidInput,
    PreconditionError,
    complete,
    degree,
    degree_lower_bound_check,
    edges_with_two_in,
    empty,
    extend_candidates,
    extremal_construction,
    from_edges,
    isolated_vertices,
    min_codegree,
    min_positive_codegree,
    parse,
    validate_matching,
)

EXT6 = extremal_construction(3, 6)
K36 = complete(3, 6)
SINGLE = from_edges(3, 6, [(0, 1, 2)])


class TestConstruction:
    def test_edges_are_canonical(self):
        h = Hypergraph(5, 3, ((4, 0, 2), (1, 0, 3)))
        assert h.edges == ((0, 1, 3), (0, 2, 4))

    @pytest.mark.parametrize(
        "edges",
        [((0, 1, 1),), ((0, 1, 5),), ((0, 1),), ((0, 1, 2), (2, 1, 0)), ((-1, 0, 1),)],
    )
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(InvalidInput):
            Hypergraph(5, 3, edges)

    def test_rejects_small_k_and_large_n(self):
        with pytest.raises(InvalidInput):
            Hypergraph(4, 1, ())
        with pytest.raises(InvalidInput):
            Hypergraph(513, 3, ())


class TestDegree:
    def test_examples(self):
        assert degree(EXT6, []) == 10
        assert degree(EXT6, [3, 4, 5]) == 1
        assert degree(EXT6, [0, 1]) == 0

    def test_out_of_range(self):
        with pytest.raises(InvalidInput):
            degree(EXT6, [6])

    @given(hypergraphs(), st.data())
    def test_monotone_and_matches_oracle(self, h, data):
        s = data.draw(st.sets(st.integers(0, h.n - 1), max_size=h.k))
        extra = data.draw(st.sets(st.integers(0, h.n - 1), max_size=2))
        assert degree(h, s) == oracles.codegree(h.edges, s)
        assert degree(h, s) >= degree(h, s | extra)

    def test_k_set_degree_is_membership(self):
        for s in combinations(range(6), 3):
            assert degree(EXT6, s) == int(s in EXT6.edges)


class TestCodegrees:
    def test_min_codegree(self):
        assert min_codegree(K36) == 4
        assert min_codegree(EXT6) == 0
        assert min_codegree(empty(3, 6)) == 0

    def test_min_codegree_needs_n_at_least_k(self):
        with pytest.raises(InvalidInput):
            min_codegree(Hypergraph(2, 3, ()))

    def test_min_positive_codegree(self):
        d, w = min_positive_codegree(EXT6)
        assert d == 2 and w == frozenset({0, 3})
        assert degree(EXT6, w) == 2
        d, w = min_positive_codegree(K36)
        assert d == 4 and len(w) == 2
        d, w = min_positive_codegree(SINGLE)
        assert d == 1 and w <= {0, 1, 2}
        assert min_positive_codegree(empty(3, 6)) == (0, None)

    @given(hypergraphs())
    def test_positive_codegree_matches_oracle(self, h):
        d, w = min_positive_codegree(h)
        assert d == oracles.min_positive_codegree(h.n, h.k, h.edges)
        assert (d >= 1) == bool(h.edges)
        if w is not None:
            assert len(w) == h.k - 1 and degree(h, w) == d


def test_isolated_vertices():
    assert isolated_vertices(EXT6) == frozenset()
    assert isolated_vertices(empty(3, 6)) == frozenset(range(6))
    assert isolated_vertices(SINGLE) == frozenset({3, 4, 5})


def test_edges_with_two_in():
    assert edges_with_two_in(EXT6, [0, 1, 2]) == 0
    assert edges_with_two_in(K36, [0, 1]) == 4
    assert edges_with_two_in(K36, [3]) == 0


def test_validate_matching():
    assert validate_matching(K36, [(0, 1, 2), (3, 4, 5)], require_perfect=True)
    assert not validate_matching(K36, [(0, 1, 2), (2, 3, 4)])
    assert not validate_matching(EXT6, [(0, 3, 4)], require_perfect=True)
    assert validate_matching(EXT6, [(0, 3, 4)])
    assert not validate_matching(EXT6, [(0, 1, 3)])


class TestExtendCandidates:
    def test_examples(self):
        assert extend_candidates(EXT6, [0]) == {3, 4, 5}
        assert extend_candidates(K36, [0, 1]) == {2, 3, 4, 5}
        assert extend_candidates(SINGLE, [0]) == {1, 2}

    def test_errors(self):
        with pytest.raises(PreconditionError):
            extend_candidates(EXT6, [0, 1])
        with pytest.raises(InvalidInput):
            extend_candidates(K36, [0, 1, 2])

    @given(hypergraphs(), st.data())
    def test_size_bound(self, h, data):
        if not h.edges:
            return
        e = data.draw(st.sampled_from(h.edges))
        s = e[: data.draw(st.integers(0, h.k - 1))]
        d, _ = min_positive_codegree(h)
        got = extend_candidates(h, s)
        assert got == {x for x in range(h.n) if x not in s and oracles.codegree(h.edges, set(s) | {x})}
        assert len(got) >= d + h.k - 1 - len(s)


class TestDegreeBound:
    def test_examples(self):
        assert degree_lower_bound_check(EXT6)
        assert degree_lower_bound_check(K36)
        assert degree_lower_bound_check(SINGLE)

    @given(hypergraphs())
    def test_always_holds(self, h):
        assert degree_lower_bound_check(h)


class TestSerialization:
    @given(hypergraphs())
    def test_round_trip(self, h):
        assert parse(h.to_text(), "text") == h
        assert parse(h.to_json(), "json") == h

    def test_text_format(self):
        assert SINGLE.to_text() == "3 6 1\n0 1 2\n"

    @pytest.mark.parametrize(
        "text,fmt",
        [
            ("3 6 2\n0 1 2\n2 1 0\n", "text"),
            ("3 6 1\n0 1 6\n", "text"),
            ("3 6 2\n0 1 2\n", "text"),
            ("3 6\n", "text"),
            ('{"k": 3, "n": 6, "edges": [[0, 1, 2], [0, 1, 2]]}', "json"),
            ('{"k": 3, "n": 6, "edges": [[0, 1, 9]]}', "json"),
            ("3 6 1\n0 1 2\n", "yaml"),
        ],
    )
    def test_rejects(self, text, fmt):
        with pytest.raises(InvalidInput):
            parse(text, fmt)
