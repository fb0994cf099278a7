import time
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import hypergraphs
from hypermatch import (
    BACKEND,
    BudgetExceeded,
    Hypergraph,
    InvalidInput,
    complete,
    empty,
    extremal_construction,
    find_perfect_matching,
    from_edges,
    graph_max_matching,
    max_matching,
    max_matching_size,
    min_codegree,
    validate_matching,
)
from hypermatch import _backend

BACKENDS = ["python"] + (["cython"] if BACKEND == "cython" else [])


@pytest.mark.parametrize("backend", BACKENDS)
class TestPerfectMatching:
    def test_examples(self, backend):
        assert find_perfect_matching(extremal_construction(3, 6), backend=backend) is None
        pm = find_perfect_matching(complete(3, 6), backend=backend)
        assert pm == [(0, 1, 2), (3, 4, 5)]
        k36 = complete(3, 6)
        no0 = from_edges(3, 6, [e for e in k36.edges if 0 not in e])
        assert find_perfect_matching(no0, backend=backend) is None

    def test_indivisible(self, backend):
        with pytest.raises(InvalidInput):
            find_perfect_matching(complete(3, 7), backend=backend)

    def test_budget_is_explicit(self, backend):
        with pytest.raises(BudgetExceeded):
            find_perfect_matching(complete(3, 12), budget=2, backend=backend)
        assert find_perfect_matching(complete(3, 12), budget=4, backend=backend) is not None

    @given(hypergraphs(divisible=True))
    def test_matches_oracle(self, backend, h):
        pm = find_perfect_matching(h, backend=backend)
        assert (pm is not None) == oracles.has_perfect_matching(h.n, h.k, h.edges)
        if pm is not None:
            assert validate_matching(h, pm, require_perfect=True)


@pytest.mark.parametrize("backend", BACKENDS)
def test_max_matching_examples(backend):
    assert max_matching_size(complete(3, 7), backend=backend) == 2
    assert max_matching_size(extremal_construction(3, 6), backend=backend) == 1
    assert max_matching_size(empty(3, 6), backend=backend) == 0


@given(hypergraphs(max_n=8))
def test_max_matching_matches_oracle(h):
    m = max_matching(h)
    assert validate_matching(h, m)
    assert len(m) == oracles.max_matching_size(h.edges)


@given(hypergraphs(ks=(3,), max_n=9, divisible=True))
def test_pm_iff_max_matching_is_n_over_k(h):
    assert (find_perfect_matching(h) is not None) == (max_matching_size(h) == h.n // h.k)


@pytest.mark.skipif(BACKEND != "cython", reason="compiled kernels unavailable")
@given(hypergraphs(ks=(3, 4), max_n=12, divisible=True))
def test_backends_agree_exactly(h):
    for fn in (_backend.perfect_matching, _backend.max_matching):
        a = fn(h.n, h.k, h.masks, 10**7, "python")
        b = fn(h.n, h.k, h.masks, 10**7, "cython")
        assert a == b


def test_large_n_uses_python_kernel():
    h = complete(3, 66)
    pm = find_perfect_matching(h)
    assert validate_matching(h, pm, require_perfect=True)


@pytest.mark.parametrize("k,n,limit", [(3, 60, 10.0), (4, 32, 30.0)])
def test_barrier_refutation_is_fast(k, n, limit):
    t = time.perf_counter()
    assert find_perfect_matching(extremal_construction(k, n)) is None
    assert time.perf_counter() - t < limit


class TestGraphMatching:
    def test_examples(self):
        assert len(graph_max_matching(from_edges(2, 4, [(0, 1), (1, 2), (2, 3)]))) == 2
        assert len(graph_max_matching(from_edges(2, 3, [(0, 1), (1, 2), (0, 2)]))) == 1
        assert len(graph_max_matching(complete(2, 6))) == 3

    def test_requires_graph(self):
        with pytest.raises(InvalidInput):
            graph_max_matching(complete(3, 6))

    @given(st.integers(2, 14), st.floats(0.05, 0.9), st.integers(0, 2**32 - 1))
    def test_against_exhaustive_and_min_degree_bound(self, n, p, seed):
        import numpy as np

        rng = np.random.default_rng(seed)
        edges = [e for e in combinations(range(n), 2) if rng.random() < p]
        g = Hypergraph(n, 2, tuple(edges))
        m = graph_max_matching(g)
        assert validate_matching(g, m)
        assert len(m) == oracles.max_matching_size(edges)
        # odd n: a matching cannot cover every vertex, so n rounds down to even
        assert 2 * len(m) >= min(n - n % 2, 2 * min_codegree(g))
