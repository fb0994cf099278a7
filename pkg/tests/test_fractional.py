from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import hypergraphs
from hypermatch import (
    FarkasCertificate,
    FractionalMatching,
    Hypergraph,
    InvalidInput,
    complete,
    empty,
    extremal_construction,
    extremal_set_from_certificate,
    from_edges,
    minmax_pair_fractional,
    pair_capped_fractional,
    perfect_fractional_matching,
    random_binomial,
    spread_fractional,
    uniform_fractional,
    verify_certificate,
)
from hypermatch import _simplex
from hypermatch.fractional import format_rational, parse_rational

EXT6 = extremal_construction(3, 6)
Y6 = FarkasCertificate(tuple(Fraction(v) for v in (2, 2, 2, -1, -1, -1)))


def _exactly_one_valid(h, res):
    if isinstance(res, FractionalMatching):
        return res.is_perfect() and res.total() * h.k == h.n
    return isinstance(res, FarkasCertificate) and verify_certificate(h, res)


class TestSimplex:
    def test_optimum_small(self):
        # min -x0 - x1 s.t. x0 + x2 = 4, x1 + x3 = 3, x0 + x1 + x4 = 5
        cols = [[(0, 1), (2, 1)], [(1, 1), (2, 1)], [(0, 1)], [(1, 1)], [(2, 1)]]
        res = _simplex.solve(3, cols, [4, 3, 5], [-1, -1, 0, 0, 0], slack={0: 2, 1: 3, 2: 4})
        assert res.status == "optimal" and res.objective == -5

    def test_infeasible_farkas(self):
        # x0 + x1 = 1 and x0 + x1 = 2
        cols = [[(0, 1), (1, 1)], [(0, 1), (1, 1)]]
        res = _simplex.solve(2, cols, [1, 2])
        assert res.status == "infeasible"
        y = res.farkas
        assert y[0] * 1 + y[1] * 2 > 0
        assert all(sum(y[r] * a for r, a in c) <= 0 for c in cols)

    def test_negative_rhs(self):
        res = _simplex.solve(1, [[(0, -1)]], [-3], [1])
        assert res.status == "optimal" and res.x == [3]

    def test_unbounded(self):
        res = _simplex.solve(1, [[(0, 1)], [(0, -1)]], [1], [0, -1])
        assert res.status == "unbounded"

    def test_fractional_vertex(self):
        # 3 x0 = 1
        res = _simplex.solve(1, [[(0, 3)]], [1], [0])
        assert res.x == [Fraction(1, 3)]


class TestPerfectFractional:
    def test_examples(self):
        w = perfect_fractional_matching(complete(3, 6))
        assert isinstance(w, FractionalMatching) and w.is_perfect()
        assert uniform_fractional(complete(3, 6)).weights == (Fraction(1, 10),) * 20
        c = perfect_fractional_matching(EXT6)
        assert isinstance(c, FarkasCertificate) and verify_certificate(EXT6, c)
        single = from_edges(3, 3, [(0, 1, 2)])
        assert perfect_fractional_matching(single).weights == (1,)

    def test_empty_gives_all_ones(self):
        c = perfect_fractional_matching(empty(3, 6))
        assert c.y == (1,) * 6

    @given(hypergraphs(max_n=10))
    def test_dichotomy_against_float_lp(self, h):
        res = perfect_fractional_matching(h)
        assert _exactly_one_valid(h, res)
        assert isinstance(res, FractionalMatching) == oracles.fractional_feasible(h.n, h.edges)
        if isinstance(res, FarkasCertificate):
            assert oracles.certificate_ok(h.edges, res.y)

    def test_indivisible_n_is_fine(self):
        h = complete(3, 7)
        w = perfect_fractional_matching(h)
        assert w.is_perfect() and w.total() == Fraction(7, 3)


class TestCertificates:
    def test_examples(self):
        assert verify_certificate(EXT6, Y6)
        assert not verify_certificate(complete(3, 6), FarkasCertificate((Fraction(1),) * 6))
        assert not verify_certificate(EXT6, FarkasCertificate((Fraction(0),) * 6))

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInput):
            verify_certificate(EXT6, FarkasCertificate((Fraction(1),) * 5))

    @given(st.fractions(min_value=Fraction(1, 1000), max_value=1000))
    def test_scaling(self, c):
        assert verify_certificate(EXT6, FarkasCertificate(tuple(c * v for v in Y6.y)))

    def test_round_trip(self):
        assert FarkasCertificate.from_dict(Y6.to_dict()) == Y6
        assert Y6.to_dict()["y"][0] == "2/1"

    def test_extremal_set(self):
        S, count = extremal_set_from_certificate(EXT6, Y6)
        assert len(S) == 2 and S <= {0, 1, 2} and count == 0
        S, _ = extremal_set_from_certificate(EXT6, FarkasCertificate((Fraction(1),) * 6))
        assert S == {4, 5}
        S, count = extremal_set_from_certificate(complete(3, 6), Y6)
        assert count == 4
        with pytest.raises(InvalidInput):
            extremal_set_from_certificate(complete(3, 7), FarkasCertificate((Fraction(1),) * 7))


class TestMinMax:
    @pytest.mark.parametrize(
        "h,expected",
        [
            (complete(3, 6), Fraction(2, 5)),
            (complete(2, 4), Fraction(1, 3)),
            (from_edges(3, 6, [(0, 1, 2), (3, 4, 5)]), Fraction(1)),
        ],
    )
    def test_examples(self, h, expected):
        w, M = minmax_pair_fractional(h)
        assert M == expected
        assert w.is_perfect() and w.max_pair_load() == M
        assert pair_capped_fractional(h, M - Fraction(1, 10**6)) is None
        assert pair_capped_fractional(h, M) is not None

    def test_infeasible_passes_certificate(self):
        c = minmax_pair_fractional(EXT6)
        assert isinstance(c, FarkasCertificate) and verify_certificate(EXT6, c)

    @pytest.mark.parametrize("seed", range(20))
    def test_optimality_random(self, seed):
        h = random_binomial(3, 9, 0.5, seed)
        res = minmax_pair_fractional(h)
        if isinstance(res, FarkasCertificate):
            assert not oracles.fractional_feasible(h.n, h.edges)
            return
        w, M = res
        assert w.is_perfect() and w.max_pair_load() == M
        assert pair_capped_fractional(h, M - Fraction(1, 10**6)) is None
        assert abs(float(M) - oracles.minmax_pair_load(h.n, h.edges)) < 1e-7


class TestFractionalMatching:
    def test_serialization(self):
        h = complete(3, 6)
        w = uniform_fractional(h)
        d = w.to_dict()
        assert d["weights"][0] == [0, "1/10"]
        assert FractionalMatching.from_dict(h, d) == w
        with pytest.raises(InvalidInput):
            FractionalMatching.from_dict(h, {"weights": [[99, "1/2"]]})

    def test_validity(self):
        h = complete(3, 6)
        assert not FractionalMatching(h, (Fraction(1, 2),) * 20).is_valid()
        assert not FractionalMatching(h, (Fraction(-1, 10),) + (Fraction(1, 10),) * 19).is_valid()
        assert FractionalMatching(h, (Fraction(0),) * 20).is_valid()

    def test_perfect_iff_total(self):
        h = random_binomial(3, 9, 0.6, 1)
        w = perfect_fractional_matching(h)
        assert w.is_perfect() == (w.total() == 3)

    def test_uniform_requires_regular(self):
        assert uniform_fractional(EXT6) is None
        assert uniform_fractional(empty(3, 6)) is None

    @pytest.mark.parametrize("epv", [None, 3])
    def test_spread_is_perfect(self, epv):
        h = random_binomial(3, 15, 0.4, 2)
        w = spread_fractional(h, 3, 0, epv)
        assert w.is_perfect()
        assert spread_fractional(h, 3, 0, epv) == w
        assert len(w.support()) >= len(perfect_fractional_matching(h).support())

    def test_spread_infeasible(self):
        assert isinstance(spread_fractional(EXT6, 2, 0), FarkasCertificate)


@given(st.fractions())
def test_rational_format_round_trip(x):
    s = format_rational(x)
    assert "/" in s and "." not in s
    assert parse_rational(s) == x
