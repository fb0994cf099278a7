"""Exact fractional matchings, Farkas certificates and min-max pair loads.

All arithmetic is over the rationals; nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from . import _simplex
from .hypergraph import Hypergraph, InvalidInput, edges_with_two_in


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str | int) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class FractionalMatching:
    """Nonnegative rational edge weights, indexed by canonical edge order."""

    h: Hypergraph
    weights: tuple[Fraction, ...]

    def loads(self) -> list[Fraction]:
        return list(self._loads)

    @cached_property
    def _loads(self) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.h.n
        for e, w in zip(self.h.edges, self.weights):
            if w:
                for v in e:
                    out[v] += w
        return tuple(out)

    def pair_loads(self) -> dict[tuple[int, int], Fraction]:
        out: dict[tuple[int, int], Fraction] = {}
        for e, w in zip(self.h.edges, self.weights):
            for p in combinations(e, 2):
                out[p] = out.get(p, Fraction(0)) + w
        return out

    def max_pair_load(self) -> Fraction:
        return max(self.pair_loads().values(), default=Fraction(0))

    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def is_valid(self) -> bool:
        return self._valid

    @cached_property
    def _valid(self) -> bool:
        return (
            len(self.weights) == len(self.h.edges)
            and all(w >= 0 for w in self.weights)
            and all(x <= 1 for x in self._loads)
        )

    def is_perfect(self) -> bool:
        return self.is_valid() and all(x == 1 for x in self._loads)

    def support(self) -> list[int]:
        return [i for i, w in enumerate(self.weights) if w]

    def to_dict(self) -> dict:
        return {
            "k": self.h.k,
            "n": self.h.n,
            "weights": [[i, format_rational(w)] for i, w in enumerate(self.weights) if w],
        }

    @classmethod
    def from_dict(cls, h: Hypergraph, obj: dict) -> "FractionalMatching":
        w = [Fraction(0)] * len(h.edges)
        for i, s in obj["weights"]:
            if not 0 <= i < len(w):
                raise InvalidInput(f"edge index {i} out of range")
            w[i] = parse_rational(s)
        return cls(h, tuple(w))


@dataclass(frozen=True)
class FarkasCertificate:
    """Vertex weights with positive total and nonpositive sum on every edge."""

    y: tuple[Fraction, ...]

    def to_dict(self) -> dict:
        return {"y": [format_rational(v) for v in self.y]}

    @classmethod
    def from_dict(cls, obj: dict) -> "FarkasCertificate":
        return cls(tuple(parse_rational(s) for s in obj["y"]))


def _primitive(y: Sequence[Fraction]) -> tuple[Fraction, ...]:
    den = lcm(*(v.denominator for v in y)) if y else 1
    ints = [int(v * den) for v in y]
    g = 0
    for v in ints:
        g = gcd(g, v)
    g = g or 1
    return tuple(Fraction(v // g) for v in ints)


def verify_certificate(h: Hypergraph, cert: FarkasCertificate) -> bool:
    if len(cert.y) != h.n:
        raise InvalidInput(f"certificate has {len(cert.y)} entries for {h.n} vertices")
    y = cert.y
    if sum(y, Fraction(0)) <= 0:
        return False
    return all(sum((y[v] for v in e), Fraction(0)) <= 0 for e in h.edges)


def _vertex_columns(h: Hypergraph, order: Sequence[int]) -> list[list[tuple[int, int]]]:
    return [[(v, 1) for v in h.edges[i]] for i in order]


def perfect_fractional_matching(h: Hypergraph) -> FractionalMatching | FarkasCertificate:
    """A perfect fractional matching of ``h`` or a certificate that none exists."""
    return _solve_perfect(h, range(len(h.edges)))


def uniform_fractional(h: Hypergraph) -> FractionalMatching | None:
    """Equal weight n / (k m) on every edge when that is perfect (vertex-regular ``h``)."""
    if not h.edges or len({len(x) for x in h.incidence}) != 1:
        return None
    w = FractionalMatching(h, (Fraction(h.n, h.k * len(h.edges)),) * len(h.edges))
    return w if w.is_perfect() else None


def _solve_perfect(h: Hypergraph, order: Sequence[int]) -> FractionalMatching | FarkasCertificate:
    if not h.edges:
        return FarkasCertificate(tuple(Fraction(1) for _ in range(h.n)))
    res = _simplex.solve(h.n, _vertex_columns(h, order), [1] * h.n)
    if res.status == "infeasible":
        return FarkasCertificate(_primitive(res.farkas))
    w = [Fraction(0)] * len(h.edges)
    for i, x in zip(order, res.x):
        w[i] = x
    return FractionalMatching(h, tuple(w))


def _pair_rows(h: Hypergraph) -> dict[tuple[int, int], int]:
    pairs = sorted({p for e in h.edges for p in combinations(e, 2)})
    return {p: h.n + i for i, p in enumerate(pairs)}


def minmax_pair_fractional(h: Hypergraph) -> tuple[FractionalMatching, Fraction] | FarkasCertificate:
    """Perfect fractional matching minimizing the largest pair load.

    One LP: vertex loads equal 1, every pair load is at most ``t``, minimize
    ``t``. Only pairs inside some edge get a row. Returns the matching and the
    optimum, or the infeasibility certificate.
    """
    first = perfect_fractional_matching(h)
    if isinstance(first, FarkasCertificate):
        return first
    prow = _pair_rows(h)
    n_rows = h.n + len(prow)
    cols: list[list[tuple[int, int]]] = []
    for e in h.edges:
        cols.append([(v, 1) for v in e] + [(prow[p], 1) for p in combinations(e, 2)])
    t_col = len(cols)
    cols.append([(r, -1) for r in prow.values()])
    slack = {}
    for r in prow.values():
        slack[r] = len(cols)
        cols.append([(r, 1)])
    cost = [0] * len(cols)
    cost[t_col] = 1
    rhs = [1] * h.n + [0] * len(prow)
    res = _simplex.solve(n_rows, cols, rhs, cost, slack)
    if res.status != "optimal":  # pragma: no cover - feasibility settled above
        raise RuntimeError(f"min-max LP returned {res.status}")
    w = FractionalMatching(h, tuple(res.x[: len(h.edges)]))
    return w, res.objective


def pair_capped_fractional(h: Hypergraph, cap: Fraction) -> FractionalMatching | None:
    """A perfect fractional matching with every pair load ``<= cap``, if one exists."""
    cap = Fraction(cap)
    if cap < 0:
        return None
    if not h.edges:
        return None if h.n else FractionalMatching(h, ())
    prow = _pair_rows(h)
    den, num = cap.denominator, cap.numerator
    cols: list[list[tuple[int, int]]] = []
    for e in h.edges:
        cols.append([(v, 1) for v in e] + [(prow[p], den) for p in combinations(e, 2)])
    slack = {}
    for r in prow.values():
        slack[r] = len(cols)
        cols.append([(r, 1)])
    res = _simplex.solve(h.n + len(prow), cols, [1] * h.n + [num] * len(prow), None, slack)
    if res.status != "optimal":
        return None
    return FractionalMatching(h, tuple(res.x[: len(h.edges)]))


def spread_fractional(
    h: Hypergraph,
    samples: int,
    seed: int | np.random.Generator,
    edges_per_vertex: int | None = None,
) -> FractionalMatching | FarkasCertificate:
    """Average of basic perfect fractional matchings found under random column orders.

    A convex combination of perfect fractional matchings is perfect, and
    averaging spreads weight over many more edges than one vertex solution.
    With ``edges_per_vertex`` set, each sample first solves on a random subset
    of ``edges_per_vertex * n`` edges (any perfect fractional matching of a
    spanning subgraph is one of ``h``) and re-solves on all edges only when
    the subset is infeasible. Used in place of the min-max LP when that LP is
    too large to solve exactly.
    """
    rng = np.random.default_rng(seed)
    m = len(h.edges)
    acc = [Fraction(0)] * m
    samples = max(1, samples)
    for _ in range(samples):
        order = [int(i) for i in rng.permutation(m)]
        res = None
        if edges_per_vertex and m > edges_per_vertex * h.n:
            res = _solve_perfect(h, order[: edges_per_vertex * h.n])
            if isinstance(res, FarkasCertificate):
                res = None
        if res is None:
            res = _solve_perfect(h, order)
        if isinstance(res, FarkasCertificate):
            return res
        for i, w in enumerate(res.weights):
            if w:
                acc[i] += w
    return FractionalMatching(h, tuple(w / samples for w in acc))


def extremal_set_from_certificate(h: Hypergraph, cert: FarkasCertificate) -> tuple[frozenset[int], int]:
    """The n/k vertices with the largest certificate entries, and their bad-edge count.

    Vertices are sorted ascending by ``(y_v, v)`` and the last n/k are taken.
    """
    if h.n % h.k:
        raise InvalidInput(f"k={h.k} does not divide n={h.n}")
    if len(cert.y) != h.n:
        raise InvalidInput("certificate dimension does not match the vertex count")
    order = sorted(range(h.n), key=lambda v: (cert.y[v], v))
    s = frozenset(order[h.n - h.n // h.k :])
    return s, edges_with_two_in(h, s)


def fractional_from_weights(h: Hypergraph, weights: Iterable) -> FractionalMatching:
    return FractionalMatching(h, tuple(Fraction(w) for w in weights))
