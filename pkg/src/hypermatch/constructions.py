"""Instance generators: the space barrier, complete and random k-graphs."""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .hypergraph import Hypergraph, InvalidInput

MAX_EDGES = 5_000_000

PartitionSpec = Sequence[Iterable[int]]


def _check_size(n: int, k: int) -> None:
    if n < k:
        raise InvalidInput(f"need n >= k, got n={n}, k={k}")
    if comb(n, k) > MAX_EDGES:
        raise InvalidInput(f"C({n},{k}) exceeds the edge cap {MAX_EDGES}")


def extremal_construction(k: int, n: int) -> Hypergraph:
    """The space barrier: |A| = n/k + 1 low-numbered vertices, every edge meets A at most once.

    A is ``{0, ..., n/k}``; B is the rest.
    """
    if k < 3:
        raise InvalidInput("the construction needs k >= 3")
    if n % k:
        raise InvalidInput(f"k={k} must divide n={n}")
    if n < 2 * k:
        raise InvalidInput("need n >= 2k so that B can host an edge")
    _check_size(n, k)
    a = n // k + 1
    B = range(a, n)
    edges = [e for e in combinations(B, k)]
    for v in range(a):
        edges.extend((v,) + rest for rest in combinations(B, k - 1))
    edges.sort()
    return Hypergraph._trusted(n, k, tuple(edges))


def extremal_parts(k: int, n: int) -> tuple[frozenset[int], frozenset[int]]:
    """The (A, B) split used by :func:`extremal_construction`."""
    a = n // k + 1
    return frozenset(range(a)), frozenset(range(a, n))


def complete(k: int, n: int) -> Hypergraph:
    _check_size(n, k)
    return Hypergraph._trusted(n, k, tuple(combinations(range(n), k)))


def empty(k: int, n: int) -> Hypergraph:
    return Hypergraph(n, k, ())


def random_binomial(k: int, n: int, p: float, seed: int | np.random.Generator) -> Hypergraph:
    """Each k-set independently with probability ``p`` (lexicographic draw order)."""
    if not 0.0 <= p <= 1.0:
        raise InvalidInput("p must lie in [0, 1]")
    _check_size(n, k)
    rng = np.random.default_rng(seed)
    keep = rng.random(comb(n, k)) < p
    edges = tuple(e for e, f in zip(combinations(range(n), k), keep) if f)
    return Hypergraph._trusted(n, k, edges)


def planted_extremal(k: int, n: int, eps: float, seed: int | np.random.Generator) -> Hypergraph:
    """The space barrier with every k-set's membership flipped with probability ``eps``."""
    if not 0.0 <= eps <= 1.0:
        raise InvalidInput("eps must lie in [0, 1]")
    if n % k or k < 3 or n < 2 * k:
        raise InvalidInput("planted model needs k >= 3, k | n and n >= 2k")
    _check_size(n, k)
    a = n // k + 1
    rng = np.random.default_rng(seed)
    flip = rng.random(comb(n, k)) < eps
    edges = []
    for e, f in zip(combinations(range(n), k), flip):
        allowed = sum(1 for v in e if v < a) <= 1
        if allowed != bool(f):
            edges.append(e)
    return Hypergraph._trusted(n, k, tuple(edges))


def kpartite_restrict(h: Hypergraph, parts: PartitionSpec) -> Hypergraph:
    """Keep the edges of ``h`` meeting every part in exactly one vertex."""
    parts = [frozenset(p) for p in parts]
    if len(parts) != h.k:
        raise InvalidInput(f"need exactly k={h.k} parts, got {len(parts)}")
    owner = [-1] * h.n
    for idx, part in enumerate(parts):
        for v in part:
            if not 0 <= v < h.n:
                raise InvalidInput(f"vertex {v} outside 0..{h.n - 1}")
            if owner[v] != -1:
                raise InvalidInput(f"vertex {v} lies in two parts")
            owner[v] = idx
    if -1 in owner:
        raise InvalidInput("parts do not cover the vertex set")
    full = set(range(h.k))
    edges = tuple(e for e in h.edges if {owner[v] for v in e} == full)
    return Hypergraph._trusted(h.n, h.k, edges)


def from_edges(k: int, n: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    return Hypergraph(n, k, tuple(tuple(e) for e in edges))
