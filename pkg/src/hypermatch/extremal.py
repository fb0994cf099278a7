"""Extremality witnesses and the constructive perfect matching for near-barrier instances."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable

import numpy as np

from .constructions import kpartite_restrict
from .exact import DEFAULT_BUDGET, BudgetExceeded, find_perfect_matching, graph_max_matching
from .fractional import FarkasCertificate, extremal_set_from_certificate, perfect_fractional_matching
from .hypergraph import (
    Edge,
    Hypergraph,
    InvalidInput,
    Matching,
    PreconditionError,
    edges_with_two_in,
    extend_candidates,
    isolated_vertices,
    min_positive_codegree,
    validate_matching,
)

log = logging.getLogger(__name__)

EXHAUSTIVE_CAP = 10**7


def default_gamma(k: int) -> Fraction:
    return Fraction(1, (2 * k) ** (2 * k))


def threshold(k: int, n: int) -> Fraction:
    """(k-1) n / k - (k-2), the positive codegree that forces a perfect matching."""
    return Fraction((k - 1) * n, k) - (k - 2)


@dataclass(frozen=True)
class ExtremalWitness:
    S: frozenset[int]
    bad_edge_count: int
    gamma: Fraction

    def to_dict(self) -> dict:
        g = Fraction(self.gamma)
        return {
            "S": sorted(self.S),
            "bad_edge_count": self.bad_edge_count,
            "gamma": f"{g.numerator}/{g.denominator}",
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "ExtremalWitness":
        return cls(frozenset(obj["S"]), int(obj["bad_edge_count"]), Fraction(obj["gamma"]))


def verify_extremal(h: Hypergraph, S: Iterable[int], gamma: Fraction) -> ExtremalWitness | None:
    """Witness that at most gamma n^k edges meet ``S`` twice, or None."""
    S = frozenset(S)
    if h.n % h.k or len(S) != h.n // h.k:
        raise InvalidInput(f"|S| must equal n/k = {h.n / h.k}")
    count = edges_with_two_in(h, S)
    gamma = Fraction(gamma)
    if count <= gamma * h.n**h.k:
        return ExtremalWitness(S, count, gamma)
    return None


def _best_exhaustive(h: Hypergraph) -> tuple[frozenset[int], int]:
    """The candidate set with fewest bad edges, lexicographically first among ties."""
    size = h.n // h.k
    if comb(h.n, size) > EXHAUSTIVE_CAP:
        raise InvalidInput(f"C({h.n},{size}) candidate sets exceed the exhaustive cap {EXHAUSTIVE_CAP}")
    best: tuple[int, tuple[int, ...]] | None = None
    if h.n <= 64 and h.edges:
        masks = np.array(h.masks, dtype=np.uint64)

        def count(S: tuple[int, ...]) -> int:
            sm = np.uint64(sum(1 << v for v in S))
            return int(np.count_nonzero(np.bitwise_count(masks & sm) >= 2))

    else:

        def count(S: tuple[int, ...]) -> int:
            return edges_with_two_in(h, S)

    for S in combinations(range(h.n), size):
        c = count(S)
        if best is None or c < best[0]:
            best = (c, S)
            if c == 0:
                break
    assert best is not None
    return frozenset(best[1]), best[0]


def _greedy_internal(h: Hypergraph) -> frozenset[int]:
    """Grow S one vertex at a time, always taking the vertex meeting S in fewest edges."""
    size = h.n // h.k
    internal = [0] * h.n
    deg = [len(x) for x in h.incidence]
    S: set[int] = set()
    while len(S) < size:
        v = min((u for u in range(h.n) if u not in S), key=lambda u: (internal[u], deg[u], u))
        S.add(v)
        for i in h.incidence[v]:
            for u in h.edges[i]:
                internal[u] += 1
    return frozenset(S)


def find_extremal_set(
    h: Hypergraph,
    gamma: Fraction,
    mode: str = "certificate",
    certificate: FarkasCertificate | None = None,
) -> ExtremalWitness | None:
    """Search for a set S of n/k vertices witnessing gamma-extremality.

    ``exhaustive`` scans every candidate and keeps the one with fewest bad
    edges (a None here proves non-extremality);
    ``certificate`` takes the top n/k vertices of a fractional-matching
    infeasibility certificate; ``heuristic`` grows S greedily by internal
    degree. Any returned witness passes :func:`verify_extremal`.
    """
    if h.n % h.k:
        raise InvalidInput(f"k={h.k} does not divide n={h.n}")
    gamma = Fraction(gamma)
    if mode == "exhaustive":
        S, _ = _best_exhaustive(h)
        return verify_extremal(h, S, gamma)
    if mode == "certificate":
        cert = certificate if certificate is not None else perfect_fractional_matching(h)
        if not isinstance(cert, FarkasCertificate):
            return None
        S, _ = extremal_set_from_certificate(h, cert)
        return verify_extremal(h, S, gamma)
    if mode == "heuristic":
        return verify_extremal(h, _greedy_internal(h), gamma)
    raise InvalidInput(f"unknown mode {mode!r}")


class _Exhausted(Exception):
    pass


def _extend_disjoint(
    h: Hypergraph, seeds: list[tuple[int, ...]], B: frozenset[int], budget: int
) -> list[Edge] | None:
    """Extend every seed to an edge with its other vertices in ``B``, all edges disjoint.

    Vertices are added one at a time keeping the growing set inside some edge;
    choices are backtracked (ascending candidate order) across all seeds.
    """
    k = h.k
    used: set[int] = set()
    out: list[Edge] = []
    nodes = 0

    def grow(idx: int, cur: list[int]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Exhausted
        if len(cur) == k:
            out.append(tuple(sorted(cur)))
            if idx + 1 == len(seeds) or grow(idx + 1, list(seeds[idx + 1])):
                return True
            out.pop()
            return False
        for x in sorted((extend_candidates(h, cur) & B) - used):
            used.add(x)
            cur.append(x)
            if grow(idx, cur):
                return True
            cur.pop()
            used.discard(x)
        return False

    if not seeds:
        return []
    try:
        return out if grow(0, list(seeds[0])) else None
    except _Exhausted:
        return None


def extremal_perfect_matching(
    h: Hypergraph,
    witness: ExtremalWitness,
    strict: bool = True,
    budget: int = DEFAULT_BUDGET,
    trace: dict | None = None,
) -> Matching | None:
    """Perfect matching of a near-barrier instance, built in the extremal-case sequence.

    Remove a small matching covering the atypical vertices, then solve the
    balanced k-partite remainder exactly. Returns None when a stage fails
    (possible below the asymptotic regime). With ``strict`` the degree and
    isolated-vertex hypotheses are enforced.
    """
    n, k = h.n, h.k
    if n % k:
        raise InvalidInput(f"k={k} does not divide n={n}")
    if verify_extremal(h, witness.S, witness.gamma) is None:
        raise InvalidInput("witness does not certify extremality")
    if strict:
        dplus, _ = min_positive_codegree(h)
        if dplus < threshold(k, n):
            raise PreconditionError(f"positive codegree {dplus} below {threshold(k, n)}")
        if isolated_vertices(h):
            raise PreconditionError("hypergraph has isolated vertices")
    info = trace if trace is not None else {}
    gamma = witness.gamma
    S = witness.S
    T = frozenset(range(n)) - S

    # stage 1-2: vertices with many missing one-in-S k-sets
    e1 = [0] * n
    for e in h.edges:
        hits = [v for v in e if v in S]
        if len(hits) == 1:
            for v in e:
                e1[v] += 1
    degF = [0] * n
    for v in range(n):
        if v in S:
            degF[v] = comb(len(T), k - 1) - e1[v]
        else:
            degF[v] = len(S) * comb(len(T) - 1, k - 2) - e1[v]
    cut = gamma * Fraction(n) ** (2 * (k - 1))  # compare squares: deg > sqrt(gamma) n^(k-1)
    X = frozenset(v for v in S if degF[v] ** 2 > cut)
    Y = frozenset(v for v in T if degF[v] ** 2 > cut)
    A = S | Y
    B = T - Y
    info.update(X=sorted(X), Y=sorted(Y))

    # stage 4: pair up vertices of A that share an edge
    alist = sorted(A)
    pos = {v: i for i, v in enumerate(alist)}
    gedges = sorted({(pos[u], pos[v]) for e in h.edges for u, v in combinations(e, 2) if u in A and v in A})
    G = Hypergraph._trusted(len(alist), 2, tuple(gedges))
    MG = [(alist[u], alist[v]) for u, v in graph_max_matching(G)]
    if len(MG) < len(Y):
        info["failed"] = "auxiliary matching too small"
        return None
    MG = MG[: len(Y)]
    in_mg = {v for p in MG for v in p}
    LG = sorted((X | Y) - in_mg)
    info.update(M_G=[list(p) for p in MG], L_G=LG)

    # stage 5: extend pairs and leftovers to disjoint edges through B
    seeds = [tuple(p) for p in MG] + [(x,) for x in LG]
    M = _extend_disjoint(h, seeds, B, budget=200_000)
    if M is None:
        info["failed"] = "could not extend the small matching"
        return None

    # stage 6: balanced k-partite remainder
    covered = {v for e in M for v in e}
    A2 = sorted(A - covered)
    B2 = sorted(B - covered)
    n2 = len(A2) + len(B2)
    info["n_prime"] = n2
    if len(A2) * k != n2 or len(B2) * k != (k - 1) * n2:
        info["failed"] = "unbalanced remainder"
        return None
    rest, labels = h.induced(A2 + B2)
    relabel = {v: i for i, v in enumerate(labels)}
    parts = [[relabel[v] for v in A2]] + [[relabel[v] for v in B2[j :: k - 1]] for j in range(k - 1)]
    hstar = kpartite_restrict(rest, parts) if n2 else rest
    if n2:
        side = n2 // k
        need = Fraction((k - 1) * side ** (k - 1), k)
        mindeg = min(len(x) for x in hstar.incidence)
        info["kpartite_degree_sufficient"] = mindeg >= need
        log.info("k-partite remainder: min degree %d, sufficient degree %s", mindeg, need)
    try:
        Mstar = find_perfect_matching(hstar, budget) if n2 else []
    except BudgetExceeded:
        info["failed"] = "k-partite search budget exhausted"
        return None
    if Mstar is None:
        info["failed"] = "k-partite remainder has no perfect matching"
        return None
    result = sorted(M + [tuple(sorted(labels[v] for v in e)) for e in Mstar])
    if not validate_matching(h, result, require_perfect=True):
        raise RuntimeError("extremal construction produced an invalid matching")  # pragma: no cover
    return result
