"""k-uniform hypergraphs: degrees, codegrees, matchings and instance formats.

Vertices are the integers ``0..n-1``. Edges are strictly increasing
tuples of length ``k`` kept in lexicographic order, so two hypergraphs with
the same edge set compare (and serialize) identically.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

MAX_VERTICES = 512

Edge = tuple[int, ...]
Matching = list[Edge]


class InvalidInput(ValueError):
    """Raised when an argument violates an operation's input contract."""


class PreconditionError(InvalidInput):
    """Raised when a well-formed input fails a mathematical precondition."""


def _canonical_edge(edge: Iterable[int], n: int, k: int) -> Edge:
    e = tuple(sorted(int(v) for v in edge))
    if len(e) != k:
        raise InvalidInput(f"edge {e} does not have {k} vertices")
    if len(set(e)) != k:
        raise InvalidInput(f"edge {e} repeats a vertex")
    if e[0] < 0 or e[-1] >= n:
        raise InvalidInput(f"edge {e} has a vertex outside 0..{n - 1}")
    return e


@dataclass(frozen=True)
class Hypergraph:
    """An immutable k-uniform hypergraph on vertices ``0..n-1``."""

    n: int
    k: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.k < 2:
            raise InvalidInput("uniformity k must be at least 2")
        if self.n < 0:
            raise InvalidInput("vertex count must be nonnegative")
        if self.n > MAX_VERTICES:
            raise InvalidInput(f"n = {self.n} exceeds the vertex cap {MAX_VERTICES}")
        canon = [_canonical_edge(e, self.n, self.k) for e in self.edges]
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise InvalidInput(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(canon))

    @classmethod
    def _trusted(cls, n: int, k: int, edges: tuple[Edge, ...]) -> "Hypergraph":
        # edges already canonical, sorted and distinct
        h = object.__new__(cls)
        object.__setattr__(h, "n", n)
        object.__setattr__(h, "k", k)
        object.__setattr__(h, "edges", edges)
        return h

    def __len__(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, k={self.k}, m={len(self.edges)})"

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Edge bit masks, in canonical edge order."""
        out = []
        for e in self.edges:
            m = 0
            for v in e:
                m |= 1 << v
            out.append(m)
        return tuple(out)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """For each vertex, the indices of the edges containing it (ascending)."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def codegrees(self) -> Counter:
        """deg(S) for every (k-1)-set S of positive degree."""
        cnt: Counter = Counter()
        for e in self.edges:
            for s in combinations(e, self.k - 1):
                cnt[s] += 1
        return cnt

    def has_edge(self, e: Iterable[int]) -> bool:
        return tuple(sorted(e)) in self.edge_index

    def vertex_degree(self, v: int) -> int:
        return len(self.incidence[v])

    def induced(self, vertices: Iterable[int]) -> tuple["Hypergraph", list[int]]:
        """Sub-hypergraph induced on ``vertices``, relabelled to ``0..|U|-1``.

        Returns the relabelled hypergraph and the list mapping new ids back to
        the original ones.
        """
        labels = sorted(set(vertices))
        _check_members(self, labels)
        pos = {v: i for i, v in enumerate(labels)}
        u = len(labels)
        k = self.k
        if comb(u, k) <= 4 * len(self.edges):
            index = self.edge_index
            edges = tuple(
                tuple(pos[v] for v in s) for s in combinations(labels, k) if s in index
            )
        else:
            umask = 0
            for v in labels:
                umask |= 1 << v
            edges = tuple(
                tuple(pos[v] for v in e)
                for e, m in zip(self.edges, self.masks)
                if m & umask == m
            )
        return Hypergraph._trusted(u, k, edges), labels

    def to_text(self) -> str:
        lines = [f"{self.k} {self.n} {len(self.edges)}"]
        lines.extend(" ".join(map(str, e)) for e in self.edges)
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"k": self.k, "n": self.n, "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _strict(n: int, k: int, raw: Sequence[Sequence[int]]) -> Hypergraph:
    edges = [_canonical_edge(e, n, k) for e in raw]
    if len(set(edges)) != len(edges):
        raise InvalidInput("instance lists a duplicate edge")
    return Hypergraph(n, k, tuple(edges))


def parse_text(text: str) -> Hypergraph:
    """Parse the ``k n m`` header format followed by ``m`` edge lines."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 3:
        raise InvalidInput("first line must be 'k n m'")
    try:
        k, n, m = (int(x) for x in rows[0])
        raw = [[int(x) for x in r] for r in rows[1:]]
    except ValueError as exc:
        raise InvalidInput(f"non-integer token: {exc}") from None
    if len(raw) != m:
        raise InvalidInput(f"header announces {m} edges, found {len(raw)}")
    return _strict(n, k, raw)


def parse_json(text: str) -> Hypergraph:
    try:
        obj = json.loads(text)
        k, n, raw = int(obj["k"]), int(obj["n"]), obj["edges"]
    except (ValueError, KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed JSON instance: {exc}") from None
    return _strict(n, k, raw)


def parse(text: str, fmt: str = "text") -> Hypergraph:
    if fmt == "json":
        return parse_json(text)
    if fmt == "text":
        return parse_text(text)
    raise InvalidInput(f"unknown format {fmt!r}")


def _check_members(h: Hypergraph, s: Iterable[int]) -> None:
    for v in s:
        if not 0 <= v < h.n:
            raise InvalidInput(f"vertex {v} outside 0..{h.n - 1}")


def vertex_mask(s: Iterable[int]) -> int:
    m = 0
    for v in s:
        m |= 1 << v
    return m


def degree(h: Hypergraph, s: Iterable[int]) -> int:
    """Number of edges containing every vertex of ``s``."""
    s = set(s)
    _check_members(h, s)
    if not s:
        return len(h.edges)
    if len(s) > h.k:
        return 0
    inc = h.incidence
    pivot = min(s, key=lambda v: len(inc[v]))
    sm = vertex_mask(s)
    masks = h.masks
    return sum(1 for i in inc[pivot] if masks[i] & sm == sm)


def min_codegree(h: Hypergraph) -> int:
    if h.n < h.k:
        raise InvalidInput("min codegree needs n >= k")
    cd = h.codegrees
    if len(cd) < comb(h.n, h.k - 1):
        return 0
    return min(cd.values())


def min_positive_codegree(h: Hypergraph) -> tuple[int, frozenset[int] | None]:
    """Minimum degree over (k-1)-sets of positive degree, with a witness set.

    The witness is the lexicographically least minimizer; ``(0, None)`` when
    ``h`` has no edges.
    """
    if h.n < h.k:
        raise InvalidInput("min positive codegree needs n >= k")
    cd = h.codegrees
    if not cd:
        return 0, None
    best = min(cd.values())
    witness = min(s for s, d in cd.items() if d == best)
    return best, frozenset(witness)


def isolated_vertices(h: Hypergraph) -> frozenset[int]:
    return frozenset(v for v in h.vertices if not h.incidence[v])


def edges_with_two_in(h: Hypergraph, s: Iterable[int]) -> int:
    """Number of edges meeting ``s`` in at least two vertices."""
    s = set(s)
    _check_members(h, s)
    sm = vertex_mask(s)
    return sum(1 for m in h.masks if (m & sm).bit_count() >= 2)


def validate_matching(h: Hypergraph, matching: Iterable[Iterable[int]], require_perfect: bool = False) -> bool:
    seen = 0
    index = h.edge_index
    for e in matching:
        e = tuple(sorted(e))
        if e not in index:
            return False
        m = vertex_mask(e)
        if seen & m:
            return False
        seen |= m
    if require_perfect:
        return seen == (1 << h.n) - 1
    return True


def extend_candidates(h: Hypergraph, s: Iterable[int]) -> frozenset[int]:
    """Vertices ``x`` outside ``s`` with ``deg(s | {x}) >= 1``."""
    s = set(s)
    _check_members(h, s)
    if len(s) > h.k - 1:
        raise InvalidInput(f"|S| = {len(s)} exceeds k-1 = {h.k - 1}")
    sm = vertex_mask(s)
    if not s:
        covered = 0
        for m in h.masks:
            covered |= m
    else:
        inc = h.incidence
        pivot = min(s, key=lambda v: len(inc[v]))
        covered = 0
        for i in inc[pivot]:
            m = h.masks[i]
            if m & sm == sm:
                covered |= m
    if covered == 0:
        raise PreconditionError(f"deg(S) = 0 for S = {sorted(s)}")
    covered &= ~sm
    return frozenset(v for v in h.vertices if covered >> v & 1)


def degree_lower_bound_check(h: Hypergraph) -> bool:
    """Every non-isolated vertex has degree >= C(delta_plus + k - 2, k - 1)."""
    if not h.edges:
        return True
    dplus, _ = min_positive_codegree(h)
    bound = comb(dplus + h.k - 2, h.k - 1)
    return all(not inc or len(inc) >= bound for inc in h.incidence)
