"""Exact matching oracles for k-graphs and graphs."""

from __future__ import annotations

from functools import lru_cache

from . import _backend
from .hypergraph import Hypergraph, InvalidInput, Matching

DEFAULT_BUDGET = 50_000_000


class BudgetExceeded(RuntimeError):
    """The search hit its node budget before reaching a verdict."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


def find_perfect_matching(
    h: Hypergraph, budget: int | None = DEFAULT_BUDGET, backend: str | None = None
) -> Matching | None:
    """A perfect matching of ``h``, or ``None`` when provably none exists.

    Raises :class:`BudgetExceeded` rather than guessing when the node budget
    runs out.
    """
    if h.n % h.k:
        raise InvalidInput(f"k={h.k} does not divide n={h.n}")
    status, idx, nodes = _backend.perfect_matching(
        h.n, h.k, h.masks, budget if budget is not None else 2**62, backend
    )
    if status == _backend.BUDGET:
        raise BudgetExceeded(nodes)
    if status == _backend.NONE:
        return None
    return sorted(h.edges[i] for i in idx)


def max_matching(h: Hypergraph, budget: int | None = DEFAULT_BUDGET, backend: str | None = None) -> Matching:
    status, idx, nodes = _backend.max_matching(
        h.n, h.k, h.masks, budget if budget is not None else 2**62, backend
    )
    if status == _backend.BUDGET:
        raise BudgetExceeded(nodes)
    return sorted(h.edges[i] for i in idx)


def max_matching_size(h: Hypergraph, budget: int | None = DEFAULT_BUDGET, backend: str | None = None) -> int:
    return len(max_matching(h, budget, backend))


def graph_max_matching(g: Hypergraph) -> Matching:
    """Maximum matching of a graph (k = 2) by memoised search over vertex masks."""
    if g.k != 2:
        raise InvalidInput("graph_max_matching needs k = 2")
    n = g.n
    nbr = [0] * n
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u

    @lru_cache(maxsize=None)
    def best(mask: int) -> tuple[tuple[int, int], ...]:
        # mask: vertices still available; lowest one is matched or dropped
        while mask and not nbr[(mask & -mask).bit_length() - 1] & mask:
            mask &= mask - 1
        if not mask:
            return ()
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        ceiling = (rest.bit_count() + 1) // 2
        top: tuple[tuple[int, int], ...] = ()
        cand = nbr[v] & rest
        while cand:
            u = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            sub = ((v, u),) + best(rest & ~(1 << u))
            if len(sub) > len(top):
                top = sub
                if len(top) == ceiling:
                    return top
        skip = best(rest)
        return skip if len(skip) > len(top) else top

    return sorted(best((1 << n) - 1))
