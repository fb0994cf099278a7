"""Almost-perfect matchings from well-spread fractional matchings (semi-random nibble)."""

from __future__ import annotations

import numpy as np

from .fractional import FractionalMatching
from .hypergraph import Hypergraph, InvalidInput, Matching, validate_matching


def greedy_complete(h: Hypergraph, matching: Matching) -> Matching:
    """Extend ``matching`` by the lexicographically first disjoint edges until maximal."""
    if not validate_matching(h, matching):
        raise InvalidInput("input matching is not a matching of h")
    taken = 0
    out = [tuple(sorted(e)) for e in matching]
    for e in out:
        for v in e:
            taken |= 1 << v
    for e, m in zip(h.edges, h.masks):
        if not m & taken:
            taken |= m
            out.append(e)
    return sorted(out)


def nibble(
    h: Hypergraph,
    w: FractionalMatching,
    rounds: int = 40,
    bite: float = 0.1,
    rng: np.random.Generator | int | None = None,
    complete: bool = True,
) -> Matching:
    """Weighted semi-random nibble followed by greedy completion.

    Each round samples every surviving edge independently with probability
    ``bite * w(e) / max_{v in e} L(v)``, where ``L(v)`` is the weight still
    on surviving edges at ``v``. Sampled edges meeting another sampled edge
    are all discarded; the rest join the matching and their vertices leave.
    With ``complete`` (the default) the result is then extended greedily.
    """
    if w.h != h:
        raise InvalidInput("fractional matching belongs to a different hypergraph")
    if not 0 < bite < 1:
        raise InvalidInput("bite must lie in (0, 1)")
    if not w.is_valid():
        raise InvalidInput("weights do not form a fractional matching")
    rng = np.random.default_rng(rng)
    chosen: list[int] = []
    if h.edges:
        E = np.asarray(h.edges, dtype=np.int64)
        wf = np.array([float(x) for x in w.weights])
        alive = np.flatnonzero(wf > 0)
        covered = np.zeros(h.n, dtype=bool)
        k = h.k
        for _ in range(rounds):
            if alive.size == 0:
                break
            ev = E[alive]
            we = wf[alive]
            load = np.bincount(ev.ravel(), weights=np.repeat(we, k), minlength=h.n)
            p = np.minimum(1.0, bite * we / load[ev].max(axis=1))
            pick = alive[rng.random(alive.size) < p]
            if pick.size:
                pv = E[pick]
                hits = np.bincount(pv.ravel(), minlength=h.n)
                keep = pick[(hits[pv] == 1).all(axis=1)]
                if keep.size:
                    chosen.extend(int(i) for i in keep)
                    covered[E[keep].ravel()] = True
                    alive = alive[~covered[ev].any(axis=1)]
    m = [h.edges[i] for i in sorted(chosen)]
    return greedy_complete(h, m) if complete else m
