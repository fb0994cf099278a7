"""Pure-Python search kernels.

Reference twin of ``_kernels.pyx``: same algorithms, same branching order,
same node accounting, so both backends return identical results. Masks are
Python ints, so there is no vertex-count limit here.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

FOUND, NONE, BUDGET = 0, 1, 2

FAILED_CACHE_CAP = 2_000_000


class _OutOfBudget(Exception):
    pass


def _incidence(n, masks):
    inc = [[] for _ in range(n)]
    for i, m in enumerate(masks):
        v = 0
        while m:
            if m & 1:
                inc[v].append(i)
            m >>= 1
            v += 1
    return inc


def perfect_matching(n, k, masks, budget):
    """Exhaustive search for a perfect matching.

    Branches on the lowest-id uncovered vertex of minimum live degree, trying
    its live edges in index order. A node is pruned when some uncovered vertex
    has no live edge, or when a greedy set of uncovered vertices no two of
    which share a live edge is larger than the number of edges still to place.
    Returns ``(status, edge_indices, nodes)``.
    """
    full = (1 << n) - 1
    if n % k:
        return NONE, [], 0
    inc = _incidence(n, masks)
    failed = set()
    chosen = []
    nodes = 0

    def rec(covered):
        nonlocal nodes
        if covered == full:
            return True
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget
        if covered in failed:
            return False
        uncovered = [v for v in range(n) if not covered >> v & 1]
        degs = []
        nbrs = {}
        best_v, best_d = -1, -1
        for v in uncovered:
            d = 0
            nb = 0
            for i in inc[v]:
                m = masks[i]
                if not m & covered:
                    d += 1
                    nb |= m
            if d == 0:
                _remember(covered)
                return False
            degs.append((d, v))
            nbrs[v] = nb
            if best_d < 0 or d < best_d:
                best_v, best_d = v, d
        degs.sort()
        blocked = 0
        indep = 0
        for _, v in degs:
            if not blocked >> v & 1:
                indep += 1
                blocked |= nbrs[v]
        if indep > len(uncovered) // k:
            _remember(covered)
            return False
        for i in inc[best_v]:
            m = masks[i]
            if m & covered:
                continue
            chosen.append(i)
            if rec(covered | m):
                return True
            chosen.pop()
        _remember(covered)
        return False

    def _remember(covered):
        if len(failed) < FAILED_CACHE_CAP:
            failed.add(covered)

    try:
        ok = rec(0)
    except _OutOfBudget:
        return BUDGET, [], nodes
    return (FOUND, list(chosen), nodes) if ok else (NONE, [], nodes)


def max_matching(n, k, masks, budget):
    """Branch and bound for a maximum matching.

    Lower bound: the greedy matching in index order. Upper bound at a node:
    current size plus (live vertices of positive live degree) // k.
    Returns ``(status, edge_indices, nodes)``.
    """
    inc = _incidence(n, masks)
    taken = 0
    best = []
    for i, m in enumerate(masks):
        if not m & taken:
            taken |= m
            best.append(i)
    cap = n // k
    chosen = []
    nodes = 0

    def rec(blocked):
        nonlocal nodes, best
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget
        size = len(chosen)
        if size > len(best):
            best = list(chosen)
        if len(best) == cap:
            return
        live = 0
        best_v, best_d = -1, -1
        for v in range(n):
            if blocked >> v & 1:
                continue
            d = 0
            for i in inc[v]:
                if not masks[i] & blocked:
                    d += 1
            if d:
                live += 1
                if best_d < 0 or d < best_d:
                    best_v, best_d = v, d
        if size + live // k <= len(best):
            return
        for i in inc[best_v]:
            m = masks[i]
            if m & blocked:
                continue
            chosen.append(i)
            rec(blocked | m)
            chosen.pop()
            if len(best) == cap:
                return
        rec(blocked | (1 << best_v))

    try:
        rec(0)
    except _OutOfBudget:
        return BUDGET, [], nodes
    return FOUND, best, nodes


def _complete_matchings(n, k):
    """All nonempty matchings of the complete k-graph, as lists of edge indices."""
    edges = list(combinations(range(n), k))
    masks = [sum(1 << v for v in e) for e in edges]
    out = []

    def rec(start, used, cur):
        for i in range(start, len(masks)):
            if not masks[i] & used:
                cur.append(i)
                out.append(list(cur))
                rec(i + 1, used | masks[i], cur)
                cur.pop()

    rec(0, 0, [])
    return edges, masks, out


def enumerate_small(n, k):
    """Statistics for every k-graph on ``n`` labelled vertices.

    Graph ``g`` (an integer) contains edge ``i`` of the lexicographic list of
    k-subsets iff bit ``i`` of ``g`` is set. Returns arrays indexed by ``g``:
    ``delta_plus``, ``isolated`` (has an isolated vertex), ``pm`` (has a
    perfect matching), ``max_matching`` and ``prop_ok`` (both degree
    extension properties hold).
    """
    edges, masks, matchings = _complete_matchings(n, k)
    m = len(edges)
    if m > 24:
        raise ValueError("too many k-sets to enumerate")
    total = 1 << m
    g = np.arange(total, dtype=np.uint32)
    bits = [((g >> i) & 1).astype(np.uint8) for i in range(m)]
    del g

    deg = {}
    for size in range(0, k + 1):
        for s in combinations(range(n), size):
            sm = sum(1 << v for v in s)
            acc = np.zeros(total, dtype=np.int16)
            for i, em in enumerate(masks):
                if em & sm == sm:
                    acc += bits[i]
            deg[sm] = acc

    big = np.int16(10_000)
    dplus = np.full(total, big, dtype=np.int16)
    for s in combinations(range(n), k - 1):
        d = deg[sum(1 << v for v in s)]
        dplus = np.minimum(dplus, np.where(d >= 1, d, big))
    dplus[dplus == big] = 0

    isolated = np.zeros(total, dtype=bool)
    for v in range(n):
        isolated |= deg[1 << v] == 0

    pm = np.zeros(total, dtype=bool)
    mm = np.zeros(total, dtype=np.int8)
    for match in matchings:
        present = np.ones(total, dtype=bool)
        for i in match:
            present &= bits[i].astype(bool)
        mm = np.maximum(mm, np.where(present, len(match), 0).astype(np.int8))
        if len(match) * k == n:
            pm |= present

    ok = np.ones(total, dtype=bool)
    for size in range(0, k):
        for s in combinations(range(n), size):
            sm = sum(1 << v for v in s)
            cand = np.zeros(total, dtype=np.int16)
            for x in range(n):
                if not sm >> x & 1:
                    cand += (deg[sm | 1 << x] >= 1).astype(np.int16)
            ok &= ~((deg[sm] >= 1) & (cand < dplus + (k - 1 - size)))
    binom = np.array([comb(d + k - 2, k - 1) for d in range(m + k + 1)], dtype=np.int64)
    bound = binom[dplus.astype(np.int64)]
    for v in range(n):
        d = deg[1 << v].astype(np.int64)
        ok &= ~((d >= 1) & (d < bound))

    return {
        "delta_plus": dplus.astype(np.int16),
        "isolated": isolated,
        "pm": pm,
        "max_matching": mm,
        "prop_ok": ok,
    }
