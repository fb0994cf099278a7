# distutils: language = c++
"""Compiled search kernels (vertex sets as 64-bit masks, so n <= 64).

Mirrors ``_kernels_py`` operation for operation; see that module for the
algorithm descriptions. The dispatcher in ``_backend`` routes larger
instances to the Python twin.
"""

from itertools import combinations
from math import comb

import numpy as np

from libc.stdint cimport uint32_t, uint64_t
from libc.string cimport memset
from libcpp.unordered_set cimport unordered_set
from libcpp.vector cimport vector

FOUND, NONE, BUDGET = 0, 1, 2

MAX_N = 64
cdef size_t FAILED_CACHE_CAP = 2_000_000


cdef inline uint64_t _full(int n):
    if n == 0:
        return 0
    return (<uint64_t>0xFFFFFFFFFFFFFFFF) >> (64 - n)


cdef class _Search:
    cdef int n, k
    cdef vector[uint64_t] masks
    cdef vector[int] inc_start, inc_idx
    cdef long long nodes, budget
    cdef bint oob
    cdef unordered_set[uint64_t] failed
    cdef vector[int] chosen
    cdef vector[int] best
    cdef uint64_t full

    def __init__(self, int n, int k, masks, long long budget):
        cdef int i, v
        cdef uint64_t m
        cdef list inc = [[] for _ in range(n)]
        self.n = n
        self.k = k
        self.budget = budget
        self.nodes = 0
        self.oob = False
        self.full = _full(n)
        for i, pm in enumerate(masks):
            m = <uint64_t>pm
            self.masks.push_back(m)
            for v in range(n):
                if (m >> v) & 1:
                    inc[v].append(i)
        self.inc_start.push_back(0)
        for v in range(n):
            for i in inc[v]:
                self.inc_idx.push_back(i)
            self.inc_start.push_back(<int>self.inc_idx.size())

    cdef inline void remember(self, uint64_t covered):
        if self.failed.size() < FAILED_CACHE_CAP:
            self.failed.insert(covered)

    cdef bint pm_rec(self, uint64_t covered):
        cdef int v, j, i, d, t, best_v = -1, best_d = -1, nunc = 0, indep = 0
        cdef uint64_t m, nb, blocked
        cdef int dv[64]
        cdef int order[64]
        cdef uint64_t nbrs[64]
        if covered == self.full:
            return True
        self.nodes += 1
        if self.nodes > self.budget:
            self.oob = True
            return False
        if self.failed.count(covered):
            return False
        for v in range(self.n):
            if (covered >> v) & 1:
                continue
            d = 0
            nb = 0
            for j in range(self.inc_start[v], self.inc_start[v + 1]):
                m = self.masks[self.inc_idx[j]]
                if not (m & covered):
                    d += 1
                    nb |= m
            if d == 0:
                self.remember(covered)
                return False
            dv[v] = d
            nbrs[v] = nb
            # stable insertion by degree keeps ties in ascending id order
            t = nunc
            while t > 0 and dv[order[t - 1]] > d:
                order[t] = order[t - 1]
                t -= 1
            order[t] = v
            nunc += 1
            if best_d < 0 or d < best_d:
                best_v = v
                best_d = d
        blocked = 0
        for t in range(nunc):
            v = order[t]
            if not ((blocked >> v) & 1):
                indep += 1
                blocked |= nbrs[v]
        if indep > nunc // self.k:
            self.remember(covered)
            return False
        for j in range(self.inc_start[best_v], self.inc_start[best_v + 1]):
            i = self.inc_idx[j]
            m = self.masks[i]
            if m & covered:
                continue
            self.chosen.push_back(i)
            if self.pm_rec(covered | m):
                return True
            if self.oob:
                return False
            self.chosen.pop_back()
        self.remember(covered)
        return False

    cdef void mm_rec(self, uint64_t blocked):
        cdef int v, j, i, d, size, live = 0, best_v = -1, best_d = -1
        cdef int cap = self.n // self.k
        cdef uint64_t m
        self.nodes += 1
        if self.nodes > self.budget:
            self.oob = True
            return
        size = <int>self.chosen.size()
        if size > <int>self.best.size():
            self.best = self.chosen
        if <int>self.best.size() == cap:
            return
        for v in range(self.n):
            if (blocked >> v) & 1:
                continue
            d = 0
            for j in range(self.inc_start[v], self.inc_start[v + 1]):
                if not (self.masks[self.inc_idx[j]] & blocked):
                    d += 1
            if d:
                live += 1
                if best_d < 0 or d < best_d:
                    best_v = v
                    best_d = d
        if size + live // self.k <= <int>self.best.size():
            return
        for j in range(self.inc_start[best_v], self.inc_start[best_v + 1]):
            i = self.inc_idx[j]
            m = self.masks[i]
            if m & blocked:
                continue
            self.chosen.push_back(i)
            self.mm_rec(blocked | m)
            self.chosen.pop_back()
            if self.oob or <int>self.best.size() == cap:
                return
        self.mm_rec(blocked | ((<uint64_t>1) << best_v))


def perfect_matching(int n, int k, masks, long long budget):
    if n > MAX_N:
        raise ValueError("compiled kernel supports n <= 64")
    if n % k:
        return NONE, [], 0
    cdef _Search s = _Search(n, k, masks, budget)
    cdef bint ok = s.pm_rec(0)
    if s.oob:
        return BUDGET, [], s.nodes
    if ok:
        return FOUND, [i for i in s.chosen], s.nodes
    return NONE, [], s.nodes


def max_matching(int n, int k, masks, long long budget):
    if n > MAX_N:
        raise ValueError("compiled kernel supports n <= 64")
    cdef _Search s = _Search(n, k, masks, budget)
    cdef uint64_t taken = 0
    cdef size_t i
    for i in range(s.masks.size()):
        if not (s.masks[i] & taken):
            taken |= s.masks[i]
            s.best.push_back(<int>i)
    s.mm_rec(0)
    if s.oob:
        return BUDGET, [], s.nodes
    return FOUND, [i for i in s.best], s.nodes


def enumerate_small(int n, int k):
    """Compiled twin of ``_kernels_py.enumerate_small``."""
    from ._kernels_py import _complete_matchings

    edges, pymasks, matchings = _complete_matchings(n, k)
    cdef int m = len(edges)
    if m > 24 or n > 8:
        raise ValueError("too many k-sets to enumerate")
    cdef long long total = 1 << m
    cdef int nsub = 1 << n
    cdef vector[uint32_t] emask
    cdef vector[uint32_t] mset
    cdef vector[int] msize
    cdef vector[uint32_t] small_sets
    cdef vector[int] small_size
    cdef vector[uint32_t] ksub1
    cdef vector[long long] binom
    for pem in pymasks:
        emask.push_back(<uint32_t>pem)
    for match in matchings:
        bs = 0
        for pi in match:
            bs |= 1 << pi
        mset.push_back(<uint32_t>bs)
        msize.push_back(len(match))
    for size in range(0, k):
        for s in combinations(range(n), size):
            small_sets.push_back(<uint32_t>sum(1 << u for u in s))
            small_size.push_back(size)
    for s in combinations(range(n), k - 1):
        ksub1.push_back(<uint32_t>sum(1 << u for u in s))
    for pd in range(m + k + 1):
        binom.push_back(comb(pd + k - 2, k - 1))

    dplus_a = np.zeros(total, dtype=np.int16)
    iso_a = np.zeros(total, dtype=np.uint8)
    pm_a = np.zeros(total, dtype=np.uint8)
    mm_a = np.zeros(total, dtype=np.int8)
    ok_a = np.zeros(total, dtype=np.uint8)
    cdef short[:] dplus_v = dplus_a
    cdef unsigned char[:] iso_v = iso_a
    cdef unsigned char[:] pm_v = pm_a
    cdef signed char[:] mm_v = mm_a
    cdef unsigned char[:] ok_v = ok_a

    cdef int deg[256]
    cdef long long g
    cdef int i, v, t, x, d, dp, cand, best_mm, has_pm, iso, ok
    cdef uint32_t sub, em, sm
    cdef size_t q
    for g in range(total):
        memset(deg, 0, nsub * sizeof(int))
        for i in range(m):
            if (g >> i) & 1:
                em = emask[i]
                sub = em
                while True:
                    deg[sub] += 1
                    if sub == 0:
                        break
                    sub = (sub - 1) & em
        dp = 0
        for q in range(ksub1.size()):
            d = deg[ksub1[q]]
            if d >= 1 and (dp == 0 or d < dp):
                dp = d
        iso = 0
        for v in range(n):
            if deg[1 << v] == 0:
                iso = 1
                break
        has_pm = 0
        best_mm = 0
        for q in range(mset.size()):
            if (<uint32_t>g & mset[q]) == mset[q]:
                if msize[q] > best_mm:
                    best_mm = msize[q]
                if msize[q] * k == n:
                    has_pm = 1
        ok = 1
        for q in range(small_sets.size()):
            sm = small_sets[q]
            if deg[sm] < 1:
                continue
            cand = 0
            for x in range(n):
                if not ((sm >> x) & 1) and deg[sm | (1 << x)] >= 1:
                    cand += 1
            if cand < dp + (k - 1 - small_size[q]):
                ok = 0
                break
        if ok:
            for v in range(n):
                d = deg[1 << v]
                if d >= 1 and d < binom[dp]:
                    ok = 0
                    break
        dplus_v[g] = dp
        iso_v[g] = iso
        pm_v[g] = has_pm
        mm_v[g] = best_mm
        ok_v[g] = ok
    return {
        "delta_plus": dplus_a,
        "isolated": iso_a.astype(bool),
        "pm": pm_a.astype(bool),
        "max_matching": mm_a,
        "prop_ok": ok_a.astype(bool),
    }
