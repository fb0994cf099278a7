"""Absorbers and absorbing structures.

A set W of k(k-1) vertices absorbs a k-set T when both H[W] and H[W | T]
have perfect matchings. Gadgets are grown as a (k-1) x k grid whose rows are
edges (a perfect matching of H[W]) and whose columns, each topped by a
vertex of T, are edges too (a perfect matching of H[W | T]).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable

import numpy as np

from .exact import find_perfect_matching
from .hypergraph import (
    Edge,
    Hypergraph,
    InvalidInput,
    Matching,
    PreconditionError,
    extend_candidates,
    isolated_vertices,
    min_positive_codegree,
    validate_matching,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Absorber:
    T: tuple[int, ...]
    W: tuple[int, ...]
    pm_W: tuple[Edge, ...]
    pm_WT: tuple[Edge, ...]

    def to_dict(self) -> dict:
        return {
            "T": list(self.T),
            "W": list(self.W),
            "pm_W": [list(e) for e in self.pm_W],
            "pm_WT": [list(e) for e in self.pm_WT],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "Absorber":
        return cls(
            tuple(obj["T"]),
            tuple(obj["W"]),
            tuple(tuple(e) for e in obj["pm_W"]),
            tuple(tuple(e) for e in obj["pm_WT"]),
        )


@dataclass(frozen=True)
class AbsorbParams:
    beta: Fraction = Fraction(1, 10)
    alpha: Fraction = Fraction(1, 10)
    sample_prob: float | None = None
    family_cap: Fraction | None = None
    seed: int = 0
    gadget_retries: int = 20
    capacity_samples: int = 40
    slack: int = 0

    def __post_init__(self) -> None:
        if not 0 < self.beta <= 1:
            raise InvalidInput("beta must lie in (0, 1]")
        if not 0 < self.alpha <= Fraction(1, 2):
            raise InvalidInput("alpha must lie in (0, 1/2]")
        if self.sample_prob is not None and not 0 <= self.sample_prob <= 1:
            raise InvalidInput("sample_prob must lie in [0, 1]")

    def c(self, k: int) -> Fraction:
        """3 beta^2 (k(k-1))! / alpha^(k(k-1)), the random model's family constant."""
        if self.family_cap is not None:
            return Fraction(self.family_cap)
        kk = k * (k - 1)
        return 3 * Fraction(self.beta) ** 2 * factorial(kk) / Fraction(self.alpha) ** kk

    def p(self, k: int, n: int) -> float:
        """Inclusion probability c * n^(1 - k(k-1)) of the random model."""
        if self.sample_prob is not None:
            return self.sample_prob
        return min(1.0, float(self.c(k)) * n ** (1 - k * (k - 1)))


@dataclass(frozen=True)
class AbsorbingStructure:
    k: int
    family: tuple[Absorber, ...] = ()
    capacity: int = 0
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def A(self) -> frozenset[int]:
        return frozenset(v for a in self.family for v in a.W)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "capacity": self.capacity,
            "family": [a.to_dict() for a in self.family],
            "diagnostics": self.diagnostics,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "AbsorbingStructure":
        return cls(
            obj["k"],
            tuple(Absorber.from_dict(a) for a in obj["family"]),
            obj["capacity"],
            obj.get("diagnostics", {}),
        )


def _induced_pm(h: Hypergraph, vertices: Iterable[int]) -> list[Edge] | None:
    sub, labels = h.induced(vertices)
    pm = find_perfect_matching(sub)
    if pm is None:
        return None
    return sorted(tuple(labels[v] for v in e) for e in pm)


def _check_absorber_shape(h: Hypergraph, W: set[int], T: set[int]) -> None:
    k = h.k
    if len(T) != k:
        raise InvalidInput(f"|T| must be k={k}")
    if len(W) != k * (k - 1):
        raise InvalidInput(f"|W| must be k(k-1)={k * (k - 1)}")
    if W & T:
        raise InvalidInput("W and T must be disjoint")


def absorbing_witness(h: Hypergraph, W: Iterable[int], T: Iterable[int]) -> tuple[list[Edge], list[Edge]] | None:
    """Perfect matchings of H[W] and H[W | T], or None if ``W`` does not absorb ``T``."""
    W, T = set(W), set(T)
    _check_absorber_shape(h, W, T)
    pm_w = _induced_pm(h, W)
    if pm_w is None:
        return None
    pm_wt = _induced_pm(h, W | T)
    if pm_wt is None:
        return None
    return pm_w, pm_wt


def is_absorber(h: Hypergraph, W: Iterable[int], T: Iterable[int]) -> bool:
    return absorbing_witness(h, W, T) is not None


def find_absorber_gadget(
    h: Hypergraph,
    T: Iterable[int],
    forbidden: Iterable[int],
    rng: np.random.Generator,
    retries: int = 20,
) -> Absorber | None:
    """Grow a grid gadget absorbing ``T`` while avoiding ``forbidden``.

    Cell (i, j) is drawn uniformly from the vertices that keep both row i and
    column j (headed by t_j) inside some edge. ``None`` means no gadget was
    found within ``retries`` attempts, not that none exists.
    """
    T = tuple(sorted(T))
    k = h.k
    if len(T) != k:
        raise InvalidInput(f"|T| must be k={k}")
    banned = set(T) | set(forbidden)
    for _ in range(retries):
        grid: list[list[int]] = []
        used = set(banned)
        try:
            for i in range(k - 1):
                row: list[int] = []
                for j in range(k):
                    col = [T[j]] + [grid[r][j] for r in range(i)]
                    cand = extend_candidates(h, row) & extend_candidates(h, col)
                    cand = sorted(cand - used)
                    if not cand:
                        raise LookupError
                    x = cand[int(rng.integers(len(cand)))]
                    row.append(x)
                    used.add(x)
                grid.append(row)
        except (LookupError, PreconditionError):
            continue
        pm_w = tuple(sorted(tuple(sorted(r)) for r in grid))
        pm_wt = tuple(sorted(tuple(sorted([T[j]] + [grid[i][j] for i in range(k - 1)])) for j in range(k)))
        W = tuple(sorted(v for r in grid for v in r))
        ok = validate_matching(h, pm_w) and validate_matching(h, pm_wt) and is_absorber(h, W, T)
        if not ok:  # pragma: no cover - grid rows/columns are edges by construction
            log.warning("gadget for T=%s failed verification", T)
            continue
        return Absorber(T, W, pm_w, pm_wt)
    return None


def build_absorbing_structure(h: Hypergraph, params: AbsorbParams) -> AbsorbingStructure:
    """Sample disjoint verified absorbers and measure how much they can absorb.

    Random k-sets T are drawn outside the current family and a gadget is grown
    for each, until the family reaches floor(beta n / (k(k-1))) members or
    50 n attempts have been spent. Members that absorb none of the sampled
    k-sets outside the family are dropped. Capacity is the smallest number of
    members absorbing a sampled k-set, minus ``params.slack``.
    """
    n, k = h.n, h.k
    kk = k * (k - 1)
    target = int(Fraction(params.beta) * n / kk)
    diag: dict = {"target": target, "c": str(params.c(k)), "p": params.p(k, n)}
    if h.edges:
        dplus, _ = min_positive_codegree(h)
        if Fraction(dplus) < Fraction(n, 2) + Fraction(params.alpha) * n:
            diag["warning"] = "positive codegree below n/2 + alpha n"
        if isolated_vertices(h):
            diag["warning"] = "isolated vertices present"
    if not h.edges or target == 0:
        return AbsorbingStructure(k, (), 0, diag)
    rng = np.random.default_rng(params.seed)
    family: list[Absorber] = []
    used: set[int] = set()
    attempts = 0
    while len(family) < target and attempts < 50 * n:
        attempts += 1
        free = [v for v in range(n) if v not in used]
        if len(free) < kk + k:
            break
        T = [int(v) for v in rng.choice(free, size=k, replace=False)]
        gadget = find_absorber_gadget(h, T, used, rng, params.gadget_retries)
        if gadget is not None:
            family.append(gadget)
            used.update(gadget.W)
    diag["attempts"] = attempts

    kept: list[Absorber] = []
    seen: set[int] = set()
    for a in family:
        if seen.isdisjoint(a.W) and is_absorber(h, a.W, a.T):
            kept.append(a)
            seen.update(a.W)

    outside = [v for v in range(n) if v not in seen]
    samples = []
    if kept and len(outside) >= k:
        for _ in range(params.capacity_samples):
            samples.append(sorted(int(v) for v in rng.choice(outside, size=k, replace=False)))
    hits = [[is_absorber(h, a.W, T) for a in kept] for T in samples]
    if samples:
        # members absorbing none of the sampled k-sets are dropped
        useful = [i for i in range(len(kept)) if any(row[i] for row in hits)]
        kept = [kept[i] for i in useful]
        hits = [[row[i] for i in useful] for row in hits]
    counts = [sum(row) for row in hits]
    capacity = max(0, min(counts) - params.slack) if counts else 0
    diag["per_T_counts"] = [[T, c] for T, c in zip(samples, counts)]
    return AbsorbingStructure(k, tuple(kept), capacity, diag)


def absorb(h: Hypergraph, S: Iterable[int], structure: AbsorbingStructure) -> Matching | None:
    """Perfect matching of H[A | S] using one distinct absorber per k-chunk of ``S``.

    ``None`` if no assignment of absorbers to chunks exists (the measured
    capacity was optimistic for this ``S``).
    """
    S = sorted(set(S))
    k = h.k
    A = structure.A
    if A & set(S):
        raise InvalidInput("S must avoid the absorbing set")
    if len(S) % k:
        raise InvalidInput(f"|S| must be divisible by k={k}")
    r = len(S) // k
    if r > structure.capacity:
        raise InvalidInput(f"|S|/k = {r} exceeds capacity {structure.capacity}")
    chunks = [S[i * k : (i + 1) * k] for i in range(r)]
    family = structure.family
    cache: dict[tuple[int, int], list[Edge] | None] = {}

    def witness(ci: int, ai: int) -> list[Edge] | None:
        key = (ci, ai)
        if key not in cache:
            cache[key] = _induced_pm(h, set(family[ai].W) | set(chunks[ci]))
        return cache[key]

    assign: dict[int, int] = {}

    def place(ci: int) -> bool:
        if ci == r:
            return True
        for ai in range(len(family)):
            if ai in assign.values():
                continue
            if witness(ci, ai) is None:
                continue
            assign[ci] = ai
            if place(ci + 1):
                return True
            del assign[ci]
        return False

    if not place(0):
        return None
    used = set(assign.values())
    out: list[Edge] = []
    for ci, ai in assign.items():
        out.extend(witness(ci, ai))
    for ai, a in enumerate(family):
        if ai not in used:
            out.extend(a.pm_W)
    out.sort()
    sub, labels = h.induced(A | set(S))
    pos = {v: i for i, v in enumerate(labels)}
    if not validate_matching(sub, [tuple(pos[v] for v in e) for e in out], require_perfect=True):
        raise RuntimeError("absorbed matching failed validation")  # pragma: no cover
    return out
