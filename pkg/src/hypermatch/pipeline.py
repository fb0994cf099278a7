"""End-to-end perfect-matching driver and the threshold sweep harness."""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import _backend
from .absorbing import AbsorbParams, absorb, build_absorbing_structure
from .almost import nibble
from .constructions import (
    complete,
    extremal_construction,
    extremal_parts,
    from_edges,
    planted_extremal,
    random_binomial,
)
from .exact import DEFAULT_BUDGET, BudgetExceeded, find_perfect_matching
from .extremal import (
    EXHAUSTIVE_CAP,
    ExtremalWitness,
    default_gamma,
    extremal_perfect_matching,
    find_extremal_set,
    threshold,
    verify_extremal,
)
from .fractional import (
    FarkasCertificate,
    FractionalMatching,
    _pair_rows,
    minmax_pair_fractional,
    spread_fractional,
    uniform_fractional,
)
from .hypergraph import (
    Hypergraph,
    InvalidInput,
    Matching,
    isolated_vertices,
    min_positive_codegree,
    validate_matching,
)

log = logging.getLogger(__name__)

CSV_FIELDS = ("k", "n", "model", "seed", "delta_plus", "isolated", "pm_exists", "path", "agree")


@dataclass(frozen=True)
class PipelineConfig:
    gamma: Fraction
    beta: Fraction
    alpha: Fraction = Fraction(1, 10)
    eta: Fraction = Fraction(1, 10)
    epsilon: Fraction = Fraction(1, 100)
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    fallback_to_exact: bool = True
    nibble_rounds: int = 40
    nibble_attempts: int = 3
    bite: float = 0.1
    minmax_row_limit: int = 120
    spread_samples: int = 2
    spread_edges_per_vertex: int = 4

    def __post_init__(self) -> None:
        for name in ("gamma", "beta", "alpha", "eta", "epsilon"):
            v = Fraction(getattr(self, name))
            if not 0 < v < 1:
                raise InvalidInput(f"{name} must lie strictly between 0 and 1")
            object.__setattr__(self, name, v)
        if self.beta > self.gamma / 4:
            raise InvalidInput("beta must not exceed gamma/4")
        if not 0 < self.bite < 1:
            raise InvalidInput("bite must lie in (0, 1)")

    @classmethod
    def default(cls, k: int, **kw) -> "PipelineConfig":
        """Constants from the proof hierarchy; at desk scale these make the absorbing set empty."""
        g = default_gamma(k)
        return cls(gamma=g, beta=g / 4, **kw)

    @classmethod
    def desk(cls, k: int, **kw) -> "PipelineConfig":
        """Loose constants that give the constructive stages room to act for n in the tens."""
        return cls(gamma=Fraction(1, 2), beta=Fraction(1, 8), **kw)

    def with_overrides(self, **kw) -> "PipelineConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


@dataclass
class SolveTrace:
    path: str | None = None
    stages: dict = field(default_factory=dict)
    valid: bool = False
    status: str = "pending"

    def to_dict(self) -> dict:
        return {"path": self.path, "status": self.status, "valid": self.valid, "stages": self.stages}


def _fractional(h: Hypergraph, cfg: PipelineConfig, rng: np.random.Generator, info: dict):
    uni = uniform_fractional(h)
    if uni is not None:
        info["fractional"] = "uniform"
        return uni
    if h.n + len(_pair_rows(h)) <= cfg.minmax_row_limit:
        info["fractional"] = "minmax"
        res = minmax_pair_fractional(h)
        if isinstance(res, FarkasCertificate):
            return res
        w, M = res
        info["max_pair_load"] = str(M)
        return w
    info["fractional"] = "spread"
    return spread_fractional(h, cfg.spread_samples, rng, cfg.spread_edges_per_vertex)


def _absorb_nibble(h: Hypergraph, cfg: PipelineConfig, rng: np.random.Generator, info: dict):
    """Returns (matching or None, certificate of H' or None, H' labels)."""
    n, k = h.n, h.k
    params = AbsorbParams(beta=cfg.beta, alpha=cfg.alpha, seed=int(rng.integers(2**31)))
    structure = build_absorbing_structure(h, params)
    A = structure.A
    info["absorbers"] = len(structure.family)
    info["capacity"] = structure.capacity
    rest, labels = h.induced([v for v in range(n) if v not in A])
    info["n_prime"] = rest.n
    if rest.n == 0:
        return absorb(h, [], structure), None, labels
    if not rest.edges:
        return None, FarkasCertificate(tuple(Fraction(1) for _ in range(rest.n))), labels
    w = _fractional(rest, cfg, rng, info)
    if isinstance(w, FarkasCertificate):
        info["fractional_infeasible"] = True
        return None, w, labels
    assert isinstance(w, FractionalMatching)
    best = None
    for _ in range(cfg.nibble_attempts):
        M = nibble(rest, w, cfg.nibble_rounds, cfg.bite, rng)
        left = rest.n - k * len(M)
        if best is None or left < best[1]:
            best = (M, left)
        if left <= structure.capacity * k:
            break
    M, left = best
    info["leftover"] = left
    info["leftover_fraction"] = left / rest.n
    if left > structure.capacity * k:
        return None, None, labels
    covered = {labels[v] for e in M for v in e}
    S = [v for v in range(n) if v not in A and v not in covered]
    assert len(S) % k == 0
    Mabs = absorb(h, S, structure)
    if Mabs is None:
        info["absorb_failed"] = True
        return None, None, labels
    return sorted([tuple(labels[v] for v in e) for e in M] + Mabs), None, labels


def _extremal(
    h: Hypergraph,
    cfg: PipelineConfig,
    rest_cert: FarkasCertificate | None,
    labels: Sequence[int] | None,
    info: dict,
) -> Matching | None:
    n, k = h.n, h.k
    witnesses: list[ExtremalWitness] = []
    if rest_cert is not None and labels is not None and len(labels) % k == 0 and len(labels) < n:
        rest, _ = h.induced(labels)
        wit = find_extremal_set(rest, cfg.gamma, "certificate", rest_cert)
        if wit is not None:
            Sp = {labels[v] for v in wit.S}
            pad = [v for v in range(n) if v not in set(labels)][: (n - len(labels)) // k]
            lifted = verify_extremal(h, Sp | set(pad), cfg.gamma)
            if lifted is not None:
                witnesses.append(lifted)
    modes = ["certificate", "heuristic"]
    if comb(n, n // k) <= EXHAUSTIVE_CAP // 100:
        modes.append("exhaustive")
    for mode in modes:
        wit = find_extremal_set(h, cfg.gamma, mode)
        if wit is not None and all(wit.S != w.S for w in witnesses):
            witnesses.append(wit)
    info["witnesses"] = len(witnesses)
    for wit in witnesses:
        sub: dict = {}
        M = extremal_perfect_matching(h, wit, strict=False, budget=cfg.budget, trace=sub)
        info.setdefault("attempts", []).append(sub)
        if M is not None:
            return M
    return None


def solve(h: Hypergraph, config: PipelineConfig | None = None) -> tuple[Matching | None, SolveTrace]:
    """Perfect matching of ``h`` via absorption + nibble, the extremal route, or exact search.

    Returns the matching (validated) or None, plus a trace recording which
    path succeeded and per-stage statistics. A None with status ``no-pm``
    means the exact search proved there is no perfect matching.
    """
    n, k = h.n, h.k
    if n % k:
        raise InvalidInput(f"k={k} does not divide n={n}")
    if isolated_vertices(h):
        raise InvalidInput("hypergraph has isolated vertices")
    cfg = config if config is not None else PipelineConfig.desk(k)
    rng = np.random.default_rng(cfg.seed)
    trace = SolveTrace()
    dplus, _ = min_positive_codegree(h)
    trace.stages["delta_plus"] = dplus
    trace.stages["above_threshold"] = dplus >= threshold(k, n)

    def done(M: Matching, path: str) -> tuple[Matching, SolveTrace]:
        if not validate_matching(h, M, require_perfect=True):
            raise RuntimeError(f"{path} produced an invalid matching")  # pragma: no cover
        trace.path, trace.valid, trace.status = path, True, "ok"
        return M, trace

    info: dict = {}
    trace.stages["absorb+nibble"] = info
    M, cert, labels = _absorb_nibble(h, cfg, rng, info)
    if M is not None:
        return done(M, "absorb+nibble")

    info = {}
    trace.stages["extremal"] = info
    M = _extremal(h, cfg, cert, labels, info)
    if M is not None:
        return done(M, "extremal")

    if not cfg.fallback_to_exact:
        trace.status = "failed"
        return None, trace
    try:
        M = find_perfect_matching(h, cfg.budget)
    except BudgetExceeded as exc:
        trace.stages["exact-fallback"] = {"nodes": exc.nodes}
        trace.status = "budget-exceeded"
        return None, trace
    if M is None:
        trace.status = "no-pm"
        return None, trace
    return done(M, "exact-fallback")


MODELS = ("binomial:P", "planted:EPS", "ext", "extplus:M", "complete", "mixed")


def _mixed_model(i: int) -> str:
    cycle = (
        "binomial:0.9",
        "binomial:0.5",
        "planted:0.02",
        "binomial:0.2",
        "ext",
        "planted:0.005",
        "binomial:0.05",
        "extplus:1",
        "complete",
        "binomial:0.01",
    )
    return cycle[i % len(cycle)]


def ext_plus(k: int, n: int, extra: int, seed: int) -> Hypergraph:
    """The space barrier plus ``extra`` random edges meeting its large side at least twice.

    Any one such edge restores a perfect matching.
    """
    h = extremal_construction(k, n)
    A, B = extremal_parts(k, n)
    rng = np.random.default_rng(seed)
    a, b = sorted(A), sorted(B)
    new: set[tuple[int, ...]] = set()
    while len(new) < extra:
        i = int(rng.integers(2, k + 1))
        e = [a[j] for j in rng.choice(len(a), i, replace=False)]
        e += [b[j] for j in rng.choice(len(b), k - i, replace=False)]
        new.add(tuple(sorted(int(v) for v in e)))
    return from_edges(k, n, list(h.edges) + sorted(new))


def make_instance(k: int, n: int, model: str, seed: int) -> Hypergraph:
    kind, _, arg = model.partition(":")
    if kind == "binomial":
        return random_binomial(k, n, float(arg), seed)
    if kind == "planted":
        return planted_extremal(k, n, float(arg), seed)
    if kind == "ext":
        return extremal_construction(k, n)
    if kind == "extplus":
        return ext_plus(k, n, int(arg), seed)
    if kind == "complete":
        return complete(k, n)
    raise InvalidInput(f"unknown model {model!r}; expected one of {', '.join(MODELS)}")


def sweep(
    k: int,
    n_list: Iterable[int],
    model: str,
    trials: int,
    seed: int,
    config: PipelineConfig | None = None,
) -> list[dict]:
    """Run the pipeline and the exact oracle on generated instances.

    The oracle runs on the pure-Python kernels, independently of the
    pipeline's compiled fallback. ``agree`` is true when the pipeline
    returns a perfect matching exactly when the oracle finds one.
    """
    rows = []
    n_list = list(n_list)
    for n in n_list:
        if n % k:
            raise InvalidInput(f"k={k} does not divide n={n}")
    ss = np.random.SeedSequence(seed)
    idx = 0
    for n in n_list:
        for t in range(trials):
            inst_seed = int(ss.spawn(1)[0].generate_state(1)[0])
            model_name = _mixed_model(idx) if model == "mixed" else model
            idx += 1
            h = make_instance(k, n, model_name, inst_seed)
            dplus, _ = min_positive_codegree(h)
            iso = bool(isolated_vertices(h))
            try:
                pm = find_perfect_matching(h, DEFAULT_BUDGET, backend="python") is not None
            except BudgetExceeded:
                pm = None
            if iso:
                path = "isolated"
                got = False
            else:
                cfg = (config or PipelineConfig.desk(k)).with_overrides(seed=inst_seed)
                M, trace = solve(h, cfg)
                got = M is not None and validate_matching(h, M, require_perfect=True)
                path = trace.path or trace.status
            rows.append(
                {
                    "k": k,
                    "n": n,
                    "model": model_name,
                    "seed": inst_seed,
                    "delta_plus": dplus,
                    "isolated": iso,
                    "pm_exists": pm,
                    "path": path,
                    "agree": pm is not None and got == pm,
                }
            )
    return rows


def rows_to_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({f: str(r[f]).lower() if isinstance(r[f], bool) else r[f] for f in CSV_FIELDS})
    return buf.getvalue()


def exhaustive_threshold_check(k: int, n: int, backend: str | None = None) -> dict:
    """Check the codegree threshold on every k-graph with ``n`` labelled vertices.

    Counts graphs at or above the threshold without isolated vertices, the
    counterexamples among them (no perfect matching), and the tight examples
    one below the threshold without isolated vertices and without a perfect
    matching.
    """
    if n % k:
        raise InvalidInput(f"k={k} does not divide n={n}")
    stats = _backend.enumerate_small(n, k, backend)
    t = threshold(k, n)
    dp = stats["delta_plus"]
    ok = ~stats["isolated"] & (dp > 0)
    above = ok & (dp >= t)
    tight = ok & (dp == t - 1) & ~stats["pm"]
    counter = above & ~stats["pm"]
    return {
        "k": k,
        "n": n,
        "graphs": int(dp.size),
        "threshold": int(t) if t.denominator == 1 else str(t),
        "above_threshold": int(above.sum()),
        "counterexamples": int(counter.sum()),
        "tight_examples": int(tight.sum()),
        "prop_violations": int((~stats["prop_ok"]).sum()),
        "first_counterexample": int(np.flatnonzero(counter)[0]) if counter.any() else None,
    }
