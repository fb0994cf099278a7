"""Command-line interface.

Exit codes: 0 success, 1 negative result (no perfect matching, no witness,
...), 2 usage or input error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Sequence

from . import constructions
from .absorbing import AbsorbParams, build_absorbing_structure
from .exact import DEFAULT_BUDGET, BudgetExceeded, find_perfect_matching
from .extremal import default_gamma, extremal_perfect_matching, find_extremal_set, threshold
from .fractional import (
    FarkasCertificate,
    extremal_set_from_certificate,
    format_rational,
    minmax_pair_fractional,
    perfect_fractional_matching,
    uniform_fractional,
    verify_certificate,
)
from .hypergraph import Hypergraph, InvalidInput, isolated_vertices, min_codegree, min_positive_codegree, parse
from .pipeline import PipelineConfig, exhaustive_threshold_check, rows_to_csv, solve, sweep

OK, NEGATIVE, USAGE, BUDGET = 0, 1, 2, 3


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from exc


def _u64(s: str) -> int:
    v = int(s)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _load(args) -> Hypergraph:
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    return parse(text, args.format)


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(args, obj) -> None:
    _emit(args, json.dumps(obj, indent=2))


def _matching_json(m) -> list[list[int]]:
    return [list(e) for e in m]


def cmd_gen(args) -> int:
    k, n = args.k, args.n
    if args.ext:
        h = constructions.extremal_construction(k, n)
    elif args.binomial is not None:
        h = constructions.random_binomial(k, n, args.binomial, args.seed)
    elif args.planted is not None:
        h = constructions.planted_extremal(k, n, args.planted, args.seed)
    elif args.empty:
        h = constructions.empty(k, n)
    else:
        h = constructions.complete(k, n)
    _emit(args, h.to_json() if args.format == "json" else h.to_text())
    return OK


def cmd_degrees(args) -> int:
    h = _load(args)
    dplus, witness = min_positive_codegree(h)
    out = {
        "k": h.k,
        "n": h.n,
        "edges": len(h.edges),
        "min_codegree": min_codegree(h),
        "min_positive_codegree": dplus,
        "witness": sorted(witness) if witness is not None else None,
        "isolated": sorted(isolated_vertices(h)),
    }
    if h.n % h.k == 0:
        t = threshold(h.k, h.n)
        out["threshold"] = format_rational(t)
        out["meets_threshold"] = dplus >= t
    _json(args, out)
    return OK


def cmd_solve(args) -> int:
    h = _load(args)
    try:
        m = find_perfect_matching(h, args.budget)
    except BudgetExceeded as exc:
        print(f"budget exceeded after {exc.nodes} nodes", file=sys.stderr)
        return BUDGET
    if m is None:
        print("no perfect matching", file=sys.stderr)
        _json(args, {"perfect_matching": None})
        return NEGATIVE
    _json(args, {"perfect_matching": _matching_json(m)})
    return OK


def cmd_frac(args) -> int:
    h = _load(args)
    if args.minmax:
        res = minmax_pair_fractional(h)
        if isinstance(res, FarkasCertificate):
            print("no perfect fractional matching", file=sys.stderr)
            _json(args, {"certificate": res.to_dict()["y"]})
            return NEGATIVE
        w, M = res
        _json(args, {**w.to_dict(), "max_pair_load": format_rational(M)})
        return OK
    res = uniform_fractional(h) or perfect_fractional_matching(h)
    if isinstance(res, FarkasCertificate):
        print("no perfect fractional matching", file=sys.stderr)
        _json(args, {"certificate": res.to_dict()["y"]})
        return NEGATIVE
    _json(args, res.to_dict())
    return OK


def cmd_certify(args) -> int:
    h = _load(args)
    if args.check:
        with open(args.check, encoding="utf-8") as fh:
            cert = FarkasCertificate.from_dict(json.load(fh))
        ok = verify_certificate(h, cert)
        _json(args, {"valid": ok})
        return OK if ok else NEGATIVE
    res = perfect_fractional_matching(h)
    if not isinstance(res, FarkasCertificate):
        print("a perfect fractional matching exists; nothing to certify", file=sys.stderr)
        return NEGATIVE
    out = res.to_dict()
    if h.n % h.k == 0:
        S, count = extremal_set_from_certificate(h, res)
        out["S"] = sorted(S)
        out["bad_edge_count"] = count
    _json(args, out)
    return OK


def _config(args, k: int) -> PipelineConfig:
    base = PipelineConfig.default(k) if args.preset == "default" else PipelineConfig.desk(k)
    cfg = base.with_overrides(
        gamma=args.gamma,
        alpha=args.alpha,
        eta=args.eta,
        epsilon=args.epsilon,
        seed=args.seed,
        budget=args.budget,
    )
    if args.beta is not None:
        cfg = cfg.with_overrides(beta=args.beta)
    elif args.gamma is not None and cfg.beta > cfg.gamma / 4:
        cfg = cfg.with_overrides(beta=cfg.gamma / 4)
    if args.no_fallback:
        cfg = cfg.with_overrides(fallback_to_exact=False)
    return cfg


def cmd_absorbers(args) -> int:
    h = _load(args)
    cfg = _config(args, h.k)
    s = build_absorbing_structure(h, AbsorbParams(beta=cfg.beta, alpha=cfg.alpha, seed=args.seed))
    _json(args, s.to_dict())
    return OK if s.family else NEGATIVE


def cmd_extremal(args) -> int:
    h = _load(args)
    gamma = args.gamma if args.gamma is not None else default_gamma(h.k)
    wit = find_extremal_set(h, gamma, args.mode)
    if wit is None:
        print("no extremal witness found", file=sys.stderr)
        return NEGATIVE
    out = wit.to_dict()
    if args.match:
        trace: dict = {}
        m = extremal_perfect_matching(h, wit, strict=not args.no_strict, budget=args.budget, trace=trace)
        out["perfect_matching"] = _matching_json(m) if m is not None else None
        out["trace"] = trace
        _json(args, out)
        return OK if m is not None else NEGATIVE
    _json(args, out)
    return OK


def cmd_pipeline(args) -> int:
    h = _load(args)
    m, trace = solve(h, _config(args, h.k))
    _json(args, {"perfect_matching": _matching_json(m) if m is not None else None, "trace": trace.to_dict()})
    if m is not None:
        return OK
    if trace.status == "budget-exceeded":
        return BUDGET
    print("no perfect matching" if trace.status == "no-pm" else "all paths failed", file=sys.stderr)
    return NEGATIVE


def cmd_sweep(args) -> int:
    if args.exhaustive:
        _json(args, exhaustive_threshold_check(args.k, args.n))
        return OK
    n_list = [int(x) for x in args.n_list.split(",")] if args.n_list else [args.n]
    cfg = _config(args, args.k)
    rows = sweep(args.k, n_list, args.model, args.trials, args.seed, cfg)
    _emit(args, rows_to_csv(rows))
    return OK if all(r["agree"] for r in rows) else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-k", type=int, default=3)
    common.add_argument("-n", type=int, default=6)
    common.add_argument("--input", help="instance file, '-' for stdin")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=_u64, default=0)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")
    consts = argparse.ArgumentParser(add_help=False)
    for name in ("gamma", "beta", "alpha", "eta", "epsilon"):
        consts.add_argument(f"--{name}", type=_rational)
    consts.add_argument("--preset", choices=("desk", "default"), default="desk")
    consts.add_argument("--no-fallback", action="store_true")

    p = argparse.ArgumentParser(prog="hypermatch", description="Perfect matchings in k-uniform hypergraphs.")
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate an instance")
    kind = g.add_mutually_exclusive_group()
    kind.add_argument("--ext", action="store_true", help="space-barrier construction")
    kind.add_argument("--complete", action="store_true")
    kind.add_argument("--empty", action="store_true")
    kind.add_argument("--binomial", type=float, metavar="P")
    kind.add_argument("--planted", type=float, metavar="EPS")
    g.set_defaults(func=cmd_gen)

    sub.add_parser("degrees", parents=[common], help="codegree statistics").set_defaults(func=cmd_degrees)
    sub.add_parser("solve", parents=[common], help="exact perfect matching").set_defaults(func=cmd_solve)

    f = sub.add_parser("frac", parents=[common], help="perfect fractional matching")
    f.add_argument("--minmax", action="store_true", help="minimize the largest pair load")
    f.set_defaults(func=cmd_frac)

    c = sub.add_parser("certify", parents=[common], help="Farkas certificate of fractional infeasibility")
    c.add_argument("--check", metavar="FILE", help="verify a certificate instead of computing one")
    c.set_defaults(func=cmd_certify)

    sub.add_parser("absorbers", parents=[common, consts], help="absorbing structure").set_defaults(
        func=cmd_absorbers
    )

    e = sub.add_parser("extremal", parents=[common, consts], help="extremality witness")
    e.add_argument("--mode", choices=("exhaustive", "certificate", "heuristic"), default="certificate")
    e.add_argument("--match", action="store_true", help="also build the perfect matching")
    e.add_argument("--no-strict", action="store_true", help="skip the degree preconditions")
    e.set_defaults(func=cmd_extremal)

    sub.add_parser("pipeline", parents=[common, consts], help="end-to-end solver").set_defaults(func=cmd_pipeline)

    s = sub.add_parser("sweep", parents=[common, consts], help="CSV threshold sweep")
    s.add_argument("--n-list", help="comma-separated vertex counts (default: -n)")
    s.add_argument("--model", default="mixed", help="binomial:P, planted:EPS, ext, extplus:M, complete or mixed")
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--exhaustive", action="store_true", help="enumerate every k-graph on n vertices")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded after {exc.nodes} nodes", file=sys.stderr)
        return BUDGET
    except (InvalidInput, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
