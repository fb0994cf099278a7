"""Compare the compiled and pure-Python search kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Each case is run on both backends; the table reports the best wall time of
``--repeat`` runs and the speedup. Results must agree between backends.
"""

from __future__ import annotations

import argparse
import time

from hypermatch import complete, extremal_construction, random_binomial
from hypermatch import _backend


def _cases():
    yield "pm complete(3,18)", lambda b: _backend.perfect_matching(18, 3, complete(3, 18).masks, 2**62, b)[0]
    ext = extremal_construction(3, 24)
    yield "pm refute ext(3,24)", lambda b: _backend.perfect_matching(24, 3, ext.masks, 2**62, b)[0]
    h = random_binomial(3, 21, 0.08, 1)
    yield "pm binomial(3,21,0.08)", lambda b: _backend.perfect_matching(21, 3, h.masks, 2**62, b)[0]
    g = random_binomial(3, 15, 0.05, 2)
    yield "max matching binomial(3,15,0.05)", lambda b: len(_backend.max_matching(15, 3, g.masks, 2**62, b)[1])
    e4 = extremal_construction(4, 12)
    yield "max matching ext(4,12)", lambda b: len(_backend.max_matching(12, 4, e4.masks, 2**62, b)[1])
    yield "enumerate all 3-graphs on 5 vertices", lambda b: int(_backend.enumerate_small(5, 3, b)["pm"].sum())


def _best(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _backend.BACKEND != "cython":
        raise SystemExit("compiled kernels unavailable; build with `pip install -e . --no-build-isolation`")
    print(f"{'case':40s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in _cases():
        tp, rp = _best(lambda: fn("python"), args.repeat)
        tc, rc = _best(lambda: fn(None), args.repeat)
        if rp != rc:
            raise SystemExit(f"{name}: backends disagree ({rp} vs {rc})")
        print(f"{name:40s} {tp * 1e3:9.2f}ms {tc * 1e3:9.2f}ms {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
