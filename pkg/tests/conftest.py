from __future__ import annotations

import os
import sys
from itertools import combinations

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from hypermatch import Hypergraph  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def hypergraphs(draw, ks=(2, 3, 4), min_n=None, max_n=9, divisible=False):
    k = draw(st.sampled_from(ks))
    lo = min_n if min_n is not None else k
    n = draw(st.integers(lo, max(lo, max_n)))
    if divisible:
        n = max(k, n - n % k)
    all_sets = list(combinations(range(n), k))
    p = draw(st.sampled_from((0.1, 0.3, 0.6, 0.9)))
    mask = draw(st.lists(st.floats(0, 1), min_size=len(all_sets), max_size=len(all_sets)))
    return Hypergraph(n, k, tuple(e for e, x in zip(all_sets, mask) if x < p))


_criteria: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    name = props.get("criterion")
    if name is None:
        return
    if report.when == "call" or report.failed:
        _criteria[name] = ("PASS" if report.passed else "FAIL", str(props.get("detail", "")))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda s: int(s.split()[0])):
        verdict, detail = _criteria[name]
        terminalreporter.write_line(f"{verdict}  criterion {name}  {detail}".rstrip())
