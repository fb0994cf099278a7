"""Kernel selection: the compiled extension when importable, else the Python twin.

Set ``HYPERMATCH_PURE=1`` to force the Python kernels. Instances with more
than 64 vertices always run on the Python kernels (the compiled ones use
64-bit vertex masks).
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    if os.environ.get("HYPERMATCH_PURE"):
        raise ImportError("pure-Python kernels requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
FOUND, NONE, BUDGET = _kernels_py.FOUND, _kernels_py.NONE, _kernels_py.BUDGET


def _pick(n: int, backend: str | None):
    if backend == "python" or _compiled is None or n > 64:
        return _kernels_py
    return _compiled


def perfect_matching(n, k, masks, budget, backend=None):
    return _pick(n, backend).perfect_matching(n, k, masks, budget)


def max_matching(n, k, masks, budget, backend=None):
    return _pick(n, backend).max_matching(n, k, masks, budget)


def enumerate_small(n, k, backend=None):
    return _pick(n, backend).enumerate_small(n, k)
