"""Kernel selection and the thread pool shared by the enumerators.

The compiled extension is used when it imports; ``QUADCHROMA_BACKEND=python``
forces the pure-Python kernels.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

import numpy as np

from . import _pykernels
from .geometry import ColorRule

T = TypeVar("T")

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

if _ckernels is not None and os.environ.get("QUADCHROMA_BACKEND", "").lower() != "python":
    kernels = _ckernels
else:
    kernels = _pykernels

BACKEND: str = kernels.BACKEND


def available_backends():
    out = {"python": _pykernels}
    if _ckernels is not None:
        out["cython"] = _ckernels
    return out


def resolve_threads(threads: Optional[int] = None) -> int:
    if threads is None:
        env = os.environ.get("QUADCHROMA_THREADS")
        threads = int(env) if env else (os.cpu_count() or 1)
    if threads < 1:
        raise ValueError(f"thread count must be >= 1, got {threads}")
    return threads


def parallel_map(fn: Callable[[T], object], items: Iterable[T], threads: Optional[int] = None) -> List:
    """``list(map(fn, items))`` on a thread pool; result order follows ``items``."""
    items = list(items)
    threads = resolve_threads(threads)
    if threads == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def encode_rule(rule: ColorRule) -> List[int]:
    """Flatten a rule into the 10-int row the kernels read."""
    row = []
    for v, is_open, infinite in ((rule.lo, rule.lo_open, -math.inf), (rule.hi, rule.hi_open, math.inf)):
        if v == infinite:
            row += [1, 0, 1, int(is_open)]
        else:
            row += [0, v.numerator, v.denominator, int(is_open)]
    row += [int(rule.inside), int(rule.vertical_color)]
    return row


def encode_rules(rules: Iterable[ColorRule]) -> np.ndarray:
    return np.ascontiguousarray([encode_rule(r) for r in rules], dtype=np.int64)
