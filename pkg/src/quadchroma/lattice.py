"""Exact enumeration of 4-point sets on integer grids.

The work is split by the smallest point index of each 4-subset (row-major
point order).  Chunks are independent, and their integer counts are summed
in chunk order, so totals do not depend on the thread count.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _backend
from .geometry import CHI_SLOPE, ColorRule

MAX_POINTS = 1200
# number of leading indices per work item
_CHUNK = 4

LEFT, RIGHT, BOTTOM, TOP = 1, 2, 4, 8


class ResourceGuardError(RuntimeError):
    """An enumeration was refused because it exceeds the size guard."""


class InvariantViolation(AssertionError):
    """Two counting routes that must agree exactly did not."""


@dataclass(frozen=True)
class GridBox:
    w: int
    h: int

    def __post_init__(self):
        if self.w < 1 or self.h < 1:
            raise ValueError(f"GridBox needs w, h >= 1, got ({self.w}, {self.h})")

    @property
    def n_points(self) -> int:
        return (self.w + 1) * (self.h + 1)


@dataclass(frozen=True)
class BoxCounts:
    """Census of 4-subsets whose bounding box is exactly ``[0,w] x [0,h]``.

    ``a_by_corners[i]`` counts same-colored crossing sets with exactly ``i``
    corner points.  Among two-corner sets, ``c2``/``d2`` cover the
    bottom-left/top-right corner pair (other points on opposite / the same
    side of the corner diagonal), ``c2_anti``/``d2_anti`` the
    top-left/bottom-right pair, and ``s2`` the corner pairs sharing a side.
    """

    w: int
    h: int
    a_total: int
    a_by_corners: Tuple[int, int, int, int, int]
    c2: int
    d2: int
    s2: int
    convex_total: int
    c2_anti: int = 0
    d2_anti: int = 0

    def check(self) -> None:
        if self.a_total != sum(self.a_by_corners):
            raise InvariantViolation(f"corner breakdown {self.a_by_corners} does not sum to {self.a_total}")
        if self.a_by_corners[2] != self.c2 + self.d2 + self.c2_anti + self.d2_anti + self.s2:
            raise InvariantViolation("two-corner split does not sum to A(2)")
        if not 0 <= self.a_total <= self.convex_total:
            raise InvariantViolation("a_total outside [0, convex_total]")

    def as_dict(self) -> dict:
        d = asdict(self)
        d["a_by_corners"] = list(self.a_by_corners)
        return d


@dataclass(frozen=True)
class GridCounts:
    m: int
    total_quadruples: int
    convex: int
    mono: int

    def as_dict(self) -> dict:
        return asdict(self)


def _guard(n_points: int) -> None:
    if n_points > MAX_POINTS:
        raise ResourceGuardError(
            f"{n_points} grid points exceeds the enumeration guard of {MAX_POINTS} "
            f"({math.comb(n_points, 4):.3e} quadruples)"
        )


@lru_cache(maxsize=256)
def _grid_arrays(w: int, h: int, rule: ColorRule):
    """Row-major points of [0,w]x[0,h], pairwise blue flags, and side masks."""
    xs = np.tile(np.arange(w + 1, dtype=np.int64), h + 1)
    ys = np.repeat(np.arange(h + 1, dtype=np.int64), w + 1)
    n = xs.size
    blue = np.zeros((n, n), dtype=np.uint8)
    # slope of (dx, dy) is colored once per distinct direction
    cache = {}
    xl, yl = xs.tolist(), ys.tolist()
    for i in range(n):
        for j in range(i + 1, n):
            key = (xl[j] - xl[i], yl[j] - yl[i])
            c = cache.get(key)
            if c is None:
                c = cache[key] = int(rule.color(key[1], key[0]))
            blue[i, j] = blue[j, i] = c
    sides = ((xs == 0) * LEFT | (xs == w) * RIGHT | (ys == 0) * BOTTOM | (ys == h) * TOP).astype(np.uint8)
    return xs, ys, blue, sides


def _census(w: int, h: int, rule: ColorRule, need_box: bool, threads: Optional[int], kernels=None):
    kernels = kernels or _backend.kernels
    xs, ys, blue, sides = _grid_arrays(w, h, rule)
    if not need_box:
        sides = np.zeros_like(sides)
    n = xs.size
    starts = range(0, max(n - 3, 0), _CHUNK)
    parts = _backend.parallel_map(
        lambda s: kernels.lattice_census(xs, ys, blue, sides, need_box, s, min(s + _CHUNK, n)),
        starts,
        threads,
    )
    total = [0] * 12
    for part in parts:
        for t, v in enumerate(part):
            total[t] += int(v)
    return total


def count_box(box: GridBox, rule: ColorRule = CHI_SLOPE, *, threads: Optional[int] = None,
              kernels=None) -> BoxCounts:
    """Census of 4-subsets of ``box`` whose bounding box is the whole box."""
    _guard(box.n_points)
    c = _census(box.w, box.h, rule, True, threads, kernels)
    out = BoxCounts(
        w=box.w,
        h=box.h,
        a_total=c[1],
        a_by_corners=tuple(c[2:7]),
        c2=c[7],
        d2=c[8],
        s2=c[11],
        convex_total=c[0],
        c2_anti=c[9],
        d2_anti=c[10],
    )
    out.check()
    return out


def count_box_contained(w: int, h: int, rule: ColorRule = CHI_SLOPE, *, threads: Optional[int] = None,
                        kernels=None) -> int:
    """Same-colored crossing 4-subsets of the ``(w+1) x (h+1)`` grid, any bounding box."""
    if w < 1 or h < 1:
        # fewer than 4 points, or all of them on one line
        return 0
    _guard((w + 1) * (h + 1))
    return _census(w, h, rule, False, threads, kernels)[1]


def count_box_ie(box: GridBox, rule: ColorRule = CHI_SLOPE, *, threads: Optional[int] = None,
                 kernels=None) -> int:
    """``A_{w,h}`` by inclusion-exclusion over the sides a subset misses.

    Missing a set ``T`` of sides means living in a sub-grid narrower by the
    number of vertical sides in ``T`` and shorter by the number of
    horizontal ones; every such sub-grid is a translate of a smaller box.
    """
    _guard(box.n_points)
    total = 0
    for drop_w in (0, 1, 2):
        for drop_h in (0, 1, 2):
            # subsets of {left, right} of size drop_w times subsets of {bottom, top} of size drop_h
            ways = math.comb(2, drop_w) * math.comb(2, drop_h)
            sign = -1 if (drop_w + drop_h) % 2 else 1
            total += sign * ways * count_box_contained(box.w - drop_w, box.h - drop_h, rule,
                                                       threads=threads, kernels=kernels)
    return total


def estimate_quadruples(m: int, method: str = "direct") -> int:
    """Number of quadruple tests a grid count will run."""
    if method == "direct":
        return math.comb((m + 1) ** 2, 4)
    return sum(math.comb((w + 1) * (h + 1), 4) for w in range(1, m + 1) for h in range(1, m + 1))


def count_grid(m: int, rule: ColorRule = CHI_SLOPE, method: str = "direct", *,
               threads: Optional[int] = None, kernels=None) -> GridCounts:
    """Convex and same-colored crossing 4-subsets of the ``(m+1) x (m+1)`` grid.

    ``per-box`` sums ``(m-w+1)(m-h+1)`` translated copies of each box census.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    total = math.comb((m + 1) ** 2, 4)
    _guard((m + 1) ** 2)
    if method == "direct":
        c = _census(m, m, rule, False, threads, kernels)
        return GridCounts(m, total, c[0], c[1])
    if method != "per-box":
        raise ValueError(f"unknown method {method!r}")
    convex = mono = 0
    for w in range(1, m + 1):
        for h in range(1, m + 1):
            bc = count_box(GridBox(w, h), rule, threads=threads, kernels=kernels)
            copies = (m - w + 1) * (m - h + 1)
            convex += copies * bc.convex_total
            mono += copies * bc.a_total
    return GridCounts(m, total, convex, mono)


def _scaled(vertices: Sequence[Tuple]) -> Tuple[List[Tuple[int, int]], int]:
    fr = [(Fraction(x), Fraction(y)) for x, y in vertices]
    scale = math.lcm(*(c.denominator for v in fr for c in v))
    return [(int(x * scale), int(y * scale)) for x, y in fr], scale


def count_lattice_points_triangle(v1, v2, v3, *, kernels=None) -> int:
    """Integer points in the closed triangle with rational vertices ``v1, v2, v3``.

    Collinear vertices are allowed and give the count on the spanned segment.
    """
    kernels = kernels or _backend.kernels
    (p1, p2, p3), scale = _scaled((v1, v2, v3))
    xs = [p[0] for p in (p1, p2, p3)]
    ys = [p[1] for p in (p1, p2, p3)]
    xlo, xhi = -(-min(xs) // scale), max(xs) // scale
    ylo, yhi = -(-min(ys) // scale), max(ys) // scale
    limit = 1 << 61
    if max(map(abs, xs + ys)) >= limit or max(abs(xlo), abs(xhi), abs(ylo), abs(yhi)) * scale >= limit:
        raise OverflowError("triangle coordinates too large for exact 128-bit tests")
    if xlo > xhi or ylo > yhi:
        return 0
    return int(kernels.triangle_lattice_count(p1[0], p1[1], p2[0], p2[1], p3[0], p3[1],
                                              scale, xlo, xhi, ylo, yhi))
