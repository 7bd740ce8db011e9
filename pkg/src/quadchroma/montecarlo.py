"""Monte Carlo estimates in the continuous unit-square model.

Sample coordinates are 53-bit dyadic numerators drawn from Philox streams.
The sample space is cut into fixed-size chunks; chunk ``c`` of stream
``(seed, stream)`` is always generated from the same derived key, so results
depend only on ``(seed, stream, n)`` and never on how chunks are scheduled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _backend
from .geometry import (
    CHI_SLOPE,
    MAX_DYADIC_SCALE,
    ColorRule,
    DyadicPoint,
    segments_cross_properly,
    slope_color,
)
from .lattice import InvariantViolation

CHUNK = 1 << 16
MAX_GRAPH_POINTS = 100
_SHIFT = 64 - MAX_DYADIC_SCALE
_QUADS, _GRAPHS = 0, 1
_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngSpec:
    seed: int = 0
    stream: int = 0

    def _bitgen(self, domain: int, index: int) -> np.random.Philox:
        ss = np.random.SeedSequence(self.seed & _MASK64, spawn_key=(self.stream & _MASK64, domain, index))
        return np.random.Philox(ss)


@dataclass(frozen=True)
class Estimate:
    p_hat: float
    n: int
    se: float

    @classmethod
    def from_count(cls, k: int, n: int) -> "Estimate":
        p = k / n
        return cls(p, n, math.sqrt(p * (1.0 - p) / n))

    def z(self, reference: float) -> float:
        if self.se == 0:
            return 0.0 if self.p_hat == reference else math.copysign(math.inf, self.p_hat - reference)
        return (self.p_hat - reference) / self.se


@dataclass(frozen=True)
class QuadProbs:
    p_convex: Estimate
    p_mono: Estimate
    degenerate: int


@dataclass(frozen=True)
class SweepRow:
    rule: ColorRule
    p_mono_hat: float
    se: float
    paired_delta_vs_baseline: float
    paired_se: float
    boundary_hits: int = 0

    @property
    def z(self) -> float:
        if self.paired_se == 0:
            return 0.0
        return self.paired_delta_vs_baseline / self.paired_se


@dataclass(frozen=True)
class GraphCrossings:
    n_points: int
    trials: int
    mean_cr: float
    mean_cr_chi: float
    se_cr: float
    se_cr_chi: float
    oracle_checked: int = 0


def _numerators(bitgen: np.random.Philox, count: int) -> np.ndarray:
    return (bitgen.random_raw(count) >> np.uint64(_SHIFT)).astype(np.int64)


def _chunk_quads(rng: RngSpec, chunk: int, rows: int) -> np.ndarray:
    return _numerators(rng._bitgen(_QUADS, chunk), 8 * rows).reshape(rows, 8)


def sample_quads(rng: RngSpec, n: int, start: int = 0) -> np.ndarray:
    """Rows ``start .. start+n-1`` of the stream as an ``(n, 8)`` numerator array."""
    out = []
    pos, end = start, start + n
    while pos < end:
        chunk, offset = divmod(pos, CHUNK)
        take = min(CHUNK - offset, end - pos)
        out.append(_chunk_quads(rng, chunk, offset + take)[offset:])
        pos += take
    return np.concatenate(out) if out else np.empty((0, 8), dtype=np.int64)


def sample_quad(rng: RngSpec, index: int = 0) -> Tuple[DyadicPoint, ...]:
    row = sample_quads(rng, 1, index)[0].tolist()
    return tuple(DyadicPoint(row[2 * i], row[2 * i + 1]) for i in range(4))


def _census(n: int, rng: RngSpec, rules: Sequence[ColorRule], threads: Optional[int], kernels=None):
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    kernels = kernels or _backend.kernels
    enc = _backend.encode_rules(rules)

    def run(chunk: int):
        rows = min(CHUNK, n - chunk * CHUNK)
        q = _chunk_quads(rng, chunk, rows)
        mono, discord, hits = (np.zeros(len(rules), dtype=np.int64) for _ in range(3))
        degenerate, convex = kernels.dyadic_census(q, enc, mono, discord, hits)
        return degenerate, convex, mono, discord, hits

    parts = _backend.parallel_map(run, range(math.ceil(n / CHUNK)), threads)
    degenerate = sum(int(p[0]) for p in parts)
    convex = sum(int(p[1]) for p in parts)
    mono, discord, hits = ([sum(int(p[t][r]) for p in parts) for r in range(len(rules))] for t in (2, 3, 4))
    return degenerate, convex, mono, discord, hits


def estimate_quad_probs(n: int, rng: RngSpec = RngSpec(), rule: ColorRule = CHI_SLOPE, *,
                        threads: Optional[int] = None, kernels=None) -> QuadProbs:
    degenerate, convex, mono, _, _ = _census(n, rng, [rule], threads, kernels)
    return QuadProbs(Estimate.from_count(convex, n), Estimate.from_count(mono[0], n), degenerate)


def sweep_intervals(rules: Sequence[ColorRule], n: int, rng: RngSpec = RngSpec(), *,
                    threads: Optional[int] = None, kernels=None) -> List[SweepRow]:
    """Evaluate every rule on the same ``n`` quadruples; ``rules[0]`` is the baseline.

    The paired standard error comes from the per-sample differences of the
    same-color indicator, which take values in {-1, 0, 1}.
    """
    rules = list(rules)
    if not rules:
        raise ValueError("at least one rule is required")
    _, _, mono, discord, hits = _census(n, rng, rules, threads, kernels)
    rows = []
    for rule, k, dis, hit in zip(rules, mono, discord, hits):
        est = Estimate.from_count(k, n)
        delta = (k - mono[0]) / n
        var = max(dis / n - delta * delta, 0.0)
        rows.append(SweepRow(rule, est.p_hat, est.se, delta, math.sqrt(var / n), hit))
    return rows


@lru_cache(maxsize=8)
def _subset_index(n_points: int) -> np.ndarray:
    return np.array(list(combinations(range(n_points), 4)), dtype=np.intp)


def graph_points(rng: RngSpec, trial: int, n_points: int) -> np.ndarray:
    return _numerators(rng._bitgen(_GRAPHS, trial), 2 * n_points).reshape(n_points, 2)


def count_graph_crossings(pts: np.ndarray, rule: ColorRule = CHI_SLOPE, *, kernels=None) -> Tuple[int, int]:
    """(crossings, same-colored crossings) of the complete graph on ``pts`` via 4-subsets."""
    kernels = kernels or _backend.kernels
    q = np.ascontiguousarray(pts[_subset_index(len(pts))].reshape(-1, 8))
    mono, discord, hits = (np.zeros(1, dtype=np.int64) for _ in range(3))
    _, convex = kernels.dyadic_census(q, _backend.encode_rules([rule]), mono, discord, hits)
    return int(convex), int(mono[0])


def count_graph_crossings_pairwise(pts: np.ndarray, rule: ColorRule = CHI_SLOPE) -> Tuple[int, int]:
    """Same quantities by testing every pair of edges for a proper crossing."""
    points = [DyadicPoint(int(x), int(y)) for x, y in pts]
    edges = list(combinations(points, 2))
    colors = [slope_color(p, q, rule) for p, q in edges]
    cr = cr_chi = 0
    for (e, ce), (f, cf) in combinations(zip(edges, colors), 2):
        if segments_cross_properly(*e, *f):
            cr += 1
            cr_chi += ce == cf
    return cr, cr_chi


def _mean_se(values: List[int]) -> Tuple[float, float]:
    a = np.asarray(values, dtype=np.float64)
    if a.size < 2:
        return float(a.mean()), 0.0
    return float(a.mean()), float(a.std(ddof=1) / math.sqrt(a.size))


def estimate_graph_crossings(n_points: int, trials: int, rng: RngSpec = RngSpec(),
                             rule: ColorRule = CHI_SLOPE, *, oracle: bool = False,
                             threads: Optional[int] = None, kernels=None) -> GraphCrossings:
    """Mean crossing counts of complete geometric graphs on random points.

    With ``oracle=True`` every trial is recounted edge pair by edge pair and
    any disagreement raises :class:`InvariantViolation`.
    """
    if not 4 <= n_points <= MAX_GRAPH_POINTS:
        raise ValueError(f"n_points must lie in [4, {MAX_GRAPH_POINTS}], got {n_points}")
    if trials < 1:
        raise ValueError("trials must be >= 1")

    def run(trial: int):
        pts = graph_points(rng, trial, n_points)
        counts = count_graph_crossings(pts, rule, kernels=kernels)
        if oracle:
            pairwise = count_graph_crossings_pairwise(pts, rule)
            if pairwise != counts:
                raise InvariantViolation(f"trial {trial}: 4-subset counts {counts} != pairwise counts {pairwise}")
        return counts

    results = _backend.parallel_map(run, range(trials), threads)
    mean_cr, se_cr = _mean_se([r[0] for r in results])
    mean_chi, se_chi = _mean_se([r[1] for r in results])
    return GraphCrossings(n_points, trials, mean_cr, mean_chi, se_cr, se_chi, trials if oracle else 0)
