"""Closed-form reference values.

Exact quantities are ``fractions.Fraction``; the asymptotic predictions are
floats and only ever used as reference points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

ExactRational = Fraction


def valtr_probability(n: int) -> Fraction:
    """Probability that ``n`` uniform points in a parallelogram are in convex position."""
    if not 3 <= n <= 20:
        raise ValueError(f"n must lie in [3, 20], got {n}")
    return Fraction(math.comb(2 * n - 2, n - 1), math.factorial(n)) ** 2


@dataclass(frozen=True)
class MonoConstants:
    p_mono: Fraction
    p_convex: Fraction
    fraction: Fraction
    savings: Fraction


def mono_given_any_constants() -> MonoConstants:
    p_mono = Fraction(1, 4)
    p_convex = valtr_probability(4)
    fraction = p_mono / p_convex
    # a uniformly random 2-coloring keeps half of all crossings
    savings = Fraction(1, 2) - fraction
    if fraction != Fraction(18, 50) or savings != Fraction(7, 50):
        raise ArithmeticError(f"constant bundle inconsistent: {fraction}, {savings}")
    return MonoConstants(p_mono, p_convex, fraction, savings)


def asymptotic_box(w: int, h: int) -> dict:
    """Leading-order predictions for the fields of a box census."""
    if w < 1 or h < 1:
        raise ValueError("w and h must be >= 1")
    s = float(w * w * h * h)
    return {
        "a": 1.5 * s,
        "a0": 0.5 * s,
        "a1": 2.0 / 3.0 * s,
        "a2": 1.0 / 3.0 * s,
        "c2": s / 12.0,
        "d2": s / 12.0,
    }


def asymptotic_grid(m: int) -> float:
    """Leading-order number of same-colored crossing 4-subsets of the (m+1)^2 grid."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return m ** 8 / 96


def grid_ratio_reference(m: int) -> float:
    return asymptotic_grid(m) / math.comb((m + 1) ** 2, 4)


def sum_identities(n: int) -> dict:
    """Exact values of the power sums over ``i = 0..n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    s1 = n * (n + 1) // 2
    s2 = n * (n + 1) * (2 * n + 1) // 6
    s3 = s1 * s1
    return {
        "sum_i": s1,
        "sum_i2": s2,
        "sum_i3": s3,
        "sum_i_n_minus_i": n * s1 - s2,  # = (n^3 - n) / 6
        "sum_i2_n_minus_i": n * s2 - s3,  # = n^2 (n^2 - 1) / 12
    }
