import math
from fractions import Fraction

import pytest

from quadchroma.analytic import (
    asymptotic_box,
    asymptotic_grid,
    grid_ratio_reference,
    mono_given_any_constants,
    sum_identities,
    valtr_probability,
)


@pytest.mark.parametrize("n, expected", [(3, Fraction(1)), (4, Fraction(25, 36)), (5, Fraction(49, 144))])
def test_valtr_probability(n, expected):
    assert valtr_probability(n) == expected


@pytest.mark.parametrize("n", [2, 21])
def test_valtr_range(n):
    with pytest.raises(ValueError):
        valtr_probability(n)


def test_valtr_is_decreasing():
    vals = [valtr_probability(n) for n in range(3, 21)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_constants():
    c = mono_given_any_constants()
    assert c.p_mono == Fraction(1, 4)
    assert c.p_convex == Fraction(25, 36)
    assert c.fraction == Fraction(18, 50) == c.p_mono / c.p_convex
    assert c.savings == Fraction(7, 50)


def test_asymptotic_box():
    ref = asymptotic_box(10, 10)
    assert ref["a"] == 15000
    assert asymptotic_box(1, 1)["a"] == 1.5
    assert asymptotic_box(3, 7) == asymptotic_box(7, 3)
    r = asymptotic_box(6, 9)
    assert r["a0"] + r["a1"] + r["a2"] == pytest.approx(r["a"], rel=1e-15)
    assert r["c2"] == r["d2"] == pytest.approx(r["a2"] / 4)


def test_leading_constants_add_up_exactly():
    assert Fraction(1, 2) + Fraction(2, 3) + Fraction(1, 3) == Fraction(3, 2)


def test_asymptotic_grid():
    assert asymptotic_grid(2) == pytest.approx(256 / 96)
    assert asymptotic_grid(10) == 10 ** 8 / 96
    ratios = [grid_ratio_reference(m) for m in (10, 100, 1000, 10000)]
    assert abs(ratios[-1] - 0.25) < 1e-3
    assert all(abs(a - 0.25) > abs(b - 0.25) for a, b in zip(ratios, ratios[1:]))


@pytest.mark.parametrize("n", [1, 2, 5, 10, 37, 100])
def test_sum_identities_against_direct_sums(n):
    r = range(n + 1)
    expected = {
        "sum_i": sum(r),
        "sum_i2": sum(i * i for i in r),
        "sum_i3": sum(i ** 3 for i in r),
        "sum_i_n_minus_i": sum(i * (n - i) for i in r),
        "sum_i2_n_minus_i": sum(i * i * (n - i) for i in r),
    }
    assert sum_identities(n) == expected


def test_sum_identity_examples():
    assert sum_identities(1) == dict(sum_i=1, sum_i2=1, sum_i3=1, sum_i_n_minus_i=0, sum_i2_n_minus_i=0)
    assert sum_identities(10)["sum_i_n_minus_i"] == 165


@pytest.mark.parametrize("n", [10, 100, 1000])
def test_sum_identity_asymptotics(n):
    s = sum_identities(n)
    assert abs(s["sum_i"] - n ** 2 / 2) <= n
    assert abs(s["sum_i2"] - n ** 3 / 3) <= n ** 2
    assert abs(s["sum_i3"] - n ** 4 / 4) <= n ** 3
    assert abs(s["sum_i_n_minus_i"] - n ** 3 / 6) <= n ** 2
    assert abs(s["sum_i2_n_minus_i"] - n ** 4 / 12) <= n ** 3
    assert s["sum_i2_n_minus_i"] == sum(i * (n - i) ** 2 for i in range(n + 1))
