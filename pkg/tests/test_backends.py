"""The compiled kernels must agree with the pure-Python ones bit for bit."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadchroma import _backend
from quadchroma.geometry import CHI_SLOPE, ColorRule, parse_rule
from quadchroma.lattice import GridBox, count_box, count_grid, count_lattice_points_triangle
from quadchroma.montecarlo import RngSpec, sample_quads

RULES = [CHI_SLOPE, parse_rule("blue=(-1,1)"), parse_rule("blue=[-inf,2^-16] vertical=red"),
         parse_rule("red=(1/3,5]"), ColorRule()]


BACKENDS = _backend.available_backends()
PY = BACKENDS["python"]
needs_compiled = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled extension not built")


@pytest.fixture
def py():
    return PY


def test_selected_backend_prefers_compiled():
    if "cython" in _backend.available_backends():
        assert _backend.BACKEND in ("cython", "python")
    else:
        assert _backend.BACKEND == "python"


@pytest.mark.parametrize("wh", [(3, 3), (4, 2), (5, 4)])
@pytest.mark.parametrize("rule", RULES[:4], ids=str)
def test_lattice_census_agrees(compiled, py, wh, rule):
    assert count_box(GridBox(*wh), rule, kernels=compiled) == count_box(GridBox(*wh), rule, kernels=py)


def test_grid_agrees(compiled, py):
    assert count_grid(4, kernels=compiled) == count_grid(4, kernels=py)


def _census(kernels, q, rules):
    enc = _backend.encode_rules(rules)
    mono, discord, hits = (np.zeros(len(rules), dtype=np.int64) for _ in range(3))
    head = kernels.dyadic_census(q, enc, mono, discord, hits)
    return tuple(map(int, head)), mono.tolist(), discord.tolist(), hits.tolist()


def test_dyadic_census_agrees_on_random_samples(compiled, py):
    q = sample_quads(RngSpec(77), 20_000)
    assert _census(compiled, q, RULES) == _census(py, q, RULES)


small = st.integers(min_value=0, max_value=6)


@needs_compiled
@settings(max_examples=300)
@given(st.lists(small, min_size=8, max_size=8),
       st.sampled_from(RULES))
def test_dyadic_census_agrees_on_degenerate_heavy_input(coords, rule):
    # tiny coordinates hit collinear, coincident, horizontal and boundary cases often
    q = np.array([coords], dtype=np.int64)
    assert _census(BACKENDS["cython"], q, [CHI_SLOPE, rule]) == _census(PY, q, [CHI_SLOPE, rule])


def test_dyadic_census_extreme_coordinates(compiled, py):
    top = 1 << 53
    q = np.array([
        [0, 0, top, top, top, 0, 0, top],
        [0, 0, top, 1, top - 1, top, 1, top - 1],
        [1, 0, top, top - 1, top - 1, top, 0, 1],
    ], dtype=np.int64)
    rules = [CHI_SLOPE, ColorRule(-(1 << 62), (1 << 62), lo_open=False), parse_rule("blue=(-1,1)")]
    assert _census(compiled, q, rules) == _census(py, q, rules)


@needs_compiled
@settings(max_examples=200)
@given(st.lists(st.tuples(st.fractions(min_value=-30, max_value=30, max_denominator=9),
                          st.fractions(min_value=-30, max_value=30, max_denominator=9)),
                min_size=3, max_size=3))
def test_triangle_count_agrees(verts):
    compiled = BACKENDS["cython"]
    assert count_lattice_points_triangle(*verts, kernels=compiled) == count_lattice_points_triangle(*verts, kernels=PY)
