import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mterm.dyadic import (
    DyadicInterval, StepFunction, add, cells_of, common_level, integrate, intervals,
    multiply, scale, weighted_lp_norm,
)
from mterm.haar import haar_function

from conftest import brute_step_norm


def test_interval_geometry():
    I = DyadicInterval(2, 1)
    assert (I.left, I.right, I.measure) == (0.25, 0.5, 0.25)
    assert I.children() == (DyadicInterval(3, 2), DyadicInterval(3, 3))
    assert I.parent() == DyadicInterval(1, 0)
    assert I.ancestors()[-1] == DyadicInterval(0, 0)
    assert DyadicInterval(0, 0).contains(I)
    assert not DyadicInterval(1, 1).contains(I)
    assert DyadicInterval.from_key(I.key) == I


@pytest.mark.parametrize("n,j", [(-1, 0), (1, 2), (2, -1)])
def test_interval_rejects_bad_positions(n, j):
    with pytest.raises(ValueError):
        DyadicInterval(n, j)


def test_cells_of_examples():
    assert list(cells_of(DyadicInterval(1, 1), 3)) == [4, 5, 6, 7]
    assert list(cells_of(DyadicInterval(3, 5), 3)) == [5]
    with pytest.raises(ValueError):
        cells_of(DyadicInterval(4, 0), 3)


def test_intervals_count():
    assert len(list(intervals(4))) == 31


def test_integrate_and_pointwise():
    f = StepFunction(2, [1, 2, 3, 4])
    assert integrate(f) == pytest.approx(2.5)
    g = StepFunction(1, [1, -1])
    assert np.allclose(add(f, g).values, [2, 3, 2, 3])
    assert np.allclose(multiply(f, g).values, [1, 2, -3, -4])
    assert np.allclose(scale(f, 2).values, [2, 4, 6, 8])
    assert f(0.3) == 2.0 and f(0.99) == 4.0


def test_weighted_norm_examples():
    f = StepFunction(2, [1, 2, 3, 4])
    assert weighted_lp_norm(f, 1) == pytest.approx(2.5)
    assert weighted_lp_norm(f, 2) == pytest.approx(np.sqrt(7.5))
    H = haar_function(DyadicInterval(1, 0), 3)
    assert weighted_lp_norm(H, 4) == pytest.approx(2 ** 0.25, rel=1e-12)
    assert weighted_lp_norm(H, 4) == pytest.approx(brute_step_norm(H.values, 4), rel=1e-12)


def test_weighted_norm_rejects():
    f = StepFunction(1, [1, 2])
    with pytest.raises(ValueError):
        weighted_lp_norm(f, 0.5)
    with pytest.raises(ValueError):
        weighted_lp_norm(f, 2, StepFunction(1, [1, 0]))


def test_measure_invariant_and_p2_integral(rng):
    for level in (0, 3, 7):
        f = StepFunction(level, rng.normal(size=1 << level))
        w = StepFunction(level, np.exp(rng.normal(size=1 << level)))
        assert weighted_lp_norm(StepFunction.constant(1.0, level), 1, w) == pytest.approx(integrate(w))
        assert weighted_lp_norm(f, 2, w) ** 2 == pytest.approx(integrate(multiply(multiply(f, f), w)))


def test_large_p_does_not_overflow():
    f = StepFunction(1, [1e200, 1.0])
    assert weighted_lp_norm(f, 50) == pytest.approx(1e200 * 0.5 ** (1 / 50))


def test_refinement_equality_and_serialization(rng):
    f = StepFunction(2, rng.normal(size=4))
    assert f == f.refine(5)
    g = StepFunction.from_json(f.to_json())
    assert g == f
    assert json.loads(f.to_json())["level"] == 2
    with pytest.raises(ValueError):
        StepFunction.from_dict({"level": 2, "values": [1, 2, 3]})
    a, b = common_level(f, StepFunction.constant(1.0))
    assert a.level == b.level == 2


levels = st.integers(0, 6)
ps = st.sampled_from([1.0, 1.5, 2.0, 3.0, 7.0])


@given(levels, st.integers(0, 3), ps, st.integers(0, 2**32 - 1))
def test_norm_invariant_under_refinement(level, extra, p, seed):
    r = np.random.default_rng(seed)
    f = StepFunction(level, r.normal(size=1 << level))
    w = StepFunction(level, np.exp(r.normal(size=1 << level)))
    assert weighted_lp_norm(f.refine(level + extra), p, w) == pytest.approx(
        weighted_lp_norm(f, p, w), rel=1e-12
    )


@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0, 7.0])
def test_triangle_inequality(p):
    r = np.random.default_rng(int(p * 10))
    for _ in range(1000):
        level = int(r.integers(0, 7))
        f = StepFunction(level, r.normal(size=1 << level))
        g = StepFunction(level, r.standard_cauchy(size=1 << level))
        w = StepFunction(level, np.exp(r.normal(size=1 << level)))
        lhs = weighted_lp_norm(add(f, g), p, w)
        assert lhs <= weighted_lp_norm(f, p, w) + weighted_lp_norm(g, p, w) + 1e-9 * (1 + lhs)
