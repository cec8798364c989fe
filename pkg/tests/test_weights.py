import numpy as np
import pytest
from hypothesis import given, strategies as st

from mterm.dyadic import DyadicInterval, StepFunction, cells_of, intervals
from mterm.weights import (
    DyadicWeight, IndexedSequence, apd_constant, carleson_constant, concentrated_weight,
    mean_on_interval, pair_drcc_constant, power_weight, random_sequence, random_weight,
    reverse_doubling_delta, total_mass, weight_of_interval,
)


# ---- brute-force oracles working from cell values and explicit interval loops


def mass(values, I):
    L = int(np.log2(len(values)))
    return sum(values[c] for c in cells_of(I, L)) * 2.0 ** -L


def brute_apd(values, p, level):
    best = 0.0
    for I in intervals(level):
        mw = mass(values, I) / I.measure
        md = mass([v ** (-1 / (p - 1)) for v in values], I) / I.measure
        best = max(best, mw * md ** (p - 1))
    return best


def brute_carleson(values, alpha, level):
    best = 0.0
    for J in intervals(level):
        chain = [I for I in intervals(level) if I.contains(J)]
        s = sum(mass(values, I) ** -alpha for I in chain)
        best = max(best, mass(values, J) ** alpha * s)
    return best


def w_of(values):
    return DyadicWeight.from_values(values)


def test_interval_masses():
    w = w_of([1.0, 3.0])
    assert weight_of_interval(w, DyadicInterval(1, 1)) == pytest.approx(1.5)
    assert mean_on_interval(w, DyadicInterval(1, 1)) == pytest.approx(3.0)
    assert total_mass(w) == pytest.approx(2.0)


def test_apd_example():
    w = w_of([1, 1, 1, 2])
    assert apd_constant(w, 2, 2) == pytest.approx(9 / 8, abs=1e-12)
    assert brute_apd([1, 1, 1, 2], 2, 2) == pytest.approx(9 / 8, abs=1e-12)


def test_apd_rejects_p_le_1():
    with pytest.raises(ValueError):
        apd_constant(w_of([1, 2]), 1.0, 1)


def test_apd_matches_brute_force_and_scale_invariance(rng):
    for _ in range(20):
        w = random_weight(4, rng, 1.5)
        for p in (1.5, 2.0, 3.0):
            a = apd_constant(w, p, 4)
            assert a == pytest.approx(brute_apd(w.values, p, 4), rel=1e-10)
            assert a >= 1 - 1e-12
            for c in (0.1, 7.0):
                assert apd_constant(w.scaled(c), p, 4) == pytest.approx(a, rel=1e-10)


def test_reverse_doubling_examples():
    assert reverse_doubling_delta(DyadicWeight.constant(1.0, 3), 3) == 0.5
    assert reverse_doubling_delta(w_of([3, 1]), 1) == pytest.approx(0.75)
    with pytest.raises(ValueError):
        reverse_doubling_delta(w_of([1, 1]), 0)


def test_carleson_examples():
    w = DyadicWeight.constant(1.0, 3)
    assert carleson_constant(w, 1.0, 3) == pytest.approx(1.875, abs=1e-12)
    assert brute_carleson(np.ones(8), 1.0, 3) == pytest.approx(1.875, abs=1e-12)
    assert carleson_constant(DyadicWeight.constant(1.0, 14), 1.0, 14) == pytest.approx(2.0, abs=1e-4)


def test_carleson_matches_brute_force(rng):
    for _ in range(20):
        w = random_weight(4, rng, 2.0)
        for alpha in (0.5, 1.0, 2.0):
            assert carleson_constant(w, alpha, 4) == pytest.approx(
                brute_carleson(w.values, alpha, 4), rel=1e-10
            )


def test_carleson_remark_bound(rng):
    for _ in range(50):
        w = random_weight(5, rng, 1.0)
        d = reverse_doubling_delta(w, 5)
        assert d < 1
        for alpha in (0.5, 1.0, 2.0):
            assert carleson_constant(w, alpha, 5) <= 1 / (1 - d ** alpha) + 1e-9


def test_pair_constant_reduces_to_carleson(rng):
    w = random_weight(5, rng)
    seq = IndexedSequence.from_weight(w)
    for alpha in (0.5, 1.0, 2.0):
        assert pair_drcc_constant(seq, seq, alpha, 5) == pytest.approx(carleson_constant(w, alpha, 5))


def test_pair_constant_homogeneity(rng):
    w, v = random_sequence(4, rng), random_sequence(4, rng)
    base = pair_drcc_constant(w, v, 1.0, 4)
    assert pair_drcc_constant(w, v.map(lambda a: 2 * a), 1.0, 4) == pytest.approx(2 * base)
    assert pair_drcc_constant(w.map(lambda a: 2 * a), v, 1.0, 4) == pytest.approx(base / 2)


def test_constants_monotone_in_level(rng):
    w = random_weight(6, rng)
    for f in (lambda L: carleson_constant(w, 1.0, L), lambda L: apd_constant(w, 2.0, L),
              lambda L: reverse_doubling_delta(w, L)):
        vals = [f(L) for L in range(1, 7)]
        assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))


def test_control_weight_grows_linearly():
    vals = [carleson_constant(concentrated_weight(L), 1.0, L) for L in (2, 4, 6, 8)]
    assert all(abs(v - (L + 1)) < 1e-3 for v, L in zip(vals, (2, 4, 6, 8)))


def test_power_weight_and_refine():
    w = power_weight(0.5, 3)
    assert w.values[0] == pytest.approx((1 / 16) ** 0.5)
    assert total_mass(w.refine(6)) == pytest.approx(total_mass(w))


def test_weight_rejects_nonpositive():
    with pytest.raises(ValueError):
        w_of([1.0, 0.0])


def test_serialization(rng):
    w = random_weight(3, rng)
    assert np.array_equal(DyadicWeight.from_json(w.to_json()).values, w.values)
    s = random_sequence(3, rng)
    t = IndexedSequence.from_json(s.to_json())
    assert np.array_equal(t.flat(), s.flat())
    with pytest.raises(ValueError):
        IndexedSequence.from_json('{"0:0": 1.0, "1:0": 1.0}')


@given(st.lists(st.floats(0.01, 100), min_size=8, max_size=8))
def test_masses_are_additive(vals):
    w = w_of(vals)
    for n in range(3):
        assert np.allclose(w.masses[n], w.masses[n + 1][0::2] + w.masses[n + 1][1::2])
