"""Haar coefficients, square functions and dyadic weight constants."""

import numpy as np

from mterm.dyadic import DyadicInterval, StepFunction, weighted_lp_norm
from mterm.haar import analyze, indicator_sum_norm, square_function, synthesize, xp_norm
from mterm.weights import (
    DyadicWeight, apd_constant, carleson_constant, concentrated_weight, power_weight,
    reverse_doubling_delta,
)

rng = np.random.default_rng(0)

# a random step function on 2^6 cells and its Haar expansion
f = StepFunction(6, rng.normal(size=64))
e = analyze(f)
print("reconstruction error:", np.abs(synthesize(e).values - f.values).max())

# with Lebesgue measure and p = 2 the square function norm is the L^2 norm
one = DyadicWeight.constant(1.0)
print("X^2 norm:", xp_norm(e, 2, one), " L^2 norm:", weighted_lp_norm(f, 2))
print("S(f) on the first four cells:", square_function(e).values[:4])

# the power weight x^0.5 is in A_2; its constants stay moderate
w = power_weight(0.5, 8)
print("A_2 constant:", apd_constant(w, 2.0, 8))
print("reverse doubling delta:", reverse_doubling_delta(w, 8))
for alpha in (0.5, 1.0, 2.0):
    print(f"reverse Carleson constant, alpha={alpha}:", carleson_constant(w, alpha, 8))

# normalized indicator sums over disjoint intervals behave like m^(1/p)
for m in (1, 4, 16):
    fam = [DyadicInterval(4, j) for j in range(m)]
    print(f"m={m:2d}  ||sum of normalized H_I||_X^3 = {indicator_sum_norm(fam, 3.0, w):.4f}"
          f"   m^(1/3) = {m ** (1 / 3):.4f}")

# a weight with its mass piled on one cell: the Carleson constant grows with depth
for L in (2, 4, 6, 8):
    print(f"concentrated weight, level {L}: C = {carleson_constant(concentrated_weight(L), 1.0, L):.3f}")
