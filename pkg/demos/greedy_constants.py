"""Greedy, suppression and symmetry constants: l^p against the summing basis."""

from mterm.bench import (
    alternating_witness, estimate_democracy, estimate_greedy_constant,
    estimate_pccg_constant, estimate_suppression_constant, estimate_symmetry_largest,
)
from mterm.greedy import CanonicalLp, SummingBasis

# l^p is unconditional and democratic: the greedy constant is exactly 1
for p in (1.5, 2.0, 4.0):
    est = estimate_greedy_constant(CanonicalLp(p, 8), 1.0, "cardinality", 300, 0)
    print(f"l^{p}: C(1) = {est.value:.6f}  ({est.skipped} samples skipped)")

# weak greedy sets with t = 0.5 and the polynomial (constant coefficient) variant
lp = CanonicalLp(2, 8)
print("l^2, t=0.5: C =", estimate_greedy_constant(lp, 0.5, "cardinality", 200, 1).value)
print("l^2, t=0.5: D =", estimate_pccg_constant(lp, 0.5, "cardinality", 200, 1).value)

# the summing basis is conditional; the alternating vector is the classical witness
for n in (4, 8, 16):
    b = SummingBasis(n)
    ks = estimate_suppression_constant(b, 200, 0, [alternating_witness(n)])
    print(f"summing N={n:2d}: K_s >= {ks.value:.3f}")
for n in (4, 8, 12):
    est = estimate_greedy_constant(SummingBasis(n), 1.0, "cardinality", 200, 0)
    print(f"summing N={n:2d}: C(1) >= {est.value:.3f}  witness x = {[round(v, 3) for v in est.witness['x']]}")

# it is still democratic, so the failure comes from the lack of unconditionality
print("summing N=8 democracy:", estimate_democracy(SummingBasis(8), "cardinality", 200, 0).value)
print("summing N=8 symmetry for largest coefficients:",
      estimate_symmetry_largest(SummingBasis(8), 2000, 0).value)
