"""Best m-term errors and best constant-coefficient approximations."""

import numpy as np

from mterm.greedy import CanonicalLp, HaarXp, SummingBasis
from mterm.oracle import d_pcc, distance_to_span, sigma
from mterm.weights import random_weight

x = np.array([3.0, -2.0, 1.0, 0.5])

for basis in (CanonicalLp(2, 4), CanonicalLp(1, 4), SummingBasis(4)):
    print(basis)
    for m in (1, 2, 3):
        s = sigma(basis, x, m=m)
        d = d_pcc(basis, x, m=m)
        print(f"  m={m}: sigma={s.distance:.4f} on {s.indices}   "
              f"D={d.distance:.4f} with alpha={d.alpha:.4f} signs={d.signs} on {d.indices}")

# a weight budget instead of a cardinality budget
wb = CanonicalLp(2, 4, index_weights=[1.0, 2.0, 1.0, 1.0])
r = sigma(wb, x, delta=2.0)
print("weight budget 2:", r.indices, r.distance)

# coordinate descent stalls on the non-smooth summing norm; the closed form does not
summing = SummingBasis(6)
y = np.array([1.0, -0.4, 2.0, 0.3, -1.5, 0.7])
print("summing distance, exact:  ", distance_to_span(summing, y, (1, 3), method="exact")[1])
print("summing distance, descent:", distance_to_span(summing, y, (1, 3), method="descent")[1])

# Haar system in a weighted X^3 space
hx = HaarXp(3.0, random_weight(3, np.random.default_rng(2)), level=3)
z = np.random.default_rng(3).normal(size=hx.dim)
print("Haar X^3: sigma_2 =", sigma(hx, z, m=2).distance, " D_2 =", d_pcc(hx, z, m=2).distance)
