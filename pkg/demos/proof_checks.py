"""Sampled checks of the PCCG to weak-greedy argument and of the Haar bound."""

import numpy as np

from mterm.bench import haar_weight_suite, verify_theorem3
from mterm.greedy import CanonicalLp, HaarXp
from mterm.weights import random_sequence, random_weight

# each sample builds the auxiliary vectors of the argument and checks their
# greedy-set memberships and the two norm inequalities with the estimated D(s)
for basis in (CanonicalLp(2, 8), HaarXp(2.0, level=3)):
    for s, t in ((1.0, 1.0), (0.5, 1.0), (1.0, 0.5)):
        rep = verify_theorem3(basis, s, t, 200, 0)
        print(f"{basis.tag} s={s} t={t}: D(s)={rep.d_hat:.3f} after {rep.feedback_rounds} rounds, "
              f"{rep.summary()['verdict']} the argument")

# weighted Haar system with index weights in [0.5, 2]
rng = np.random.default_rng(1)
w = random_weight(6, rng)
rep = haar_weight_suite(w, level=6, samples=100, index_weights=random_sequence(6, rng),
                        bound_samples=200, control_levels=(2, 4, 6))
print("weight constants:", rep.weight_constants)
print("indicator-sum violations:", rep.indicator_violations)
for row in rep.bound_checks:
    print(f"p={row['p']} t={row['t']}: K={row['K']:.1f}, worst ratio {row['max_ratio']:.3f}, "
          f"{row['violations']} violations")
print("non-Carleson control:", rep.control)
