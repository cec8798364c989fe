"""Acceptance criteria 1-10, each at its stated tolerance.

Every test records one ``PASS``/``FAIL`` line; pytest prints them in an
"acceptance criteria" section of the terminal summary.
"""

import time

import numpy as np
import pytest

from mterm.bench import (
    alternating_witness, estimate_greedy_constant, estimate_suppression_constant,
    haar_weight_suite, indicator_sum_checks, random_interval_family, verify_theorem3,
)
from mterm.dyadic import DyadicInterval, StepFunction
from mterm.greedy import CanonicalLp, HaarXp, SummingBasis
from mterm.haar import analyze, indicator_sum_norm, synthesize, xp_norm
from mterm.oracle import DEFAULT_TOL, d_pcc, distance_to_span, sigma
from mterm.weights import (
    DyadicWeight, apd_constant, carleson_constant, random_sequence, random_weight,
    reverse_doubling_delta,
)

from conftest import ACCEPTANCE_LINES


def report(n: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, detail


def test_criterion_1_parseval():
    start = time.perf_counter()
    rng = np.random.default_rng(1)
    one = DyadicWeight.constant(1.0)
    worst_rel = worst_rec = 0.0
    for _ in range(500):
        f = StepFunction(8, rng.normal(size=256))
        e = analyze(f)
        direct = np.sqrt(np.mean(f.values ** 2))
        worst_rel = max(worst_rel, abs(xp_norm(e, 2, one) - direct) / direct)
        worst_rec = max(worst_rec, float(np.max(np.abs(synthesize(e).values - f.values))))
    elapsed = time.perf_counter() - start
    ok = worst_rel <= 1e-9 and worst_rec <= 1e-10 and elapsed < 5
    report(1, ok, f"max rel norm err {worst_rel:.2e}, max reconstruction err {worst_rec:.2e}, {elapsed:.2f}s")


def test_criterion_2_indicator_norms():
    one = DyadicWeight.constant(1.0)
    worst = 0.0
    for p in (1.5, 2.0, 3.0):
        for m in range(1, 17):
            family = [DyadicInterval(4, j) for j in range(m)]
            value = indicator_sum_norm(family, p, one)
            worst = max(worst, abs(value - m ** (1 / p)) / m ** (1 / p))
    report(2, worst <= 1e-10, f"max rel err vs m^(1/p) {worst:.2e}")


def test_criterion_3_weight_constants():
    carleson_err = max(
        abs(carleson_constant(DyadicWeight.constant(1.0, L), 1.0, L) - (2 - 2.0 ** -L)) for L in range(1, 11)
    )
    deltas = {reverse_doubling_delta(DyadicWeight.constant(1.0, L), L) for L in range(1, 11)}
    apd_err = max(
        abs(apd_constant(DyadicWeight.constant(c, L), p, L) - 1)
        for c in (0.3, 1.0, 5.0) for p in (1.5, 2.0, 4.0) for L in (0, 3, 6)
    )
    ok = carleson_err <= 1e-12 and deltas == {0.5} and apd_err <= 1e-12
    report(3, ok, f"carleson err {carleson_err:.1e}, delta values {sorted(deltas)}, apd err {apd_err:.1e}")


def test_criterion_4_remark_bound():
    rng = np.random.default_rng(4)
    violations = checked = 0
    for _ in range(200):
        w = random_weight(6, rng, float(rng.uniform(0.1, 3.0)))
        d = reverse_doubling_delta(w, 6)
        if not d < 1:
            continue
        for alpha in (0.5, 1.0, 2.0):
            checked += 1
            if carleson_constant(w, alpha, 6) > 1 / (1 - d ** alpha) + 1e-9:
                violations += 1
    report(4, violations == 0 and checked == 600, f"{checked} checks, {violations} violations")


def test_criterion_5_indicator_sum_inequalities():
    start = time.perf_counter()
    rng = np.random.default_rng(5)
    violations = {}
    for _ in range(200):
        w = random_weight(6, rng, 1.5)
        p = float(rng.choice([1.5, 2.0, 3.0, 4.0]))
        family = random_interval_family(rng, 5)
        for key, (lhs, rhs) in indicator_sum_checks(w, family, p, 6).items():
            violations[key] = violations.get(key, 0) + (lhs > rhs * (1 + 1e-12) + 1e-12)
    elapsed = time.perf_counter() - start
    total = sum(violations.values())
    report(5, total == 0 and elapsed < 60, f"200 triples, violations {violations}, {elapsed:.2f}s")


def _projection(x, A):
    E = np.eye(len(x))[:, list(A)]
    c, *_ = np.linalg.lstsq(E, x, rcond=None)
    return float(np.linalg.norm(x - E @ c))


def test_criterion_6_oracles():
    rng = np.random.default_rng(6)
    tol = DEFAULT_TOL
    dist_err = 0.0
    order_fail = eq_fail = 0
    instances = 0
    makers = (lambda: CanonicalLp(2, int(rng.integers(2, 11))),
              lambda: HaarXp(2.0, level=int(rng.integers(1, 4))))
    for make in makers:
        for k in range(500):
            b = make()
            x = rng.normal(size=b.dim)
            A = tuple(int(a) for a in np.flatnonzero(rng.random(b.dim) < 0.5))
            expected = _projection(x, A)
            for method in ("auto", "descent"):
                dist_err = max(dist_err, abs(distance_to_span(b, x, A, tol, method)[1] - expected))
            ms = (1, 2, 3) if k % 5 == 0 else (1, 2)
            for m in ms:
                if m > b.dim:
                    continue
                s, d = sigma(b, x, m=m, tol=tol).distance, d_pcc(b, x, m=m, tol=tol).distance
                order_fail += s > d + 2 * tol
                if m == 1:
                    eq_fail += abs(s - d) > 2 * tol
            instances += 1
    ok = dist_err <= 1e-7 and order_fail == 0 and eq_fail == 0
    report(6, ok, f"{instances} instances, max distance err {dist_err:.1e}, "
                  f"sigma>D failures {order_fail}, m=1 mismatches {eq_fail}")


def test_criterion_7_lp_greedy():
    values = {p: estimate_greedy_constant(CanonicalLp(p, 8), 1.0, "cardinality", 1000, 7).value
              for p in (1.5, 2.0, 4.0)}
    ok = all(abs(v - 1) <= 1e-5 for v in values.values())
    report(7, ok, "C(1) estimates " + ", ".join(f"p={p}: {v:.8f}" for p, v in values.items()))


def test_criterion_8_negative_control():
    supp = {N: estimate_suppression_constant(SummingBasis(N), 300, 8, [alternating_witness(N)]).value
            for N in (4, 8, 16)}
    greedy = {N: estimate_greedy_constant(SummingBasis(N), 1.0, "cardinality", 300, 8).value
              for N in (4, 8, 12)}
    linear = all(supp[N] >= N / 2 - 1e-12 for N in supp)
    increasing_s = supp[4] < supp[8] < supp[16]
    increasing_g = greedy[4] < greedy[8] < greedy[12]
    ok = linear and increasing_s and increasing_g
    report(8, ok, f"K_s {supp} (>= N/2: {linear}), C(1) {greedy} (strictly increasing: {increasing_g})")


def test_criterion_9_theorem3():
    start = time.perf_counter()
    bad = []
    lines = []
    for basis in (CanonicalLp(2, 8), HaarXp(2.0, level=3)):
        for s, t in ((1, 1), (0.5, 1), (1, 0.5), (0.5, 0.5)):
            r = verify_theorem3(basis, s, t, 1000, 9)
            lines.append(f"{basis.tag}(s={s},t={t}) D={r.d_hat:.3f} rounds={r.feedback_rounds}")
            if (r.membership_a_checked != 1000 or r.membership_a_failed or r.membership_b_failed
                    or r.swap_violations or r.projection_violations or r.final_bound_violations):
                bad.append(r.summary())
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    report(9, ok, f"8 runs x 1000 samples, {len(bad)} inconsistent, {elapsed:.1f}s; " + "; ".join(lines))


def test_criterion_10_haar_suite():
    rng = np.random.default_rng(10)
    w = random_weight(6, rng)
    delta = reverse_doubling_delta(w, 6)
    seq = random_sequence(6, rng, 0.5, 2.0)
    rep = haar_weight_suite(w, (1.5, 2.0, 3.0), level=6, samples=200, seed=10, index_weights=seq,
                            ts=(0.5, 1.0), bound_samples=1000)
    viol = sum(r["violations"] for r in rep.bound_checks)
    worst = max(r["max_ratio"] / r["K"] for r in rep.bound_checks)
    ok = delta < 1 and viol == 0 and len(rep.bound_checks) == 6
    report(10, ok, f"delta*={delta:.3f}, 6 (p,t) pairs x 1000 samples, {viol} violations, "
                   f"max ratio/K {worst:.3f}")
