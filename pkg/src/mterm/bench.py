"""Seeded estimators for basis constants and sampled checks of approximation bounds.

Every constant is reported as the largest ratio seen on the sampled
instances, i.e. a lower bound for the true supremum, together with a
replayable witness.
"""

from __future__ import annotations

import csv
import datetime as _dt
import io
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .greedy import (
    Basis,
    HaarXp,
    complement,
    greedy_residual_norm,
    is_t_greedy_set,
    project,
    sample_t_greedy_sets,
    signed_indicator,
    support,
    support_weight,
)
from .haar import indicator_sum_norm
from .oracle import DEFAULT_TOL, best_scalar, d_pcc, distance_to_span, sigma
from .weights import (
    DyadicWeight,
    IndexedSequence,
    apd_constant,
    carleson_constant,
    concentrated_weight,
    pair_drcc_constant,
    reverse_doubling_delta,
)

PROFILES = ("uniform", "sparse", "geometric", "flat")
CSV_COLUMNS = ("seed", "basis", "t", "m", "budget", "residual", "sigma", "d", "ratio_sigma", "ratio_d")
# slack for membership checks on vectors built by floating arithmetic
MEMBERSHIP_SLACK = 1e-12


def random_element(dim: int, rng: np.random.Generator, profile: str | None = None) -> np.ndarray:
    """Random coefficients from a mixture of profiles.

    Greedy pathologies concentrate on near-flat and near-sparse vectors, so
    the mixture covers uniform, sparse, geometrically decaying and flat
    (ties, random signs) coefficient patterns.
    """
    if profile is None:
        profile = PROFILES[rng.integers(len(PROFILES))]
    if profile == "uniform":
        return rng.uniform(-1, 1, dim)
    if profile == "sparse":
        x = np.zeros(dim)
        k = rng.integers(1, dim + 1)
        x[rng.choice(dim, k, replace=False)] = rng.uniform(-1, 1, k)
        return x
    if profile == "geometric":
        r = rng.uniform(0.3, 0.95)
        mags = r ** np.arange(dim)
        return rng.permutation(mags) * rng.choice((-1.0, 1.0), dim)
    if profile == "flat":
        mags = np.ones(dim)
        if rng.random() < 0.5:
            mags += rng.uniform(0, 1e-2, dim)
        return mags * rng.choice((-1.0, 1.0), dim)
    raise ValueError(f"unknown profile {profile!r}")


def random_subset(rng: np.random.Generator, universe: Sequence[int], k: int | None = None) -> tuple:
    universe = list(universe)
    if k is None:
        k = int(rng.integers(0, len(universe) + 1))
    return tuple(sorted(int(n) for n in rng.choice(universe, k, replace=False))) if k else ()


def random_signs(rng: np.random.Generator, k: int) -> np.ndarray:
    return rng.choice((-1.0, 1.0), k)


@dataclass
class ConstantEstimate:
    name: str
    value: float
    witness: dict
    samples: int
    basis: str
    params: dict = field(default_factory=dict)
    skipped: int = 0
    rows: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        self.value = float(self.value)

    def summary(self) -> dict:
        return {
            "constant": self.name,
            "value": self.value,
            "witness": self.witness,
            "samples": self.samples,
            "skipped": self.skipped,
            "basis": self.basis,
            "params": self.params,
        }


def _update(best, ratio, witness):
    if best is None or ratio > best[0]:
        return ratio, witness
    return best


def _tolist(a):
    return [float(v) for v in np.asarray(a, dtype=float)]


# ---------------------------------------------------------------- unconditionality


def suppression_ratio(basis: Basis, x, A) -> float:
    x = np.asarray(x, dtype=float)
    return basis.norm(project(x, A)) / basis.norm(x)


def alternating_witness(dim: int) -> tuple[np.ndarray, tuple]:
    """``x = (1, -1, 1, ...)`` and A = the positions holding +1."""
    x = np.array([(-1.0) ** n for n in range(dim)])
    return x, tuple(range(0, dim, 2))


def estimate_suppression_constant(
    basis: Basis,
    samples: int,
    seed: int,
    candidates: Iterable[tuple] = (),
    subsets_per_sample: int = 4,
) -> ConstantEstimate:
    """Largest ``||P_A x|| / ||x||`` over sampled ``(x, A)``.

    For each sampled x the sign-split sets ``{x > 0}`` and ``{x < 0}`` are
    tried alongside random subsets.  ``candidates`` are extra ``(x, A)``
    pairs evaluated first.
    """
    rng = np.random.default_rng(seed)
    best = None
    for x, A in candidates:
        best = _update(best, suppression_ratio(basis, x, A), {"x": _tolist(x), "A": list(A)})
    for _ in range(samples):
        x = random_element(basis.dim, rng)
        if basis.norm(x) == 0:
            continue
        sets = [tuple(np.flatnonzero(x > 0)), tuple(np.flatnonzero(x < 0))]
        sets += [random_subset(rng, range(basis.dim)) for _ in range(subsets_per_sample)]
        for A in sets:
            best = _update(best, suppression_ratio(basis, x, A), {"x": _tolist(x), "A": [int(a) for a in A]})
    return ConstantEstimate("K_s", best[0], best[1], samples, basis.tag, {"seed": seed})


def symmetry_ratio(basis: Basis, x, A, B, eps, eps_prime) -> float:
    x = np.asarray(x, dtype=float)
    t = np.abs(x).max()
    num = basis.norm(x + t * signed_indicator(basis.dim, A, eps))
    den = basis.norm(x + t * signed_indicator(basis.dim, B, eps_prime))
    return num / den


def estimate_symmetry_largest(basis: Basis, samples: int, seed: int) -> ConstantEstimate:
    """Largest ``||x + t 1_{eps A}|| / ||x + t 1_{eps' B}||``, ``t = max |x_n|``.

    Sampled configurations have ``|A| = |B| >= 1``, A and B disjoint and
    both disjoint from supp(x).  Each pair is also scored with A and B
    swapped.
    """
    if basis.dim < 3:
        raise ValueError("symmetry estimates need dim >= 3")
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(samples):
        perm = rng.permutation(basis.dim)
        k = int(rng.integers(1, (basis.dim - 1) // 2 + 1))
        A, B = tuple(sorted(perm[:k])), tuple(sorted(perm[k:2 * k]))
        rest = perm[2 * k:]
        x = np.zeros(basis.dim)
        s = int(rng.integers(1, rest.size + 1))
        x[rest[:s]] = random_element(s, rng)
        if not np.any(x):
            x[rest[0]] = 1.0
        eps, eps_p = random_signs(rng, k), random_signs(rng, k)
        for P, Q, e1, e2 in ((A, B, eps, eps_p), (B, A, eps_p, eps)):
            r = symmetry_ratio(basis, x, P, Q, e1, e2)
            best = _update(best, r, {
                "x": _tolist(x), "A": [int(a) for a in P], "B": [int(b) for b in Q],
                "eps": _tolist(e1), "eps_prime": _tolist(e2),
            })
    return ConstantEstimate("C_s", best[0], best[1], samples, basis.tag, {"seed": seed})


def democracy_ratio(basis: Basis, A, B) -> float:
    return basis.norm(signed_indicator(basis.dim, A)) / basis.norm(signed_indicator(basis.dim, B))


def estimate_democracy(basis: Basis, mode: str, samples: int, seed: int) -> ConstantEstimate:
    """Largest ``||1_A|| / ||1_B||`` with ``|A| = |B|`` or ``w(A) <= w(B)``.

    Both modes draw the same pairs: an equal-size pair (used in either
    orientation allowed by the mode) and, in weight mode only, an extra pair
    of independent random sizes oriented so that ``w(A) <= w(B)``.
    """
    if mode not in ("cardinality", "weight"):
        raise ValueError(f"mode must be 'cardinality' or 'weight', got {mode!r}")
    rng = np.random.default_rng(seed)
    best = None
    N = basis.dim
    for _ in range(samples):
        k = int(rng.integers(1, N + 1))
        A, B = random_subset(rng, range(N), k), random_subset(rng, range(N), k)
        C = random_subset(rng, range(N), int(rng.integers(1, N + 1)))
        D = random_subset(rng, range(N), int(rng.integers(1, N + 1)))
        pairs = [(A, B), (B, A)]
        if mode == "weight":
            pairs = [(P, Q) for P, Q in pairs if support_weight(basis, P) <= support_weight(basis, Q)]
            pairs.append((C, D) if support_weight(basis, C) <= support_weight(basis, D) else (D, C))
        for P, Q in pairs:
            best = _update(best, democracy_ratio(basis, P, Q), {"A": list(P), "B": list(Q)})
    name = "democracy" if mode == "cardinality" else "w-democracy"
    return ConstantEstimate(name, best[0], best[1], samples, basis.tag, {"seed": seed, "mode": mode})


# ---------------------------------------------------------------- greedy constants


def _budget_kwargs(basis: Basis, gamma, budget_mode: str) -> dict:
    if budget_mode == "cardinality":
        return {"m": len(gamma)}
    if budget_mode == "weight":
        return {"delta": support_weight(basis, gamma)}
    raise ValueError(f"budget mode must be 'cardinality' or 'weight', got {budget_mode!r}")


def greedy_instances(basis: Basis, t: float, samples: int, seed: int):
    """Seeded ``(x, m, gamma)`` with gamma a t-greedy set of size m for x."""
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        x = random_element(basis.dim, rng)
        k = len(support(x))
        m = int(rng.integers(1, k)) if k >= 2 else 1
        gamma = sample_t_greedy_sets(x, t, m, 1, rng)[0]
        yield x, m, gamma


def greedy_ratio(basis: Basis, x, gamma, t: float, budget_mode: str, tol: float = DEFAULT_TOL,
                 with_d: bool = False) -> dict:
    """One sample row: residual, sigma and optionally d at the greedy budget."""
    kw = _budget_kwargs(basis, gamma, budget_mode)
    residual = greedy_residual_norm(basis, x, gamma)
    s = sigma(basis, x, tol=tol, **kw).distance
    d = d_pcc(basis, x, tol=tol, **kw).distance if with_d else math.nan
    guard = 10 * tol
    return {
        "t": t,
        "m": len(gamma),
        "budget": next(iter(kw.values())),
        "residual": residual,
        "sigma": s,
        "d": d,
        "ratio_sigma": residual / s if s >= guard else math.nan,
        "ratio_d": residual / d if with_d and d >= guard else math.nan,
    }


def _greedy_estimate(basis, t, budget_mode, samples, seed, with_d, tol):
    rows, skipped = [], 0
    best_s = best_d = None
    for x, m, gamma in greedy_instances(basis, t, samples, seed):
        row = greedy_ratio(basis, x, gamma, t, budget_mode, tol, with_d)
        row = {"seed": seed, "basis": basis.tag, **row}
        rows.append(row)
        if math.isnan(row["ratio_sigma"]):
            skipped += 1
            continue
        witness = {"x": _tolist(x), "gamma": list(gamma), "t": t, "budget_mode": budget_mode}
        best_s = _update(best_s, row["ratio_sigma"], witness)
        if with_d:
            if row["ratio_d"] > row["ratio_sigma"] + 1e-9:
                raise RuntimeError(f"d below sigma on sample {witness}: oracle bug")
            best_d = _update(best_d, row["ratio_d"], witness)
    return rows, skipped, best_s, best_d


def estimate_greedy_constant(
    basis: Basis, t: float, budget_mode: str, samples: int, seed: int, tol: float = DEFAULT_TOL
) -> ConstantEstimate:
    """Largest ``||x - P_gamma x|| / sigma_budget(x)`` over sampled t-greedy sets.

    Samples whose sigma falls under ``10 tol`` are skipped and counted.
    """
    rows, skipped, best, _ = _greedy_estimate(basis, t, budget_mode, samples, seed, False, tol)
    if best is None:
        best = (math.nan, {})
    return ConstantEstimate(
        "C(t) greedy", best[0], best[1], samples, basis.tag,
        {"t": t, "budget_mode": budget_mode, "seed": seed}, skipped, rows,
    )


def estimate_pccg_constant(
    basis: Basis, t: float, budget_mode: str, samples: int, seed: int, tol: float = DEFAULT_TOL
) -> ConstantEstimate:
    """As :func:`estimate_greedy_constant` with ``d_pcc`` as denominator.

    On the same seed both estimators see the same samples, and each row
    must satisfy ``ratio_d <= ratio_sigma``; a violation raises.
    """
    rows, skipped, _, best = _greedy_estimate(basis, t, budget_mode, samples, seed, True, tol)
    if best is None:
        best = (math.nan, {})
    return ConstantEstimate(
        "D(t) PCCG", best[0], best[1], samples, basis.tag,
        {"t": t, "budget_mode": budget_mode, "seed": seed}, skipped, rows,
    )


def replay_witness(basis: Basis, estimate: ConstantEstimate, tol: float = DEFAULT_TOL) -> float:
    """Recompute the ratio recorded in ``estimate.witness``."""
    w = estimate.witness
    if estimate.name == "K_s":
        return suppression_ratio(basis, w["x"], w["A"])
    if estimate.name == "C_s":
        return symmetry_ratio(basis, w["x"], w["A"], w["B"], w["eps"], w["eps_prime"])
    if estimate.name in ("democracy", "w-democracy"):
        return democracy_ratio(basis, w["A"], w["B"])
    with_d = estimate.name == "D(t) PCCG"
    row = greedy_ratio(basis, np.array(w["x"]), tuple(w["gamma"]), w["t"], w["budget_mode"], tol, with_d)
    return row["ratio_d"] if with_d else row["ratio_sigma"]


def growth_table(make_basis: Callable[[int], Basis], dims: Iterable[int],
                 estimator: Callable[[Basis], ConstantEstimate]) -> list[tuple[int, float]]:
    return [(n, estimator(make_basis(n)).value) for n in dims]


def write_csv(rows: Iterable[dict], path=None, timestamp: bool = True) -> str:
    """Render sample rows as CSV (first line a ``#`` timestamp comment)."""
    buf = io.StringIO()
    if timestamp:
        buf.write(f"# generated {_dt.datetime.now(_dt.timezone.utc).isoformat()}\n")
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if isinstance(v, float) and math.isnan(v) else v) for k, v in row.items()})
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


# ---------------------------------------------------------------- proof-step checks


@dataclass
class Theorem3Report:
    s: float
    t: float
    basis: str
    samples: int
    d_hat: float
    d_hat_initial: float
    feedback_rounds: int = 0
    membership_a_checked: int = 0
    membership_a_failed: int = 0
    membership_b_checked: int = 0
    membership_b_failed: int = 0
    swap_violations: int = 0
    projection_violations: int = 0
    initial_swap_violations: int = 0
    initial_projection_violations: int = 0
    final_bound_checked: int = 0
    final_bound_violations: int = 0
    max_greedy_ratio: float = 0.0
    skipped: int = 0
    witnesses: list = field(default_factory=list, repr=False)

    @property
    def consistent(self) -> bool:
        return (
            self.membership_a_failed == 0
            and self.membership_b_failed == 0
            and self.swap_violations == 0
            and self.projection_violations == 0
            and self.final_bound_violations == 0
        )

    def summary(self) -> dict:
        out = asdict(self)
        out.pop("witnesses")
        out["verdict"] = "consistent with" if self.consistent else "inconsistent with"
        return out


def final_bound(d_hat: float, s: float, t: float) -> float:
    """Bound on the (t, w)-greedy constant from a (s, w)-PCCG constant."""
    if s <= t:
        return d_hat ** 2
    return (2 + (t + s) / t * d_hat) * d_hat


@dataclass
class _T3Sample:
    x: np.ndarray
    gamma: tuple
    B: tuple
    z: np.ndarray
    eta: np.ndarray
    greedy_ratio: float  # nan when sigma is below the guard


def _t3_samples(basis, t, samples, seed, tol):
    rng = np.random.default_rng(seed + 1)
    out = []
    for x, m, gamma in greedy_instances(basis, t, samples, seed):
        budget = support_weight(basis, gamma)
        best = sigma(basis, x, delta=budget, tol=tol)
        if rng.random() < 0.5:
            B = best.indices
            coeffs = best.coeffs
        else:
            # random competitor set within the weight budget
            B, total = [], 0.0
            for n in rng.permutation(basis.dim):
                if total + basis.index_weights[n] <= budget + 1e-12 and rng.random() < 0.7:
                    B.append(int(n))
                    total += basis.index_weights[n]
            B = tuple(sorted(B))
            coeffs, _ = distance_to_span(basis, x, B, tol)
        z = np.zeros(basis.dim)
        z[list(B)] = coeffs
        extra = sorted(set(B) - set(gamma))
        eta = random_signs(rng, len(extra))
        residual = greedy_residual_norm(basis, x, gamma)
        ratio = residual / best.distance if best.distance >= 10 * tol else math.nan
        out.append(_T3Sample(x, tuple(gamma), B, z, eta, ratio))
    return out


def _t3_vectors(basis, smp: _T3Sample, s, t):
    x, gamma, B = smp.x, smp.gamma, smp.B
    extra = sorted(set(B) - set(gamma))
    gamma_minus_b = tuple(sorted(set(gamma) - set(B)))
    gam = float(np.abs(x[extra]).max()) if extra else 0.0
    block = (t / s) * gam * signed_indicator(basis.dim, extra, smp.eta)
    y_eta = x - project(x, B) + block
    y_tilde = project(x, gamma_minus_b) + block
    r = x - smp.z
    outside = np.abs(r[list(complement(basis.dim, B))]).max(initial=0.0)
    inside = np.abs(r[list(B)]).max(initial=0.0)
    mu = s * outside + inside
    y = r + mu * signed_indicator(basis.dim, B)
    return {
        "gamma_minus_b": gamma_minus_b,
        "extra": tuple(extra),
        "block": block,
        "y_eta": y_eta,
        "y_tilde": y_tilde,
        "y": y,
        "mu": mu,
    }


def _pccg_ratio(basis, y, gamma, tol):
    """``||y - P_gamma y|| / D_{w(gamma)}(y)`` (nan under the division guard)."""
    num = greedy_residual_norm(basis, y, gamma)
    den = d_pcc(basis, y, delta=support_weight(basis, gamma), tol=tol).distance
    return num / den if den >= 10 * tol else math.nan


def verify_theorem3(
    basis: Basis,
    s: float,
    t: float,
    samples: int,
    seed: int,
    d_hat: float | None = None,
    pccg_samples: int = 200,
    tol: float = DEFAULT_TOL,
    max_rounds: int = 20,
) -> Theorem3Report:
    """Check the steps of the PCCG => weak-greedy argument on sampled instances.

    For each sample ``(x, gamma, B, eta)``:

    (a) ``gamma - B`` is s-greedy for ``y_eta`` (t >= s), resp. for
        ``y_tilde`` (t < s);
    (b) ``B`` is s-greedy for ``y = x - z + mu 1_B``;
    (c) with the estimated ``D(s)``, the swap inequality
        ``||x - P_{gamma u B} x + block|| <= D ||x - P_B x||`` (t >= s;
        for t < s ``||block|| <= D ||P_{gamma - B} x||``) and the projection
        inequality ``||x - P_B x|| <= D ||x - z||`` both hold;
    (d) the greedy ratio at the sample obeys the derived bound on ``C(t)``.

    A violation of (c) exhibits an instance whose PCCG ratio exceeds the
    current estimate; the estimate is raised to that ratio and all samples
    are rechecked until no violation remains.
    """
    if not (0 < s <= 1 and 0 < t <= 1):
        raise ValueError("s and t must lie in (0, 1]")
    if d_hat is None:
        d_hat = estimate_pccg_constant(basis, s, "weight", pccg_samples, seed, tol).value
    report = Theorem3Report(s, t, basis.tag, samples, d_hat, d_hat)
    smps = _t3_samples(basis, t, samples, seed, tol)
    vecs = [_t3_vectors(basis, smp, s, t) for smp in smps]

    for smp, v in zip(smps, vecs):
        target = v["y_eta"] if t >= s else v["y_tilde"]
        report.membership_a_checked += 1
        if not is_t_greedy_set(target, v["gamma_minus_b"], s, MEMBERSHIP_SLACK):
            report.membership_a_failed += 1
        report.membership_b_checked += 1
        if not is_t_greedy_set(v["y"], smp.B, s, MEMBERSHIP_SLACK):
            report.membership_b_failed += 1
        if math.isnan(smp.greedy_ratio):
            report.skipped += 1
        else:
            report.max_greedy_ratio = max(report.max_greedy_ratio, smp.greedy_ratio)

    def inequality_terms(smp, v):
        x = smp.x
        if t >= s:
            lhs2 = basis.norm(x - project(x, set(smp.gamma) | set(smp.B)) + v["block"])
            rhs2 = basis.norm(x - project(x, smp.B))
        else:
            lhs2 = basis.norm(v["block"])
            rhs2 = basis.norm(project(x, v["gamma_minus_b"]))
        lhs3 = basis.norm(x - project(x, smp.B))
        rhs3 = basis.norm(x - smp.z)
        return lhs2, rhs2, lhs3, rhs3

    terms = [inequality_terms(smp, v) for smp, v in zip(smps, vecs)]

    def violated(lhs, rhs, d):
        return lhs > d * rhs * (1 + 1e-9) + 1e-12

    for rnd in range(max_rounds + 1):
        swap = [k for k, (l2, r2, _, _) in enumerate(terms) if violated(l2, r2, d_hat)]
        proj = [k for k, (_, _, l3, r3) in enumerate(terms) if violated(l3, r3, d_hat)]
        if rnd == 0:
            report.initial_swap_violations, report.initial_projection_violations = len(swap), len(proj)
        report.swap_violations, report.projection_violations = len(swap), len(proj)
        if not swap and not proj or rnd == max_rounds:
            break
        report.feedback_rounds += 1
        for k in swap:
            smp, v = smps[k], vecs[k]
            l2, r2, _, _ = terms[k]
            inst = v["y_eta"] if t >= s else v["y_tilde"]
            ratio = _pccg_ratio(basis, inst, v["gamma_minus_b"], tol)
            new = max(l2 / r2, 0.0 if math.isnan(ratio) else ratio)
            report.witnesses.append({"kind": "swap", "y": _tolist(inst), "gamma": list(v["gamma_minus_b"]), "ratio": new})
            d_hat = max(d_hat, new)
        for k in proj:
            smp, v = smps[k], vecs[k]
            _, _, l3, r3 = terms[k]
            ratio = _pccg_ratio(basis, v["y"], smp.B, tol)
            new = max(l3 / r3, 0.0 if math.isnan(ratio) else ratio)
            report.witnesses.append({"kind": "projection", "y": _tolist(v["y"]), "gamma": list(smp.B), "ratio": new})
            d_hat = max(d_hat, new)
    report.d_hat = d_hat

    bound = final_bound(d_hat, s, t)
    for smp in smps:
        if math.isnan(smp.greedy_ratio):
            continue
        report.final_bound_checked += 1
        if smp.greedy_ratio > bound * (1 + 1e-9):
            report.final_bound_violations += 1
    return report


# ---------------------------------------------------------------- Haar suite


def indicator_sum_checks(
    weight: DyadicWeight,
    indices: Sequence,
    p: float,
    level: int,
    v: IndexedSequence | None = None,
) -> dict:
    """Evaluate the indicator-sum inequalities for one family of intervals.

    ``v`` defaults to ``v_I = w(I)``.  Constants come from the weight module
    at ``level``.  Each entry is ``(lhs, rhs)``; the two-sided cardinality
    comparison is only included for the default ``v``.
    """
    masses = IndexedSequence.from_weight(weight, level)
    v = masses if v is None else v.truncate(level)
    p_dual = p / (p - 1)
    c1 = pair_drcc_constant(v, masses, 1.0, level)
    c2 = pair_drcc_constant(masses, v, 2.0 / p, level)
    c3 = pair_drcc_constant(masses, v, 2.0 / p_dual, level)
    norm = indicator_sum_norm(indices, p, weight)
    ratios = [masses[I] / v[I] for I in indices]
    total = float(sum(ratios)) ** (1 / p)
    out = {
        "sum_le_norm": (total, c1 * norm),
        "norm_le_sum": (norm, c2 * total),
        "sum_le_dual_norm": (total, c3 * max(ratios) * norm),
    }
    if v is masses:
        card = len(indices) ** (1 / p)
        out["card_lower"] = (1.0 / (c1 * c2), norm / card)
        out["card_upper"] = (norm / card, c1 * c2)
    return out


def random_interval_family(rng: np.random.Generator, max_level: int, k: int | None = None) -> list:
    from .dyadic import DyadicInterval

    total = (1 << (max_level + 1)) - 1
    if k is None:
        k = int(rng.integers(1, min(total, 24) + 1))
    flat = rng.choice(total, k, replace=False) + 1
    out = []
    for f in flat:
        n = int(f).bit_length() - 1
        out.append(DyadicInterval(n, int(f) - (1 << n)))
    return out


@dataclass
class HaarSuiteReport:
    level: int
    weight_constants: dict
    indicator_samples: int = 0
    indicator_violations: dict = field(default_factory=dict)
    bound_checks: list = field(default_factory=list)
    control: list = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(self.indicator_violations.values()) + sum(r["violations"] for r in self.bound_checks)

    def summary(self) -> dict:
        out = asdict(self)
        out["violations"] = self.violations
        return out


def _flat_interval_weights(seq: IndexedSequence, level: int) -> np.ndarray:
    """Sequence entries for Haar intervals of level <= level-1, breadth first."""
    return np.concatenate(seq.levels[:level])


def haar_bound_check(
    weight: DyadicWeight,
    p: float,
    t: float,
    level: int,
    index_weights: IndexedSequence,
    samples: int,
    seed: int,
    tol: float = DEFAULT_TOL,
) -> dict:
    """Sample the end-to-end bound ``||f - P f|| <= K ||f - alpha 1_{eps L'}||``.

    ``K = 1 + C^2 M0 / (t m0)`` with C the reverse Carleson constant of
    order ``min(1, 2/p)`` and ``m0, M0`` the extreme index weights.
    """
    w_flat = _flat_interval_weights(index_weights, level)
    basis = HaarXp(p, weight, level, index_weights=w_flat, include_root=False)
    C = carleson_constant(weight, min(1.0, 2.0 / p), level)
    m0, M0 = float(w_flat.min()), float(w_flat.max())
    K = 1 + C ** 2 * M0 / (t * m0)
    rng = np.random.default_rng(seed)
    violations, worst = 0, 0.0
    for x, m, gamma in greedy_instances(basis, t, samples, seed):
        budget = support_weight(basis, gamma)
        comp, total = [], 0.0
        for n in rng.permutation(basis.dim):
            if total + w_flat[n] <= budget + 1e-12 and rng.random() < 0.8:
                comp.append(int(n))
                total += w_flat[n]
        residual = greedy_residual_norm(basis, x, gamma)
        if comp:
            if rng.random() < 0.5:
                eps = np.sign(x[comp])
                eps[eps == 0] = 1.0
            else:
                eps = random_signs(rng, len(comp))
            v = signed_indicator(basis.dim, comp, eps)
            if rng.random() < 0.75:
                alpha, dist = best_scalar(basis, x, v, tol)
            else:
                alpha = float(rng.uniform(-2, 2))
                dist = basis.norm(x - alpha * v)
        else:
            dist = basis.norm(x)
        ratio = residual / dist if dist > 0 else (math.inf if residual > 0 else 0.0)
        worst = max(worst, ratio)
        if residual > K * dist * (1 + 1e-9) + 1e-12:
            violations += 1
    return {"p": p, "t": t, "C": C, "m0": m0, "M0": M0, "K": K,
            "samples": samples, "violations": violations, "max_ratio": worst}


def haar_weight_suite(
    weight: DyadicWeight,
    ps: Sequence[float] = (1.5, 2.0, 3.0),
    alphas: Sequence[float] = (0.5, 1.0, 2.0),
    level: int = 6,
    samples: int = 200,
    seed: int = 0,
    index_weights: IndexedSequence | None = None,
    ts: Sequence[float] = (0.5, 1.0),
    bound_samples: int | None = None,
    control_levels: Sequence[int] = (),
) -> HaarSuiteReport:
    """Weight constants, indicator-sum inequalities and the Haar PCCG bound."""
    if not np.all(weight.values > 0):
        raise ValueError("weight must be strictly positive")
    if weight.level < level:
        weight = weight.refine(level)
    constants = {
        "apd": {str(p): apd_constant(weight, p, level) for p in ps},
        "delta": reverse_doubling_delta(weight, level),
        "carleson": {str(a): carleson_constant(weight, a, level) for a in alphas},
    }
    report = HaarSuiteReport(level, constants)

    rng = np.random.default_rng(seed)
    counts = {k: 0 for k in ("sum_le_norm", "norm_le_sum", "sum_le_dual_norm", "card_lower", "card_upper")}
    for _ in range(samples):
        p = float(ps[rng.integers(len(ps))])
        family = random_interval_family(rng, level - 1)
        for key, (lhs, rhs) in indicator_sum_checks(weight, family, p, level).items():
            if lhs > rhs + 1e-9:
                counts[key] += 1
    report.indicator_samples = samples
    report.indicator_violations = counts

    if index_weights is None:
        index_weights = IndexedSequence.constant(1.0, level)
    n_thm = samples if bound_samples is None else bound_samples
    for i, p in enumerate(ps):
        for j, t in enumerate(ts):
            report.bound_checks.append(
                haar_bound_check(weight, p, t, level, index_weights, n_thm, seed + 101 * i + 7 * j)
            )

    for L in control_levels:
        cw = concentrated_weight(L)
        report.control.append({"level": L, "carleson_alpha_1": carleson_constant(cw, 1.0, L)})
    return report
