"""Brute-force best approximation oracles.

``sigma`` is the error of best approximation from coordinate spans
``[e_n, n in A]``; ``d_pcc`` the error from one-dimensional spans of signed
indicators ``[1_{eta A}]``.  Admissible sets are bounded either by
cardinality (``m``) or by total index weight (``delta``).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .greedy import ENUMERATION_LIMIT, Basis, signed_indicator, support

DEFAULT_TOL = 1e-7
INV_PHI = (math.sqrt(5) - 1) / 2


class ConvergenceError(RuntimeError):
    pass


@dataclass
class ApproximationResult:
    kind: str  # "sigma" or "dpcc"
    mode: str  # "count" or "weight"
    budget: float
    indices: tuple
    distance: float
    tol: float
    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0))
    signs: tuple = ()
    alpha: float = 0.0
    exact: bool = True

    def candidate(self, dim: int) -> np.ndarray:
        """The approximating element this result certifies."""
        out = np.zeros(dim)
        idx = list(self.indices)
        if self.kind == "sigma":
            out[idx] = self.coeffs
        else:
            out[idx] = self.alpha * np.asarray(self.signs, dtype=float)
        return out

    def certify(self, basis: Basis, x) -> bool:
        """Recompute ``||x - candidate||`` and compare within ``2 tol``."""
        d = basis.norm(np.asarray(x, dtype=float) - self.candidate(basis.dim))
        return abs(d - self.distance) <= 2 * self.tol * max(1.0, abs(d))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "mode": self.mode,
            "budget": self.budget,
            "set": [int(n) for n in self.indices],
            "signs": [float(v) for v in self.signs],
            "alpha": float(self.alpha),
            "coeffs": np.asarray(self.coeffs).tolist(),
            "distance": self.distance,
            "tol": self.tol,
            "exact": self.exact,
        }


def golden_section(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Minimize a unimodal ``f`` on ``[lo, hi]``; stops when the bracket is < tol."""
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = (a + b) / 2
    fx = f(x)
    # ends of the original bracket can be optimal for flat convex pieces
    best = min((fx, x), (fc, c), (fd, d), (f(lo), lo), (f(hi), hi))
    return best[1], best[0]


def best_scalar(basis: Basis, x, v, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """``argmin_alpha ||x - alpha v||`` and the minimum value."""
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    nv = basis.norm(v)
    if nv == 0:
        raise ValueError("direction vector must be nonzero")
    nx = basis.norm(x)
    if nx == 0:
        return 0.0, 0.0
    # phi(alpha) <= phi(0) forces |alpha| ||v|| <= 2 ||x||
    bound = 2 * nx / nv
    return golden_section(lambda a: basis.norm(x - a * v), -bound, bound, tol * (1 + bound))


def distance_to_span(
    basis: Basis,
    x,
    A: Sequence[int],
    tol: float = DEFAULT_TOL,
    method: str = "auto",
    max_sweeps: int = 500,
) -> tuple[np.ndarray, float]:
    """``min_c ||x - sum_{n in A} c_n e_n||``, returning ``(c, distance)``.

    ``method="descent"`` runs cyclic coordinate descent from ``c = 0``;
    ``"exact"`` uses the basis closed form; ``"auto"`` prefers the closed
    form when the basis has one.
    """
    x = np.asarray(x, dtype=float)
    A = list(A)
    if not A:
        return np.zeros(0), basis.norm(x)
    if method in ("auto", "exact"):
        exact = basis.exact_distance_to_span(x, A)
        if exact is not None:
            return exact
        if method == "exact":
            raise ValueError(f"{basis!r} has no closed-form distance")
    elif method != "descent":
        raise ValueError(f"unknown method {method!r}")

    coeffs = np.zeros(len(A))
    residual = x.copy()
    current = basis.norm(residual)
    for _ in range(max_sweeps):
        before = current
        for k, n in enumerate(A):
            base = residual.copy()
            base[n] += coeffs[k]  # residual with coordinate n released
            beta, value = best_scalar(basis, base, basis.unit(n), tol)
            if value < current:
                coeffs[k] = beta
                residual = base
                residual[n] -= beta
                current = value
        if before - current < tol:
            return coeffs, current
    raise ConvergenceError(f"coordinate descent did not converge in {max_sweeps} sweeps")


# ---------------------------------------------------------------- enumeration


def _universe(basis: Basis, x, widen: bool) -> tuple:
    return tuple(range(basis.dim)) if widen else support(x)


def _check_size(universe, sampled: bool):
    if len(universe) > ENUMERATION_LIMIT and not sampled:
        raise ValueError(
            f"exhaustive search over {len(universe)} indices exceeds the limit "
            f"{ENUMERATION_LIMIT}; pass samples= for a sampled upper bound"
        )


def admissible_sets(
    universe: Sequence[int],
    weights: np.ndarray,
    delta: float,
    maximal_only: bool = False,
) -> Iterator[tuple]:
    """Subsets of ``universe`` with total weight <= delta (depth-first, pruned).

    With ``maximal_only`` only sets to which no further index fits are
    produced; that suffices for any quantity monotone under inclusion.
    """
    universe = list(universe)
    w = [float(weights[n]) for n in universe]
    slack = 1e-12 * max(1.0, abs(delta))

    def rec(start, chosen, total):
        grew = False
        for k in range(start, len(universe)):
            if total + w[k] <= delta + slack:
                grew = True
                yield from rec(k + 1, chosen + [universe[k]], total + w[k])
        if not maximal_only:
            yield tuple(chosen)
        elif not grew:
            # no later index fits; check earlier skipped ones too
            chosen_set = set(chosen)
            if all(total + w[k] > delta + slack for k in range(len(universe)) if universe[k] not in chosen_set):
                yield tuple(chosen)

    yield from rec(0, [], 0.0)


def _budget(m, delta):
    if (m is None) == (delta is None):
        raise ValueError("give exactly one of m (count budget) or delta (weight budget)")
    return ("count", float(m)) if m is not None else ("weight", float(delta))


def _candidate_sets(basis, universe, mode, budget, maximal_only, exact_size=False):
    if mode == "count":
        m = int(budget)
        if exact_size:
            return itertools.combinations(universe, m)
        if maximal_only:
            return itertools.combinations(universe, min(m, len(universe)))
        return (c for k in range(min(m, len(universe)) + 1) for c in itertools.combinations(universe, k))
    return admissible_sets(universe, basis.index_weights, budget, maximal_only)


def _sampled_sets(basis, universe, mode, budget, samples, rng):
    for _ in range(samples):
        order = rng.permutation(universe)
        chosen, total = [], 0.0
        for n in order:
            w = 1.0 if mode == "count" else basis.index_weights[n]
            if total + w <= budget + 1e-12:
                chosen.append(int(n))
                total += w
        yield tuple(sorted(chosen))


def sigma(
    basis: Basis,
    x,
    m: int | None = None,
    delta: float | None = None,
    tol: float = DEFAULT_TOL,
    widen: bool = False,
    method: str = "auto",
    samples: int | None = None,
    rng: np.random.Generator | None = None,
) -> ApproximationResult:
    """Best approximation error from coordinate spans within the budget."""
    x = np.asarray(x, dtype=float)
    mode, budget = _budget(m, delta)
    universe = _universe(basis, x, widen)
    supp = support(x)
    if mode == "count" and budget >= len(supp) and not widen:
        return ApproximationResult("sigma", mode, budget, supp, 0.0, tol, x[list(supp)].copy())
    _check_size(universe, samples is not None)
    if samples is not None:
        sets = _sampled_sets(basis, universe, mode, budget, samples, rng or np.random.default_rng(0))
    else:
        sets = _candidate_sets(basis, universe, mode, budget, maximal_only=True)
    best = None
    for A in sets:
        coeffs, dist = distance_to_span(basis, x, A, tol, method)
        if best is None or dist < best.distance:
            best = ApproximationResult("sigma", mode, budget, tuple(A), dist, tol, coeffs)
    best.exact = samples is None and (method != "descent" or _descent_exact(basis))
    return best


def _descent_exact(basis: Basis) -> bool:
    # coordinate descent can stall on non-smooth norms
    return basis.lattice and getattr(basis, "p", 1.0) > 1.0


def _sign_patterns(basis: Basis, x, A):
    if not A:
        yield ()
        return
    if basis.lattice:
        # aligning eta with sign(x) is optimal coordinatewise for lattice norms
        s = np.sign(x[list(A)])
        s[s == 0] = 1.0
        yield tuple(s * s[0])
        return
    for rest in itertools.product((1.0, -1.0), repeat=len(A) - 1):
        yield (1.0,) + rest


def d_pcc(
    basis: Basis,
    x,
    m: int | None = None,
    delta: float | None = None,
    tol: float = DEFAULT_TOL,
    widen: bool = False,
    exact_size: bool = False,
    samples: int | None = None,
    rng: np.random.Generator | None = None,
) -> ApproximationResult:
    """Best approximation error from spans of single signed indicators.

    Admissible sets satisfy ``|A| <= m`` or ``w(A) <= delta``; with
    ``exact_size`` (count mode only) exactly ``|A| = m`` over the whole index
    universe.  The empty set contributes ``||x||``.
    """
    x = np.asarray(x, dtype=float)
    mode, budget = _budget(m, delta)
    if exact_size:
        if mode != "count":
            raise ValueError("exact_size applies to the count budget only")
        widen = True
    universe = _universe(basis, x, widen)
    _check_size(universe, samples is not None)
    if samples is not None:
        sets = _sampled_sets(basis, universe, mode, budget, samples, rng or np.random.default_rng(0))
    else:
        sets = _candidate_sets(basis, universe, mode, budget, False, exact_size)
    best = None
    for A in sets:
        for signs in _sign_patterns(basis, x, A):
            if A:
                v = signed_indicator(basis.dim, A, signs)
                alpha, dist = best_scalar(basis, x, v, tol)
            else:
                alpha, dist = 0.0, basis.norm(x)
            if best is None or dist < best.distance:
                best = ApproximationResult(
                    "dpcc", mode, budget, tuple(A), dist, tol, signs=tuple(signs), alpha=alpha
                )
    if best is None:
        raise ValueError("no admissible set for this budget")
    best.exact = samples is None
    return best
