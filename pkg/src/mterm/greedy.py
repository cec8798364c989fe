"""Finite bases, greedy orderings, t-greedy sets and coordinate projections.

An element of a basis is just its coefficient vector (a 1-D float array of
length ``basis.dim``).  Indices are 0-based throughout.
"""

from __future__ import annotations

import itertools
import math
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .dyadic import StepFunction
from .haar import ROOT, HaarExpansion, haar_index, haar_norms
from .weights import DyadicWeight

ENUMERATION_LIMIT = 24

IndexSet = tuple  # sorted tuple of ints


class Basis(ABC):
    """A normalized basis of a finite-dimensional normed space.

    ``lattice`` is True when the norm is nondecreasing in every
    ``|coefficient|`` (a 1-unconditional basis).  Oracles use it to skip
    provably redundant work.
    """

    tag: str
    dim: int
    index_weights: np.ndarray
    lattice: bool = False

    @abstractmethod
    def norm(self, a: np.ndarray) -> float: ...

    @abstractmethod
    def params(self) -> dict: ...

    def to_dict(self) -> dict:
        return {"tag": self.tag, **self.params()}

    def unit(self, n: int) -> np.ndarray:
        e = np.zeros(self.dim)
        e[n] = 1.0
        return e

    def exact_distance_to_span(self, x: np.ndarray, A: Sequence[int]):
        """Closed-form ``(coefficients on A, distance)`` or None if unknown."""
        if self.lattice:
            # a lattice norm is minimized by cancelling x on A exactly
            A = list(A)
            return np.asarray(x, dtype=float)[A].copy(), self.norm(project(x, complement(self.dim, A)))
        return None

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.params().items() if k != "weight")
        return f"{type(self).__name__}({args})"


def _weights(index_weights, dim: int) -> np.ndarray:
    if index_weights is None:
        return np.ones(dim)
    w = np.asarray(index_weights, dtype=float)
    if w.shape != (dim,) or np.any(w <= 0):
        raise ValueError(f"index weights must be {dim} positive numbers")
    w.setflags(write=False)
    return w


class CanonicalLp(Basis):
    """Unit vector basis of ``l^p_N``."""

    tag = "lp"
    lattice = True

    def __init__(self, p: float, dim: int, index_weights=None):
        if p < 1:
            raise ValueError(f"p must be >= 1, got {p}")
        self.p = float(p)
        self.dim = int(dim)
        self.index_weights = _weights(index_weights, self.dim)

    def norm(self, a):
        a = np.abs(np.asarray(a, dtype=float))
        top = a.max(initial=0.0)
        if top == 0:
            return 0.0
        return float(top * np.sum((a / top) ** self.p) ** (1.0 / self.p))

    def params(self):
        return {"p": self.p, "dim": self.dim, "index_weights": self.index_weights.tolist()}


class SummingBasis(Basis):
    """The summing basis of c_0 truncated to N terms.

    ``||a|| = max_m |a_1 + ... + a_m|``.  It is normalized and conditional,
    hence not greedy; it serves as the negative control.
    """

    tag = "summing"
    lattice = False

    def __init__(self, dim: int, index_weights=None):
        self.dim = int(dim)
        self.index_weights = _weights(index_weights, self.dim)

    def norm(self, a):
        return float(np.max(np.abs(np.cumsum(a)), initial=0.0))

    def params(self):
        return {"dim": self.dim, "index_weights": self.index_weights.tolist()}

    def exact_distance_to_span(self, x, A):
        # A free coordinate resets the running sum to any value, so the
        # partial sums split into independent segments starting at each
        # free index; the best reset centres the segment's range at 0.
        x = np.asarray(x, dtype=float)
        free = sorted(set(A))
        coeffs = np.zeros(len(free))
        if not free:
            return coeffs, self.norm(x)
        dist = float(np.max(np.abs(np.cumsum(x[: free[0]])), initial=0.0))
        running = float(np.sum(x[: free[0]]))
        bounds = free + [self.dim]
        for k, (a, b) in enumerate(zip(bounds[:-1], bounds[1:])):
            incr = np.concatenate([[0.0], np.cumsum(x[a + 1:b])])
            lo, hi = incr.min(), incr.max()
            target = -(lo + hi) / 2  # partial sum value right after index a
            dist = max(dist, (hi - lo) / 2)
            # residual coordinate at a is x_a - c_a, chosen to land on target
            coeffs[k] = running + x[a] - target
            running = target + incr[-1]
        return coeffs, dist


class HaarXp(Basis):
    """Normalized Haar system ``H_I / ||H_I||_{p,w}`` in the X^p(w) norm.

    Coefficient ``a_k`` multiplies the normalized function with flat Haar
    index ``k`` (see :mod:`mterm.haar`).  With ``include_root=False`` the
    constant function is left out and flat index ``k`` maps to coordinate
    ``k - 1``.
    """

    tag = "haar"
    lattice = True

    def __init__(
        self,
        p: float,
        weight: DyadicWeight | None = None,
        level: int = 3,
        index_weights=None,
        include_root: bool = True,
        weight_file: str | None = None,
    ):
        if p < 1:
            raise ValueError(f"p must be >= 1, got {p}")
        self.p = float(p)
        self.level = int(level)
        self.weight = weight if weight is not None else DyadicWeight.constant(1.0)
        self.weight_file = weight_file
        self.include_root = include_root
        self.offset = 0 if include_root else 1
        self.dim = (1 << self.level) - self.offset
        self.index_weights = _weights(index_weights, self.dim)

        res = max(self.level, self.weight.level)
        w = self.weight.refine(res)
        self._cell_weight = w.values * 2.0 ** -res
        self._hnorm = haar_norms(self.p, w, self.level)[self.offset:]
        # S(x)^2 = sum_k a_k^2 w(I_k)^(-2/p) chi_{I_k}(x); gram holds those factors
        gram = np.zeros((1 << res, self.dim))
        for col, idx in enumerate(self.indices()):
            if idx is ROOT:
                gram[:, col] = w.masses[0][0] ** (-2.0 / self.p)
            else:
                span = 1 << (res - idx.level)
                mass = w.masses[idx.level][idx.position]
                gram[idx.position * span:(idx.position + 1) * span, col] = mass ** (-2.0 / self.p)
        self._gram = gram

    def norm(self, a):
        a = np.asarray(a, dtype=float)
        s2 = self._gram @ (a * a)
        top = s2.max(initial=0.0)
        if top == 0:
            return 0.0
        total = np.sum((s2 / top) ** (self.p / 2) * self._cell_weight)
        return float(np.sqrt(top) * total ** (1.0 / self.p))

    def indices(self) -> list:
        return [haar_index(k + self.offset) for k in range(self.dim)]

    def expansion(self, a) -> HaarExpansion:
        """Haar expansion ``sum c_I H_I`` of the element with coefficients ``a``."""
        c = np.zeros(1 << self.level)
        c[self.offset:] = np.asarray(a, dtype=float) / self._hnorm
        return HaarExpansion(self.level, c)

    def coefficients(self, e: HaarExpansion) -> np.ndarray:
        """Inverse of :meth:`expansion` (root coefficient dropped if excluded)."""
        if e.level != self.level:
            raise ValueError(f"expansion level {e.level} != basis level {self.level}")
        return e.coeffs[self.offset:] * self._hnorm

    def params(self):
        weight = self.weight_file or {"level": self.weight.level, "values": self.weight.values.tolist()}
        return {
            "p": self.p,
            "level": self.level,
            "include_root": self.include_root,
            "weight": weight,
            "index_weights": self.index_weights.tolist(),
        }


def basis_from_dict(record: dict, base_dir: Path | None = None) -> Basis:
    record = dict(record)
    tag = record.pop("tag")
    weights = record.pop("index_weights", None)
    if tag == "lp":
        return CanonicalLp(record["p"], record["dim"], weights)
    if tag == "summing":
        return SummingBasis(record["dim"], weights)
    if tag == "haar":
        weight = record.get("weight")
        weight_file = None
        if isinstance(weight, str):
            weight_file = weight
            path = Path(weight) if base_dir is None else Path(base_dir) / weight
            weight = DyadicWeight(StepFunction.from_json(path.read_text()))
        elif weight is not None:
            weight = DyadicWeight(StepFunction.from_dict(weight))
        return HaarXp(
            record["p"],
            weight,
            record.get("level", 3),
            weights,
            record.get("include_root", True),
            weight_file,
        )
    raise ValueError(f"unknown basis tag {tag!r}")


def element_to_dict(basis: Basis, x) -> dict:
    return {"basis": basis.to_dict(), "coeffs": np.asarray(x, dtype=float).tolist()}


def element_from_dict(record: dict, base_dir: Path | None = None) -> tuple[Basis, np.ndarray]:
    basis = basis_from_dict(record["basis"], base_dir)
    x = np.asarray(record["coeffs"], dtype=float)
    if x.shape != (basis.dim,):
        raise ValueError(f"element has {x.size} coefficients, basis dimension is {basis.dim}")
    return basis, x


# ---------------------------------------------------------------- index sets


def support(x) -> IndexSet:
    return tuple(int(n) for n in np.flatnonzero(np.asarray(x)))


def complement(dim: int, A: Iterable[int]) -> IndexSet:
    A = set(A)
    return tuple(n for n in range(dim) if n not in A)


def project(x, A: Iterable[int]) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    A = list(A)
    out[A] = x[A]
    return out


def signed_indicator(dim: int, A: Iterable[int], signs=None) -> np.ndarray:
    """``1_{eta A} = sum_{n in A} eta_n e_n`` (all signs +1 by default)."""
    A = list(A)
    out = np.zeros(dim)
    out[A] = 1.0 if signs is None else np.asarray(signs, dtype=float)
    return out


def support_weight(basis: Basis, A: Iterable[int]) -> float:
    return float(sum(basis.index_weights[n] for n in A))


# ---------------------------------------------------------------- greedy sets


def greedy_ordering(x) -> np.ndarray:
    """Indices by decreasing ``|x_n|``; ties go to the smaller index."""
    return np.argsort(-np.abs(np.asarray(x, dtype=float)), kind="stable")


def greedy_set(x, m: int) -> IndexSet:
    n = len(x)
    if not 0 <= m <= n:
        raise ValueError(f"m must lie in [0, {n}], got {m}")
    return tuple(sorted(int(k) for k in greedy_ordering(x)[:m]))


def greedy_approximant(x, m: int) -> np.ndarray:
    return project(x, greedy_set(x, m))


def is_t_greedy_set(x, gamma: Iterable[int], t: float, slack: float = 0.0) -> bool:
    """``min_{n in gamma} |x_n| >= t max_{n not in gamma} |x_n|``.

    ``slack`` is an absolute allowance for rounding in derived vectors.
    """
    if not 0 < t <= 1:
        raise ValueError(f"t must lie in (0, 1], got {t}")
    a = np.abs(np.asarray(x, dtype=float))
    inside = np.zeros(a.size, dtype=bool)
    inside[list(gamma)] = True
    lo = a[inside].min(initial=np.inf)
    hi = a[~inside].max(initial=0.0)
    return bool(lo >= t * hi - slack)


def _t_greedy_options(x, t: float, m: int):
    """Decompose the t-greedy sets of size m.

    Let ``s`` sort indices by decreasing modulus.  For a t-greedy set, the
    first position ``e`` of ``s`` it misses fixes the prefix ``s[:e]``; the
    remaining ``m - e`` members are any positions after ``e`` whose modulus
    is at least ``t |x_{s[e]}|``.  Each set arises from exactly one ``e``.
    """
    a = np.abs(np.asarray(x, dtype=float))
    n = a.size
    if not 0 < t <= 1:
        raise ValueError(f"t must lie in (0, 1], got {t}")
    if not 0 <= m <= n:
        raise ValueError(f"m must lie in [0, {n}], got {m}")
    order = greedy_ordering(a)
    if m == n:
        return [(tuple(order), ())], 0
    options = []
    for e in range(m + 1):
        threshold = t * a[order[e]]
        eligible = tuple(int(order[k]) for k in range(e + 1, n) if a[order[k]] >= threshold)
        if len(eligible) >= m - e:
            options.append((tuple(int(k) for k in order[:e]), eligible))
    return options, None


def t_greedy_sets(x, t: float, m: int) -> list[IndexSet]:
    """All t-greedy sets of cardinality m, each as a sorted tuple."""
    if len(x) > ENUMERATION_LIMIT:
        raise ValueError(
            f"refusing to enumerate t-greedy sets for N={len(x)} > {ENUMERATION_LIMIT}; "
            "use sample_t_greedy_sets"
        )
    options, _ = _t_greedy_options(x, t, m)
    out = []
    for prefix, eligible in options:
        rest = m - len(prefix)
        for extra in itertools.combinations(eligible, rest):
            out.append(tuple(sorted(prefix + extra)))
    return sorted(out)


def count_t_greedy_sets(x, t: float, m: int) -> int:
    options, _ = _t_greedy_options(x, t, m)
    return sum(math.comb(len(el), m - len(pre)) for pre, el in options)


def sample_t_greedy_sets(x, t: float, m: int, k: int, rng: np.random.Generator) -> list[IndexSet]:
    """Up to ``k`` t-greedy sets of size m drawn uniformly (with replacement)."""
    options, _ = _t_greedy_options(x, t, m)
    sizes = np.array([math.comb(len(el), m - len(pre)) for pre, el in options], dtype=float)
    probs = sizes / sizes.sum()
    out = []
    for _ in range(k):
        pre, el = options[rng.choice(len(options), p=probs)]
        extra = rng.choice(len(el), size=m - len(pre), replace=False) if el else []
        out.append(tuple(sorted(pre + tuple(el[i] for i in extra))))
    return out


def greedy_residual_norm(basis: Basis, x, gamma: Iterable[int]) -> float:
    """``||x - P_gamma x||``."""
    x = np.asarray(x, dtype=float)
    return basis.norm(x - project(x, gamma))
