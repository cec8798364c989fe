"""Haar analysis and synthesis, square functions and X^p(w) norms.

Coefficients are stored in breadth-first order: flat index 0 is the constant
function, and flat index ``k >= 1`` is the interval ``(n, k - 2^n)`` with
``n = floor(log2 k)``.  A resolution-L expansion therefore has exactly
``2**L`` coefficients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

import numpy as np

from .dyadic import DyadicInterval, StepFunction, weighted_lp_norm
from .weights import DyadicWeight


class RootIndex:
    """Index of the constant Haar function on [0, 1)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    key = "root"
    level = -1

    def __repr__(self):
        return "ROOT"

    def __reduce__(self):
        return (RootIndex, ())


ROOT = RootIndex()
HaarIndex = Union[RootIndex, DyadicInterval]


def flat_index(idx: HaarIndex) -> int:
    if idx is ROOT:
        return 0
    return (1 << idx.level) + idx.position


def haar_index(k: int) -> HaarIndex:
    if k == 0:
        return ROOT
    n = int(k).bit_length() - 1
    return DyadicInterval(n, k - (1 << n))


def index_from_key(key: str) -> HaarIndex:
    return ROOT if key == "root" else DyadicInterval.from_key(key)


def haar_function(idx: HaarIndex, level: int) -> StepFunction:
    if idx is ROOT:
        return StepFunction.constant(1.0, level)
    if idx.level > level - 1:
        raise ValueError(f"H_I for I at level {idx.level} needs resolution >= {idx.level + 1}")
    values = np.zeros(1 << level)
    half = 1 << (level - idx.level - 1)
    start = idx.position << (level - idx.level)
    amp = 2.0 ** (idx.level / 2)
    values[start:start + half] = amp
    values[start + half:start + 2 * half] = -amp
    return StepFunction(level, values)


@dataclass(frozen=True, eq=False)
class HaarExpansion:
    level: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=float)
        if coeffs.shape != (1 << self.level,):
            raise ValueError(f"level {self.level} expansion needs {1 << self.level} coefficients")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    def __getitem__(self, idx: HaarIndex) -> float:
        return float(self.coeffs[flat_index(idx)])

    @classmethod
    def from_mapping(cls, level: int, mapping: Mapping[HaarIndex, float]) -> HaarExpansion:
        coeffs = np.zeros(1 << level)
        for idx, c in mapping.items():
            k = flat_index(idx)
            if k >= coeffs.size:
                raise ValueError(f"{idx!r} is too deep for level {level}")
            coeffs[k] = c
        return cls(level, coeffs)

    def nonzero(self) -> dict[HaarIndex, float]:
        return {haar_index(k): float(c) for k, c in enumerate(self.coeffs) if c != 0}

    def to_json(self) -> str:
        coeffs = {haar_index(k).key: float(c) for k, c in enumerate(self.coeffs) if c != 0}
        return json.dumps({"level": self.level, "coeffs": coeffs})

    @classmethod
    def from_json(cls, text: str) -> HaarExpansion:
        record = json.loads(text)
        mapping = {index_from_key(k): float(v) for k, v in record["coeffs"].items()}
        return cls.from_mapping(int(record["level"]), mapping)


def analyze(f: StepFunction) -> HaarExpansion:
    """Fast Haar transform: ``c_I = int f H_I``."""
    level = f.level
    coeffs = np.empty(1 << level)
    sums = f.values * 2.0 ** -level  # integral over each cell
    for n in range(level - 1, -1, -1):
        left, right = sums[0::2], sums[1::2]
        coeffs[1 << n:2 << n] = 2.0 ** (n / 2) * (left - right)
        sums = left + right
    coeffs[0] = sums[0]
    return HaarExpansion(level, coeffs)


def synthesize(e: HaarExpansion) -> StepFunction:
    vals = np.array([e.coeffs[0]])
    for n in range(e.level):
        d = 2.0 ** (n / 2) * e.coeffs[1 << n:2 << n]
        nxt = np.empty(2 * vals.size)
        nxt[0::2] = vals + d
        nxt[1::2] = vals - d
        vals = nxt
    return StepFunction(e.level, vals)


def haar_norm(idx: HaarIndex, p: float, weight: DyadicWeight) -> float:
    """``||H_idx||_{p,w} = w(I)^(1/p) / |I|^(1/2)``."""
    if idx is ROOT:
        return float(weight.masses[0][0]) ** (1.0 / p)
    if idx.level > weight.level:
        weight = weight.refine(idx.level)
    mass = weight.masses[idx.level][idx.position]
    return float(mass ** (1.0 / p) / np.sqrt(idx.measure))


def _masses_by_flat(weight: DyadicWeight, level: int) -> np.ndarray:
    """``w(I)`` for every flat Haar index of a resolution-``level`` expansion."""
    w = weight if weight.level >= level else weight.refine(level)
    parts = [w.masses[0]] + [w.masses[n] for n in range(level)]
    return np.concatenate(parts)


def haar_norms(p: float, weight: DyadicWeight, level: int) -> np.ndarray:
    """``||H_k||_{p,w}`` for every flat index ``k < 2**level``."""
    masses = _masses_by_flat(weight, level)
    sizes = np.concatenate([[1.0]] + [np.full(1 << n, 2.0 ** -n) for n in range(level)])
    return masses ** (1.0 / p) / np.sqrt(sizes)


def coefficient_weighted_norm(
    e: HaarExpansion, idx: HaarIndex, p: float, weight: DyadicWeight
) -> float:
    """``c_I(f, p, w) = ||c_I(f) H_I||_{p,w}``."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    return abs(e[idx]) * haar_norm(idx, p, weight)


def square_function(e: HaarExpansion) -> StepFunction:
    """``S(x) = (c_root^2 + sum_I c_I^2 chi_I(x) / |I|)^(1/2)`` at the expansion level."""
    acc = np.array([e.coeffs[0] ** 2])
    for n in range(e.level):
        acc = np.repeat(acc + 2.0 ** n * e.coeffs[1 << n:2 << n] ** 2, 2)
    return StepFunction(e.level, np.sqrt(acc))


def xp_norm(e: HaarExpansion, p: float, weight: DyadicWeight) -> float:
    return weighted_lp_norm(square_function(e), p, weight.base)


def normalized_expansion(
    level: int, coeffs: Mapping[HaarIndex, float], p: float, weight: DyadicWeight
) -> HaarExpansion:
    """Expansion of ``sum a_idx H_idx / ||H_idx||_{p,w}``."""
    return HaarExpansion.from_mapping(
        level, {idx: a / haar_norm(idx, p, weight) for idx, a in coeffs.items()}
    )


def _resolution_for(indices: Iterable[HaarIndex], weight: DyadicWeight) -> int:
    deepest = max((i.level for i in indices), default=-1)
    return max(deepest + 1, weight.level)


def indicator_sum_norm(
    indices: Iterable[HaarIndex],
    p: float,
    weight: DyadicWeight,
    signs: Mapping[HaarIndex, int] | None = None,
) -> float:
    """X^p(w) norm of ``sum_{idx in indices} +-H_idx / ||H_idx||_{p,w}``.

    The value does not depend on the signs.
    """
    indices = list(indices)
    if not indices:
        return 0.0
    signs = signs or {}
    level = _resolution_for(indices, weight)
    weight = weight.refine(level)
    e = normalized_expansion(level, {i: float(signs.get(i, 1)) for i in indices}, p, weight)
    return xp_norm(e, p, weight)
