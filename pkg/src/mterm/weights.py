"""Dyadic weights and the constants of their Muckenhoupt / Carleson conditions.

Every supremum over dyadic intervals is truncated at an explicit level ``L``
and the returned number is only a statement about intervals of level <= L.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .dyadic import DyadicInterval, StepFunction, integrate


def _level_pyramid(values: np.ndarray) -> list[np.ndarray]:
    """Integrals over every dyadic interval, ``out[n][j]`` for ``(n, j)``."""
    level = int(np.log2(values.size))
    out = [None] * (level + 1)
    cur = values * 2.0 ** -level
    out[level] = cur
    for n in range(level - 1, -1, -1):
        cur = cur[0::2] + cur[1::2]
        out[n] = cur
    return out


@dataclass(frozen=True, eq=False)
class DyadicWeight:
    """A strictly positive step-function weight on [0, 1)."""

    base: StepFunction

    def __post_init__(self):
        if not np.all(self.base.values > 0):
            raise ValueError("weights must be strictly positive")

    @classmethod
    def constant(cls, c: float = 1.0, level: int = 0) -> DyadicWeight:
        return cls(StepFunction.constant(c, level))

    @classmethod
    def from_values(cls, values) -> DyadicWeight:
        values = np.asarray(values, dtype=float)
        return cls(StepFunction(int(np.log2(values.size)), values))

    @property
    def level(self) -> int:
        return self.base.level

    @property
    def values(self) -> np.ndarray:
        return self.base.values

    @cached_property
    def masses(self) -> list[np.ndarray]:
        """``masses[n][j] = w((n, j))`` for every level up to the resolution."""
        return _level_pyramid(self.base.values)

    def refine(self, level: int) -> DyadicWeight:
        return DyadicWeight(self.base.refine(level))

    def power(self, q: float) -> DyadicWeight:
        return DyadicWeight(StepFunction(self.level, self.values ** q))

    def scaled(self, c: float) -> DyadicWeight:
        return DyadicWeight(StepFunction(self.level, c * self.values))

    def to_json(self) -> str:
        return self.base.to_json()

    @classmethod
    def from_json(cls, text: str) -> DyadicWeight:
        return cls(StepFunction.from_json(text))


def _require_level(weight: DyadicWeight, level: int) -> None:
    if level > weight.level:
        raise ValueError(
            f"level {level} is finer than the weight resolution {weight.level}"
        )


def weight_of_interval(weight: DyadicWeight, interval: DyadicInterval) -> float:
    _require_level(weight, interval.level)
    return float(weight.masses[interval.level][interval.position])


def mean_on_interval(weight: DyadicWeight, interval: DyadicInterval) -> float:
    return weight_of_interval(weight, interval) / interval.measure


def total_mass(weight: DyadicWeight) -> float:
    return integrate(weight.base)


def apd_constant(weight: DyadicWeight, p: float, level: int) -> float:
    """Dyadic A_p characteristic truncated at ``level``.

    ``max_I m_I(w) * m_I(w^{-1/(p-1)})^(p-1)`` over intervals of level <= L.
    """
    if p <= 1:
        raise ValueError(f"p must be > 1, got {p}")
    _require_level(weight, level)
    dual = weight.power(-1.0 / (p - 1.0))
    best = 0.0
    for n in range(level + 1):
        size = 2.0 ** -n
        m_w = weight.masses[n] / size
        m_dual = dual.masses[n] / size
        best = max(best, float(np.max(m_w * m_dual ** (p - 1.0))))
    return best


def reverse_doubling_delta(weight: DyadicWeight, level: int) -> float:
    """Largest child-to-parent mass ratio among intervals of level <= L-1.

    The condition holds at this truncation iff the result is < 1.
    """
    if level < 1:
        raise ValueError("reverse doubling needs level >= 1")
    _require_level(weight, level)
    best = 0.0
    for n in range(level):
        parent = weight.masses[n]
        child = weight.masses[n + 1]
        ratio = np.maximum(child[0::2], child[1::2]) / parent
        best = max(best, float(ratio.max()))
    return best


def _chain_sums(seq: list[np.ndarray], alpha: float) -> list[np.ndarray]:
    """``out[n][j] = sum of seq[k][j >> (n-k)]**(-alpha)`` over the ancestor chain."""
    out = []
    prev = None
    for n, vals in enumerate(seq):
        term = vals ** (-alpha)
        cur = term if prev is None else term + np.repeat(prev, 2)
        out.append(cur)
        prev = cur
    return out


def carleson_constant(weight: DyadicWeight, alpha: float, level: int) -> float:
    """Reverse Carleson constant of order ``alpha`` truncated at ``level``.

    ``max_J w(J)^alpha * sum_{I >= J} w(I)^-alpha`` with J of level <= L.
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    _require_level(weight, level)
    masses = weight.masses[: level + 1]
    return _pair_constant(masses, masses, alpha)


def _pair_constant(w: list[np.ndarray], v: list[np.ndarray], alpha: float) -> float:
    sums = _chain_sums(w, alpha)
    return max(float(np.max(v[n] ** alpha * sums[n])) for n in range(len(w)))


@dataclass(frozen=True, eq=False)
class IndexedSequence:
    """Positive numbers indexed by the full dyadic tree up to ``level``.

    Stored level by level: ``levels[n][j]`` is the entry for ``(n, j)``.
    """

    levels: list[np.ndarray] = field(repr=False)

    def __post_init__(self):
        levels = []
        for n, vals in enumerate(self.levels):
            vals = np.array(vals, dtype=float)
            if vals.shape != (1 << n,):
                raise ValueError(f"level {n} needs {1 << n} entries, got {vals.shape}")
            if not np.all(vals > 0):
                raise ValueError("indexed sequences must be strictly positive")
            vals.setflags(write=False)
            levels.append(vals)
        if not levels:
            raise ValueError("an indexed sequence needs at least the root level")
        object.__setattr__(self, "levels", levels)

    @property
    def level(self) -> int:
        return len(self.levels) - 1

    def __getitem__(self, interval: DyadicInterval) -> float:
        return float(self.levels[interval.level][interval.position])

    @classmethod
    def from_weight(cls, weight: DyadicWeight, level: int | None = None) -> IndexedSequence:
        """The sequence ``I -> w(I)``."""
        level = weight.level if level is None else level
        _require_level(weight, level)
        return cls(weight.masses[: level + 1])

    @classmethod
    def constant(cls, c: float, level: int) -> IndexedSequence:
        return cls([np.full(1 << n, float(c)) for n in range(level + 1)])

    def truncate(self, level: int) -> IndexedSequence:
        if level > self.level:
            raise ValueError(f"cannot truncate level {self.level} to {level}")
        return IndexedSequence(self.levels[: level + 1])

    def map(self, fn) -> IndexedSequence:
        return IndexedSequence([fn(v) for v in self.levels])

    def flat(self) -> np.ndarray:
        """Entries in breadth-first order ``(0,0), (1,0), (1,1), (2,0), ...``."""
        return np.concatenate(self.levels)

    @property
    def min(self) -> float:
        return float(min(v.min() for v in self.levels))

    @property
    def max(self) -> float:
        return float(max(v.max() for v in self.levels))

    def to_json(self) -> str:
        return json.dumps(
            {f"{n}:{j}": float(x) for n, vals in enumerate(self.levels) for j, x in enumerate(vals)}
        )

    @classmethod
    def from_json(cls, text: str) -> IndexedSequence:
        record = json.loads(text)
        keyed = {DyadicInterval.from_key(k): float(v) for k, v in record.items()}
        level = max(i.level for i in keyed)
        levels = [np.zeros(1 << n) for n in range(level + 1)]
        for interval, value in keyed.items():
            levels[interval.level][interval.position] = value
        if len(keyed) != (1 << (level + 1)) - 1:
            raise ValueError("indexed sequence must cover every interval up to its level")
        return cls(levels)


def pair_drcc_constant(
    w: IndexedSequence, v: IndexedSequence, alpha: float, level: int
) -> float:
    """Smallest C with ``sum_{I >= J} w_I^-alpha <= C v_J^-alpha`` for levels <= L."""
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    if w.level < level or v.level < level:
        raise ValueError(
            f"sequences cover levels {w.level} and {v.level}, need {level}"
        )
    return _pair_constant(w.levels[: level + 1], v.levels[: level + 1], alpha)


def random_weight(level: int, rng: np.random.Generator, spread: float = 1.0) -> DyadicWeight:
    """Cell values i.i.d. log-uniform on ``[e^-spread, e^spread]``."""
    return DyadicWeight(StepFunction(level, np.exp(rng.uniform(-spread, spread, 1 << level))))


def random_sequence(
    level: int, rng: np.random.Generator, low: float = 0.5, high: float = 2.0
) -> IndexedSequence:
    """Entries i.i.d. log-uniform on ``[low, high]``."""
    lo, hi = np.log(low), np.log(high)
    return IndexedSequence([np.exp(rng.uniform(lo, hi, 1 << n)) for n in range(level + 1)])


def power_weight(a: float, level: int) -> DyadicWeight:
    """``x^a`` sampled at cell midpoints; the cell at 0 gets ``(2^-(L+1))^a``."""
    mid = (np.arange(1 << level) + 0.5) * 2.0 ** -level
    return DyadicWeight(StepFunction(level, mid ** a))


def concentrated_weight(level: int, mass: float = 1.0) -> DyadicWeight:
    """All but a vanishing part of the mass sits in the leftmost cell.

    Ancestor chains of that cell carry almost equal mass, so the reverse
    Carleson constant grows linearly with the truncation level.
    """
    values = np.full(1 << level, 1e-6)
    values[0] = mass * (1 << level)
    return DyadicWeight(StepFunction(level, values))
