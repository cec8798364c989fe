"""Dyadic intervals and step functions on [0, 1).

A :class:`StepFunction` stores one value per dyadic cell at an explicit
resolution level ``L``.  Binary operations on functions stored at different
levels refine the coarser operand first, so every integral stays an exact
finite sum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator

import numpy as np

MAX_LEVEL = 20
DEFAULT_LEVEL = 8


@dataclass(frozen=True, order=True)
class DyadicInterval:
    """The half-open interval ``[j 2^-n, (j+1) 2^-n)``."""

    level: int
    position: int

    def __post_init__(self):
        if self.level < 0 or self.level > MAX_LEVEL:
            raise ValueError(f"level must lie in [0, {MAX_LEVEL}], got {self.level}")
        if not 0 <= self.position < (1 << self.level):
            raise ValueError(
                f"position {self.position} out of range for level {self.level}"
            )

    @property
    def measure(self) -> float:
        return 2.0 ** -self.level

    @property
    def left(self) -> float:
        return self.position * 2.0 ** -self.level

    @property
    def right(self) -> float:
        return (self.position + 1) * 2.0 ** -self.level

    def children(self) -> tuple[DyadicInterval, DyadicInterval]:
        n, j = self.level + 1, 2 * self.position
        return DyadicInterval(n, j), DyadicInterval(n, j + 1)

    def parent(self) -> DyadicInterval:
        if self.level == 0:
            raise ValueError("the root interval has no parent")
        return DyadicInterval(self.level - 1, self.position >> 1)

    def ancestors(self) -> list[DyadicInterval]:
        """The chain ``[self, parent, ..., root]``."""
        return [
            DyadicInterval(self.level - k, self.position >> k)
            for k in range(self.level + 1)
        ]

    def contains(self, other: DyadicInterval) -> bool:
        if other.level < self.level:
            return False
        return (other.position >> (other.level - self.level)) == self.position

    @property
    def key(self) -> str:
        return f"{self.level}:{self.position}"

    @classmethod
    def from_key(cls, key: str) -> DyadicInterval:
        n, j = key.split(":")
        return cls(int(n), int(j))


def intervals(max_level: int) -> Iterator[DyadicInterval]:
    """All dyadic intervals with level <= max_level, coarse to fine."""
    for n in range(max_level + 1):
        for j in range(1 << n):
            yield DyadicInterval(n, j)


def cells_of(interval: DyadicInterval, level: int) -> range:
    """Indices of the level-``level`` cells whose union is ``interval``."""
    shift = level - interval.level
    if shift < 0:
        raise ValueError(
            f"interval at level {interval.level} is finer than resolution {level}"
        )
    start = interval.position << shift
    return range(start, start + (1 << shift))


def _check_level(level: int) -> None:
    if not 0 <= level <= MAX_LEVEL:
        raise ValueError(f"level must lie in [0, {MAX_LEVEL}], got {level}")


@dataclass(frozen=True, eq=False)
class StepFunction:
    """A function on [0, 1) constant on each of the ``2**level`` dyadic cells."""

    level: int
    values: np.ndarray

    def __post_init__(self):
        _check_level(self.level)
        values = np.array(self.values, dtype=float)
        if values.shape != (1 << self.level,):
            raise ValueError(
                f"expected {1 << self.level} values at level {self.level}, "
                f"got shape {values.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, c: float, level: int = 0) -> StepFunction:
        return cls(level, np.full(1 << level, float(c)))

    @classmethod
    def indicator(cls, interval: DyadicInterval, level: int | None = None) -> StepFunction:
        level = interval.level if level is None else level
        values = np.zeros(1 << level)
        cells = cells_of(interval, level)
        values[cells.start:cells.stop] = 1.0
        return cls(level, values)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if np.any((x < 0) | (x >= 1)):
            raise ValueError("step functions are defined on [0, 1)")
        idx = np.floor(x * (1 << self.level)).astype(int)
        return self.values[idx]

    def refine(self, level: int) -> StepFunction:
        if level < self.level:
            raise ValueError(f"cannot refine level {self.level} down to {level}")
        if level == self.level:
            return self
        return StepFunction(level, np.repeat(self.values, 1 << (level - self.level)))

    def cell_values(self, interval: DyadicInterval) -> np.ndarray:
        cells = cells_of(interval, self.level)
        return self.values[cells.start:cells.stop]

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        level = max(self.level, other.level)
        return bool(np.array_equal(self.refine(level).values, other.refine(level).values))

    def __repr__(self):
        return f"StepFunction(level={self.level}, values={self.values.tolist()!r})"

    def to_json(self) -> str:
        return json.dumps({"level": self.level, "values": self.values.tolist()})

    @classmethod
    def from_dict(cls, record: dict) -> StepFunction:
        try:
            level, values = int(record["level"]), record["values"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed step function record: {exc}") from exc
        if len(values) != 1 << level:
            raise ValueError(f"values length {len(values)} != 2**{level}")
        return cls(level, np.asarray(values, dtype=float))

    @classmethod
    def from_json(cls, text: str) -> StepFunction:
        return cls.from_dict(json.loads(text))


def common_level(*fs: StepFunction) -> tuple[StepFunction, ...]:
    level = max(f.level for f in fs)
    return tuple(f.refine(level) for f in fs)


def integrate(f: StepFunction) -> float:
    return float(np.sum(f.values)) * 2.0 ** -f.level


def add(f: StepFunction, g: StepFunction) -> StepFunction:
    f, g = common_level(f, g)
    return StepFunction(f.level, f.values + g.values)


def multiply(f: StepFunction, g: StepFunction) -> StepFunction:
    f, g = common_level(f, g)
    return StepFunction(f.level, f.values * g.values)


def scale(f: StepFunction, c: float) -> StepFunction:
    return StepFunction(f.level, c * f.values)


def abs_pow(f: StepFunction, q: float) -> StepFunction:
    return StepFunction(f.level, np.abs(f.values) ** q)


def weighted_lp_norm(f: StepFunction, p: float, weight: StepFunction | None = None) -> float:
    """``(int |f|^p w dx)^(1/p)``; ``weight=None`` means Lebesgue measure."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if weight is None:
        weight = StepFunction.constant(1.0)
    if np.any(weight.values <= 0):
        raise ValueError("weight must be strictly positive")
    f, weight = common_level(f, weight)
    # scale out the max so large p does not overflow
    a = np.abs(f.values)
    top = a.max()
    if top == 0:
        return 0.0
    total = np.sum((a / top) ** p * weight.values) * 2.0 ** -f.level
    return float(top * total ** (1.0 / p))
