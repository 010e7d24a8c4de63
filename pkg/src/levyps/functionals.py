"""Finite-support linear functionals on the coordinate sequence.

A functional pairs with a path level by summing ``value * level[index]``
over its support.  Coordinate indices are one-based and support is kept
sparse, so functionals are independent of any particular truncation; the
consumer checks that the support fits inside its own coordinate range.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .errors import TruncationError


@dataclass(frozen=True)
class FiniteFunctional:
    """Sparse real functional: a finite map from coordinate index to weight.

    Entries with weight exactly 0.0 are dropped, so two functionals that
    agree coordinate-wise compare equal and ``f - f`` is the zero functional.
    """

    items: tuple[tuple[int, float], ...]

    def __post_init__(self):
        seen = set()
        for idx, val in self.items:
            if idx < 1:
                raise ValueError(f"coordinate indices are one-based, got {idx}")
            if idx in seen:
                raise ValueError(f"duplicate coordinate {idx}")
            if not np.isfinite(val):
                raise ValueError(f"non-finite weight at coordinate {idx}")
            seen.add(idx)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, float]] | Mapping[int, float]) -> "FiniteFunctional":
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        cleaned = tuple(sorted((int(i), float(v)) for i, v in pairs if float(v) != 0.0))
        return cls(cleaned)

    @classmethod
    def from_dense(cls, values: Iterable[float]) -> "FiniteFunctional":
        return cls.from_pairs((i + 1, v) for i, v in enumerate(values))

    @classmethod
    def zero(cls) -> "FiniteFunctional":
        return cls(())

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.items)

    @property
    def max_index(self) -> int:
        return self.items[-1][0] if self.items else 0

    def get(self, index: int) -> float:
        for i, v in self.items:
            if i == index:
                return v
        return 0.0

    def to_dense(self, K: int) -> np.ndarray:
        self.check_truncation(K)
        out = np.zeros(K)
        for i, v in self.items:
            out[i - 1] = v
        return out

    def check_truncation(self, K: int) -> None:
        if self.max_index > K:
            raise TruncationError(
                f"functional touches coordinate {self.max_index} beyond truncation K={K}"
            )

    def pair(self, levels: np.ndarray) -> np.ndarray:
        """Apply to an array whose last axis indexes coordinates."""
        if not self.items:
            return np.zeros(levels.shape[:-1])
        self.check_truncation(levels.shape[-1])
        out = np.zeros(levels.shape[:-1])
        for i, v in self.items:
            out += v * levels[..., i - 1]
        return out

    def __add__(self, other: "FiniteFunctional") -> "FiniteFunctional":
        merged = dict(self.items)
        for i, v in other.items:
            merged[i] = merged.get(i, 0.0) + v
        return FiniteFunctional.from_pairs(merged)

    def __neg__(self) -> "FiniteFunctional":
        return FiniteFunctional(tuple((i, -v) for i, v in self.items))

    def __sub__(self, other: "FiniteFunctional") -> "FiniteFunctional":
        return self + (-other)

    def __rmul__(self, scalar: float) -> "FiniteFunctional":
        return FiniteFunctional.from_pairs((i, scalar * v) for i, v in self.items)
