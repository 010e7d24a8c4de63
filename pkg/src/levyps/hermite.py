"""Probabilists' Hermite polynomials and exponential probe systems.

The generating identity exp(<z, y> - |z|^2 / 2) = sum_a z^a / a! H_a(y)
lets a finite family of exponentials reconstruct every Hermite product
H_a(y) of bounded degree: evaluating the degree-d truncation of the
series at well-chosen probe vectors z gives a square linear system whose
matrix A[k, a] = z_k^a / a! is invertible, and solving it recovers the
Hermite values.  Whitening reduces a general diagonal covariance at time
t to this unit-variance setting.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .models import GaussianDiagonal

MAX_DEGREE = 30
_SINGULAR_COND = 1e14


def hermite(k: int, y) -> np.ndarray | float:
    """H_k(y) by the three-term recurrence H_{k+1} = y H_k - k H_{k-1}."""
    if not 0 <= k <= MAX_DEGREE:
        raise ValueError(f"degree must lie in 0..{MAX_DEGREE}")
    y = np.asarray(y, dtype=np.float64)
    prev = np.zeros_like(y)
    cur = np.ones_like(y)
    for j in range(k):
        prev, cur = cur, y * cur - j * prev
    return cur if cur.ndim else float(cur)


def multi_indices(n: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All n-dimensional multi-indices of total degree <= degree, graded
    lexicographically; the count is binomial(n + degree, n)."""
    if n < 1 or degree < 0:
        raise ValueError("need n >= 1 and degree >= 0")
    out = []
    for total in range(degree + 1):
        for head in itertools.product(range(total, -1, -1), repeat=n - 1):
            rest = total - sum(head)
            if rest >= 0:
                out.append(head + (rest,))
    return tuple(out)


def hermite_product(alpha: Sequence[int], y: Sequence[float]) -> float:
    """Product of per-coordinate Hermite values H_alpha(y)."""
    if len(alpha) != len(y):
        raise ValueError("index and point dimensions differ")
    out = 1.0
    for a, yi in zip(alpha, y):
        out *= hermite(a, float(yi))
    return out


def generating_exponential(z: Sequence[float], y: Sequence[float]) -> float:
    z = np.asarray(z, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    return float(np.exp(z @ y - 0.5 * z @ z))


def generating_series(z: Sequence[float], y: Sequence[float], degree: int) -> float:
    """Degree-d truncation sum_{|a| <= d} z^a / a! H_a(y) of the identity."""
    z = np.asarray(z, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    total = 0.0
    for alpha in multi_indices(z.size, degree):
        coeff = 1.0
        for zi, a in zip(z, alpha):
            coeff *= zi**a / math.factorial(a)
        if coeff != 0.0:
            total += coeff * hermite_product(alpha, y)
    return total


@dataclass(frozen=True, eq=False)
class HermiteSystem:
    """Square probe system for Hermite reconstruction at one degree."""

    n: int
    degree: int
    indices: tuple[tuple[int, ...], ...]
    probes: np.ndarray
    matrix: np.ndarray
    cond: float

    @property
    def size(self) -> int:
        return len(self.indices)


def _probe_matrix(probes: np.ndarray, indices) -> np.ndarray:
    A = np.empty((probes.shape[0], len(indices)))
    for col, alpha in enumerate(indices):
        vals = np.ones(probes.shape[0])
        denom = 1.0
        for i, a in enumerate(alpha):
            vals = vals * probes[:, i] ** a
            denom *= math.factorial(a)
        A[:, col] = vals / denom
    return A


def build_hermite_system(
    n: int, degree: int, probes: Sequence[Sequence[float]] | None = None
) -> HermiteSystem:
    """Build the probe system; default probes are the multi-indices themselves.

    With explicit probes a singular matrix fails immediately.  The default
    rule retries with integer-scaled copies of the index vectors (scale 1
    through 5) before giving up, reporting the condition number reached.
    """
    if degree > MAX_DEGREE:
        raise ValueError(f"degree must not exceed {MAX_DEGREE}")
    indices = multi_indices(n, degree)
    if probes is not None:
        candidates = [np.asarray(probes, dtype=np.float64)]
    else:
        base = np.asarray(indices, dtype=np.float64)
        candidates = [scale * base for scale in range(1, 6)]
    last_cond = np.inf
    for cand in candidates:
        if cand.shape != (len(indices), n):
            raise ValueError(
                f"need {len(indices)} probes of dimension {n}, got {cand.shape}"
            )
        A = _probe_matrix(cand, indices)
        cond = float(np.linalg.cond(A))
        if np.isfinite(cond) and cond < _SINGULAR_COND:
            return HermiteSystem(n, degree, indices, cand, A, cond)
        last_cond = cond
    raise np.linalg.LinAlgError(
        f"probe matrix singular after {len(candidates)} attempts (cond {last_cond:.3e})"
    )


def reconstruct_hermite(system: HermiteSystem, y: Sequence[float]) -> np.ndarray:
    """Hermite values H_a(y), index order, recovered through the probe system.

    The right-hand side stacks the degree-truncated generating series at
    each probe, so the solve inverts exactly what the probes observe.
    """
    values = np.array([generating_series(z, y, system.degree) for z in system.probes])
    return np.linalg.solve(system.matrix, values)


@dataclass(frozen=True, eq=False)
class Whitener:
    """Change of variables reducing covariance sigma at time t to identity.

    state maps a path observation y to sigma^(-1/2) y / sqrt(t); dual maps
    a probe direction z to sqrt(t) sigma^(1/2) z, so pairings <z, y> are
    preserved and the whitened observation has unit covariance.
    """

    root: np.ndarray
    inv_root: np.ndarray
    t: float

    def state(self, y: Sequence[float]) -> np.ndarray:
        return (self.inv_root @ np.asarray(y, dtype=np.float64)) / np.sqrt(self.t)

    def dual(self, z: Sequence[float]) -> np.ndarray:
        return np.sqrt(self.t) * (self.root @ np.asarray(z, dtype=np.float64))


def whitener(sigma: np.ndarray, t: float) -> Whitener:
    """Symmetric square root pair for a positive definite covariance."""
    if not (t > 0) or not np.isfinite(t):
        raise ValueError("t must be positive and finite")
    sigma = np.asarray(sigma, dtype=np.float64)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
        raise ValueError("sigma must be square")
    if not np.allclose(sigma, sigma.T, rtol=1e-12, atol=1e-12):
        raise ValueError("sigma must be symmetric")
    vals, vecs = np.linalg.eigh(sigma)
    if np.any(vals <= 0):
        bad = float(vals.min())
        raise ValueError(f"sigma is not positive definite (eigenvalue {bad!r})")
    root = (vecs * np.sqrt(vals)) @ vecs.T
    inv_root = (vecs / np.sqrt(vals)) @ vecs.T
    return Whitener(root, inv_root, float(t))


def covariance_matrix(model: GaussianDiagonal, functionals) -> np.ndarray:
    """Covariance sum_n q_n f_i[n] f_j[n] of a family of functionals."""
    dense = np.stack([f.to_dense(model.K) for f in functionals])
    return (dense * model.q[None, :]) @ dense.T
