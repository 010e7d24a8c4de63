"""Least-squares approximation of cylindrical targets by exponentials.

Under the empirical law of an ensemble at time t, a target function of
the levels is regressed on the dictionary {exp(i <phi_j, .>)} for a
growing prefix of a fixed frequency sequence.  The relative residual is
the fraction of the target's L2 energy the prefix leaves unexplained,
mean|y - fit|^2 / mean|y|^2; it is non-increasing in the budget and
hits zero (numerically) as soon as the target itself lies in the
dictionary span.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .sampling import PathEnsemble

RIDGE_PENALTY = 1e-10
_RANK_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class ResidualCurve:
    budgets: tuple[int, ...]
    residuals: tuple[float, ...]
    ridge_flags: tuple[bool, ...]


def exponential_density_residual(
    ensemble: PathEnsemble,
    t: float,
    target: Callable[[np.ndarray], np.ndarray] | np.ndarray,
    frequencies: np.ndarray,
    budgets: Sequence[int],
) -> ResidualCurve:
    """Relative L2 residual of the target against exponential prefixes.

    The residual at budget J is the unexplained energy fraction
    mean|y - fit|^2 / mean|y|^2 with fit the least-squares combination
    of the first J dictionary rows.  frequencies has shape (J_max, K).
    A numerically rank-deficient normal system is ridge-regularized
    with penalty 1e-10 and the step is flagged.
    """
    levels = ensemble.levels_at(t)
    y = np.asarray(target(levels) if callable(target) else target, dtype=np.complex128)
    if y.shape != (ensemble.M,):
        raise ValueError("target must produce one value per sample")
    freqs = np.asarray(frequencies, dtype=np.float64)
    if freqs.ndim != 2 or freqs.shape[1] != ensemble.K:
        raise ValueError("frequencies must have shape (J, K)")
    budgets = tuple(int(J) for J in budgets)
    if any(J < 1 or J > freqs.shape[0] for J in budgets):
        raise ValueError("budgets must lie within the frequency sequence")
    if list(budgets) != sorted(budgets):
        raise ValueError("budgets must be non-decreasing")

    M = ensemble.M
    A = np.exp(1j * (levels @ freqs.T))
    gram = (A.conj().T @ A) / M
    proj = (A.conj().T @ y) / M
    energy_y = float(np.mean(np.abs(y) ** 2))
    if energy_y == 0.0:
        raise ValueError("target is identically zero")

    residuals = []
    flags = []
    for J in budgets:
        G = gram[:J, :J]
        eigs = np.linalg.eigvalsh(G)
        ridged = eigs[0] <= _RANK_RTOL * max(eigs[-1], 1.0)
        if ridged:
            G = G + RIDGE_PENALTY * np.eye(J)
        coef = np.linalg.solve(G, proj[:J])
        resid = y - A[:, :J] @ coef
        residuals.append(float(np.mean(np.abs(resid) ** 2)) / energy_y)
        flags.append(bool(ridged))
    return ResidualCurve(budgets, tuple(residuals), tuple(flags))


def lattice_frequencies(K: int, count: int, spacing: Sequence[float]) -> np.ndarray:
    """First ``count`` points of the scaled integer lattice, ordered by
    l1 norm and then lexicographically; the origin comes first."""
    spacing = np.asarray(spacing, dtype=np.float64)
    if spacing.shape != (K,) or np.any(spacing <= 0):
        raise ValueError("spacing must be K positive steps")
    points = []
    radius = 0
    while len(points) < count:
        shell = []
        for combo in itertools.product(range(-radius, radius + 1), repeat=K):
            if sum(abs(c) for c in combo) == radius:
                shell.append(combo)
        shell.sort()
        points.extend(shell)
        radius += 1
    return np.asarray(points[:count], dtype=np.float64) * spacing[None, :]


def uniform_ladder(K: int, coordinate: int, count: int, spacing: float) -> np.ndarray:
    """Frequencies on one coordinate: zero, then +/- pairs climbing a
    uniform grid.

    For a cylindrical target this degenerate lattice spends the whole
    budget on the one coordinate that matters; spacing near the
    reciprocal of the coordinate's standard deviation keeps adjacent
    atoms distinguishable under the sampled law without leaving gaps in
    frequency coverage.
    """
    if not 1 <= coordinate <= K:
        raise ValueError("coordinate outside the truncation")
    if count < 3:
        raise ValueError("count must be at least 3")
    if spacing <= 0:
        raise ValueError("spacing must be positive")
    ladder = [0.0]
    step = 1
    while len(ladder) < count:
        ladder.append(step * spacing)
        if len(ladder) < count:
            ladder.append(-step * spacing)
        step += 1
    out = np.zeros((count, K))
    out[:, coordinate - 1] = ladder
    return out
