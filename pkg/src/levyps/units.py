"""Units of the product structure and their pathwise identities.

A unit assigns to each time t a random variable over the ensemble such
that the value at s + t factors into the value at s times the value at t
evaluated on the window shifted by s.  Three families are implemented:

* exponential units exp(i <phi, L_t>) for any model,
* Cameron-Martin units exp(<h/q, L_t> - t/2 |h|_H^2) for the Gaussian
  model, normalized to mean one,
* the parity unit (-1)^(N_t) of the Bernoulli compound model, a unit that
  is not of exponential type.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .functionals import FiniteFunctional
from .models import BernoulliCompound, GaussianDiagonal
from .sampling import PathEnsemble, shifted_view


@dataclass(frozen=True, eq=False)
class CameronMartinVector:
    """A direction h with finite energy |h|_H^2 = sum h_n^2 / q_n.

    The dual coordinates h_n / q_n are what pair against the path; the
    energy controls the unit's L2 norm growth in time.
    """

    h: np.ndarray
    q: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.h, dtype=np.float64)
        q = np.asarray(self.q, dtype=np.float64)
        if h.shape != q.shape or h.ndim != 1:
            raise ValueError("h and q must be 1-d arrays of equal length")
        if np.any(q <= 0) or not np.all(np.isfinite(q)) or not np.all(np.isfinite(h)):
            raise ValueError("q must be positive and both arrays finite")
        h.setflags(write=False)
        q.setflags(write=False)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "q", q)

    @classmethod
    def from_model(cls, model: GaussianDiagonal, h: Sequence[float]) -> "CameronMartinVector":
        return cls(np.asarray(h, dtype=np.float64), model.q)

    @property
    def dual(self) -> np.ndarray:
        return self.h / self.q

    @property
    def energy(self) -> float:
        return float(np.sum(self.h**2 / self.q))


@dataclass(frozen=True)
class ExponentialUnit:
    phi: FiniteFunctional


@dataclass(frozen=True, eq=False)
class GaussianUnit:
    h: CameronMartinVector


@dataclass(frozen=True)
class ParityUnit:
    pass


UnitSpec = Union[ExponentialUnit, GaussianUnit, ParityUnit]


def eval_unit(spec: UnitSpec, ensemble: PathEnsemble, t: float) -> np.ndarray:
    """Sample values of the unit at time t, shape (M,).

    Exponential units return complex values of modulus one; the Gaussian
    and parity units are real valued.
    """
    if isinstance(spec, ExponentialUnit):
        spec.phi.check_truncation(ensemble.K)
        return np.exp(1j * spec.phi.pair(ensemble.levels_at(t)))
    if isinstance(spec, GaussianUnit):
        if not isinstance(ensemble.model, GaussianDiagonal):
            raise ValueError("Gaussian units require a GaussianDiagonal ensemble")
        if spec.h.h.size != ensemble.K:
            raise ValueError("Cameron-Martin vector length must match the truncation")
        pairing = ensemble.levels_at(t) @ spec.h.dual
        return np.exp(pairing - 0.5 * t * spec.h.energy)
    if isinstance(spec, ParityUnit):
        if not isinstance(ensemble.model, BernoulliCompound):
            raise ValueError("the parity unit requires a BernoulliCompound ensemble")
        # Integer jump counts keep the sign exact.
        return 1.0 - 2.0 * (ensemble.jumps_at(t) & 1)
    raise TypeError(f"unsupported unit spec {type(spec).__name__}")


def gaussian_unit_norm(h: CameronMartinVector, t: float) -> float:
    """L2 norm exp(t |h|_H^2 / 2) of the Cameron-Martin unit."""
    if not (t > 0) or not np.isfinite(t):
        raise ValueError("t must be positive and finite")
    return float(np.exp(0.5 * t * h.energy))


def factorization_check(spec: UnitSpec, ensemble: PathEnsemble, s: float, t: float) -> float:
    """Max pathwise |u(s+t) - u(s) * (u(t) o shift_s)| over the ensemble.

    Both s and s + t must be grid points.  The shifted factor is evaluated
    on a re-indexed view of the same draws; nothing is resampled.
    """
    left = eval_unit(spec, ensemble, s + t)
    first = eval_unit(spec, ensemble, s)
    second = eval_unit(spec, shifted_view(ensemble, s), t)
    return float(np.max(np.abs(left - first * second)))


def martingale_test(
    h: CameronMartinVector,
    ensemble: PathEnsemble,
    s: float,
    t: float,
    test_fns: Sequence[Callable[[np.ndarray], np.ndarray]],
) -> list[tuple[float, float]]:
    """Weak martingale property of the Cameron-Martin unit.

    For each bounded test function g of the time-s levels, returns the
    absolute gap |mean[u(s+t) g] - mean[u(s) g]| together with the
    standard error of the pathwise difference, so a martingale passes
    within a few standard errors.
    """
    spec = GaussianUnit(h)
    levels_s = ensemble.levels_at(s)
    u_later = eval_unit(spec, ensemble, s + t)
    u_now = eval_unit(spec, ensemble, s)
    results = []
    for g in test_fns:
        weights = np.asarray(g(levels_s), dtype=np.float64)
        diff = (u_later - u_now) * weights
        gap = abs(float(diff.mean()))
        stderr = float(diff.std(ddof=1) / np.sqrt(ensemble.M))
        results.append((gap, stderr))
    return results


@dataclass(frozen=True)
class IsometryResult:
    product_mean: float
    split_mean: float
    stderr: float

    @property
    def gap(self) -> float:
        return abs(self.product_mean - self.split_mean)


def multiplication_isometry_check(
    ensemble: PathEnsemble,
    f_fn: Callable[[PathEnsemble, float], np.ndarray],
    g_fn: Callable[[PathEnsemble, float], np.ndarray],
    s: float,
    t: float,
) -> IsometryResult:
    """mean|f * (g o shift_s)|^2 against mean|f|^2 * mean|g o shift_s|^2.

    f is evaluated from the ensemble up to s and g from the shifted view,
    so the two factors are independent and the means multiply; the gap is
    the sample covariance of |f|^2 and |g|^2 and the reported standard
    error is that of the covariance estimate.
    """
    f_vals = f_fn(ensemble, s)
    g_vals = g_fn(shifted_view(ensemble, s), t)
    F = np.abs(f_vals) ** 2
    G = np.abs(g_vals) ** 2
    product_mean = float((F * G).mean())
    split_mean = float(F.mean() * G.mean())
    centered = (F - F.mean()) * (G - G.mean())
    stderr = float(centered.std(ddof=1) / np.sqrt(ensemble.M))
    return IsometryResult(product_mean, split_mean, stderr)


def unit_value_fn(spec: UnitSpec) -> Callable[[PathEnsemble, float], np.ndarray]:
    """Adapter turning a unit spec into an (ensemble, t) -> values callable."""

    def fn(ensemble: PathEnsemble, t: float) -> np.ndarray:
        return eval_unit(spec, ensemble, t)

    return fn


def real_part_of(fn: Callable[[PathEnsemble, float], np.ndarray]):
    def wrapped(ensemble: PathEnsemble, t: float) -> np.ndarray:
        return np.real(fn(ensemble, t))

    return wrapped


def parity_exponential_correlation(
    ensemble: PathEnsemble, t: float, functionals: Sequence[FiniteFunctional]
) -> float:
    """Largest |mean[parity * conj(exponential(phi))]| over the functionals.

    Values near one would mean the parity unit is an exponential unit in
    disguise; on the Bernoulli compound model they stay bounded away from
    one on any functional grid.
    """
    parity = eval_unit(ParityUnit(), ensemble, t)
    levels = ensemble.levels_at(t)
    worst = 0.0
    for phi in functionals:
        phi.check_truncation(ensemble.K)
        values = parity * np.exp(-1j * phi.pair(levels))
        worst = max(worst, abs(complex(values.mean())))
    return worst
