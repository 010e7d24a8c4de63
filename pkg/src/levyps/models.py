"""Truncated process models and their closed-form exponents.

Each model describes the law of a coordinate-wise process on the first K
coordinates of a sequence space.  ``levy_exponent`` returns the cumulant
function Psi(phi) of the time-one increment, so the characteristic
function of the process at time t is exp(t * Psi(phi)) for every finite
functional phi supported inside the truncation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import singledispatch
from typing import Union

import numpy as np

from .functionals import FiniteFunctional


def _as_vector(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name} must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GaussianDiagonal:
    """Drifting Gaussian with independent coordinates.

    Coordinate n gains mean drift[n] and variance q[n] per unit time; all
    q[n] must be strictly positive so the Cameron-Martin machinery has a
    well-defined dual.
    """

    drift: np.ndarray
    q: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "drift", _as_vector(self.drift, "drift"))
        object.__setattr__(self, "q", _as_vector(self.q, "q"))
        if self.drift.size != self.q.size:
            raise ValueError("drift and q must have equal length")
        if np.any(self.q <= 0):
            raise ValueError("q must be strictly positive")

    @property
    def K(self) -> int:
        return self.q.size


@dataclass(frozen=True, eq=False)
class LpCompoundPoisson:
    """Compound Poisson whose n-th jump type adds rates[n] to coordinate n.

    Jumps of size rates[n] on coordinate n arrive at rate rates[n], so both
    the arrival intensity and the jump magnitude decay together along the
    coordinate index.
    """

    rates: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rates", _as_vector(self.rates, "rates"))
        if np.any(self.rates <= 0):
            raise ValueError("rates must be strictly positive")

    @property
    def K(self) -> int:
        return self.rates.size


@dataclass(frozen=True, eq=False)
class BernoulliCompound:
    """Compound Poisson with independent 0/1 coordinate marks.

    Arrivals come at the single rate ``rate``; each arrival adds a vector
    whose n-th entry is an independent Bernoulli(probs[n]) indicator.
    """

    rate: float
    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rate", float(self.rate))
        object.__setattr__(self, "probs", _as_vector(self.probs, "probs"))
        if not np.isfinite(self.rate) or self.rate <= 0:
            raise ValueError("rate must be positive and finite")
        if np.any(self.probs <= 0) or np.any(self.probs >= 1):
            raise ValueError("probs must lie strictly inside (0, 1)")

    @property
    def K(self) -> int:
        return self.probs.size


@dataclass(frozen=True, eq=False)
class SkellamFamily:
    """Difference-of-Poissons family with dyadic coordinate weights.

    Coordinate n is a difference of two Poisson streams with intensities
    weights[n] * lambdas[n] and weights[n] * (1 - lambdas[n]), where
    weights[n] = 2**-(n+1) exactly (one-based: 2**-n).  The profile vector
    ``lambdas`` lives in [0, 1] coordinate-wise and is the only free
    parameter; it is recoverable from the exponent, which the discriminator
    exploits.
    """

    lambdas: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lambdas", _as_vector(self.lambdas, "lambdas"))
        if np.any(self.lambdas < 0) or np.any(self.lambdas > 1):
            raise ValueError("lambdas must lie in [0, 1]")

    @property
    def K(self) -> int:
        return self.lambdas.size

    @property
    def weights(self) -> np.ndarray:
        # Exact dyadic weights 2**-n for one-based n; exact in doubles.
        w = 0.5 ** np.arange(1, self.K + 1)
        w.setflags(write=False)
        return w


LevyModel = Union[GaussianDiagonal, LpCompoundPoisson, BernoulliCompound, SkellamFamily]

MODEL_KINDS = {
    GaussianDiagonal: "gaussian",
    LpCompoundPoisson: "lp_poisson",
    BernoulliCompound: "bernoulli",
    SkellamFamily: "skellam",
}


def truncation(model: LevyModel) -> int:
    return model.K


@singledispatch
def levy_exponent(model, phi: FiniteFunctional) -> complex:
    """Cumulant function Psi(phi) of the time-one increment."""
    raise TypeError(f"unsupported model type {type(model).__name__}")


@levy_exponent.register
def _(model: GaussianDiagonal, phi: FiniteFunctional) -> complex:
    phi.check_truncation(model.K)
    total = 0j
    for n, v in phi.items:
        total += 1j * model.drift[n - 1] * v - 0.5 * model.q[n - 1] * v * v
    return total


@levy_exponent.register
def _(model: LpCompoundPoisson, phi: FiniteFunctional) -> complex:
    phi.check_truncation(model.K)
    total = 0j
    for n, v in phi.items:
        rate = model.rates[n - 1]
        total += rate * (np.exp(1j * v * rate) - 1.0)
    return total


@levy_exponent.register
def _(model: BernoulliCompound, phi: FiniteFunctional) -> complex:
    # One arrival contributes each coordinate independently, so the mark's
    # characteristic function is the product of per-coordinate Bernoulli
    # factors; coordinates outside the support contribute factor one.
    phi.check_truncation(model.K)
    mark = 1.0 + 0j
    for n, v in phi.items:
        p = model.probs[n - 1]
        mark *= p * np.exp(1j * v) + (1.0 - p)
    return model.rate * (mark - 1.0)


@levy_exponent.register
def _(model: SkellamFamily, phi: FiniteFunctional) -> complex:
    phi.check_truncation(model.K)
    total = 0j
    for n, v in phi.items:
        w = model.weights[n - 1]
        lam = model.lambdas[n - 1]
        total += w * ((np.cos(v) - 1.0) + 1j * (2.0 * lam - 1.0) * np.sin(v))
    return total


def characteristic_fn(model: LevyModel, phi: FiniteFunctional, t: float) -> complex:
    """exp(t * Psi(phi)); modulus never exceeds one."""
    if not (t > 0) or not np.isfinite(t):
        raise ValueError("t must be positive and finite")
    return complex(np.exp(t * levy_exponent(model, phi)))


def drift_vector(model: LevyModel) -> np.ndarray:
    """Expected increment per unit time, coordinate-wise."""
    if isinstance(model, GaussianDiagonal):
        return np.array(model.drift)
    if isinstance(model, LpCompoundPoisson):
        return model.rates**2
    if isinstance(model, BernoulliCompound):
        return model.rate * np.array(model.probs)
    if isinstance(model, SkellamFamily):
        return model.weights * (2.0 * model.lambdas - 1.0)
    raise TypeError(f"unsupported model type {type(model).__name__}")


def variance_vector(model: LevyModel) -> np.ndarray:
    """Variance of the increment per unit time, coordinate-wise."""
    if isinstance(model, GaussianDiagonal):
        return np.array(model.q)
    if isinstance(model, LpCompoundPoisson):
        return model.rates**3
    if isinstance(model, BernoulliCompound):
        return model.rate * np.array(model.probs)
    if isinstance(model, SkellamFamily):
        return np.array(model.weights)
    raise TypeError(f"unsupported model type {type(model).__name__}")
