"""Reproducible random streams and the variate transforms built on them.

All randomness is consumed as uniform doubles from PCG64 streams keyed by
(master seed, interval index, sample-block index, slot).  Disjoint
intervals use disjoint streams, so increments across intervals are
independent by construction; the block keying makes results independent
of how blocks would be scheduled if sampling were ever parallelized; and
the slot separates draw purposes within a block (one per coordinate, for
instance), so enlarging an ensemble extends it without disturbing the
samples already drawn.  Normal and Poisson variates are produced by fixed
transforms of the uniform stream (pair transform, inverse cdf,
transformed rejection) rather than by library samplers, so the draw
sequence is pinned by this module alone.
"""

from __future__ import annotations

import numpy as np

BLOCK = 4096
_MASK64 = (1 << 64) - 1
# Poisson means below this use inverse-cdf lookup; above, transformed rejection.
_POISSON_INVERSION_CUTOFF = 10.0


def stream(seed: int, interval: int, block: int, slot: int = 0) -> np.random.Generator:
    """Child generator for one (interval, sample-block, slot) cell."""
    ss = np.random.SeedSequence(
        entropy=(int(seed) & _MASK64, int(interval), int(block), int(slot))
    )
    return np.random.Generator(np.random.PCG64(ss))


def block_slices(M: int) -> list[slice]:
    return [slice(lo, min(lo + BLOCK, M)) for lo in range(0, M, BLOCK)]


def standard_normal(gen: np.random.Generator, n: int) -> np.ndarray:
    """n standard normals via the Box-Muller pair transform.

    Pair j always consumes uniforms 2j and 2j+1, so a longer request
    extends a shorter one's output instead of repairing the stream.
    """
    pairs = (n + 1) // 2
    u = gen.random(2 * pairs)
    u1 = 1.0 - u[0::2]  # in (0, 1], keeps the log finite
    u2 = u[1::2]
    r = np.sqrt(-2.0 * np.log(u1))
    theta = 2.0 * np.pi * u2
    out = np.empty(2 * pairs)
    out[0::2] = r * np.cos(theta)
    out[1::2] = r * np.sin(theta)
    return out[:n]


def poisson_counts(gen: np.random.Generator, mean: float, n: int) -> np.ndarray:
    """n Poisson(mean) counts.

    mean == 0 consumes no randomness.  Small means invert a precomputed cdf
    with one uniform per variate; large means use Hormann's transformed
    rejection (PTRS), which consumes a data-dependent but deterministic
    number of uniforms.
    """
    if mean < 0 or not np.isfinite(mean):
        raise ValueError("mean must be non-negative and finite")
    if n == 0 or mean == 0.0:
        return np.zeros(n, dtype=np.int64)
    if mean < _POISSON_INVERSION_CUTOFF:
        return _poisson_inversion(gen, mean, n)
    return _poisson_ptrs(gen, mean, n)


def _poisson_inversion(gen: np.random.Generator, mean: float, n: int) -> np.ndarray:
    terms = [np.exp(-mean)]
    k = 0
    total = terms[0]
    # Extend the cdf until it is saturated in doubles; the tail beyond the
    # last entry has probability below 1e-16.
    while total < 1.0 - 1e-17 and k < 1024:
        k += 1
        terms.append(terms[-1] * mean / k)
        total += terms[-1]
    cdf = np.cumsum(terms)
    u = gen.random(n)
    return np.searchsorted(cdf, u, side="right").astype(np.int64)


def _poisson_ptrs(gen: np.random.Generator, mean: float, n: int) -> np.ndarray:
    b = 0.931 + 2.53 * np.sqrt(mean)
    a = -0.059 + 0.02483 * b
    inv_alpha = 1.1239 + 1.1328 / (b - 3.4)
    v_r = 0.9277 - 3.6224 / (b - 2.0)
    log_mean = np.log(mean)

    out = np.zeros(n, dtype=np.int64)
    pending = np.arange(n)
    rounds = 0
    while pending.size and rounds < 200:
        rounds += 1
        m = pending.size
        u = gen.random(m) - 0.5
        v = gen.random(m)
        us = 0.5 - np.abs(u)
        k = np.floor((2.0 * a / us + b) * u + mean + 0.43).astype(np.int64)

        accept = (us >= 0.07) & (v <= v_r)
        reject = (k < 0) | ((us < 0.013) & (v > us))
        needs_test = ~(accept | reject)
        if np.any(needs_test):
            kt = k[needs_test]
            kmax = int(kt.max())
            log_fact = np.concatenate(([0.0], np.cumsum(np.log(np.arange(1, kmax + 1)))))
            lhs = np.log(v[needs_test] * inv_alpha / (a / us[needs_test] ** 2 + b))
            rhs = -mean + kt * log_mean - log_fact[kt]
            accept = accept.copy()
            accept[needs_test] = lhs <= rhs
        out[pending[accept]] = k[accept]
        pending = pending[~accept]
    if pending.size:
        # Statistically unreachable; keep the result well-defined.
        out[pending] = int(round(mean))
    return out


def bernoulli_values(gen: np.random.Generator, p: float, n: int) -> np.ndarray:
    """n independent indicator draws with success probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    return (gen.random(n) < p).astype(np.int64)
