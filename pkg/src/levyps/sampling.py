"""Path ensembles: seeded increment sampling, shifts, and export formats.

The primitive object is the increment array over a fixed time grid, not
event times: sample s, interval i, coordinate n holds the increment of the
process over (t_{i-1}, t_i].  Levels at a grid point are cumulative sums,
so L_0 = 0 holds by construction and stationarity and independence of
increments are properties of the per-interval sampling streams.
"""

from __future__ import annotations

import functools
import struct
from dataclasses import dataclass

import numpy as np

from . import rng
from .errors import CapacityError
from .functionals import FiniteFunctional
from .models import (
    BernoulliCompound,
    GaussianDiagonal,
    LevyModel,
    LpCompoundPoisson,
    SkellamFamily,
)

# Keeps a single ensemble comfortably inside desk-scale memory.
MAX_ELEMENTS = 2**27

_MAGIC = b"LVYENS01"


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing positive grid times; interval i ends at times[i]."""

    times: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        if not self.times:
            raise ValueError("grid must contain at least one time")
        if not all(np.isfinite(t) for t in self.times):
            raise ValueError("grid times must be finite")
        if self.times[0] <= 0.0:
            raise ValueError("grid times must be positive")
        for a, b in zip(self.times, self.times[1:]):
            if b <= a:
                raise ValueError("grid times must be strictly increasing")

    @property
    def intervals(self) -> int:
        return len(self.times)

    @property
    def deltas(self) -> np.ndarray:
        return np.diff(np.concatenate(([0.0], self.times)))

    def index_of(self, t: float) -> int:
        """Index of the grid point equal to t, tolerating 1e-12 rounding."""
        arr = np.asarray(self.times)
        hits = np.flatnonzero(np.isclose(arr, t, rtol=1e-12, atol=1e-12))
        if hits.size != 1:
            raise ValueError(f"t={t!r} is not a grid point of {self.times}")
        return int(hits[0])


@dataclass(frozen=True)
class PathEnsemble:
    """M sampled paths of one model over a common grid.

    increments has shape (M, intervals, K); jump_counts has shape
    (M, intervals) and counts total arrivals per interval (zero for the
    Gaussian model).  Arrays are read-only after construction.
    """

    model: LevyModel
    grid: TimeGrid
    increments: np.ndarray
    jump_counts: np.ndarray
    seed: int

    def __post_init__(self):
        self.increments.setflags(write=False)
        self.jump_counts.setflags(write=False)

    @property
    def M(self) -> int:
        return self.increments.shape[0]

    @property
    def K(self) -> int:
        return self.increments.shape[2]

    def levels_at(self, t: float) -> np.ndarray:
        """Path values L_t, shape (M, K)."""
        idx = self.grid.index_of(t)
        return self.increments[:, : idx + 1, :].sum(axis=1)

    def jumps_at(self, t: float) -> np.ndarray:
        """Total arrival counts up to t, shape (M,)."""
        idx = self.grid.index_of(t)
        return self.jump_counts[:, : idx + 1].sum(axis=1)


def sample_paths(model: LevyModel, grid: TimeGrid, M: int, seed: int) -> PathEnsemble:
    """Draw M paths; identical arguments reproduce the ensemble bit-exactly."""
    if M < 1:
        raise ValueError("M must be at least 1")
    K = model.K
    m = grid.intervals
    if M * m * K > MAX_ELEMENTS:
        raise CapacityError(
            f"ensemble of {M}x{m}x{K} elements exceeds the budget of {MAX_ELEMENTS}"
        )
    increments = np.zeros((M, m, K))
    jump_counts = np.zeros((M, m), dtype=np.int64)
    deltas = grid.deltas
    for i in range(m):
        dt = deltas[i]
        for b, sl in enumerate(rng.block_slices(M)):
            streams = functools.partial(rng.stream, seed, i, b)
            _fill_block(model, streams, dt, increments[sl, i, :], jump_counts[sl, i])
    return PathEnsemble(model, grid, increments, jump_counts, int(seed))


def _fill_block(model, streams, dt, inc, jumps) -> None:
    # Slot discipline: 0 is the joint/primary stream, 1..K one per
    # coordinate, K+1..2K a second per-coordinate bank.  Per-coordinate
    # draws run in sample order, so a larger M extends every block's
    # prefix instead of reshuffling it.
    rows = inc.shape[0]
    if isinstance(model, GaussianDiagonal):
        z = rng.standard_normal(streams(0), rows * model.K).reshape(rows, model.K)
        inc[:] = model.drift[None, :] * dt + np.sqrt(model.q * dt)[None, :] * z
    elif isinstance(model, LpCompoundPoisson):
        for n, rate in enumerate(model.rates):
            counts = rng.poisson_counts(streams(n + 1), rate * dt, rows)
            inc[:, n] = rate * counts
            jumps += counts
    elif isinstance(model, BernoulliCompound):
        arrivals = rng.poisson_counts(streams(0), model.rate * dt, rows)
        owner = np.repeat(np.arange(rows), arrivals)
        total = int(arrivals.sum())
        for n in range(model.K):
            marks = rng.bernoulli_values(streams(n + 1), model.probs[n], total)
            inc[:, n] = np.bincount(owner, weights=marks, minlength=rows)
        jumps += arrivals
    elif isinstance(model, SkellamFamily):
        K = model.K
        for n in range(K):
            w = model.weights[n]
            lam = model.lambdas[n]
            up = rng.poisson_counts(streams(n + 1), w * lam * dt, rows)
            down = rng.poisson_counts(streams(K + n + 1), w * (1.0 - lam) * dt, rows)
            inc[:, n] = up - down
            jumps += up + down
    else:
        raise TypeError(f"unsupported model type {type(model).__name__}")


def shifted_view(ensemble: PathEnsemble, s: float) -> PathEnsemble:
    """The ensemble seen from time s onward; shares storage, never resamples.

    The view's grid point u corresponds to the original s + u, and its
    levels are L_{s+u} - L_s sample by sample.  s = 0 returns an equivalent
    view of the whole ensemble.
    """
    if s == 0:
        return ensemble
    idx = ensemble.grid.index_of(s)
    rest = ensemble.grid.times[idx + 1 :]
    if not rest:
        raise ValueError(f"no grid points beyond s={s!r}")
    new_grid = TimeGrid(tuple(t - s for t in rest))
    return PathEnsemble(
        ensemble.model,
        new_grid,
        ensemble.increments[:, idx + 1 :, :],
        ensemble.jump_counts[:, idx + 1 :],
        ensemble.seed,
    )


def empirical_charfn(ensemble: PathEnsemble, phi: FiniteFunctional, t: float) -> tuple[complex, float]:
    """Monte Carlo estimate of E[exp(i <phi, L_t>)] with its standard error.

    The standard error combines the sample deviations of the real and
    imaginary parts as a root mean square over sqrt(M).
    """
    phi.check_truncation(ensemble.K)
    pairing = phi.pair(ensemble.levels_at(t))
    values = np.exp(1j * pairing)
    estimate = complex(values.mean())
    M = ensemble.M
    var_re = values.real.var(ddof=1) if M > 1 else 0.0
    var_im = values.imag.var(ddof=1) if M > 1 else 0.0
    stderr = float(np.sqrt((var_re + var_im) / 2.0) / np.sqrt(M))
    return estimate, stderr


def _model_config_lines(model: LevyModel) -> list[str]:
    # Local import: the config module depends on models, not the reverse.
    from .config import model_param_lines

    return model_param_lines(model)


def write_csv(ensemble: PathEnsemble, path) -> None:
    """Columnar export: sample, interval, coordinate, increment, jump_count.

    Metadata (model parameters, grid, seed) rides in leading comment lines
    so the file round-trips to an equal ensemble.  Floats are written with
    repr, which parses back to the identical double.
    """
    with open(path, "w") as fh:
        for line in _model_config_lines(ensemble.model):
            fh.write(f"# {line}\n")
        fh.write(f"# grid = {' '.join(repr(t) for t in ensemble.grid.times)}\n")
        fh.write(f"# seed = {ensemble.seed}\n")
        fh.write("sample,interval,coordinate,increment,jump_count\n")
        M, m, K = ensemble.increments.shape
        for s in range(M):
            for i in range(m):
                jc = ensemble.jump_counts[s, i]
                for n in range(K):
                    fh.write(f"{s},{i},{n + 1},{float(ensemble.increments[s, i, n])!r},{jc}\n")


def read_csv(path) -> PathEnsemble:
    from .config import model_from_params

    meta: dict[str, str] = {}
    with open(path) as fh:
        line = fh.readline()
        while line.startswith("#"):
            key, _, value = line[1:].partition("=")
            meta[key.strip()] = value.strip()
            line = fh.readline()
        header = line.strip().split(",")
        if header != ["sample", "interval", "coordinate", "increment", "jump_count"]:
            raise ValueError(f"unexpected csv header {header}")
        rows = [ln.strip().split(",") for ln in fh if ln.strip()]
    grid = TimeGrid(tuple(float(x) for x in meta.pop("grid").split()))
    seed = int(meta.pop("seed"))
    model = model_from_params(meta)
    M = max(int(r[0]) for r in rows) + 1
    m = grid.intervals
    K = model.K
    increments = np.zeros((M, m, K))
    jump_counts = np.zeros((M, m), dtype=np.int64)
    for s, i, n, inc, jc in rows:
        increments[int(s), int(i), int(n) - 1] = float(inc)
        jump_counts[int(s), int(i)] = int(jc)
    return PathEnsemble(model, grid, increments, jump_counts, seed)


def write_binary(ensemble: PathEnsemble, path) -> None:
    """Compact export: 8-byte magic, little-endian headers and doubles."""
    model_block = "\n".join(_model_config_lines(ensemble.model)).encode()
    M, m, K = ensemble.increments.shape
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<QQQq", M, m, K, ensemble.seed))
        fh.write(struct.pack("<Q", len(model_block)))
        fh.write(model_block)
        fh.write(np.asarray(ensemble.grid.times, dtype="<f8").tobytes())
        fh.write(np.ascontiguousarray(ensemble.increments, dtype="<f8").tobytes())
        fh.write(np.ascontiguousarray(ensemble.jump_counts, dtype="<i8").tobytes())


def read_binary(path) -> PathEnsemble:
    from .config import model_from_params

    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != _MAGIC:
            raise ValueError(f"bad magic {magic!r}")
        M, m, K, seed = struct.unpack("<QQQq", fh.read(32))
        (block_len,) = struct.unpack("<Q", fh.read(8))
        params = {}
        for line in fh.read(block_len).decode().splitlines():
            key, _, value = line.partition("=")
            params[key.strip()] = value.strip()
        model = model_from_params(params)
        times = np.frombuffer(fh.read(8 * m), dtype="<f8")
        increments = np.frombuffer(fh.read(8 * M * m * K), dtype="<f8").reshape(M, m, K)
        jump_counts = np.frombuffer(fh.read(8 * M * m), dtype="<i8").reshape(M, m)
    return PathEnsemble(model, TimeGrid(tuple(times)), increments.copy(), jump_counts.copy(), seed)
