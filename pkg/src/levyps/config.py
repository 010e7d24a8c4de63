"""Key-value configuration documents and their canonical form.

The grammar is one ``key = value`` pair per line with ``#`` comments and
blank lines ignored.  Sequence-valued keys accept either an explicit list
of numbers or a generator rule (``constant c``, ``alternating a b``,
``harmonic``, ``powerlaw r``) resolved against the truncation K.  The
canonical echo resolves every rule, fills every default, formats floats
with repr, and orders keys fixed, so semantically equal documents emit
identical bytes and the echo parses back to itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import ConfigError
from .functionals import FiniteFunctional
from .models import (
    BernoulliCompound,
    GaussianDiagonal,
    LevyModel,
    LpCompoundPoisson,
    MODEL_KINDS,
    SkellamFamily,
)
from .sampling import TimeGrid
from .units import ExponentialUnit, GaussianUnit, ParityUnit, CameronMartinVector, UnitSpec

SUITE_NAMES = (
    "charfn",
    "units",
    "skellam",
    "hermite",
    "density",
    "orthogonality",
    "discriminate",
)

_CORE_KEYS = ("model", "K", "grid", "M", "seed", "suite", "out")
_MODEL_PARAM_KEYS = {
    "gaussian": ("drift", "q"),
    "lp_poisson": ("rates",),
    "bernoulli": ("rate", "probs"),
    "skellam": ("lambda", "lambda2"),
}
_MODEL_DEFAULTS = {
    "gaussian": {"drift": "constant 0.0", "q": "powerlaw 1.5"},
    "lp_poisson": {"rates": "powerlaw 1.2"},
    "bernoulli": {"rate": "1.0", "probs": "constant 0.3"},
    "skellam": {"lambda": "alternating 0.25 0.75"},
}

DEFAULTS = {
    "model": "skellam",
    "K": "8",
    "grid": "0.5 1.0",
    "M": "100000",
    "seed": "1",
    "suite": "all",
    "out": "out",
    "tol_closed_form": "1e-12",
    "tol_sigma": "5.0",
}


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    model: LevyModel
    K: int
    grid: TimeGrid
    M: int
    seed: int
    suite: str
    out: str
    unit: UnitSpec | None
    lambda2: np.ndarray | None
    tol_closed_form: float
    tol_sigma: float
    suite_sigma: Mapping[str, float] = field(default_factory=dict)
    suite_closed_form: Mapping[str, float] = field(default_factory=dict)

    def sigma_for(self, suite: str) -> float:
        return self.suite_sigma.get(suite, self.tol_sigma)

    def closed_form_for(self, suite: str) -> float:
        return self.suite_closed_form.get(suite, self.tol_closed_form)


def _parse_float(text: str, key: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"expected a number, got {text!r}", key=key) from None
    if not np.isfinite(value):
        raise ConfigError("value must be finite", key=key)
    return value


def _parse_int(text: str, key: str) -> int:
    try:
        return int(text, 10)
    except ValueError:
        raise ConfigError(f"expected an integer, got {text!r}", key=key) from None


def resolve_sequence(text: str, K: int, key: str) -> np.ndarray:
    """Resolve an explicit list or a generator rule to K values."""
    tokens = text.split()
    if not tokens:
        raise ConfigError("empty sequence", key=key)
    n = np.arange(1, K + 1, dtype=np.float64)
    rule = tokens[0]
    if rule == "constant":
        if len(tokens) != 2:
            raise ConfigError("constant takes one argument", key=key)
        return np.full(K, _parse_float(tokens[1], key))
    if rule == "alternating":
        if len(tokens) != 3:
            raise ConfigError("alternating takes two arguments", key=key)
        a, b = (_parse_float(x, key) for x in tokens[1:])
        out = np.where(np.arange(K) % 2 == 0, a, b)
        return out.astype(np.float64)
    if rule == "harmonic":
        if len(tokens) != 1:
            raise ConfigError("harmonic takes no arguments", key=key)
        return 1.0 / n
    if rule == "powerlaw":
        if len(tokens) != 2:
            raise ConfigError("powerlaw takes one argument", key=key)
        return n ** (-_parse_float(tokens[1], key))
    values = np.array([_parse_float(tok, key) for tok in tokens])
    if values.size != K:
        raise ConfigError(f"expected {K} values, got {values.size}", key=key)
    return values


def _format_float(x: float) -> str:
    return repr(float(x))


def _format_sequence(values: np.ndarray) -> str:
    return " ".join(_format_float(v) for v in values)


def parse_functional(text: str, key: str) -> FiniteFunctional:
    pairs = []
    for token in text.split():
        idx, sep, val = token.partition(":")
        if not sep:
            raise ConfigError(f"expected index:value, got {token!r}", key=key)
        pairs.append((_parse_int(idx, key), _parse_float(val, key)))
    if not pairs:
        raise ConfigError("empty functional", key=key)
    try:
        return FiniteFunctional.from_pairs(pairs)
    except ValueError as exc:
        raise ConfigError(str(exc), key=key) from None


def _format_functional(phi: FiniteFunctional) -> str:
    return " ".join(f"{i}:{_format_float(v)}" for i, v in phi.items)


def parse_unit_spec(text: str, K: int, q: np.ndarray | None, key: str = "unit") -> UnitSpec:
    kind, _, rest = text.strip().partition(" ")
    if kind == "exponential":
        phi = parse_functional(rest, key)
        if phi.max_index > K:
            raise ConfigError("unit functional exceeds the truncation", key=key)
        return ExponentialUnit(phi)
    if kind == "gaussian":
        if q is None:
            raise ConfigError("gaussian units need the gaussian model", key=key)
        h = resolve_sequence(rest, K, key)
        return GaussianUnit(CameronMartinVector(h, q))
    if kind == "parity":
        if rest.strip():
            raise ConfigError("parity takes no arguments", key=key)
        return ParityUnit()
    raise ConfigError(f"unknown unit kind {kind!r}", key=key)


def _format_unit(unit: UnitSpec) -> str:
    if isinstance(unit, ExponentialUnit):
        return f"exponential {_format_functional(unit.phi)}"
    if isinstance(unit, GaussianUnit):
        return f"gaussian {_format_sequence(unit.h.h)}"
    return "parity"


def _document_pairs(text: str) -> dict[str, str]:
    pairs: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError("expected 'key = value'", line=lineno)
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError("missing key", line=lineno)
        if key in pairs:
            raise ConfigError("duplicate key", key=key, line=lineno)
        pairs[key] = value
    return pairs


def model_from_params(params: Mapping[str, str]) -> LevyModel:
    """Build a model from its serialized key-value parameters."""
    params = dict(params)
    kind = params.pop("model", None)
    if kind is None:
        raise ConfigError("missing model kind", key="model")
    if kind not in _MODEL_PARAM_KEYS:
        raise ConfigError(f"unknown model kind {kind!r}", key="model")
    K = _parse_int(params.pop("K", DEFAULTS["K"]), "K")
    if K < 1:
        raise ConfigError("K must be at least 1", key="K")
    merged = dict(_MODEL_DEFAULTS[kind])
    for key, value in params.items():
        if key not in _MODEL_PARAM_KEYS[kind]:
            raise ConfigError(f"unknown key {key!r} for model {kind}", key=key)
        merged[key] = value
    return _build_model(kind, K, merged)


def _build_model(kind: str, K: int, values: Mapping[str, str]) -> LevyModel:
    if kind == "gaussian":
        drift = resolve_sequence(values["drift"], K, "drift")
        q = resolve_sequence(values["q"], K, "q")
        if np.any(q <= 0):
            raise ConfigError("q must be strictly positive", key="q")
        return GaussianDiagonal(drift, q)
    if kind == "lp_poisson":
        rates = resolve_sequence(values["rates"], K, "rates")
        if np.any(rates <= 0):
            raise ConfigError("rates must be strictly positive", key="rates")
        return LpCompoundPoisson(rates)
    if kind == "bernoulli":
        rate = _parse_float(values["rate"], "rate")
        if rate <= 0:
            raise ConfigError("rate must be positive", key="rate")
        probs = resolve_sequence(values["probs"], K, "probs")
        if np.any(probs <= 0) or np.any(probs >= 1):
            raise ConfigError("probs must lie strictly inside (0, 1)", key="probs")
        return BernoulliCompound(rate, probs)
    lam = resolve_sequence(values["lambda"], K, "lambda")
    if np.any(lam < 0) or np.any(lam > 1):
        raise ConfigError("lambda must lie in [0, 1]", key="lambda")
    return SkellamFamily(lam)


def model_param_lines(model: LevyModel) -> list[str]:
    """Canonical serialized form of a model, one key = value per line."""
    kind = MODEL_KINDS[type(model)]
    lines = [f"model = {kind}", f"K = {model.K}"]
    if isinstance(model, GaussianDiagonal):
        lines.append(f"drift = {_format_sequence(model.drift)}")
        lines.append(f"q = {_format_sequence(model.q)}")
    elif isinstance(model, LpCompoundPoisson):
        lines.append(f"rates = {_format_sequence(model.rates)}")
    elif isinstance(model, BernoulliCompound):
        lines.append(f"rate = {_format_float(model.rate)}")
        lines.append(f"probs = {_format_sequence(model.probs)}")
    else:
        lines.append(f"lambda = {_format_sequence(model.lambdas)}")
    return lines


def parse_config(text: str) -> ExperimentConfig:
    """Parse a document, filling defaults and rejecting unknown keys."""
    pairs = _document_pairs(text)
    kind = pairs.get("model", DEFAULTS["model"])
    if kind not in _MODEL_PARAM_KEYS:
        raise ConfigError(f"unknown model kind {kind!r}", key="model")

    allowed = set(_CORE_KEYS) | set(_MODEL_PARAM_KEYS[kind]) | {
        "unit",
        "tol_closed_form",
        "tol_sigma",
    }
    for suite in SUITE_NAMES:
        allowed.add(f"tol_sigma_{suite}")
        allowed.add(f"tol_closed_form_{suite}")
    for key in pairs:
        if key not in allowed:
            raise ConfigError(f"unknown key {key!r}", key=key)

    K = _parse_int(pairs.get("K", DEFAULTS["K"]), "K")
    if K < 1:
        raise ConfigError("K must be at least 1", key="K")
    grid_values = [_parse_float(tok, "grid") for tok in pairs.get("grid", DEFAULTS["grid"]).split()]
    try:
        grid = TimeGrid(tuple(grid_values))
    except ValueError as exc:
        raise ConfigError(str(exc), key="grid") from None
    M = _parse_int(pairs.get("M", DEFAULTS["M"]), "M")
    if M < 1:
        raise ConfigError("M must be at least 1", key="M")
    seed = _parse_int(pairs.get("seed", DEFAULTS["seed"]), "seed")
    suite = pairs.get("suite", DEFAULTS["suite"])
    if suite != "all" and suite not in SUITE_NAMES:
        raise ConfigError(f"unknown suite {suite!r}", key="suite")
    out = pairs.get("out", DEFAULTS["out"])

    model_values = dict(_MODEL_DEFAULTS[kind])
    for key in _MODEL_PARAM_KEYS[kind]:
        if key in pairs:
            model_values[key] = pairs[key]
    model = _build_model(kind, K, model_values)

    lambda2 = None
    if kind == "skellam" and "lambda2" in pairs:
        lambda2 = resolve_sequence(pairs["lambda2"], K, "lambda2")
        if np.any(lambda2 < 0) or np.any(lambda2 > 1):
            raise ConfigError("lambda2 must lie in [0, 1]", key="lambda2")

    unit = None
    if "unit" in pairs:
        q = model.q if isinstance(model, GaussianDiagonal) else None
        unit = parse_unit_spec(pairs["unit"], K, q)

    tol_closed = _parse_float(pairs.get("tol_closed_form", DEFAULTS["tol_closed_form"]), "tol_closed_form")
    if tol_closed <= 0:
        raise ConfigError("tolerance must be positive", key="tol_closed_form")
    tol_sigma = _parse_float(pairs.get("tol_sigma", DEFAULTS["tol_sigma"]), "tol_sigma")
    if tol_sigma <= 0:
        raise ConfigError("tolerance must be positive", key="tol_sigma")

    suite_sigma = {}
    suite_closed = {}
    for name in SUITE_NAMES:
        key = f"tol_sigma_{name}"
        if key in pairs:
            value = _parse_float(pairs[key], key)
            if value != tol_sigma:
                suite_sigma[name] = value
        key = f"tol_closed_form_{name}"
        if key in pairs:
            value = _parse_float(pairs[key], key)
            if value != tol_closed:
                suite_closed[name] = value

    return ExperimentConfig(
        model=model,
        K=K,
        grid=grid,
        M=M,
        seed=seed,
        suite=suite,
        out=out,
        unit=unit,
        lambda2=lambda2,
        tol_closed_form=tol_closed,
        tol_sigma=tol_sigma,
        suite_sigma=suite_sigma,
        suite_closed_form=suite_closed,
    )


def default_config() -> ExperimentConfig:
    return parse_config("")


def effective_config_text(cfg: ExperimentConfig) -> str:
    """Canonical echo: every effective key explicit, rules resolved."""
    model_lines = model_param_lines(cfg.model)
    lines = [model_lines[0], f"K = {cfg.K}"]
    lines.append(f"grid = {_format_sequence(np.asarray(cfg.grid.times))}")
    lines.append(f"M = {cfg.M}")
    lines.append(f"seed = {cfg.seed}")
    lines.append(f"suite = {cfg.suite}")
    lines.append(f"out = {cfg.out}")
    lines.extend(model_lines[2:])
    if cfg.lambda2 is not None:
        lines.append(f"lambda2 = {_format_sequence(cfg.lambda2)}")
    if cfg.unit is not None:
        lines.append(f"unit = {_format_unit(cfg.unit)}")
    lines.append(f"tol_closed_form = {_format_float(cfg.tol_closed_form)}")
    lines.append(f"tol_sigma = {_format_float(cfg.tol_sigma)}")
    for name in SUITE_NAMES:
        if name in cfg.suite_sigma:
            lines.append(f"tol_sigma_{name} = {_format_float(cfg.suite_sigma[name])}")
    for name in SUITE_NAMES:
        if name in cfg.suite_closed_form:
            lines.append(f"tol_closed_form_{name} = {_format_float(cfg.suite_closed_form[name])}")
    return "\n".join(lines) + "\n"


def load_config(path) -> ExperimentConfig:
    with open(path) as fh:
        return parse_config(fh.read())
