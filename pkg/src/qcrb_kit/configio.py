"""JSON configuration schemas for models and measurements.

Model config::

    { "kind": "pure" | "qubit_mixture" | "spectral",
      "dim": n,
      "psi1": {"name": "rotation" | "complex-rotation" | "random", "params": []},
      "weight": {"form": "constant" | "sine" | "logistic", "params": [...]},
      "seed": int,
      "theta_domain": [lo, hi],
      "spectrum": [lam_1, ..., lam_n],   # optional: constant spectrum
      "frame": "random" | "rotation",    # spectral models only
      "fd_step": h }

POVM config::

    { "kind": "basis" | "random" | "explicit",
      "dim": n, "n_effects": k, "seed": s,
      "effects": [[[re, im] | re, ...], ...] }

Parse failures raise ConfigError with the offending field path.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .classical import Povm, basis_povm, random_povm
from .errors import ConfigError, QcrbError
from .models import (
    DEFAULT_FD_STEP,
    ParametricStateModel,
    PureStateModel,
    QubitMixtureModel,
    WeightFunction,
    complex_rotation_family,
    constant_weight,
    fixed_spectrum_model,
    logistic_weight,
    random_pure_family,
    random_spectral_model,
    rotation_family,
    sine_weight,
)


def load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _field(cfg: dict, key: str, where: str, required: bool = True, default=None):
    if key not in cfg:
        if required:
            raise ConfigError(f"{where}: missing field '{key}'")
        return default
    return cfg[key]


def _params(spec: dict, where: str) -> list[float]:
    raw = spec.get("params", [])
    if not isinstance(raw, (list, tuple)):
        raise ConfigError(f"{where}.params: expected a list")
    try:
        return [float(v) for v in raw]
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}.params: non-numeric entry ({exc})") from exc


def _pure_family(spec, seed, dim, where: str):
    if not isinstance(spec, dict):
        raise ConfigError(f"{where}: expected an object with a 'name'")
    name = _field(spec, "name", where)
    if name == "rotation":
        return rotation_family()
    if name == "complex-rotation":
        return complex_rotation_family()
    if name == "random":
        if seed is None:
            raise ConfigError(f"{where}: family 'random' needs a top-level 'seed'")
        if dim is None:
            raise ConfigError(f"{where}: family 'random' needs a top-level 'dim'")
        return random_pure_family(int(seed), int(dim))
    raise ConfigError(f"{where}.name: unknown family {name!r}")


def _weight(spec, where: str) -> WeightFunction:
    if not isinstance(spec, dict):
        raise ConfigError(f"{where}: expected an object with a 'form'")
    form = _field(spec, "form", where)
    params = _params(spec, where)
    try:
        if form == "constant":
            if len(params) != 1:
                raise ConfigError(f"{where}.params: 'constant' takes exactly [w]")
            return constant_weight(params[0])
        if form == "sine":
            return sine_weight(*params[:1])
        if form == "logistic":
            return logistic_weight(*params[:2])
    except QcrbError as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    raise ConfigError(f"{where}.form: unknown form {form!r}")


def model_from_config(cfg: dict, fd_step: float | None = None) -> ParametricStateModel:
    if not isinstance(cfg, dict):
        raise ConfigError("model: expected a JSON object")
    kind = _field(cfg, "kind", "model")
    seed = cfg.get("seed")
    dim = cfg.get("dim")
    domain = cfg.get("theta_domain", (-math.inf, math.inf))
    if not (isinstance(domain, (list, tuple)) and len(domain) == 2):
        raise ConfigError("model.theta_domain: expected [lo, hi]")
    step = fd_step if fd_step is not None else cfg.get("fd_step", DEFAULT_FD_STEP)
    common = {"domain": (float(domain[0]), float(domain[1])), "fd_step": float(step)}
    if kind == "pure":
        family = _pure_family(_field(cfg, "psi1", "model"), seed, dim, "model.psi1")
        return PureStateModel(family, **common)
    if kind == "qubit_mixture":
        family = _pure_family(_field(cfg, "psi1", "model"), seed, 2, "model.psi1")
        weight = _weight(_field(cfg, "weight", "model"), "model.weight")
        return QubitMixtureModel(family, weight, **common)
    if kind == "spectral":
        if "spectrum" in cfg:
            spectrum = cfg["spectrum"]
            if not isinstance(spectrum, (list, tuple)) or not spectrum:
                raise ConfigError("model.spectrum: expected a nonempty list")
            total = float(np.sum(np.asarray(spectrum, dtype=float)))
            if abs(total - 1.0) > 1e-10:
                raise ConfigError(f"model.spectrum: entries sum to {total!r}, expected 1")
            frame = cfg.get("frame", "random")
            try:
                return fixed_spectrum_model(spectrum, seed=seed, frame=frame, **common)
            except QcrbError as exc:
                raise ConfigError(f"model: {exc}") from exc
        if dim is None:
            raise ConfigError("model.dim: required for spectral models")
        if seed is None:
            raise ConfigError("model.seed: required for random spectral models")
        return random_spectral_model(int(seed), int(dim), **common)
    raise ConfigError(f"model.kind: unknown kind {kind!r}")


def _complex_entry(value, where: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{where}: non-numeric [re, im] pair") from exc
    raise ConfigError(f"{where}: expected a number or [re, im]")


def povm_from_config(cfg: dict) -> Povm:
    if not isinstance(cfg, dict):
        raise ConfigError("povm: expected a JSON object")
    kind = _field(cfg, "kind", "povm")
    if kind == "basis":
        dim = int(_field(cfg, "dim", "povm"))
        return basis_povm(dim)
    if kind == "random":
        dim = int(_field(cfg, "dim", "povm"))
        n_eff = int(_field(cfg, "n_effects", "povm"))
        seed = int(_field(cfg, "seed", "povm"))
        try:
            return random_povm(dim, n_eff, seed)
        except QcrbError as exc:
            raise ConfigError(f"povm: {exc}") from exc
    if kind == "explicit":
        raw = _field(cfg, "effects", "povm")
        if not isinstance(raw, (list, tuple)) or not raw:
            raise ConfigError("povm.effects: expected a nonempty list of matrices")
        mats = []
        for i, rows in enumerate(raw):
            where = f"povm.effects[{i}]"
            if not isinstance(rows, (list, tuple)):
                raise ConfigError(f"{where}: expected a matrix (list of rows)")
            mat = [
                [_complex_entry(v, f"{where}[{r}][{c}]") for c, v in enumerate(row)]
                for r, row in enumerate(rows)
            ]
            mats.append(np.array(mat, dtype=complex))
        try:
            return Povm(mats)
        except QcrbError as exc:
            raise ConfigError(f"povm: {exc}") from exc
    raise ConfigError(f"povm.kind: unknown kind {kind!r}")
