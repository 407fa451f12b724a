"""Run configuration: task schemas, defaults and validation."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .synthetic import KINDS

TASKS = (
    "specfun-check", "nc-transform", "nc-invert", "nc-plancherel", "nc-cratio", "nc-step2",
    "cp-coeffs", "cp-synth", "sphere-decompose", "sphere-apply", "proj-decompose",
    "chernoff-report",
)
MODELS = ("noncompact", "compact", "sphere", "projective")
FAMILIES = ("real", "complex", "quaternion", "cayley")


class ConfigError(ValueError):
    """Invalid configuration; ``field`` names the offending entry."""

    def __init__(self, field_name, message):
        super().__init__(message)
        self.field = field_name

    def diagnostic(self):
        return f"config error: field={self.field}: {self}"


_NC = {"alpha": 0.5, "beta": 0.5}
_CP = {"alpha": 0.0, "beta": 0.0}

SCHEMAS = {
    "specfun-check": {"alpha": 0.5, "beta": -0.25, "nmax": 8, "order": 12},
    "nc-transform": {**_NC, "width": 1.0, "R": 10.0, "lam_max": 12.0, "n_lam": 121},
    "nc-invert": {**_NC, "kind": "single-mode", "lam_max": 10.0, "lam0": 4.0,
                  "r_max": 5.0, "n_r": 101, "seed": 0},
    "nc-plancherel": {**_NC, "width": 1.0, "R": 12.0, "tol": 1e-12},
    "nc-cratio": {**_NC, "p": 2, "q": 0, "lam_min": 0.01, "lam_max": 1000.0, "n_lam": 200},
    "nc-step2": {**_NC, "p": 2, "q": 0, "m_max": 3, "n_inputs": 50, "lam_max": 10.0, "seed": 0},
    "cp-coeffs": {**_CP, "N": 20, "kind": "band-limited-random", "n": 3, "seed": 0},
    "cp-synth": {**_CP, "N": 20, "kind": "band-limited-random", "n": 3, "n_plot": 201, "seed": 0},
    "sphere-decompose": {"q": 2, "deg_max": 5, "kind": "band-limited-random", "seed": 0},
    "sphere-apply": {"q": 2, "deg_max": 5, "m": 1, "kind": "band-limited-random", "seed": 0},
    "proj-decompose": {"family": "complex", "l": 3, "deg_max": 3,
                       "kind": "band-limited-random", "seed": 0},
    "chernoff-report": {"model": "sphere", "kind": "band-limited-random", "M": 20, "M_jet": 8,
                        "tol": 1e-10, "alpha": 0.5, "beta": 0.5, "N": 20, "lam_max": 10.0,
                        "q": 2, "deg_max": 4, "family": "complex", "l": 3, "seed": 0},
}
IO_KEYS = {"fiber_table": None, "plots": True}


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def _coerce(name, value, default):
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(name, f"{name} must be a boolean")
        return value
    if _is_int(default):
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        if not _is_int(value):
            raise ConfigError(name, f"{name} must be an integer (got {value!r})")
        return value
    if isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(name, f"{name} must be a number (got {value!r})")
        return float(value)
    if not isinstance(value, str):
        raise ConfigError(name, f"{name} must be a string (got {value!r})")
    return value


def _require(cond, name, message):
    if not cond:
        raise ConfigError(name, message)


def _check_ranges(task, p):
    if "alpha" in p:
        _require(p["alpha"] > -1, "alpha", f"alpha out of range (got {p['alpha']}, require > -1)")
    if "beta" in p:
        noncompact = task.startswith("nc-") or (task == "chernoff-report" and p["model"] == "noncompact")
        if noncompact:
            _require(abs(p["beta"]) <= p["alpha"] + 1, "beta",
                     f"beta out of range (got {p['beta']}, require |beta| <= alpha + 1)")
        else:
            _require(p["beta"] > -1, "beta", f"beta out of range (got {p['beta']}, require > -1)")
    if "q" in p and task != "nc-cratio" and task != "nc-step2":
        _require(p["q"] >= 2, "q", f"q out of range (got {p['q']}, require >= 2)")
    if task in ("nc-cratio", "nc-step2"):
        s, d = p["p"] + p["q"], p["p"] - p["q"]
        _require(s >= 0 and d >= 0 and s % 2 == 0, "p",
                 f"K-type out of range (got p={p['p']}, q={p['q']}; need (p+-q)/2 nonnegative integers)")
    if "kind" in p:
        _require(p["kind"] in KINDS, "kind", f"kind out of range (got {p['kind']!r}, choose from {', '.join(KINDS)})")
    if "model" in p:
        _require(p["model"] in MODELS, "model", f"model out of range (got {p['model']!r})")
    if "family" in p:
        _require(p["family"] in FAMILIES, "family", f"family out of range (got {p['family']!r})")
        uses_proj = task == "proj-decompose" or p.get("model") == "projective"
        if uses_proj:
            fam, l = p["family"], p["l"]
            ok = {"real": l >= 2, "complex": l >= 2, "quaternion": l >= 2, "cayley": l == 2}[fam]
            _require(ok, "l", f"l out of range for family {fam} (got {l})")
    for name in ("N", "nmax", "deg_max", "m", "m_max"):
        if name in p:
            _require(p[name] >= 0, name, f"{name} out of range (got {p[name]}, require >= 0)")
    for name in ("order", "M", "n_inputs", "n_lam", "n_r", "n_plot"):
        if name in p:
            _require(p[name] >= 1, name, f"{name} out of range (got {p[name]}, require >= 1)")
    if "M_jet" in p:
        _require(p["M_jet"] >= 0, "M_jet", f"M_jet out of range (got {p['M_jet']})")
    for name in ("lam_max", "R", "r_max", "width", "tol", "lam_min"):
        if name in p:
            _require(p[name] > 0, name, f"{name} out of range (got {p[name]}, require > 0)")
    if "seed" in p:
        _require(0 <= p["seed"] < 2**64, "seed", f"seed out of range (got {p['seed']}, require u64)")


@dataclass
class RunConfig:
    task: str
    params: dict
    io: dict = field(default_factory=dict)

    def echo(self):
        return {"task": self.task, "params": dict(self.params), "io": dict(self.io)}


def validate(task, raw: dict, seed=None) -> RunConfig:
    """Fill defaults, check types and ranges; raise ConfigError on the first problem."""
    _require(task in TASKS, "task", f"task out of range (got {task!r})")
    _require(isinstance(raw, dict), "config", "config must be a JSON object")
    if "task" in raw:
        _require(raw["task"] == task, "task", f"task mismatch (config says {raw['task']!r})")
    io_raw = raw.get("io", {}) or {}
    if "params" in raw:
        params_raw = raw["params"]
        extra = set(raw) - {"task", "params", "io"}
        _require(not extra, sorted(extra)[0] if extra else "", "unknown top-level field")
    else:
        params_raw = {k: v for k, v in raw.items() if k not in ("task", "io")}
    schema = SCHEMAS[task]
    for name in params_raw:
        _require(name in schema, name, f"unknown field {name!r} for task {task}")
    params = {name: _coerce(name, params_raw.get(name, d), d) for name, d in schema.items()}
    if seed is not None:
        _require("seed" in schema, "seed", f"task {task} takes no seed")
        params["seed"] = int(seed)
    io = dict(IO_KEYS)
    for name, v in io_raw.items():
        _require(name in IO_KEYS, name, f"unknown io field {name!r}")
        io[name] = v
    _check_ranges(task, params)
    return RunConfig(task, params, io)


def load(task, path, seed=None) -> RunConfig:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError("config", f"cannot read config: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON at line {exc.lineno}") from None
    return validate(task, raw, seed)
