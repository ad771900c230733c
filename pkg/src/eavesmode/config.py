"""JSON configuration ingestion; the only place dB/dBm values become linear.

Document layout::

    {
      "scenario": {
        "alice": [x, y], "relay": [x, y], "bob": [x, y], "monitor": [x, y],
        "P_A_dBm": 40, "P_R_dBm": 40, "Q_max_dBm": 50, "noise_dBm": -80,
        "path_loss": {"kappa_dB": -60, "d0": 10, "zeta": 3},
        "fading": "awgn" | "rayleigh"
      },
      "region": {"x_range": [lo, hi], "y_range": [lo, hi], "nx": 141, "ny": 121},
      "sweep": {"x_start": 0, "x_stop": 1000, "x_step": 50, "y": 500,
                "trials": 10000, "seed": 2017}
    }

``region`` and ``sweep`` are optional and fall back to the bundled defaults.
``Q_max_dBm`` may be ``-Infinity`` (or the string ``"-inf"``) for a monitor
with no jamming power; every other dB value must be finite.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .experiments import RegionMapSpec, SweepSpec
from .geometry import Fading, PathLossModel, Scenario, db_to_linear, dbm_to_mw
from .model import SystemParams


class ConfigError(ValueError):
    """Invalid configuration; the message names the offending field."""


@dataclass(frozen=True)
class Config:
    scenario: Scenario
    region: RegionMapSpec
    sweep: SweepSpec
    source: str


def default_config_text() -> str:
    return resources.files("eavesmode").joinpath("data/default.json").read_text()


def _get(obj, key, path):
    if not isinstance(obj, dict):
        raise ConfigError(f"{path or 'document'}: expected a JSON object")
    if key not in obj:
        raise ConfigError(f"{path + '.' if path else ''}{key}: required field missing")
    return obj[key]


def _number(obj, key, path, allow_neg_inf=False):
    v = _get(obj, key, path)
    where = f"{path}.{key}"
    if isinstance(v, str) and allow_neg_inf and v.strip().lower() in ("-inf", "-infinity"):
        return -math.inf
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {v!r}")
    v = float(v)
    if math.isnan(v) or (math.isinf(v) and not (allow_neg_inf and v < 0)):
        raise ConfigError(f"{where}: must be finite, got {v!r}")
    return v


def _int(obj, key, path, minimum):
    v = _get(obj, key, path)
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise ConfigError(f"{path}.{key}: expected an integer >= {minimum}, got {v!r}")
    return v


def _point(obj, key, path):
    v = _get(obj, key, path)
    if (
        not isinstance(v, list)
        or len(v) != 2
        or not all(isinstance(c, (int, float)) and not isinstance(c, bool) and math.isfinite(c) for c in v)
    ):
        raise ConfigError(f"{path}.{key}: expected [x, y] with finite numbers, got {v!r}")
    return float(v[0]), float(v[1])


def _range(obj, key, path):
    lo, hi = _point(obj, key, path)
    if not hi > lo:
        raise ConfigError(f"{path}.{key}: range must be increasing, got {[lo, hi]!r}")
    return lo, hi


def parse_scenario(doc: dict) -> Scenario:
    sc = _get(doc, "scenario", "")
    path = "scenario"
    pl = _get(sc, "path_loss", path)
    try:
        model = PathLossModel(
            kappa=db_to_linear(_number(pl, "kappa_dB", path + ".path_loss")),
            d0=_number(pl, "d0", path + ".path_loss"),
            zeta=_number(pl, "zeta", path + ".path_loss"),
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}.path_loss: {exc}") from None
    q_dbm = _number(sc, "Q_max_dBm", path, allow_neg_inf=True)
    params = SystemParams(
        P_A=dbm_to_mw(_number(sc, "P_A_dBm", path)),
        P_R=dbm_to_mw(_number(sc, "P_R_dBm", path)),
        sigma2=dbm_to_mw(_number(sc, "noise_dBm", path)),
        Q_max=0.0 if q_dbm == -math.inf else dbm_to_mw(q_dbm),
    )
    fading = sc.get("fading", "awgn")
    try:
        fading = Fading(str(fading).lower())
    except ValueError:
        raise ConfigError(f"{path}.fading: expected 'awgn' or 'rayleigh', got {fading!r}") from None
    try:
        return Scenario(
            alice=_point(sc, "alice", path),
            relay=_point(sc, "relay", path),
            bob=_point(sc, "bob", path),
            monitor=_point(sc, "monitor", path),
            path_loss=model,
            fading=fading,
            params=params,
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{path}: {exc}") from None


def parse_region(obj: dict, scenario: Scenario) -> RegionMapSpec:
    path = "region"
    base = scenario if scenario.fading is Fading.AWGN else _as_awgn(scenario)
    return RegionMapSpec(
        x_range=_range(obj, "x_range", path),
        y_range=_range(obj, "y_range", path),
        nx=_int(obj, "nx", path, 2),
        ny=_int(obj, "ny", path, 2),
        base=base,
    )


def _as_awgn(s: Scenario) -> Scenario:
    return replace(s, fading=Fading.AWGN)


def parse_sweep(obj: dict) -> SweepSpec:
    path = "sweep"
    start = _number(obj, "x_start", path)
    stop = _number(obj, "x_stop", path)
    step = _number(obj, "x_step", path)
    if not step > 0 or stop < start:
        raise ConfigError(f"{path}: need x_step > 0 and x_stop >= x_start")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    xs = tuple(float(v) for v in start + step * np.arange(n))
    return SweepSpec(
        xs=xs,
        y=_number(obj, "y", path),
        trials=_int(obj, "trials", path, 1),
        seed=_int(obj, "seed", path, 0),
    )


def parse_config(text: str, source: str = "<string>") -> Config:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{source}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    defaults = json.loads(default_config_text())
    scenario = parse_scenario(doc)
    region = parse_region(doc.get("region", defaults["region"]), scenario)
    sweep = parse_sweep(doc.get("sweep", defaults["sweep"]))
    return Config(scenario, region, sweep, source)


def load_config(path: str | Path | None = None) -> Config:
    """Read a config file, or the bundled reference scenario when ``path`` is None."""
    if path is None:
        return parse_config(default_config_text(), "<bundled default.json>")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config ({exc.strerror})") from None
    return parse_config(text, str(path))
