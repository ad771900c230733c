"""Region maps, fading sweeps and single-scenario diagnostics."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _core, kernel
from .geometry import Fading, Scenario, channels, rayleigh_gain_batch, trial_rng
from .model import (
    Mode,
    NoiseJamDecision,
    monitor_rate_mode1,
    monitor_rate_mode2,
    monitor_rate_mode3,
    rate_hop1,
    rate_hop2_plain,
)
from .optimizers import SelectionResult, min_bob_rate_hybrid, select_mode

NO_EAVESDROPPING = 0
INVALID = -1
MODE_LABELS = {INVALID: "invalid", NO_EAVESDROPPING: "none", 1: "I", 2: "II", 3: "III"}

WORKERS_ENV = "EAVESMODE_WORKERS"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


# --------------------------------------------------------------------------
# region map


@dataclass(frozen=True)
class RegionMapSpec:
    x_range: tuple[float, float]
    y_range: tuple[float, float]
    nx: int
    ny: int
    base: Scenario

    def __post_init__(self):
        for name in ("x_range", "y_range"):
            lo, hi = getattr(self, name)
            if not hi > lo:
                raise ValueError(f"{name} must be increasing, got {(lo, hi)!r}")
        if self.nx < 2 or self.ny < 2:
            raise ValueError(f"resolution must be >= 2 per axis, got {self.nx}x{self.ny}")
        if self.base.fading is not Fading.AWGN:
            raise ValueError("region maps are defined for AWGN channels")

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(*self.x_range, self.nx)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(*self.y_range, self.ny)


@dataclass(frozen=True)
class RegionMap:
    xs: np.ndarray
    ys: np.ndarray
    mode: np.ndarray  # (ny, nx): 1-3, NO_EAVESDROPPING or INVALID
    rate: np.ndarray  # (ny, nx), NaN on invalid cells
    mode_rates: np.ndarray  # (ny, nx, 3) per-mode optimal rates, NaN on invalid cells

    def rows(self):
        for j, y in enumerate(self.ys):
            for i, x in enumerate(self.xs):
                yield float(x), float(y), MODE_LABELS[int(self.mode[j, i])], float(self.rate[j, i])

    def modes_present(self) -> set[int]:
        return set(np.unique(self.mode).tolist())


def _path_loss(d, s: Scenario):
    pl = s.path_loss
    return pl.kappa * (d / pl.d0) ** (-pl.zeta)


def region_map(spec: RegionMapSpec, backend: str | None = None) -> RegionMap:
    """Best mode and rate at every monitor position of an AWGN grid.

    A monitor placed exactly on Alice, the relay or Bob yields an
    ``INVALID`` cell instead of an error.
    """
    s = spec.base
    X, Y = np.meshgrid(spec.xs, spec.ys)
    mx, my = X.ravel(), Y.ravel()

    def dist(node):
        return np.hypot(mx - node[0], my - node[1])

    d_am, d_rm, d_mb = dist(s.alice), dist(s.relay), dist(s.bob)
    valid = (d_am > 0) & (d_rm > 0) & (d_mb > 0)
    g_ar, g_rb = s.mean_gains()[:2]
    n = int(valid.sum())
    gains = np.empty((n, 6))
    gains[:, 0] = g_ar
    gains[:, 1] = g_rb
    gains[:, 2] = _path_loss(d_am[valid], s)
    gains[:, 3] = _path_loss(d_rm[valid], s)
    gains[:, 4] = gains[:, 3]
    gains[:, 5] = _path_loss(d_mb[valid], s)

    rates = kernel.mode_rates(gains, s.params, backend)
    best, best_rate = kernel.best_modes(rates)
    mode = np.full(mx.shape, INVALID, dtype=int)
    rate = np.full(mx.shape, np.nan)
    per_mode = np.full((mx.size, 3), np.nan)
    mode[valid] = np.where(best_rate > 0, best, NO_EAVESDROPPING)
    rate[valid] = best_rate
    per_mode[valid] = rates
    return RegionMap(
        spec.xs, spec.ys, mode.reshape(X.shape), rate.reshape(X.shape), per_mode.reshape(*X.shape, 3)
    )


# --------------------------------------------------------------------------
# fading sweep


@dataclass(frozen=True)
class SweepSpec:
    xs: tuple[float, ...]
    y: float
    trials: int
    seed: int

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials!r}")
        if len(self.xs) == 0:
            raise ValueError("sweep needs at least one monitor x position")


@dataclass(frozen=True)
class SweepRow:
    x: float
    avg_rate_I: float
    avg_rate_II: float
    avg_rate_III: float
    avg_rate_selected: float

    @property
    def mode_averages(self) -> tuple[float, float, float]:
        return self.avg_rate_I, self.avg_rate_II, self.avg_rate_III


def _sweep_point(args) -> SweepRow:
    scenario, spec, index, backend = args
    x = spec.xs[index]
    s = scenario.with_monitor((x, spec.y))
    gains = rayleigh_gain_batch(s, spec.seed, index, spec.trials)
    rates = kernel.mode_rates(gains, s.params, backend)
    avg = rates.mean(axis=0)
    return SweepRow(float(x), float(avg[0]), float(avg[1]), float(avg[2]), float(rates.max(axis=1).mean()))


def fading_sweep(
    spec: SweepSpec, scenario: Scenario, workers: int | None = None, backend: str | None = None
) -> list[SweepRow]:
    """Average per-mode and selected eavesdropping rates along a horizontal line.

    Trial ``t`` at position index ``i`` draws from ``trial_rng(seed, i, t)``,
    and each position is reduced by a single worker, so results do not depend
    on ``workers``.
    """
    workers = default_workers() if workers is None else max(1, workers)
    jobs = [(scenario, spec, i, backend) for i in range(len(spec.xs))]
    if workers == 1 or len(jobs) == 1:
        return [_sweep_point(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_point, jobs))


# --------------------------------------------------------------------------
# single scenario


@dataclass(frozen=True)
class Evaluation:
    selection: SelectionResult
    diagnostics: dict


def _finite_or_none(v: float):
    return v if math.isfinite(v) else None


def _decision_dict(d):
    if d is None:
        return None
    if isinstance(d, NoiseJamDecision):
        return {"Q1": d.Q1}
    return {"alpha": d.alpha, "Q2": d.Q2}


def evaluate_single(s: Scenario, seed: int = 0) -> Evaluation:
    """Select the best mode for one scenario and expose every intermediate quantity.

    For Rayleigh scenarios the realisation is drawn from ``trial_rng(seed, 0)``.
    Unbounded thresholds are reported as ``None``.
    """
    rng = trial_rng(seed, 0) if s.fading is Fading.RAYLEIGH else None
    ch = channels(s, rng)
    p = s.params
    sel = select_mode(ch, p)
    g_ar, g_rb, g_am, g_mr, g_rm, g_mb = ch.gains()
    d_bar, r_bob_min = min_bob_rate_hybrid(ch, p)
    a = math.sqrt(p.P_R * g_rb)
    b = math.sqrt(p.P_A * g_am * g_mb)
    diag = {
        "scenario": {
            "alice": list(s.alice),
            "relay": list(s.relay),
            "bob": list(s.bob),
            "monitor": list(s.monitor),
            "fading": s.fading.value,
        },
        "params_mW": {"P_A": p.P_A, "P_R": p.P_R, "sigma2": p.sigma2, "Q_max": p.Q_max},
        "gains": dict(zip(("AR", "RB", "AM", "MR", "RM", "MB"), (g_ar, g_rb, g_am, g_mr, g_rm, g_mb))),
        "rates": {
            "r_R": rate_hop1(ch, p),
            "r_B": rate_hop2_plain(ch, p),
            "r_M_I": monitor_rate_mode1(ch, p),
            "r_M_II": monitor_rate_mode2(ch, p),
            "r_M_III": monitor_rate_mode3(ch, p),
        },
        "thresholds": {
            "Q1_tilde": _finite_or_none(
                _core.noise_threshold(g_ar, g_mr, g_rm, p.P_A, p.P_R, p.sigma2)
            ),
            "alpha_budget": math.sqrt(p.Q_max / (p.P_A * g_am + p.sigma2)),
            "alpha_cancel": _finite_or_none(a / b) if b > 0 else None,
            "alpha_stationary": _finite_or_none((p.sigma2 + p.Q_max * g_mb) / (a * b))
            if a * b > 0
            else None,
            "alpha_bar": d_bar.alpha,
            "Q2_bar": d_bar.Q2,
            "r_B_min": r_bob_min,
        },
        "modes": {
            Mode(o.mode).label: {
                "eavesdropping_rate": o.eavesdropping_rate,
                "comm_rate_under_jamming": o.comm_rate_under_jamming,
                "success": o.success,
                "decision": _decision_dict(o.decision),
            }
            for o in sel.outcomes
        },
        "best_mode": sel.best_mode.label,
        "best_rate": sel.best_rate,
        "eavesdropping_possible": sel.best_rate > 0,
    }
    return Evaluation(sel, diag)
