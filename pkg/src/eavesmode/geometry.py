"""Node geometry, path loss and fading: the source of :class:`ChannelState` values."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .model import ChannelState, SystemParams

# Draw order of the six links; every Rayleigh realisation consumes
# 12 standard normals in this order as (re, im) pairs.
LINKS = ("AR", "RB", "AM", "MR", "RM", "MB")


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def dbm_to_mw(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0)


class Fading(str, enum.Enum):
    AWGN = "awgn"
    RAYLEIGH = "rayleigh"


@dataclass(frozen=True)
class PathLossModel:
    """Power gain ``kappa * (d / d0) ** -zeta``."""

    kappa: float
    d0: float
    zeta: float

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError(f"kappa must be > 0, got {self.kappa!r}")
        if not self.d0 > 0:
            raise ValueError(f"d0 must be > 0, got {self.d0!r}")
        if not self.zeta >= 0:
            raise ValueError(f"zeta must be >= 0, got {self.zeta!r}")


def path_loss_gain(d: float, m: PathLossModel) -> float:
    if not d > 0:
        raise ValueError(f"distance must be > 0, got {d!r}")
    return m.kappa * (d / m.d0) ** (-m.zeta)


Point = tuple[float, float]


@dataclass(frozen=True)
class Scenario:
    alice: Point
    relay: Point
    bob: Point
    monitor: Point
    path_loss: PathLossModel
    fading: Fading
    params: SystemParams

    def __post_init__(self):
        object.__setattr__(self, "fading", Fading(self.fading))
        for name in ("alice", "relay", "bob", "monitor"):
            xy = tuple(float(v) for v in getattr(self, name))
            if len(xy) != 2:
                raise ValueError(f"{name} must be an (x, y) pair")
            object.__setattr__(self, name, xy)
        # raises on co-located nodes
        self.distances()

    def with_monitor(self, monitor: Point) -> "Scenario":
        return replace(self, monitor=monitor)

    def distances(self) -> tuple[float, ...]:
        """Link lengths in :data:`LINKS` order."""
        ends = {
            "AR": (self.alice, self.relay),
            "RB": (self.relay, self.bob),
            "AM": (self.alice, self.monitor),
            "MR": (self.monitor, self.relay),
            "RM": (self.relay, self.monitor),
            "MB": (self.monitor, self.bob),
        }
        out = []
        for link in LINKS:
            (x0, y0), (x1, y1) = ends[link]
            d = math.hypot(x1 - x0, y1 - y0)
            if d <= 0:
                raise ValueError(f"link {link} has zero length: nodes are co-located")
            out.append(d)
        return tuple(out)

    def mean_gains(self) -> tuple[float, ...]:
        """Average power gain of each link (the path loss), :data:`LINKS` order."""
        return tuple(path_loss_gain(d, self.path_loss) for d in self.distances())


def awgn_channels(s: Scenario) -> ChannelState:
    """Deterministic channels: real, positive amplitudes from path loss only."""
    return ChannelState.from_gains(*s.mean_gains())


def rayleigh_channels(s: Scenario, rng: np.random.Generator) -> ChannelState:
    """One Rayleigh block-fading realisation, unit-mean fading times path loss."""
    g = np.asarray(s.mean_gains())
    z = rng.standard_normal(12).reshape(6, 2) * math.sqrt(0.5)
    coeffs = np.sqrt(g) * (z[:, 0] + 1j * z[:, 1])
    return ChannelState(*(complex(c) for c in coeffs))


def channels(s: Scenario, rng: np.random.Generator | None = None) -> ChannelState:
    if s.fading is Fading.AWGN:
        return awgn_channels(s)
    if rng is None:
        raise ValueError("a random generator is required for Rayleigh fading")
    return rayleigh_channels(s, rng)


def trial_rng(master_seed: int, *index: int) -> np.random.Generator:
    """Independent stream for one work item, keyed by ``(master_seed, *index)``.

    The stream depends only on the key, never on scheduling, so any number of
    workers reproduces the same draws.
    """
    ss = np.random.SeedSequence(master_seed, spawn_key=tuple(int(i) for i in index))
    return np.random.Generator(np.random.PCG64(ss))


def rayleigh_gain_batch(s: Scenario, master_seed: int, point_index: int, trials: int) -> np.ndarray:
    """``(trials, 6)`` power gains, trial ``t`` drawn from ``trial_rng(seed, point_index, t)``.

    Identical, draw for draw, to calling :func:`rayleigh_channels` with each
    trial's stream.
    """
    amp = np.sqrt(np.asarray(s.mean_gains()))
    out = np.empty((trials, 6))
    half = math.sqrt(0.5)
    for t in range(trials):
        z = trial_rng(master_seed, point_index, t).standard_normal(12).reshape(6, 2) * half
        c = amp * (z[:, 0] + 1j * z[:, 1])
        # Python's complex abs, as in ChannelState.gains, for bit-identical results
        out[t] = [abs(complex(v)) ** 2 for v in c]
    return out
