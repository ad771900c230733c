"""Channel/power types and the achievable-rate formulas of the two-hop link.

Every rate is in bps/Hz and carries the 1/2 pre-log factor: each hop of the
half-duplex relay link occupies half of the time-frequency slot.  Powers are
linear (mW) throughout; dB/dBm conversion happens only at config ingestion.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

from ._core import half_log2_1p, hybrid_sinr


class Mode(enum.IntEnum):
    """Eavesdropping modes, ordered by preference on ties."""

    I = 1  # passive, MRC over both hops
    II = 2  # noise jamming over hop 1
    III = 3  # hybrid jamming over hop 2

    @property
    def label(self) -> str:
        return self.name


@dataclass(frozen=True)
class ChannelState:
    """The six complex channel coefficients of the surveillance scenario.

    Naming follows ``h_XY`` = channel from X to Y, with A = Alice, R = relay,
    B = Bob, M = monitor.
    """

    h_AR: complex
    h_RB: complex
    h_AM: complex
    h_MR: complex
    h_RM: complex
    h_MB: complex

    def __post_init__(self):
        for name in ("h_AR", "h_RB", "h_AM", "h_MR", "h_RM", "h_MB"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)

    @classmethod
    def from_gains(cls, g_AR, g_RB, g_AM, g_MR, g_RM, g_MB) -> "ChannelState":
        """Build a zero-phase state from squared magnitudes (power gains)."""
        return cls(*(complex(math.sqrt(g)) for g in (g_AR, g_RB, g_AM, g_MR, g_RM, g_MB)))

    def gains(self) -> tuple[float, float, float, float, float, float]:
        """Squared magnitudes in field order."""
        return (
            abs(self.h_AR) ** 2,
            abs(self.h_RB) ** 2,
            abs(self.h_AM) ** 2,
            abs(self.h_MR) ** 2,
            abs(self.h_RM) ** 2,
            abs(self.h_MB) ** 2,
        )


@dataclass(frozen=True)
class SystemParams:
    """Fixed suspicious transmit powers, noise power and monitor budget (mW)."""

    P_A: float
    P_R: float
    sigma2: float
    Q_max: float

    def __post_init__(self):
        for name in ("P_A", "P_R", "sigma2"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and > 0, got {v!r}")
            object.__setattr__(self, name, v)
        q = float(self.Q_max)
        if not (math.isfinite(q) and q >= 0):
            raise ValueError(f"Q_max must be finite and >= 0, got {q!r}")
        object.__setattr__(self, "Q_max", q)

    def with_budget(self, Q_max: float) -> "SystemParams":
        return SystemParams(self.P_A, self.P_R, self.sigma2, Q_max)


@dataclass(frozen=True)
class NoiseJamDecision:
    """Artificial-noise power the monitor sends at the relay during hop 1."""

    Q1: float

    def __post_init__(self):
        if not self.Q1 >= 0:
            raise ValueError(f"Q1 must be >= 0, got {self.Q1!r}")


@dataclass(frozen=True)
class HybridJamDecision:
    """Hybrid jamming design over hop 2.

    ``alpha`` is the magnitude of the amplify-and-forward coefficient; its
    phase is always the destructive one, so it is never stored.  ``Q2`` is the
    artificial-noise power added on top of the forwarded signal.
    """

    alpha: float
    Q2: float

    def __post_init__(self):
        if not (self.alpha >= 0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be finite and >= 0, got {self.alpha!r}")
        if not (self.Q2 >= 0 and math.isfinite(self.Q2)):
            raise ValueError(f"Q2 must be finite and >= 0, got {self.Q2!r}")

    def power(self, ch: ChannelState, p: SystemParams) -> float:
        """Total monitor transmit power of this design."""
        return self.alpha ** 2 * (p.P_A * abs(ch.h_AM) ** 2 + p.sigma2) + self.Q2

    def is_feasible(self, ch: ChannelState, p: SystemParams, rtol: float = 1e-12) -> bool:
        return self.power(ch, p) <= p.Q_max * (1.0 + rtol)


Decision = Union[NoiseJamDecision, HybridJamDecision]


@dataclass(frozen=True)
class ModeOutcome:
    mode: Mode
    eavesdropping_rate: float
    decision: Optional[Decision]
    comm_rate_under_jamming: float
    success: bool


def rate_hop1(ch: ChannelState, p: SystemParams, Q1: float = 0.0) -> float:
    """Relay rate under hop-1 noise jamming of power ``Q1`` (``Q1=0``: unjammed)."""
    if Q1 < 0:
        raise ValueError(f"Q1 must be >= 0, got {Q1!r}")
    sinr = abs(ch.h_AR) ** 2 * p.P_A / (abs(ch.h_MR) ** 2 * Q1 + p.sigma2)
    return half_log2_1p(sinr)


def rate_hop2_plain(ch: ChannelState, p: SystemParams) -> float:
    return half_log2_1p(abs(ch.h_RB) ** 2 * p.P_R / p.sigma2)


def sinr_hop2_hybrid(ch: ChannelState, p: SystemParams, d: HybridJamDecision) -> float:
    """Bob's SINR when the monitor forwards destructively with ``d.alpha`` plus AN ``d.Q2``.

    The forwarded copy carries Alice's signal and the monitor's own receiver
    noise; both reach Bob through ``h_MB``.
    """
    return hybrid_sinr(
        abs(ch.h_RB) ** 2, abs(ch.h_AM) ** 2, abs(ch.h_MB) ** 2,
        p.P_A, p.P_R, p.sigma2, d.alpha, d.Q2,
    )


def rate_hop2_hybrid(ch: ChannelState, p: SystemParams, d: HybridJamDecision) -> float:
    return half_log2_1p(sinr_hop2_hybrid(ch, p, d))


def monitor_rate_mode1(ch: ChannelState, p: SystemParams) -> float:
    """MRC rate from overhearing Alice (hop 1) and the relay (hop 2)."""
    return half_log2_1p((p.P_A * abs(ch.h_AM) ** 2 + p.P_R * abs(ch.h_RM) ** 2) / p.sigma2)


def monitor_rate_mode2(ch: ChannelState, p: SystemParams) -> float:
    return half_log2_1p(abs(ch.h_RM) ** 2 * p.P_R / p.sigma2)


def monitor_rate_mode3(ch: ChannelState, p: SystemParams) -> float:
    return half_log2_1p(abs(ch.h_AM) ** 2 * p.P_A / p.sigma2)


def e2e_rate(ch: ChannelState, p: SystemParams) -> float:
    """Unjammed end-to-end rate ``min(r_R, r_B)``."""
    return min(rate_hop1(ch, p), rate_hop2_plain(ch, p))


def eavesdrop_gate(monitor_rate: float, comm_rate: float) -> float:
    """Eavesdropping rate: ``comm_rate`` if the monitor can decode it, else 0.

    Equality counts as successful decoding.
    """
    return comm_rate if monitor_rate >= comm_rate else 0.0
