"""Legitimate eavesdropping of a two-hop (Alice -> relay -> Bob) suspicious link.

A half-duplex monitor can overhear both hops passively (mode I), jam the relay
with noise during hop 1 (mode II), or forward a destructive copy plus noise
toward Bob during hop 2 (mode III).  This package solves each mode's jamming
power allocation in closed form, picks the best mode, and reproduces the
AWGN region map and Rayleigh Monte-Carlo sweep.
"""

from .model import (
    ChannelState,
    HybridJamDecision,
    Mode,
    ModeOutcome,
    NoiseJamDecision,
    SystemParams,
    eavesdrop_gate,
    monitor_rate_mode1,
    monitor_rate_mode2,
    monitor_rate_mode3,
    rate_hop1,
    rate_hop2_hybrid,
    rate_hop2_plain,
)
from .optimizers import (
    DegenerateChannelError,
    InfeasibleTargetError,
    SelectionResult,
    min_bob_rate_hybrid,
    optimize_mode2,
    optimize_mode3,
    passive_mode,
    select_mode,
    solve_hybrid_target,
    threshold_noise_power,
)
from .geometry import (
    Fading,
    PathLossModel,
    Scenario,
    awgn_channels,
    path_loss_gain,
    rayleigh_channels,
    trial_rng,
)

__version__ = "0.1.0"
