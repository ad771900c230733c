"""Per-mode jamming optimisation and eavesdropping-mode selection."""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _core
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

# Slack allowed when the closed-form minimum-power design lands a hair above
# the budget purely through rounding.
_TARGET_TOL = 1e-9


class DegenerateChannelError(ValueError):
    """A required jamming threshold is unbounded (jamming cannot help)."""


class InfeasibleTargetError(ValueError):
    """Bob's rate cannot be steered to the requested value within the budget."""


@dataclass(frozen=True)
class SelectionResult:
    best_mode: Mode
    outcomes: tuple[ModeOutcome, ModeOutcome, ModeOutcome]
    best_rate: float

    def outcome(self, mode: Mode) -> ModeOutcome:
        return self.outcomes[int(mode) - 1]

    @property
    def rates(self) -> tuple[float, float, float]:
        return tuple(o.eavesdropping_rate for o in self.outcomes)


def passive_mode(ch: ChannelState, p: SystemParams) -> ModeOutcome:
    r_e2e = min(rate_hop1(ch, p), rate_hop2_plain(ch, p))
    m1 = monitor_rate_mode1(ch, p)
    rate = eavesdrop_gate(m1, r_e2e)
    return ModeOutcome(Mode.I, rate, None, r_e2e, m1 >= r_e2e)


def threshold_noise_power(ch: ChannelState, p: SystemParams) -> float:
    """Minimum hop-1 AN power that equalises the relay rate and the monitor's hop-2 rate.

    Raises
    ------
    DegenerateChannelError
        If jamming is needed but the monitor-relay link is dead in either
        direction, so no finite power suffices.
    """
    g_ar, _, _, g_mr, g_rm, _ = ch.gains()
    q = _core.noise_threshold(g_ar, g_mr, g_rm, p.P_A, p.P_R, p.sigma2)
    if math.isinf(q):
        raise DegenerateChannelError(
            "relay rate exceeds the monitor's hop-2 rate but |h_MR| or |h_RM| is zero"
        )
    return q


def optimize_mode2(ch: ChannelState, p: SystemParams) -> ModeOutcome:
    """Optimal noise jamming over hop 1.

    Jam just enough to pull the relay's rate down to what the monitor can
    decode from the relay's retransmission; jamming harder only lowers the
    intercepted rate.
    """
    r_r = rate_hop1(ch, p)
    r_b = rate_hop2_plain(ch, p)
    r_e2e = min(r_r, r_b)
    m2 = monitor_rate_mode2(ch, p)
    if m2 >= r_e2e:
        return ModeOutcome(Mode.II, r_e2e, NoiseJamDecision(0.0), r_e2e, True)
    try:
        q_tilde = threshold_noise_power(ch, p)
    except DegenerateChannelError:
        q_tilde = math.inf
    if p.Q_max >= q_tilde:
        comm = min(rate_hop1(ch, p, q_tilde), r_b)
        return ModeOutcome(Mode.II, m2, NoiseJamDecision(q_tilde), comm, True)
    return ModeOutcome(Mode.II, 0.0, NoiseJamDecision(0.0), r_e2e, False)


def min_bob_rate_hybrid(ch: ChannelState, p: SystemParams) -> tuple[HybridJamDecision, float]:
    """Hybrid design minimising Bob's rate; the budget is always spent in full."""
    _, g_rb, g_am, _, _, g_mb = ch.gains()
    alpha, q2, rate = _core.hybrid_min(g_rb, g_am, g_mb, p.P_A, p.P_R, p.sigma2, p.Q_max)
    return HybridJamDecision(alpha, q2), rate


def _min_power_on_level_set(ch: ChannelState, p: SystemParams, gamma: float) -> HybridJamDecision:
    # On the level set {SINR_B = gamma} the AN power is an explicit function of
    # alpha, and the total power reduces to the convex quadratic
    #   T(al) = x al^2 + ((a - b al)^2 / gamma - s2) / m,
    # minimised at al = a / (b (1 + gamma)).  AN power must stay >= 0, which
    # confines al to the sublevel set of a quadratic g(al) >= 0 with g(0) >= 0.
    _, g_rb, g_am, _, _, g_mb = ch.gains()
    s2 = p.sigma2
    x = p.P_A * g_am
    m = g_mb
    a = math.sqrt(p.P_R * g_rb)
    b = math.sqrt(p.P_A * g_am * g_mb)

    def q2_of(al):
        return ((a - b * al) ** 2 / gamma - s2 * (1.0 + m * al * al)) / m

    def total(al):
        return x * al * al + ((a - b * al) ** 2 / gamma - s2) / m

    quad = m * (x - gamma * s2)
    const = a * a - gamma * s2
    disc = a * a * b * b - quad * const
    if disc < 0.0:
        intervals = [(0.0, math.inf)]
    else:
        q = a * b + math.sqrt(disc)
        lo_root = const / q if q > 0.0 else math.inf
        intervals = [(0.0, lo_root)]
        if quad > 0.0:
            intervals.append((q / quad, math.inf))

    al_free = a / (b * (1.0 + gamma)) if b > 0.0 else 0.0
    candidates = [min(max(al_free, lo), hi) for lo, hi in intervals]
    alpha = min(candidates, key=lambda al: (total(al), al))
    return HybridJamDecision(alpha, max(q2_of(alpha), 0.0))


def _nudge_below(ch, p, d, target):
    # Rounding can leave Bob a few ulps above the target, which would make the
    # exact decoding gate fail.  Add just enough AN to fall back under it.
    if rate_hop2_hybrid(ch, p, d) <= target:
        return d
    step = 1e-15 * max(d.Q2, p.sigma2 / max(abs(ch.h_MB) ** 2, 1e-300))
    q2 = d.Q2
    for _ in range(64):
        q2 += step
        step *= 2.0
        cand = HybridJamDecision(d.alpha, q2)
        if rate_hop2_hybrid(ch, p, cand) <= target:
            return cand
    return d


def solve_hybrid_target(ch: ChannelState, p: SystemParams, target_rate: float) -> HybridJamDecision:
    """Cheapest hybrid design that drives Bob's rate to exactly ``target_rate``.

    Among the (generally many) designs on the level set, the one with the
    least total monitor power is returned; ties go to the smaller ``alpha``.
    Bob's resulting rate is within 1e-9 bps/Hz of the target and never above
    it, so a monitor decoding at ``target_rate`` succeeds.

    Raises
    ------
    InfeasibleTargetError
        If ``target_rate`` lies outside ``[min_bob_rate_hybrid, r_B]``.
    """
    r_b = rate_hop2_plain(ch, p)
    full_budget_decision, r_min = min_bob_rate_hybrid(ch, p)
    if target_rate > r_b or target_rate < r_min:
        raise InfeasibleTargetError(
            f"target {target_rate!r} outside achievable range [{r_min!r}, {r_b!r}]"
        )
    if target_rate == r_b:
        return HybridJamDecision(0.0, 0.0)
    if target_rate == r_min:
        return full_budget_decision
    gamma = math.expm1(2.0 * target_rate * math.log(2.0))
    d = _min_power_on_level_set(ch, p, gamma)
    if d.power(ch, p) > p.Q_max:
        if target_rate - r_min <= _TARGET_TOL:
            return full_budget_decision
        raise InfeasibleTargetError(
            f"minimum-power design for target {target_rate!r} needs {d.power(ch, p)!r} > Q_max"
        )
    d = _nudge_below(ch, p, d, target_rate)
    if not d.is_feasible(ch, p, rtol=0.0) and target_rate - r_min <= _TARGET_TOL:
        return full_budget_decision
    return d


def optimize_mode3(ch: ChannelState, p: SystemParams) -> ModeOutcome:
    """Optimal hybrid jamming over hop 2.

    If the monitor already decodes hop 1 it stays silent; otherwise it
    forwards destructively plus AN so that Bob's rate lands exactly on the
    monitor's hop-1 rate, provided the budget can push Bob that low.
    """
    r_r = rate_hop1(ch, p)
    r_b = rate_hop2_plain(ch, p)
    r_e2e = min(r_r, r_b)
    m3 = monitor_rate_mode3(ch, p)
    silent = HybridJamDecision(0.0, 0.0)
    if m3 >= r_e2e:
        return ModeOutcome(Mode.III, r_e2e, silent, r_e2e, True)
    _, r_min = min_bob_rate_hybrid(ch, p)
    if r_min <= m3:
        d = solve_hybrid_target(ch, p, m3)
        comm = min(r_r, rate_hop2_hybrid(ch, p, d))
        return ModeOutcome(Mode.III, m3, d, comm, True)
    return ModeOutcome(Mode.III, 0.0, silent, r_e2e, False)


def select_mode(ch: ChannelState, p: SystemParams) -> SelectionResult:
    """Run all three modes and keep the best; ties go to the lower mode."""
    outcomes = (passive_mode(ch, p), optimize_mode2(ch, p), optimize_mode3(ch, p))
    best = outcomes[0]
    for o in outcomes[1:]:
        if o.eavesdropping_rate > best.eavesdropping_rate:
            best = o
    return SelectionResult(best.mode, outcomes, best.eavesdropping_rate)
