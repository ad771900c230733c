"""Brute-force verifiers for the closed-form optimisers.

The oracles never reuse the closed-form rate code: they rebuild every rate
from the complex channel coefficients (including the destructive phase of the
forwarded copy) and search the feasible decision space exhaustively on a
uniform grid.  The closed-form candidate points are added to each grid, so an
optimum the grid merely brackets is still hit exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import ChannelState, SystemParams, e2e_rate, monitor_rate_mode3, rate_hop2_hybrid
from .optimizers import (
    DegenerateChannelError,
    InfeasibleTargetError,
    min_bob_rate_hybrid,
    optimize_mode2,
    optimize_mode3,
    solve_hybrid_target,
    threshold_noise_power,
)

_LN2 = math.log(2.0)
# exact-gate candidates are perturbed upward by this many relative steps
_NUDGES = 1e-14 * np.arange(1, 9) ** 2


@dataclass(frozen=True)
class GridSpec:
    points_per_axis: int

    def __post_init__(self):
        if int(self.points_per_axis) < 2:
            raise ValueError(f"points_per_axis must be >= 2, got {self.points_per_axis!r}")


GRID_1D = GridSpec(100_000)
GRID_2D = GridSpec(1_000)


def _rate(snr):
    return 0.5 * np.log1p(snr) / _LN2


def _bob_sinr(ch: ChannelState, p: SystemParams, alpha, q2):
    # forwarded coefficient with the destructive phase, applied on complex values
    prod = ch.h_RB * ch.h_AM.conjugate() * ch.h_MB.conjugate()
    phase = prod / abs(prod) if prod != 0 else 1.0
    alpha_hat = -phase * np.asarray(alpha, dtype=float)
    coef = math.sqrt(p.P_R) * ch.h_RB + alpha_hat * math.sqrt(p.P_A) * ch.h_MB * ch.h_AM
    m = abs(ch.h_MB) ** 2
    return np.abs(coef) ** 2 / (m * q2 + np.square(alpha) * m * p.sigma2 + p.sigma2)


def _gate(monitor_rate, comm_rate):
    return np.where(monitor_rate >= comm_rate, comm_rate, 0.0)


def _boost_limit(ch, p):
    """Largest alpha whose forwarded copy does not strengthen Bob's signal.

    Past ``2a/b`` the sign-flipped copy outweighs the relay's signal and the
    monitor acts as a cooperative relay for the suspicious link, not a jammer.
    """
    b = math.sqrt(p.P_A) * abs(ch.h_AM) * abs(ch.h_MB)
    if b == 0:
        return math.inf
    return 2.0 * math.sqrt(p.P_R) * abs(ch.h_RB) / b


def _hybrid_grid(ch, p, n, alpha_cap=math.inf):
    cost = p.P_A * abs(ch.h_AM) ** 2 + p.sigma2
    alpha = np.linspace(0.0, min(math.sqrt(p.Q_max / cost), alpha_cap), n)
    room = np.maximum(p.Q_max - cost * alpha ** 2, 0.0)
    frac = np.linspace(0.0, 1.0, n)
    a = np.repeat(alpha, n)
    q2 = (room[:, None] * frac[None, :]).ravel()
    return a, q2


def _with_nudges(ch, p, alpha, q2):
    """Candidate point plus copies with slightly more AN, kept within budget."""
    cost = p.P_A * abs(ch.h_AM) ** 2 + p.sigma2
    extra = q2 * (1.0 + _NUDGES) + _NUDGES * p.sigma2
    extra = extra[alpha ** 2 * cost + extra <= p.Q_max]
    return np.r_[alpha, np.full(len(extra), alpha)], np.r_[q2, extra]


def brute_force_mode2(ch: ChannelState, p: SystemParams, grid: GridSpec = GRID_1D):
    """Exhaustive search of the noise-jamming eavesdropping rate over ``Q1``.

    Returns ``(Q1_best, rate_best)``; among equal rates the smallest ``Q1``.
    """
    q1 = np.linspace(0.0, p.Q_max, grid.points_per_axis)
    try:
        qt = threshold_noise_power(ch, p)
    except DegenerateChannelError:
        qt = math.inf
    if qt <= p.Q_max:
        near = np.r_[qt, qt * (1.0 + _NUDGES)]
        q1 = np.unique(np.r_[q1, near[near <= p.Q_max]])
    s2 = p.sigma2
    r_relay = _rate(abs(ch.h_AR) ** 2 * p.P_A / (abs(ch.h_MR) ** 2 * q1 + s2))
    r_bob = _rate(abs(ch.h_RB) ** 2 * p.P_R / s2)
    m2 = _rate(abs(ch.h_RM) ** 2 * p.P_R / s2)
    rate = _gate(m2, np.minimum(r_relay, r_bob))
    k = int(np.argmax(rate))
    return float(q1[k]), float(rate[k])


def brute_force_min_bob(ch: ChannelState, p: SystemParams, grid: GridSpec = GRID_2D):
    """Minimum of Bob's hybrid-jamming rate over the feasible ``(alpha, Q2)`` set."""
    a, q2 = _hybrid_grid(ch, p, grid.points_per_axis)
    d, _ = min_bob_rate_hybrid(ch, p)
    a = np.r_[a, d.alpha]
    q2 = np.r_[q2, d.Q2]
    rate = _rate(_bob_sinr(ch, p, a, q2))
    k = int(np.argmin(rate))
    return float(a[k]), float(q2[k]), float(rate[k])


def brute_force_mode3(
    ch: ChannelState, p: SystemParams, grid: GridSpec = GRID_2D, jamming_only: bool = True
):
    """Maximum hybrid-jamming eavesdropping rate over the feasible ``(alpha, Q2)`` set.

    With ``jamming_only`` (the default) the search stops at the boost limit
    ``alpha <= 2a/b``, beyond which forwarding raises Bob's rate above its
    unjammed value.  ``jamming_only=False`` searches the whole budget set and
    can exceed the jamming optimum when Bob's hop is the bottleneck.
    """
    cap = _boost_limit(ch, p) if jamming_only else math.inf
    a, q2 = _hybrid_grid(ch, p, grid.points_per_axis, cap)
    cands_a, cands_q = [np.zeros(1)], [np.zeros(1)]
    d_bar, _ = min_bob_rate_hybrid(ch, p)
    cands_a.append(np.array([d_bar.alpha]))
    cands_q.append(np.array([d_bar.Q2]))
    s2 = p.sigma2
    m3 = _rate(abs(ch.h_AM) ** 2 * p.P_A / s2)
    try:
        d_lvl = solve_hybrid_target(ch, p, monitor_rate_mode3(ch, p))
    except InfeasibleTargetError:
        pass
    else:
        ca, cq = _with_nudges(ch, p, d_lvl.alpha, d_lvl.Q2)
        cands_a.append(ca)
        cands_q.append(cq)
    a = np.concatenate([*cands_a, a])
    q2 = np.concatenate([*cands_q, q2])
    r_relay = _rate(abs(ch.h_AR) ** 2 * p.P_A / s2)
    comm = np.minimum(r_relay, _rate(_bob_sinr(ch, p, a, q2)))
    rate = _gate(m3, comm)
    k = int(np.argmax(rate))
    return float(a[k]), float(q2[k]), float(rate[k])


# --------------------------------------------------------------------------
# randomized regression suite


def random_instance(rng: np.random.Generator) -> tuple[ChannelState, SystemParams]:
    """Log-uniform gains and powers with uniformly random channel phases."""
    mags = np.sqrt(10.0 ** rng.uniform(-2.0, 2.0, 6))
    phases = rng.uniform(0.0, 2.0 * math.pi, 6)
    h = mags * np.exp(1j * phases)
    p = SystemParams(
        P_A=10.0 ** rng.uniform(-1.0, 1.0),
        P_R=10.0 ** rng.uniform(-1.0, 1.0),
        sigma2=10.0 ** rng.uniform(-1.0, 1.0),
        Q_max=10.0 ** rng.uniform(-2.0, 2.0),
    )
    return ChannelState(*(complex(v) for v in h)), p


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    max_error: float = 0.0

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures

    def record(self, index: int, error: float, tol: float, what: str = "") -> None:
        self.checked += 1
        if error > self.max_error:
            self.max_error = error
        if not error <= tol:
            self.failures.append((index, what, error))

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] {self.name}: {self.checked - len(self.failures)}/{self.checked} ok,"
            f" max error {self.max_error:.3e}"
        )


def verify_mode2(instances, rate_tol=1e-6, grid=GridSpec(1_000)) -> tuple[CheckResult, CheckResult]:
    rates = CheckResult("mode II rate vs oracle")
    args = CheckResult("mode II Q1* within one grid step")
    for i, (ch, p) in enumerate(instances):
        out = optimize_mode2(ch, p)
        q_best, r_best = brute_force_mode2(ch, p, grid)
        rates.record(i, abs(out.eavesdropping_rate - r_best), rate_tol)
        if r_best > 0:
            step = p.Q_max / (grid.points_per_axis - 1)
            args.record(i, abs(out.decision.Q1 - q_best), step, "Q1")
    return rates, args


def verify_min_bob(instances, rate_tol=1e-6, power_rtol=1e-12, grid=GridSpec(300)):
    rates = CheckResult("hybrid min Bob rate vs oracle")
    tight = CheckResult("hybrid min-rate design uses the full budget")
    for i, (ch, p) in enumerate(instances):
        d, r_closed = min_bob_rate_hybrid(ch, p)
        _, _, r_grid = brute_force_min_bob(ch, p, grid)
        rates.record(i, abs(r_closed - r_grid), rate_tol)
        tight.record(i, abs(d.power(ch, p) - p.Q_max) / max(p.Q_max, 1e-300), power_rtol)
    return rates, tight


def verify_mode3(instances, rate_tol=1e-6, residual_tol=1e-9, grid=GridSpec(300)):
    rates = CheckResult("mode III rate vs oracle")
    resid = CheckResult("level-set design residual (case 2)")
    for i, (ch, p) in enumerate(instances):
        out = optimize_mode3(ch, p)
        _, _, r_grid = brute_force_mode3(ch, p, grid)
        rates.record(i, abs(out.eavesdropping_rate - r_grid), rate_tol)
        target = monitor_rate_mode3(ch, p)
        if out.success and target < e2e_rate(ch, p):
            resid.record(i, abs(rate_hop2_hybrid(ch, p, out.decision) - target), residual_tol)
    return rates, resid


def run_verification(
    n_instances: int = 200,
    seed: int = 0,
    rate_tol: float = 1e-6,
    residual_tol: float = 1e-9,
    power_rtol: float = 1e-12,
    grid_1d: int = 1_000,
    grid_2d: int = 300,
) -> list[CheckResult]:
    """Closed forms against the oracles on ``n_instances`` random instances."""
    rng = np.random.default_rng(seed)
    instances = [random_instance(rng) for _ in range(n_instances)]
    return [
        *verify_mode2(instances, rate_tol, GridSpec(grid_1d)),
        *verify_min_bob(instances, rate_tol, power_rtol, GridSpec(grid_2d)),
        *verify_mode3(instances, rate_tol, residual_tol, GridSpec(grid_2d)),
    ]
