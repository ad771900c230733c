import math

import numpy as np
import pytest

from conftest import make_channel, unit_params
from eavesmode import HybridJamDecision, min_bob_rate_hybrid, optimize_mode3, rate_hop2_hybrid, rate_hop2_plain
from eavesmode.model import e2e_rate, eavesdrop_gate, monitor_rate_mode2, monitor_rate_mode3
from eavesmode.oracle import (
    GRID_1D,
    GRID_2D,
    GridSpec,
    brute_force_min_bob,
    brute_force_mode2,
    brute_force_mode3,
    random_instance,
    run_verification,
)


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(1)
    assert GRID_1D.points_per_axis == 100_000 and GRID_2D.points_per_axis == 1_000


def test_mode2_oracle_self_consistency():
    ch = make_channel(g_AR=3.0, g_RB=1000.0, g_MR=1.0, g_RM=1.0)
    q1, r = brute_force_mode2(ch, unit_params(Q_max=50.0))
    assert r == pytest.approx(0.5, abs=1e-12)
    assert q1 == pytest.approx(2.0, abs=1e-9)


def test_mode2_oracle_zero_budget():
    ch = make_channel(g_AR=3.0, g_RB=2.0, g_RM=0.5)
    p = unit_params(Q_max=0.0)
    q1, r = brute_force_mode2(ch, p)
    assert q1 == 0.0
    assert r == eavesdrop_gate(monitor_rate_mode2(ch, p), e2e_rate(ch, p))


def test_mode2_oracle_without_feedback_link():
    ch = make_channel(g_AR=3.0, g_RB=2.0, g_MR=0.0, g_RM=0.5)
    p = unit_params(Q_max=10.0)
    _, r = brute_force_mode2(ch, p)
    assert r == 0.0
    strong = make_channel(g_AR=3.0, g_RB=2.0, g_MR=0.0, g_RM=9.0)
    assert brute_force_mode2(strong, p)[1] == e2e_rate(strong, p)


def test_min_bob_oracle_cancellation():
    _, _, r = brute_force_min_bob(make_channel(), unit_params(Q_max=100.0))
    assert r == 0.0


def test_min_bob_oracle_zero_budget():
    ch = make_channel(g_RB=5.0)
    p = unit_params(Q_max=0.0)
    assert brute_force_min_bob(ch, p, GridSpec(50))[2] == pytest.approx(rate_hop2_plain(ch, p), rel=1e-15)


def test_mode3_oracle_cases():
    p = unit_params()
    near_alice = make_channel(g_AR=2.0, g_RB=2.0, g_AM=1e4)
    assert brute_force_mode3(near_alice, p, GridSpec(50)) == (0.0, 0.0, e2e_rate(near_alice, p))
    unjammable = make_channel(g_AR=10.0, g_RB=10.0, g_AM=1.0, g_MB=0.0)
    assert brute_force_mode3(unjammable, unit_params(Q_max=1e6), GridSpec(50))[2] == 0.0
    mid = make_channel(g_AR=20.0, g_RB=10.0, g_AM=3.0, g_MB=1.5)
    p = unit_params(Q_max=5.0)
    _, _, r = brute_force_mode3(mid, p, GridSpec(1000))
    assert abs(r - monitor_rate_mode3(mid, p)) <= 1e-6


def test_oracle_uses_complex_phases():
    # Rotating every coefficient by a random phase leaves the physics unchanged.
    rng = np.random.default_rng(5)
    for _ in range(20):
        ch, p = random_instance(rng)
        from dataclasses import replace

        flat = replace(ch, **{k: abs(getattr(ch, k)) for k in ("h_AR", "h_RB", "h_AM", "h_MR", "h_RM", "h_MB")})
        r_phase = brute_force_min_bob(ch, p, GridSpec(40))[2]
        r_flat = brute_force_min_bob(flat, p, GridSpec(40))[2]
        assert r_phase == pytest.approx(r_flat, rel=1e-9, abs=1e-12)


def test_refinement_never_worsens_optimum():
    rng = np.random.default_rng(11)
    for _ in range(15):
        ch, p = random_instance(rng)
        coarse, fine = GridSpec(21), GridSpec(41)  # fine grid contains the coarse one
        assert brute_force_min_bob(ch, p, fine)[2] <= brute_force_min_bob(ch, p, coarse)[2] + 1e-15
        assert brute_force_mode3(ch, p, fine)[2] >= brute_force_mode3(ch, p, coarse)[2] - 1e-15
        assert brute_force_mode2(ch, p, GridSpec(201))[1] >= brute_force_mode2(ch, p, GridSpec(101))[1] - 1e-15


def test_unrestricted_search_finds_cooperative_forwarding():
    # Bob's hop is the bottleneck and the monitor hears Alice well.  Forwarding
    # far past the cancellation point flips the copy's sign and *raises* Bob's
    # rate; the monitor then eavesdrops the higher hop-1-limited rate.  This is
    # relaying, not jamming, and lies outside the jamming-mode optimum.
    ch = make_channel(g_AR=100.0, g_RB=1.0, g_AM=9.0, g_MB=1.0)
    p = unit_params(Q_max=100.0)
    jam = optimize_mode3(ch, p)
    assert jam.eavesdropping_rate <= rate_hop2_plain(ch, p)
    _, _, r_jam = brute_force_mode3(ch, p, GridSpec(300))
    a_free, q_free, r_free = brute_force_mode3(ch, p, GridSpec(300), jamming_only=False)
    assert r_jam == pytest.approx(jam.eavesdropping_rate, abs=1e-6)
    assert r_jam <= rate_hop2_plain(ch, p) < r_free
    assert rate_hop2_hybrid(ch, p, HybridJamDecision(a_free, q_free)) > rate_hop2_plain(ch, p)


@pytest.mark.slow
def test_verification_suite_seed_stable():
    a = [(r.name, r.checked, len(r.failures), r.max_error) for r in run_verification(40, seed=3)]
    b = [(r.name, r.checked, len(r.failures), r.max_error) for r in run_verification(40, seed=3)]
    assert a == b
    assert all(failures == 0 for _, _, failures, _ in a)
