import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from eavesmode import Fading, PathLossModel, Scenario, awgn_channels, path_loss_gain, rayleigh_channels, trial_rng
from eavesmode.config import load_config
from eavesmode.geometry import LINKS, channels, db_to_linear, dbm_to_mw, rayleigh_gain_batch

REFERENCE_MODEL = PathLossModel(kappa=1e-6, d0=10.0, zeta=3.0)


@pytest.fixture(scope="module")
def base():
    return load_config().scenario


@pytest.mark.parametrize("d, expected", [(10.0, 1e-6), (100.0, 1e-9), (20.0, 1.25e-7)])
def test_path_loss_examples(d, expected):
    assert path_loss_gain(d, REFERENCE_MODEL) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("d", [0.0, -1.0, math.nan])
def test_path_loss_rejects_bad_distance(d):
    with pytest.raises(ValueError):
        path_loss_gain(d, REFERENCE_MODEL)


@pytest.mark.parametrize("kw", [dict(kappa=0.0), dict(d0=-1.0), dict(zeta=-0.5)])
def test_path_loss_model_validation(kw):
    base = dict(kappa=1e-6, d0=10.0, zeta=3.0)
    with pytest.raises(ValueError):
        PathLossModel(**{**base, **kw})


@given(st.floats(0.1, 1e5), st.floats(1e-6, 1e3))
def test_path_loss_strictly_decreasing(d, dd):
    assert path_loss_gain(d + dd, REFERENCE_MODEL) < path_loss_gain(d, REFERENCE_MODEL)


def test_unit_conversions():
    assert dbm_to_mw(40.0) == pytest.approx(1e4)
    assert dbm_to_mw(-80.0) == pytest.approx(1e-8)
    assert db_to_linear(-60.0) == pytest.approx(1e-6)


def test_reference_scenario_is_linear(base):
    p = base.params
    assert (p.P_A, p.P_R, p.Q_max) == pytest.approx((1e4, 1e4, 1e5))
    assert p.sigma2 == pytest.approx(1e-8)
    assert base.path_loss.kappa == pytest.approx(1e-6)


def test_alice_relay_gain(base):
    ch = awgn_channels(base)
    assert abs(ch.h_AR) ** 2 == pytest.approx(8e-12, rel=1e-12)
    assert ch.h_AR.imag == 0.0 and ch.h_AR.real > 0


def test_monitor_at_reference_distance(base):
    ch = awgn_channels(base.with_monitor((10.0, 0.0)))
    assert abs(ch.h_AM) ** 2 == pytest.approx(base.path_loss.kappa, rel=1e-12)


def test_equidistant_monitor_is_symmetric(base):
    ch = awgn_channels(base.with_monitor((250.0, 300.0)))
    assert abs(ch.h_AM) == pytest.approx(abs(ch.h_RM), rel=1e-15)
    assert ch.h_MR == ch.h_RM


def test_awgn_is_pure(base):
    s = base.with_monitor((123.0, -45.0))
    assert awgn_channels(s) == awgn_channels(s)


def test_colocated_nodes_rejected(base):
    with pytest.raises(ValueError, match="co-located"):
        base.with_monitor(base.relay)


def test_rayleigh_requires_rng(base):
    from dataclasses import replace

    with pytest.raises(ValueError):
        channels(replace(base, fading=Fading.RAYLEIGH))


def test_rayleigh_deterministic_per_stream(base):
    a = rayleigh_channels(base, trial_rng(7, 3, 11))
    b = rayleigh_channels(base, trial_rng(7, 3, 11))
    c = rayleigh_channels(base, trial_rng(7, 3, 12))
    assert a == b and a != c


def test_rayleigh_vanishes_with_distance(base):
    far = base.with_monitor((1e9, 0.0))
    ch = rayleigh_channels(far, trial_rng(0, 0))
    assert abs(ch.h_AM) < 1e-15


def test_batch_matches_scalar_draws(base):
    gains = rayleigh_gain_batch(base, 99, 4, 50)
    for t in range(50):
        expected = rayleigh_channels(base, trial_rng(99, 4, t)).gains()
        np.testing.assert_array_equal(gains[t], expected)


def test_links_order():
    assert LINKS == ("AR", "RB", "AM", "MR", "RM", "MB")


def test_feedback_links_fade_independently(base):
    g = rayleigh_gain_batch(base, 1, 0, 2000)
    mr, rm = g[:, 3], g[:, 4]
    assert not np.array_equal(mr, rm)
    assert abs(np.corrcoef(mr, rm)[0, 1]) < 0.1
