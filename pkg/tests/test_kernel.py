import os
import subprocess
import sys

import numpy as np
import pytest

from eavesmode import ChannelState, SystemParams, select_mode
from eavesmode import kernel
from eavesmode.oracle import random_instance


def _random_batch(n, seed):
    rng = np.random.default_rng(seed)
    gains = 10.0 ** rng.uniform(-3, 3, (n, 6))
    gains[rng.random((n, 6)) < 0.05] = 0.0  # exercise degenerate links
    return gains


PARAMS = SystemParams(P_A=2.0, P_R=0.7, sigma2=0.3, Q_max=4.0)


@pytest.mark.skipif("cython" not in kernel.available_backends(), reason="extension not built")
def test_compiled_matches_pure_python_exactly():
    g = _random_batch(10_000, 1)
    fast = kernel.mode_rates(g, PARAMS, "cython")
    slow = kernel.mode_rates(g, PARAMS, "python")
    np.testing.assert_array_equal(fast, slow)


@pytest.mark.parametrize("backend", kernel.available_backends())
def test_batch_matches_scalar_selection(backend):
    rng = np.random.default_rng(2)
    for _ in range(300):
        ch, p = random_instance(rng)
        rates = kernel.mode_rates(np.array([ch.gains()]), p, backend)
        sel = select_mode(ch, p)
        np.testing.assert_array_equal(rates[0], sel.rates)
        mode, best = kernel.best_modes(rates)
        assert int(mode[0]) == int(sel.best_mode) and best[0] == sel.best_rate


def test_best_modes_tie_break():
    modes, best = kernel.best_modes(np.array([[0.0, 0.0, 0.0], [0.2, 0.5, 0.5], [0.1, 0.1, 0.3]]))
    assert modes.tolist() == [1, 2, 3]
    assert best.tolist() == [0.0, 0.5, 0.3]


def test_empty_batch():
    assert kernel.mode_rates(np.empty((0, 6)), PARAMS).shape == (0, 3)


def test_pure_python_env_override():
    code = "from eavesmode import kernel; print(kernel.BACKEND, kernel.available_backends())"
    env = {**os.environ, "EAVESMODE_PURE_PYTHON": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python ('python',)"
