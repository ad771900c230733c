"""Batch evaluation of per-mode optimal rates over many channel realisations.

Uses the compiled ``_kernel`` extension when it was built, else the
pure-Python ``_core`` loop.  Set ``EAVESMODE_PURE_PYTHON=1`` to force the
fallback.  :data:`BACKEND` names the active one.
"""

import os

import numpy as np

from . import _core
from .model import Mode, SystemParams

try:
    if os.environ.get("EAVESMODE_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python backend requested")
    from ._kernel import mode_rates_batch as _compiled_batch
except ImportError:
    _compiled_batch = None

BACKEND = "cython" if _compiled_batch is not None else "python"
_BATCH = {"python": _core.mode_rates_batch}
if _compiled_batch is not None:
    _BATCH["cython"] = _compiled_batch


def available_backends() -> tuple[str, ...]:
    return tuple(_BATCH)


def mode_rates(gains, p: SystemParams, backend: str | None = None) -> np.ndarray:
    """Optimal eavesdropping rate of modes I-III for each row of ``gains``.

    Parameters
    ----------
    gains : array_like, shape (n, 6)
        Power gains ``|h|**2`` in the order AR, RB, AM, MR, RM, MB.
    p : SystemParams
    backend : {"cython", "python"}, optional
        Defaults to :data:`BACKEND`.

    Returns
    -------
    ndarray, shape (n, 3)
    """
    g = np.ascontiguousarray(np.asarray(gains, dtype=np.float64).reshape(-1, 6).T)
    fn = _BATCH[backend or BACKEND]
    return fn(
        np.ascontiguousarray(g[0]), np.ascontiguousarray(g[1]), np.ascontiguousarray(g[2]),
        np.ascontiguousarray(g[3]), np.ascontiguousarray(g[4]), np.ascontiguousarray(g[5]),
        p.P_A, p.P_R, p.sigma2, p.Q_max,
    )


def best_modes(rates: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-row selected mode (1-3, lowest wins ties) and its rate."""
    idx = np.argmax(rates, axis=1)
    return idx + int(Mode.I), rates[np.arange(len(rates)), idx]
