"""Pure-Python closed forms on power gains.

This is the reference twin of the compiled ``_kernel`` extension: both take
squared channel magnitudes ``g_XY = |h_XY|**2`` and evaluate the same
operations in the same order, so their outputs agree to the last bit on
IEEE-754 hardware.  Keep the two files in lock step.
"""

import math

import numpy as np

_INV_LN2 = 1.0 / math.log(2.0)
INF = math.inf


def half_log2_1p(snr):
    return 0.5 * math.log1p(snr) * _INV_LN2


def noise_threshold(g_ar, g_mr, g_rm, p_a, p_r, s2):
    """Smallest hop-1 AN power pulling the relay rate down to the monitor's hop-2 rate.

    Returns ``inf`` when the relay cannot be jammed (``g_mr == 0``) or the
    monitor hears nothing from the relay (``g_rm == 0``) while jamming is
    still needed.
    """
    num = (g_ar * p_a - g_rm * p_r) * s2
    if num <= 0.0:
        return 0.0
    den = g_mr * g_rm * p_r
    if den <= 0.0:
        return INF
    return num / den


def hybrid_alpha(g_rb, g_am, g_mb, p_a, p_r, s2, q):
    """Forwarding magnitude minimising Bob's SINR with the whole budget spent.

    With the power constraint tight, Bob's SINR is
    ``(a - b*al)**2 / (c - b**2 * al**2)`` where ``a = sqrt(p_r*g_rb)``,
    ``b = sqrt(p_a*g_am*g_mb)`` and ``c = s2 + q*g_mb``.  Its derivative has
    the sign of ``(a - b*al) * (a*b*al - c)``, so the minimiser on
    ``[0, al_budget]`` is the smallest of the budget edge, the cancellation
    point ``a/b`` and the interior stationary point ``c/(a*b)``.
    """
    al_budget = math.sqrt(q / (p_a * g_am + s2))
    b = math.sqrt(p_a * g_am * g_mb)
    if b == 0.0:
        # forwarding carries no signal; every split of the budget is equivalent
        return al_budget
    a = math.sqrt(p_r * g_rb)
    if a == 0.0:
        return 0.0
    al = a / b
    if al_budget < al:
        al = al_budget
    al_stat = (s2 + q * g_mb) / (a * b)
    if al_stat < al:
        al = al_stat
    return al


def hybrid_sinr(g_rb, g_am, g_mb, p_a, p_r, s2, alpha, q2):
    """Bob's SINR under destructive forwarding ``alpha`` plus AN ``q2``."""
    a = math.sqrt(p_r * g_rb)
    b = math.sqrt(p_a * g_am * g_mb)
    if alpha == 0.0 or b == 0.0:
        # no forwarded copy: bit-identical to the plain hop-2 SNR
        num = p_r * g_rb
    else:
        # factored so that alpha == a/b cancels to exactly zero
        num = b * (a / b - alpha)
        num = num * num
    return num / (g_mb * q2 + alpha * alpha * g_mb * s2 + s2)


def hybrid_min(g_rb, g_am, g_mb, p_a, p_r, s2, q):
    """Return ``(alpha, Q2, rate)`` of the minimum-Bob-rate hybrid design."""
    al = hybrid_alpha(g_rb, g_am, g_mb, p_a, p_r, s2, q)
    q2 = q - (p_a * g_am + s2) * al * al
    if q2 < 0.0:
        q2 = 0.0
    return al, q2, half_log2_1p(hybrid_sinr(g_rb, g_am, g_mb, p_a, p_r, s2, al, q2))


def mode_rates(g_ar, g_rb, g_am, g_mr, g_rm, g_mb, p_a, p_r, s2, q):
    """Optimal eavesdropping rate of each mode for one channel realisation."""
    r_r = half_log2_1p(g_ar * p_a / s2)
    r_b = half_log2_1p(g_rb * p_r / s2)
    e2e = r_r if r_r < r_b else r_b

    m1 = half_log2_1p((p_a * g_am + p_r * g_rm) / s2)
    rate1 = e2e if m1 >= e2e else 0.0

    m2 = half_log2_1p(g_rm * p_r / s2)
    if m2 >= e2e:
        rate2 = e2e
    elif q >= noise_threshold(g_ar, g_mr, g_rm, p_a, p_r, s2):
        rate2 = m2
    else:
        rate2 = 0.0

    m3 = half_log2_1p(g_am * p_a / s2)
    if m3 >= e2e:
        rate3 = e2e
    elif hybrid_min(g_rb, g_am, g_mb, p_a, p_r, s2, q)[2] <= m3:
        rate3 = m3
    else:
        rate3 = 0.0
    return rate1, rate2, rate3


def mode_rates_batch(g_ar, g_rb, g_am, g_mr, g_rm, g_mb, p_a, p_r, s2, q):
    """Row-wise :func:`mode_rates` over 1-D gain arrays; returns an ``(n, 3)`` array."""
    n = len(g_ar)
    out = np.empty((n, 3), dtype=np.float64)
    for i in range(n):
        out[i] = mode_rates(
            float(g_ar[i]), float(g_rb[i]), float(g_am[i]),
            float(g_mr[i]), float(g_rm[i]), float(g_mb[i]),
            p_a, p_r, s2, q,
        )
    return out
