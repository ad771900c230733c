# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``eavesmode._core``; same operations in the same order."""

import numpy as np
cimport numpy as cnp
from libc.math cimport log1p, sqrt, log, INFINITY

cnp.import_array()

cdef double INV_LN2 = 1.0 / log(2.0)


cdef inline double half_log2_1p(double snr) nogil:
    return 0.5 * log1p(snr) * INV_LN2


cdef inline double noise_threshold(double g_ar, double g_mr, double g_rm,
                                   double p_a, double p_r, double s2) nogil:
    cdef double num = (g_ar * p_a - g_rm * p_r) * s2
    cdef double den
    if num <= 0.0:
        return 0.0
    den = g_mr * g_rm * p_r
    if den <= 0.0:
        return INFINITY
    return num / den


cdef inline double hybrid_alpha(double g_rb, double g_am, double g_mb, double p_a,
                                double p_r, double s2, double q) nogil:
    cdef double al_budget = sqrt(q / (p_a * g_am + s2))
    cdef double b = sqrt(p_a * g_am * g_mb)
    cdef double a, al, al_stat
    if b == 0.0:
        return al_budget
    a = sqrt(p_r * g_rb)
    if a == 0.0:
        return 0.0
    al = a / b
    if al_budget < al:
        al = al_budget
    al_stat = (s2 + q * g_mb) / (a * b)
    if al_stat < al:
        al = al_stat
    return al


cdef inline double hybrid_sinr(double g_rb, double g_am, double g_mb, double p_a,
                               double p_r, double s2, double alpha, double q2) nogil:
    cdef double a = sqrt(p_r * g_rb)
    cdef double b = sqrt(p_a * g_am * g_mb)
    cdef double num
    if alpha == 0.0 or b == 0.0:
        num = p_r * g_rb
    else:
        num = b * (a / b - alpha)
        num = num * num
    return num / (g_mb * q2 + alpha * alpha * g_mb * s2 + s2)


cdef inline double hybrid_min_rate(double g_rb, double g_am, double g_mb, double p_a,
                                   double p_r, double s2, double q) nogil:
    cdef double al = hybrid_alpha(g_rb, g_am, g_mb, p_a, p_r, s2, q)
    cdef double q2 = q - (p_a * g_am + s2) * al * al
    if q2 < 0.0:
        q2 = 0.0
    return half_log2_1p(hybrid_sinr(g_rb, g_am, g_mb, p_a, p_r, s2, al, q2))


cdef inline void mode_rates(double g_ar, double g_rb, double g_am, double g_mr,
                            double g_rm, double g_mb, double p_a, double p_r,
                            double s2, double q, double* out) nogil:
    cdef double r_r = half_log2_1p(g_ar * p_a / s2)
    cdef double r_b = half_log2_1p(g_rb * p_r / s2)
    cdef double e2e = r_r if r_r < r_b else r_b
    cdef double m1, m2, m3

    m1 = half_log2_1p((p_a * g_am + p_r * g_rm) / s2)
    out[0] = e2e if m1 >= e2e else 0.0

    m2 = half_log2_1p(g_rm * p_r / s2)
    if m2 >= e2e:
        out[1] = e2e
    elif q >= noise_threshold(g_ar, g_mr, g_rm, p_a, p_r, s2):
        out[1] = m2
    else:
        out[1] = 0.0

    m3 = half_log2_1p(g_am * p_a / s2)
    if m3 >= e2e:
        out[2] = e2e
    elif hybrid_min_rate(g_rb, g_am, g_mb, p_a, p_r, s2, q) <= m3:
        out[2] = m3
    else:
        out[2] = 0.0


def mode_rates_batch(double[::1] g_ar, double[::1] g_rb, double[::1] g_am,
                     double[::1] g_mr, double[::1] g_rm, double[::1] g_mb,
                     double p_a, double p_r, double s2, double q):
    """Row-wise optimal rate of each mode; returns an ``(n, 3)`` array."""
    cdef Py_ssize_t n = g_ar.shape[0]
    cdef Py_ssize_t i
    out = np.empty((n, 3), dtype=np.float64)
    cdef double[:, ::1] o = out
    with nogil:
        for i in range(n):
            mode_rates(g_ar[i], g_rb[i], g_am[i], g_mr[i], g_rm[i], g_mb[i],
                       p_a, p_r, s2, q, &o[i, 0])
    return out
