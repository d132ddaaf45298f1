# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled theta scan of the normalised kernel modulus over (0, pi/2]
(see fcq._scan_py)."""

from libc.math cimport cos, exp, log, sin, M_PI
from libc.stdlib cimport free, malloc


def theta_scan_ratio(double rho, int n, int s, int m):
    cdef double lr = log(rho)
    cdef double *w = <double *> malloc((s + 1) * sizeof(double))
    if w == NULL:
        raise MemoryError()
    cdef double binom = 1.0
    cdef double axis = 0.0
    cdef int k, i
    for k in range(s + 1):
        w[k] = binom * exp(2.0 * n * (k - s) * lr)
        axis += w[k]
        binom = binom * (2 * s + 1 - k) / (k + 1)
    cdef double A = axis * axis
    cdef double b1 = 0.5 * (rho - 1.0 / rho)
    cdef double inv_b1sq = 1.0 / (b1 * b1)
    cdef double x = exp(-2.0 * n * lr)
    cdef double cfac = 4.0 * x / ((1.0 + x) * (1.0 + x))
    cdef double h = M_PI / m
    cdef double best_t = 0.0, best_q = 1.0
    cdef double t, re, im, ph, st, sn, bb, cc, q, cpow
    try:
        for i in range(1, m // 2 + 1):
            t = i * h
            re = 0.0
            im = 0.0
            for k in range(s + 1):
                ph = 2.0 * n * k * t
                re += w[k] * cos(ph)
                im += w[k] * sin(ph)
            st = sin(t)
            sn = sin(n * t)
            bb = 1.0 + st * st * inv_b1sq
            cc = 1.0 - cfac * sn * sn
            cpow = 1.0
            for k in range(2 * s):
                cpow *= cc
            q = (re * re + im * im) / A / (bb * cpow)
            if q > best_q:
                best_q = q
                best_t = t
    finally:
        free(w)
    return best_t, best_q
