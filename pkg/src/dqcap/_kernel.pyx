# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid evaluation of the DQ classical rate."""
import numpy as np
cimport numpy as cnp
from libc.math cimport log2, INFINITY

cnp.import_array()


def eval_grid(double[::1] sig_p, double[::1] sig_q,
              double[::1] dp, double[::1] dq,
              double scale_p, double scale_q,
              double noise_p, double noise_q,
              double gain, double min_area, double rtol):
    cdef Py_ssize_t n_s = sig_p.shape[0]
    cdef Py_ssize_t n_a = dp.shape[0]
    cdef Py_ssize_t i, j
    cdef double sp, sq, a, b, area
    out = np.empty((n_s, n_a), dtype=np.float64)
    cdef double[:, ::1] v = out
    with nogil:
        for i in range(n_s):
            sp = sig_p[i]
            sq = sig_q[i]
            for j in range(n_a):
                if dp[j] > sp * (1.0 + rtol) or dq[j] > sq * (1.0 + rtol):
                    v[i, j] = -INFINITY
                    continue
                a = scale_p * dp[j]
                if noise_p > a:
                    a = noise_p
                b = scale_q * dq[j]
                if noise_q > b:
                    b = noise_q
                area = a * b
                if area < min_area:
                    area = min_area
                v[i, j] = log2(gain * (sp * sq) / area)
    return out
