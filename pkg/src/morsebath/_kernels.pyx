# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: weighted phase sums over a time grid.

Contracts match ``_kernels_np``; the selector in ``kernels`` picks this
module when it has been built.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, fabs, sin

cnp.import_array()

ZERO_FREQ_TOL = 1e-12


def phase_sum(weights, freqs, times):
    """out[j] = sum_i weights[i] * exp(1j * freqs[i] * times[j])."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] w = np.ascontiguousarray(weights, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] f = np.ascontiguousarray(freqs, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] t = np.ascontiguousarray(times, dtype=np.float64)
    cdef Py_ssize_t m = w.shape[0]
    cdef Py_ssize_t n = t.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.zeros(n, dtype=np.complex128)
    cdef Py_ssize_t i, j
    cdef double fi, wr, wi, c, s, arg
    for i in range(m):
        fi = f[i]
        wr = w[i].real
        wi = w[i].imag
        for j in range(n):
            arg = fi * t[j]
            c = cos(arg)
            s = sin(arg)
            out[j].real += wr * c - wi * s
            out[j].imag += wr * s + wi * c
    return out


def gamma_sum(weights, deltas, double offset, times):
    """2 * offset * t^2 + sum_i 4 w_i (1 - cos(d_i t)) / d_i^2.

    |delta| below ZERO_FREQ_TOL takes the limit contribution 2 w t^2.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.ascontiguousarray(deltas, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] t = np.ascontiguousarray(times, dtype=np.float64)
    cdef Py_ssize_t m = w.shape[0]
    cdef Py_ssize_t n = t.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i, j
    cdef double di, coef, quad_w = 2.0 * offset
    cdef double zero_tol = ZERO_FREQ_TOL
    for i in range(m):
        if fabs(d[i]) < zero_tol:
            quad_w += 2.0 * w[i]
    for j in range(n):
        out[j] = quad_w * t[j] * t[j]
    for i in range(m):
        di = d[i]
        if fabs(di) < zero_tol:
            continue
        coef = 4.0 * w[i] / (di * di)
        for j in range(n):
            out[j] += coef * (1.0 - cos(di * t[j]))
    return out
