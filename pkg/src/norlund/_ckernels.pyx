# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: bivariate Horner, complex Hurwitz zeta, polygamma."""

import numpy as np
cimport numpy as cnp
from libc.math cimport log, sqrt, ceil, fmax

cnp.import_array()

cdef double[10] _B2N = [
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0,
]
DEF EM_TERMS = 6


def horner2d(coeffs, s, v):
    cdef double[:, ::1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    s_arr, v_arr = np.broadcast_arrays(np.asarray(s, dtype=np.float64),
                                       np.asarray(v, dtype=np.float64))
    shape = s_arr.shape
    cdef double[::1] sv = np.ascontiguousarray(s_arr).ravel()
    cdef double[::1] vv = np.ascontiguousarray(v_arr).ravel()
    cdef Py_ssize_t n = sv.shape[0], J = c.shape[0], D = c.shape[1]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, j, d
    cdef double acc, row, si, vi
    for i in range(n):
        si = sv[i]
        vi = vv[i]
        acc = 0.0
        for j in range(J - 1, -1, -1):
            row = 0.0
            for d in range(D - 1, -1, -1):
                row = row * si + c[j, d]
            acc = acc * vi + row
        o[i] = acc
    return out.reshape(shape)


cdef inline double complex _ipow(double complex z, int n) nogil:
    cdef double complex r = 1.0
    while n > 0:
        if n & 1:
            r = r * z
        z = z * z
        n >>= 1
    return r


cdef double complex _hurwitz(int s, double complex w) nogil:
    cdef double radius = fmax(10.0, 2.0 * s)
    cdef double im2 = w.imag * w.imag
    cdef long M = 0
    if im2 < radius * radius:
        M = <long>ceil(sqrt(radius * radius - im2) - w.real)
        if M < 0:
            M = 0
    cdef double complex acc = 0.0
    cdef long n
    for n in range(M):
        acc = acc + 1.0 / _ipow(n + w, s)
    cdef double complex a = w + M
    cdef double complex inv = 1.0 / a
    cdef double complex inv_s = _ipow(inv, s)
    acc = acc + a * inv_s / (s - 1) + 0.5 * inv_s
    cdef double complex term = inv_s * inv
    cdef double rising = s, fact = 2.0
    cdef int k
    for k in range(1, EM_TERMS + 1):
        acc = acc + _B2N[k - 1] / fact * rising * term
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        fact *= (2 * k + 1) * (2 * k + 2)
        term = term * inv * inv
    return acc


def hurwitz_zeta(int s, w):
    w_arr = np.atleast_1d(np.asarray(w, dtype=np.complex128))
    shape = w_arr.shape
    cdef double complex[::1] wv = np.ascontiguousarray(w_arr).ravel()
    cdef Py_ssize_t i, n = wv.shape[0]
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = _hurwitz(s, wv[i])
    return out.reshape(shape)


cdef double _polygamma(int k, double x, double kfact, double km1fact,
                       double *coef) nogil:
    cdef double threshold = 8.0 + 2.0 * k
    cdef double acc = 0.0
    cdef double sign = -1.0 if k % 2 else 1.0
    cdef double inv, inv2, p, series
    cdef int n
    while x < threshold:
        acc -= sign * kfact * _ripow(1.0 / x, k + 1)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    if k == 0:
        series = log(x) - 0.5 * inv
        p = inv2
        for n in range(1, 11):
            series -= _B2N[n - 1] / (2 * n) * p
            p *= inv2
        return acc + series
    series = km1fact * _ripow(inv, k) + 0.5 * kfact * _ripow(inv, k + 1)
    p = _ripow(inv, k + 2)
    for n in range(1, 11):
        series += _B2N[n - 1] * coef[n - 1] * p
        p *= inv2
    return acc - sign * series


cdef inline double _ripow(double z, int n) nogil:
    cdef double r = 1.0
    while n > 0:
        if n & 1:
            r *= z
        z *= z
        n >>= 1
    return r


def polygamma(int k, x):
    import math
    x_arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    shape = x_arr.shape
    cdef double[::1] xv = np.ascontiguousarray(x_arr).ravel()
    cdef Py_ssize_t i, n = xv.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double[10] coef
    cdef int m
    for m in range(1, 11):
        coef[m - 1] = math.factorial(2 * m + k - 1) / math.factorial(2 * m) if k > 0 else 0.0
    cdef double kfact = math.factorial(k)
    cdef double km1fact = math.factorial(k - 1) if k > 0 else 0.0
    with nogil:
        for i in range(n):
            o[i] = _polygamma(k, xv[i], kfact, km1fact, coef)
    return out.reshape(shape)
