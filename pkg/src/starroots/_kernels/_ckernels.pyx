# Compiled counterparts of _pykernels: same names, signatures and branch ordering.
# Non-principal k-th roots are the principal one times a tabulated root of unity.
import numpy as np

from libc.math cimport atan2, cos, sin, pow, hypot, M_PI
from libc.stdlib cimport free, malloc

NAME = "cython"


cdef inline double complex _cx(double re, double im) noexcept nogil:
    cdef double complex z
    z.real = re
    z.imag = im
    return z


cdef inline double complex _root(double complex x, int k, int n) noexcept nogil:
    cdef double r = pow(hypot(x.real, x.imag), 1.0 / k)
    cdef double ang = (atan2(x.imag, x.real) + 2.0 * M_PI * n) / k
    return _cx(r * cos(ang), r * sin(ang))


cdef inline void _pp(int k, double complex x, double complex ysq,
                     double complex *p0, double complex *p1) noexcept nogil:
    cdef double complex a = 1.0, b = 0.0, na
    cdef int i
    for i in range(k):
        na = x * a - ysq * b
        b = a + x * b
        a = na
    p0[0] = a
    p1[0] = b


def cmul(const double complex[:, ::1] a, const double complex[:, ::1] b):
    cdef Py_ssize_t N = a.shape[0], i
    out = np.empty((N, 4), dtype=complex)
    cdef double complex[:, ::1] o = out
    cdef double complex a0, a1, a2, a3, b0, b1, b2, b3
    with nogil:
        for i in range(N):
            a0 = a[i, 0]; a1 = a[i, 1]; a2 = a[i, 2]; a3 = a[i, 3]
            b0 = b[i, 0]; b1 = b[i, 1]; b2 = b[i, 2]; b3 = b[i, 3]
            o[i, 0] = a0 * b0 - (a1 * b1 + a2 * b2 + a3 * b3)
            o[i, 1] = a0 * b1 + b0 * a1 + (a2 * b3 - a3 * b2)
            o[i, 2] = a0 * b2 + b0 * a2 + (a3 * b1 - a1 * b3)
            o[i, 3] = a0 * b3 + b0 * a3 + (a1 * b2 - a2 * b1)
    return out


def p_pair(int k, const double complex[::1] x, const double complex[::1] ysq):
    cdef Py_ssize_t N = x.shape[0], i
    p0 = np.empty(N, dtype=complex)
    p1 = np.empty(N, dtype=complex)
    cdef double complex[::1] o0 = p0, o1 = p1
    with nogil:
        for i in range(N):
            _pp(k, x[i], ysq[i], &o0[i], &o1[i])
    return p0, p1


def sigma_k(const double complex[:, ::1] w, int k):
    cdef Py_ssize_t N = w.shape[0], i
    out = np.empty((N, 4), dtype=complex)
    cdef double complex[:, ::1] o = out
    cdef double complex ysq, p0, p1
    with nogil:
        for i in range(N):
            ysq = w[i, 1] * w[i, 1] + w[i, 2] * w[i, 2] + w[i, 3] * w[i, 3]
            _pp(k, w[i, 0], ysq, &p0, &p1)
            o[i, 0] = p0
            o[i, 1] = w[i, 1] * p1
            o[i, 2] = w[i, 2] * p1
            o[i, 3] = w[i, 3] * p1
    return out


def horner(const double complex[:, ::1] coeffs, const double complex[::1] z):
    cdef Py_ssize_t N = z.shape[0], n = coeffs.shape[0], i, d, h
    out = np.empty((N, 4), dtype=complex)
    cdef double complex[:, ::1] o = out
    cdef double complex acc, zi
    with nogil:
        for i in range(N):
            zi = z[i]
            for h in range(4):
                acc = coeffs[n - 1, h]
                for d in range(n - 2, -1, -1):
                    acc = acc * zi + coeffs[d, h]
                o[i, h] = acc
    return out


def star_roots(const double complex[:, ::1] w, int k):
    cdef Py_ssize_t N = w.shape[0], i
    cdef int m, n, j
    values = np.empty((N, k * k, 4), dtype=complex)
    t = np.empty((N, k), dtype=complex)
    omega = np.empty((N, k * k), dtype=complex)
    v1a = np.empty(N, dtype=complex)
    cdef double complex[:, :, ::1] vo = values
    cdef double complex[:, ::1] to = t, oo = omega
    cdef double complex[::1] vv = v1a
    cdef double complex ysq, v1, s1, s2, s3, lam, c, c0, cm, tm, p0, p1, r0, om
    cdef double complex I = _cx(0.0, 1.0)
    cdef double complex *unity = <double complex *> malloc(k * sizeof(double complex))
    if unity == NULL:
        raise MemoryError()
    for n in range(k):
        unity[n] = _cx(cos(2.0 * M_PI * n / k), sin(2.0 * M_PI * n / k))
    try:
        with nogil:
            for i in range(N):
                ysq = w[i, 1] * w[i, 1] + w[i, 2] * w[i, 2] + w[i, 3] * w[i, 3]
                v1 = _root(ysq, 2, 0)
                vv[i] = v1
                s1 = w[i, 1] / v1
                s2 = w[i, 2] / v1
                s3 = w[i, 3] / v1
                lam = w[i, 0] / v1
                c = (lam - I) / (lam + I)
                c0 = _root(c, k, 0)
                for m in range(k):
                    cm = c0 * unity[m]
                    tm = I * (1.0 + cm) / (1.0 - cm)
                    to[i, m] = tm
                    _pp(k, tm, 1.0, &p0, &p1)
                    r0 = _root(v1 / p1, k, 0)
                    for n in range(k):
                        om = r0 * unity[n]
                        j = m * k + n
                        oo[i, j] = om
                        vo[i, j, 0] = tm * om
                        vo[i, j, 1] = s1 * om
                        vo[i, j, 2] = s2 * om
                        vo[i, j, 3] = s3 * om
    finally:
        free(unity)
    return values, t, omega, v1a
