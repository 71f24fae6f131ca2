"""Vectorised numpy implementations of the hot kernels.

Every function takes and returns C-contiguous ``complex128`` arrays. The
Cython module ``_ckernels`` exposes the same names and signatures.
"""
import numpy as np

NAME = "numpy"


def cmul(a, b):
    """Complexified Hamilton product of two ``(N, 4)`` arrays, row by row."""
    a0, a1, a2, a3 = a[:, 0], a[:, 1], a[:, 2], a[:, 3]
    b0, b1, b2, b3 = b[:, 0], b[:, 1], b[:, 2], b[:, 3]
    out = np.empty_like(a)
    out[:, 0] = a0 * b0 - (a1 * b1 + a2 * b2 + a3 * b3)
    out[:, 1] = a0 * b1 + b0 * a1 + (a2 * b3 - a3 * b2)
    out[:, 2] = a0 * b2 + b0 * a2 + (a3 * b1 - a1 * b3)
    out[:, 3] = a0 * b3 + b0 * a3 + (a1 * b2 - a2 * b1)
    return out


def p_pair(k, x, ysq):
    """Square-root-free recurrence for the two characteristic polynomials."""
    p0 = np.ones_like(x)
    p1 = np.zeros_like(x)
    for _ in range(k):
        p0, p1 = x * p0 - ysq * p1, p0 + x * p1
    return p0, p1


def sigma_k(w, k):
    """k-th power map applied to each row of ``w``."""
    ysq = w[:, 1] * w[:, 1] + w[:, 2] * w[:, 2] + w[:, 3] * w[:, 3]
    p0, p1 = p_pair(k, w[:, 0].copy(), ysq)
    out = np.empty_like(w)
    out[:, 0] = p0
    out[:, 1:] = w[:, 1:] * p1[:, None]
    return out


def horner(coeffs, z):
    """Evaluate ascending ``(n, 4)`` coefficients at every point of ``z``."""
    acc = np.broadcast_to(coeffs[-1], (z.shape[0], 4)).copy()
    zc = z[:, None]
    for c in coeffs[-2::-1]:
        acc = acc * zc + c
    return acc


def _root(x, k, n):
    # polar k-th root, branch n counted from the principal argument
    r = np.abs(x) ** (1.0 / k)
    ang = (np.arctan2(x.imag, x.real) + 2.0 * np.pi * n) / k
    return r * (np.cos(ang) + 1j * np.sin(ang))


def star_roots(w, k):
    """All k*k preimages under the k-th power map, for each row of ``w``.

    Returns
    -------
    values : (N, k*k, 4) complex
        Branch ``(m, n)`` sits at index ``m*k + n``.
    t : (N, k) complex
        Cayley solutions, one per ``m``.
    omega : (N, k*k) complex
        Radial lift coordinate of each branch.
    v1 : (N,) complex
        Principal square root of the vector square of ``w``.
    """
    ysq = w[:, 1] * w[:, 1] + w[:, 2] * w[:, 2] + w[:, 3] * w[:, 3]
    v1 = _root(ysq, 2, 0)
    values, t, omega = star_roots_from_lift(w[:, 0], v1, w[:, 1:] / v1[:, None], k)
    return values, t, omega, v1


def star_roots_from_lift(v0, v1, s, k):
    """Same construction as ``star_roots`` starting from an explicit lift.

    ``v0`` and ``v1`` are ``(N,)`` lift coordinates and ``s`` is the
    ``(N, 3)`` vector part of the unit direction.
    """
    N = v0.shape[0]
    lam = v0 / v1
    c = (lam - 1j) / (lam + 1j)
    values = np.empty((N, k * k, 4), dtype=complex)
    t = np.empty((N, k), dtype=complex)
    omega = np.empty((N, k * k), dtype=complex)
    one = np.ones(N, dtype=complex)
    for m in range(k):
        cm = _root(c, k, m)
        tm = 1j * (1.0 + cm) / (1.0 - cm)
        t[:, m] = tm
        _, p1 = p_pair(k, tm, one)
        rhs = v1 / p1
        for n in range(k):
            om = _root(rhs, k, n)
            j = m * k + n
            omega[:, j] = om
            values[:, j, 0] = tm * om
            values[:, j, 1:] = s * om[:, None]
    return values, t, omega
