"""The k-th power map on C (x) H and its characteristic polynomials.

Writing ``(x + I y)^k = p0(x, y^2) + I y p1(x, y^2)`` defines two polynomials
in ``x`` and ``y^2`` that are evaluated through a square-root-free
recurrence. The k-th power of ``w = (z0, z_vec)`` is then
``(p0(z0, z_v^2), z_vec * p1(z0, z_v^2))``.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .complexified import CQuat, as_carray


def p_pair(k: int, x, ysq):
    """Return ``(p0, p1)`` for the k-th power, evaluated at ``(x, ysq)``.

    Scalars give complex scalars back; arrays are evaluated elementwise.

    Examples
    --------
    >>> p_pair(1, 2.0, 7.0)
    ((2+0j), (1+0j))
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    scalar = np.ndim(x) == 0 and np.ndim(ysq) == 0
    x, ysq = np.broadcast_arrays(np.asarray(x, dtype=complex), np.asarray(ysq, dtype=complex))
    shape = x.shape
    p0, p1 = _kernels.p_pair(
        k, np.ascontiguousarray(x.reshape(-1)), np.ascontiguousarray(ysq.reshape(-1))
    )
    if scalar:
        return complex(p0[0]), complex(p1[0])
    return p0.reshape(shape), p1.reshape(shape)


def sigma_k_array(W, k: int) -> np.ndarray:
    """k-th power of every complexified quaternion in a ``(..., 4)`` array."""
    W = as_carray(W)
    shape = W.shape
    return _kernels.sigma_k(np.ascontiguousarray(W.reshape(-1, 4)), k).reshape(shape)


def sigma_k(w, k: int) -> CQuat:
    """k-th power of a single complexified quaternion."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return CQuat.from_array(sigma_k_array(np.asarray(w, dtype=complex).reshape(1, 4), k)[0])


def sigma_k_jacobian_det(w, k: int) -> complex:
    """Closed-form complex Jacobian determinant of the k-th power map.

    Equal to ``k^2 * (z0^2 + z_v^2)^(k-1) * p1(z0, z_v^2)^2``. In the plane
    spanned by ``1`` and the vector part the map acts like ``(a, b) -> (a^k, b^k)``
    with ``a b = z0^2 + z_v^2``, which accounts for the power ``k - 1``.
    """
    w = CQuat(*map(complex, w))
    _, p1 = p_pair(k, w.z0, w.vector_square())
    return k * k * w.norm_square() ** (k - 1) * p1 * p1


def finite_difference_jacobian(w, k: int, step: float | None = None, stencil: str = "central") -> np.ndarray:
    """Difference-quotient 4x4 complex Jacobian of the k-th power map at ``w``.

    Parameters
    ----------
    w : CQuat-like
    k : int
    step : float, optional
        Defaults to ``1e-5 (1 + max|z_h|)`` for ``"central"`` and
        ``0.1 (1 + max|z_h|)`` for ``"circle"``.
    stencil : {"central", "circle"}
        ``"central"`` is the two-point real step. ``"circle"`` averages
        ``f(w + step r e_h) / r`` over ``m = max(12, k + 1)`` roots of unity
        ``r``; the map is a polynomial of degree ``k < m`` in each coordinate,
        so the quotient has no truncation error and only rounding remains.

    Notes
    -----
    The map is holomorphic, so steps along each coordinate give the complex
    partial derivatives. With the central stencil the relative error of the
    determinant grows like ``cond(J) * 1e-9``.
    """
    w = as_carray(w).reshape(4)
    E = np.eye(4)
    scale = 1.0 + np.abs(w).max()
    if stencil == "central":
        step = 1e-5 * scale if step is None else step
        plus = sigma_k_array(w[None, :] + step * E, k)
        minus = sigma_k_array(w[None, :] - step * E, k)
        # row h of plus is the image of w + step e_h, so column h of the Jacobian
        return ((plus - minus) / (2.0 * step)).T
    if stencil == "circle":
        step = 0.1 * scale if step is None else step
        m = max(12, k + 1)
        acc = np.zeros((4, 4), dtype=complex)
        for r in np.exp(2j * np.pi * np.arange(m) / m):
            acc += sigma_k_array(w[None, :] + step * r * E, k) / r
        return (acc / (m * step)).T
    raise ValueError(f"unknown stencil {stencil!r}")


def q_poly(k: int, t):
    """The auxiliary polynomial ``Im((t + i)^k)`` at real ``t``."""
    t = np.asarray(t, dtype=float)
    return np.imag((t + 1j) ** k)


def q_poly_scale(k: int, t):
    """Sum of the absolute values of the terms of ``q_poly`` at ``t``.

    Useful as the natural magnitude against which a residual is measured.
    """
    t = np.abs(np.asarray(t, dtype=float))
    return sum(math.comb(k, 2 * h + 1) * t ** (k - 1 - 2 * h) for h in range((k + 1) // 2))


def q_poly_roots(k: int) -> list[float]:
    """The k-1 real roots of ``Im((t + i)^k)``, sorted ascending.

    The roots are ``cot(n pi / k)`` for ``n = 1, ..., k-1``, each refined by
    one Newton step.

    Examples
    --------
    >>> q_poly_roots(2)
    [0.0]
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    out = []
    for n in range(1, k):
        if 2 * n == k:
            out.append(0.0)
            continue
        t = math.cos(n * math.pi / k) / math.sin(n * math.pi / k)
        val = ((t + 1j) ** k).imag
        der = (k * (t + 1j) ** (k - 1)).imag
        if der != 0.0:
            t -= val / der
        out.append(t)
    return sorted(out)


@dataclass(frozen=True)
class PowerTables:
    """Per-k data for the power map: the exponent and the positive auxiliary roots."""

    k: int
    roots: tuple = field(repr=False)
    Rk: tuple

    def p_pair(self, x, ysq):
        return p_pair(self.k, x, ysq)

    def p0(self, x, ysq):
        return self.p_pair(x, ysq)[0]

    def p1(self, x, ysq):
        return self.p_pair(x, ysq)[1]


@functools.lru_cache(maxsize=None)
def power_tables(k: int) -> PowerTables:
    if k < 1:
        raise ValueError("k must be a positive integer")
    roots = tuple(q_poly_roots(k)) if k >= 2 else ()
    return PowerTables(k=k, roots=roots, Rk=tuple(r for r in roots if r > 0))
