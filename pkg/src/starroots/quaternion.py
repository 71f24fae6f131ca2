"""Real quaternions in the basis (1, i, j, k).

Quaternions are immutable named tuples, so they unpack, hash and compare like
plain 4-tuples while carrying the Hamilton product as ``*``.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import NearReal

EPS_REAL = 1e-10


class Quaternion(NamedTuple):
    """q0 + q1 i + q2 j + q3 k with real coordinates."""

    q0: float
    q1: float
    q2: float
    q3: float

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        a = np.asarray(a, dtype=float).reshape(4)
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    @classmethod
    def from_complex(cls, z: complex, I: "Quaternion") -> "Quaternion":
        """The image of ``z`` in the slice spanned by 1 and ``I``."""
        z = complex(z)
        return cls(z.real, z.imag * I.q1, z.imag * I.q2, z.imag * I.q3)

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)

    @property
    def scalar(self) -> float:
        return self.q0

    @property
    def vector(self) -> np.ndarray:
        return np.array(self[1:], dtype=float)

    def conj(self) -> "Quaternion":
        return Quaternion(self.q0, -self.q1, -self.q2, -self.q3)

    def norm(self) -> float:
        return math.sqrt(self.q0 ** 2 + self.q1 ** 2 + self.q2 ** 2 + self.q3 ** 2)

    def vector_norm(self) -> float:
        return math.sqrt(self.q1 ** 2 + self.q2 ** 2 + self.q3 ** 2)

    def inverse(self) -> "Quaternion":
        n2 = self.q0 ** 2 + self.q1 ** 2 + self.q2 ** 2 + self.q3 ** 2
        if n2 == 0.0:
            raise ZeroDivisionError("quaternion 0 has no inverse")
        c = self.conj()
        return Quaternion(c.q0 / n2, c.q1 / n2, c.q2 / n2, c.q3 / n2)

    def __add__(self, other):
        if isinstance(other, tuple):
            return Quaternion(*(a + b for a, b in zip(self, other)))
        return Quaternion(self.q0 + other, self.q1, self.q2, self.q3)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, tuple):
            return Quaternion(*(a - b for a, b in zip(self, other)))
        return Quaternion(self.q0 - other, self.q1, self.q2, self.q3)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Quaternion(-self.q0, -self.q1, -self.q2, -self.q3)

    def __mul__(self, other):
        if isinstance(other, tuple):
            return qmul(self, other)
        return Quaternion(*(a * other for a in self))

    def __rmul__(self, other):
        return Quaternion(*(other * a for a in self))

    def __truediv__(self, other):
        return Quaternion(*(a / other for a in self))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Quaternion(1.0, 0.0, 0.0, 0.0)
        for _ in range(k):
            out = qmul(out, self)
        return out


class ImUnit(Quaternion):
    """Imaginary unit: zero scalar part and unit norm, so that I*I = -1."""

    __slots__ = ()

    def __new__(cls, q1: float, q2: float, q3: float, tol: float = 1e-12):
        n = math.sqrt(q1 * q1 + q2 * q2 + q3 * q3)
        if abs(n - 1.0) > tol:
            raise ValueError(f"imaginary unit must have norm 1, got {n!r}")
        return super().__new__(cls, 0.0, float(q1), float(q2), float(q3))

    def __getnewargs__(self):
        return (self.q1, self.q2, self.q3)

    @classmethod
    def from_vector(cls, v) -> "ImUnit":
        """Normalise a nonzero 3-vector (or the vector part of a quaternion)."""
        v = np.asarray(v, dtype=float).reshape(-1)[-3:]
        n = np.linalg.norm(v)
        if n == 0.0:
            raise ValueError("zero vector has no direction")
        v = v / n
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @classmethod
    def random(cls, rng: np.random.Generator) -> "ImUnit":
        return cls.from_vector(rng.normal(size=3))


I_UNIT = ImUnit(1.0, 0.0, 0.0)
J_UNIT = ImUnit(0.0, 1.0, 0.0)
K_UNIT = ImUnit(0.0, 0.0, 1.0)


def qmul(p, q) -> Quaternion:
    """Hamilton product ``p*q`` in scalar/vector form.

    The real part is p0 q0 - <p_v, q_v>; the vector part is
    p0 q_v + q0 p_v + p_v x q_v.
    """
    p0, p1, p2, p3 = p
    q0, q1, q2, q3 = q
    return Quaternion(
        p0 * q0 - (p1 * q1 + p2 * q2 + p3 * q3),
        p0 * q1 + q0 * p1 + (p2 * q3 - p3 * q2),
        p0 * q2 + q0 * p2 + (p3 * q1 - p1 * q3),
        p0 * q3 + q0 * p3 + (p1 * q2 - p2 * q1),
    )


def quat_kth_roots(q, k: int, eps_real: float = EPS_REAL) -> list[Quaternion]:
    """The k quaternion k-th roots of a non-real quaternion.

    Parameters
    ----------
    q : Quaternion or sequence of 4 floats
    k : int
        Positive root order.
    eps_real : float
        ``q`` counts as real when its vector norm is at most
        ``eps_real * (1 + |q|)``.

    Returns
    -------
    list of Quaternion
        Root ``n`` is ``|q|**(1/k) * exp(I (theta + 2 pi n) / k)`` with
        ``I = q_v / |q_v|`` and ``theta = atan2(|q_v|, q0)`` in (0, pi).

    Raises
    ------
    NearReal
        If ``q`` is real within tolerance; real quaternions have infinitely
        many roots.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    q = Quaternion(*(float(x) for x in q))
    nv = q.vector_norm()
    if nv <= eps_real * (1.0 + q.norm()):
        raise NearReal(f"quaternion {tuple(q)} is real within tolerance")
    I = q.vector / nv
    theta = math.atan2(nv, q.q0)
    r = q.norm() ** (1.0 / k)
    out = []
    for n in range(k):
        phi = (theta + 2.0 * math.pi * n) / k
        c, s = r * math.cos(phi), r * math.sin(phi)
        out.append(Quaternion(c, s * I[0], s * I[1], s * I[2]))
    return out
