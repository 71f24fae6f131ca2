"""Complexified quaternions, stored as four complex coordinates.

A value ``w = (z0, z1, z2, z3)`` splits as ``w0 + sqrt(-1) w1`` where the real
quaternions ``w0`` and ``w1`` are the coordinate-wise real and imaginary
parts. The product is the Hamilton product with complex coordinates.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels
from .quaternion import Quaternion, qmul

EPS_STRATUM = 1e-10


class CQuat(NamedTuple):
    """Element of C (x) H in coordinates (1, i, j, k)."""

    z0: complex
    z1: complex
    z2: complex
    z3: complex

    @classmethod
    def from_array(cls, a) -> "CQuat":
        a = np.asarray(a, dtype=complex).reshape(4)
        return cls(complex(a[0]), complex(a[1]), complex(a[2]), complex(a[3]))

    @classmethod
    def from_parts(cls, w0, w1) -> "CQuat":
        """Build ``w0 + sqrt(-1) w1`` from two real quaternions."""
        return cls(*(complex(a, b) for a, b in zip(w0, w1)))

    @classmethod
    def from_json(cls, data) -> "CQuat":
        """Parse ``[[re, im], [re, im], [re, im], [re, im]]``."""
        if not isinstance(data, (list, tuple)) or len(data) != 4:
            raise ValueError("CQuat JSON must be a list of four [re, im] pairs")
        return cls(*(_parse_complex(x) for x in data))

    def to_json(self) -> list:
        return [[z.real, z.imag] for z in map(complex, self)]

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=complex)

    @property
    def re(self) -> Quaternion:
        return Quaternion(*(complex(z).real for z in self))

    @property
    def im(self) -> Quaternion:
        return Quaternion(*(complex(z).imag for z in self))

    def qconj(self) -> "CQuat":
        """Quaternionic conjugate: negate the vector coordinates."""
        return CQuat(self.z0, -self.z1, -self.z2, -self.z3)

    def bar(self) -> "CQuat":
        """Complex conjugate of every coordinate."""
        return CQuat(*(complex(z).conjugate() for z in self))

    def vector_square(self) -> complex:
        return self.z1 * self.z1 + self.z2 * self.z2 + self.z3 * self.z3

    def norm_square(self) -> complex:
        """z0^2 + z1^2 + z2^2 + z3^2, the complex quadratic form."""
        return self.z0 * self.z0 + self.vector_square()

    def max_abs(self) -> float:
        return max(abs(z) for z in self)

    def __add__(self, other):
        return CQuat(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        return CQuat(*(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return CQuat(*(-a for a in self))

    def __mul__(self, other):
        if isinstance(other, tuple):
            return cmul(self, other)
        return CQuat(*(a * other for a in self))

    def __rmul__(self, other):
        return CQuat(*(other * a for a in self))

    def __truediv__(self, other):
        return CQuat(*(a / other for a in self))


class CImUnit(CQuat):
    """Complex imaginary unit: z0 = 0 and z1^2 + z2^2 + z3^2 = 1."""

    __slots__ = ()

    def __new__(cls, z1: complex, z2: complex, z3: complex, tol: float = 1e-12):
        sq = z1 * z1 + z2 * z2 + z3 * z3
        if abs(sq - 1.0) > tol * (1.0 + abs(z1) ** 2 + abs(z2) ** 2 + abs(z3) ** 2):
            raise ValueError(f"vector square must be 1, got {sq!r}")
        return super().__new__(cls, 0j, complex(z1), complex(z2), complex(z3))

    def __getnewargs__(self):
        return (self.z1, self.z2, self.z3)


def _parse_complex(x) -> complex:
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    raise ValueError(f"complex numbers are serialized as [re, im], got {x!r}")


def as_carray(w) -> np.ndarray:
    """Coordinates of ``w`` as a complex array with trailing axis 4."""
    a = np.asarray(w, dtype=complex)
    if a.shape[-1] != 4:
        raise ValueError(f"expected trailing dimension 4, got shape {a.shape}")
    return a


def cmul(v, w) -> CQuat:
    """Product in C (x) H; the complexified Hamilton product."""
    v0, v1, v2, v3 = v
    w0, w1, w2, w3 = w
    return CQuat(
        v0 * w0 - (v1 * w1 + v2 * w2 + v3 * w3),
        v0 * w1 + w0 * v1 + (v2 * w3 - v3 * w2),
        v0 * w2 + w0 * v2 + (v3 * w1 - v1 * w3),
        v0 * w3 + w0 * v3 + (v1 * w2 - v2 * w1),
    )


def cmul_array(v, w) -> np.ndarray:
    """Row-wise product of broadcastable ``(..., 4)`` arrays."""
    v, w = np.broadcast_arrays(as_carray(v), as_carray(w))
    shape = v.shape
    out = _kernels.cmul(
        np.ascontiguousarray(v.reshape(-1, 4)), np.ascontiguousarray(w.reshape(-1, 4))
    )
    return out.reshape(shape)


def project_pi(w, I) -> Quaternion:
    """Send ``w = w0 + sqrt(-1) w1`` to the quaternion ``w0 + I w1``."""
    w = CQuat(*map(complex, w))
    return w.re + qmul(I, w.im)


def phi_q(w, q) -> complex:
    """Quadric sum of squared coordinate differences between ``w`` and ``q``."""
    return complex(sum((complex(a) - b) ** 2 for a, b in zip(w, q)))


class StratumTag(enum.Enum):
    OMEGA_K = 0
    OMEGA_ONLY = 1
    V_MINUS1 = 2
    V_0 = 3
    V_INF = 4
    V_RSQ = 5


@dataclass(frozen=True)
class Stratum:
    """Where a point sits relative to the covering domain of the k-th power map.

    ``r_index`` and ``r`` are set only for ``V_RSQ`` and identify which
    positive root of the auxiliary polynomial was matched.
    """

    tag: StratumTag
    r_index: Optional[int] = None
    r: Optional[float] = None

    @property
    def in_omega(self) -> bool:
        """True on the target domain: nonzero vector square, norm square and z0."""
        return self.tag not in (StratumTag.V_MINUS1, StratumTag.V_INF, StratumTag.V_0)

    @property
    def in_omega_k(self) -> bool:
        return self.tag is StratumTag.OMEGA_K

    def __str__(self):
        if self.r_index is None:
            return self.tag.name
        return f"{self.tag.name}[{self.r_index}]"


def stratum_codes(W, k: int, tol: float = EPS_STRATUM):
    """Vectorised stratum classification.

    Parameters
    ----------
    W : array_like, shape (N, 4)
    k : int
    tol : float

    Returns
    -------
    codes : ndarray of int
        ``StratumTag`` values.
    r_index : ndarray of int
        Matched root index for ``V_RSQ`` rows, -1 elsewhere.
    """
    from .power_map import power_tables

    W = np.atleast_2d(as_carray(W))
    scale = 1.0 + np.abs(W).max(axis=1) ** 2
    root_scale = np.sqrt(scale)
    z0 = W[:, 0]
    zv2 = W[:, 1] ** 2 + W[:, 2] ** 2 + W[:, 3] ** 2
    n2 = z0 * z0 + zv2
    _, p1 = _kernels.p_pair(k, np.ascontiguousarray(z0), np.ascontiguousarray(zv2))
    codes = np.full(W.shape[0], StratumTag.OMEGA_K.value)
    ridx = np.full(W.shape[0], -1)
    p1_small = np.abs(p1) <= tol * root_scale ** (k - 1)
    codes[p1_small] = StratumTag.OMEGA_ONLY.value
    # later assignments override earlier ones, so go from lowest priority up
    z0sq = z0 * z0
    for i, r in reversed(list(enumerate(power_tables(k).Rk))):
        hit = np.abs(z0sq - r * r * zv2) <= tol * scale * (1.0 + r * r)
        codes[hit] = StratumTag.V_RSQ.value
        ridx[hit] = i
    codes[np.abs(z0) <= tol * root_scale] = StratumTag.V_0.value
    codes[np.abs(zv2) <= tol * scale] = StratumTag.V_INF.value
    codes[np.abs(n2) <= tol * scale] = StratumTag.V_MINUS1.value
    ridx[codes != StratumTag.V_RSQ.value] = -1
    return codes, ridx


def classify_stratum(w, k: int, tol: float = EPS_STRATUM) -> Stratum:
    """Classify ``w`` for the k-th power map.

    A quantity counts as zero when its modulus is at most ``tol`` times
    ``(1 + max|z_h|^2)`` raised to half its degree. Ties are broken in the
    order V_MINUS1, V_INF, V_0, V_RSQ, OMEGA_ONLY.

    Examples
    --------
    >>> classify_stratum((1, 1, 0, 0), 2).tag.name
    'OMEGA_K'
    >>> classify_stratum((1j, 1, 0, 0), 5).tag.name
    'V_MINUS1'
    """
    from .power_map import power_tables

    if k < 1 or tol <= 0:
        raise ValueError("need k >= 1 and tol > 0")
    codes, ridx = stratum_codes(np.asarray(w, dtype=complex).reshape(1, 4), k, tol)
    tag = StratumTag(int(codes[0]))
    if tag is StratumTag.V_RSQ:
        i = int(ridx[0])
        return Stratum(tag, i, power_tables(k).Rk[i])
    return Stratum(tag)
