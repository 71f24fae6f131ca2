"""Stem functions and the star-algebra of the slice functions they induce.

A polynomial stem is an ``(n, 4)`` complex array of ascending coefficients:
row ``d`` multiplies ``z**d``. The quaternionic polynomial
``sum_d q**d a_d`` with real quaternion coefficients ``a_d`` has the stem
whose row ``d`` is ``a_d``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from . import _kernels
from .complexified import CQuat, cmul_array, phi_q, project_pi
from .errors import IdenticallyZero, OutOfDomain, RealPointsInDomain
from .quaternion import Quaternion, qmul

REAL_COEFF_TOL = 1e-12


class Domain(enum.Enum):
    WHOLE_PLANE = "whole"
    UPPER_ONLY = "upper"
    SAMPLED = "sampled"


class SingularityVerdict(enum.Enum):
    NONSINGULAR = 0
    SPHERICAL_DERIV_ZERO = 1
    SLICE_DERIV_ZERO = 2
    TANGENT_CASE = 3


def _merge_domain(a: Domain, b: Domain) -> Domain:
    if Domain.UPPER_ONLY in (a, b):
        return Domain.UPPER_ONLY
    return Domain.WHOLE_PLANE


@dataclass(frozen=True, eq=False)
class StemPoly:
    """Polynomial stem ``F = c0 + c1 i + c2 j + c3 k`` in one complex variable.

    Parameters
    ----------
    coeffs : array_like, shape (n, 4)
        Ascending complex coefficients.
    domain : Domain
        ``WHOLE_PLANE`` stems have real coefficients and are defined on all of
        C. ``UPPER_ONLY`` stems are given on the upper half-plane and extended
        to the lower one by ``F(z) = conj F(conj z)``.
    """

    coeffs: np.ndarray
    domain: Domain = Domain.WHOLE_PLANE

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex, copy=True)
        if c.ndim != 2 or c.shape[1] != 4 or c.shape[0] == 0:
            raise ValueError(f"stem coefficients must have shape (n, 4), got {c.shape}")
        # drop exact trailing zeros, keep at least the constant term
        n = c.shape[0]
        while n > 1 and not c[n - 1].any():
            n -= 1
        c = np.ascontiguousarray(c[:n])
        if self.domain is Domain.SAMPLED:
            raise ValueError("polynomial stems cannot carry the SAMPLED tag")
        if self.domain is Domain.WHOLE_PLANE:
            if np.abs(c.imag).max() > REAL_COEFF_TOL:
                raise ValueError("whole-plane stems need real coefficients")
            c = c.real.astype(complex)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    # construction

    @classmethod
    def from_components(cls, c0, c1=(), c2=(), c3=(), domain=Domain.WHOLE_PLANE) -> "StemPoly":
        comps = [np.atleast_1d(np.asarray(c, dtype=complex)) for c in (c0, c1, c2, c3)]
        n = max(len(c) for c in comps) or 1
        out = np.zeros((n, 4), dtype=complex)
        for h, c in enumerate(comps):
            out[: len(c), h] = c
        return cls(out, domain)

    @classmethod
    def from_quaternion_coeffs(cls, coeffs) -> "StemPoly":
        """Stem of ``q -> sum_d q**d a_d`` for real quaternion coefficients ``a_d``."""
        return cls(np.asarray(coeffs, dtype=float).reshape(-1, 4))

    @classmethod
    def constant(cls, w, domain: Domain | None = None) -> "StemPoly":
        w = np.asarray(w, dtype=complex).reshape(1, 4)
        if domain is None:
            domain = Domain.WHOLE_PLANE if not w.imag.any() else Domain.UPPER_ONLY
        return cls(w, domain)

    @classmethod
    def identity(cls) -> "StemPoly":
        """Stem of ``q -> q``."""
        return cls(np.array([[0, 0, 0, 0], [1, 0, 0, 0]], dtype=complex))

    @classmethod
    def from_json(cls, data: dict) -> "StemPoly":
        from .complexified import _parse_complex

        if not isinstance(data, dict):
            raise ValueError("stem JSON must be an object")
        try:
            comps = [[_parse_complex(x) for x in data[f"c{h}"]] for h in range(4)]
            domain = Domain(data.get("domain", "whole"))
        except KeyError as exc:
            raise ValueError(f"stem JSON missing field {exc}") from None
        if domain is Domain.SAMPLED:
            raise ValueError("polynomial stem JSON cannot be tagged sampled")
        return cls.from_components(*comps, domain=domain)

    def to_json(self) -> dict:
        out = {f"c{h}": [[z.real, z.imag] for z in self.coeffs[:, h]] for h in range(4)}
        out["domain"] = self.domain.value
        return out

    # inspection

    @property
    def c0(self) -> np.ndarray:
        return self.coeffs[:, 0]

    @property
    def c1(self) -> np.ndarray:
        return self.coeffs[:, 1]

    @property
    def c2(self) -> np.ndarray:
        return self.coeffs[:, 2]

    @property
    def c3(self) -> np.ndarray:
        return self.coeffs[:, 3]

    @property
    def degree(self) -> int:
        return self.coeffs.shape[0] - 1

    def is_slice_preserving(self, tol: float = 0.0) -> bool:
        return bool(np.abs(self.coeffs[:, 1:]).max() <= tol)

    def allclose(self, other: "StemPoly", tol: float = 1e-12) -> bool:
        n = max(self.coeffs.shape[0], other.coeffs.shape[0])
        a = np.zeros((n, 4), dtype=complex)
        b = np.zeros((n, 4), dtype=complex)
        a[: self.coeffs.shape[0]] = self.coeffs
        b[: other.coeffs.shape[0]] = other.coeffs
        return bool(np.abs(a - b).max() <= tol)

    # evaluation

    def values(self, z) -> np.ndarray:
        """Evaluate at one or many points; returns an array with trailing axis 4."""
        z = np.asarray(z, dtype=complex)
        shape = z.shape
        flat = np.ascontiguousarray(z.reshape(-1))
        if self.domain is Domain.UPPER_ONLY:
            if np.any(flat.imag == 0):
                raise OutOfDomain("upper-half-plane stem evaluated at a real point")
            lower = flat.imag < 0
            flat = np.where(lower, flat.conj(), flat)
            out = _kernels.horner(self.coeffs, np.ascontiguousarray(flat))
            out[lower] = out[lower].conj()
        else:
            out = _kernels.horner(self.coeffs, flat)
        return out.reshape(shape + (4,))

    def __call__(self, z) -> CQuat:
        return CQuat.from_array(self.values(complex(z)))

    def abs_values(self, z) -> np.ndarray:
        """Evaluate the stem with absolute-value coefficients at ``|z|``: a magnitude bound."""
        r = np.abs(np.asarray(z, dtype=complex))
        return np.polynomial.polynomial.polyval(r, np.abs(self.coeffs).max(axis=1))

    def derivative(self) -> "StemPoly":
        if self.degree == 0:
            return StemPoly(np.zeros((1, 4)), self.domain)
        d = np.arange(1, self.degree + 1)[:, None]
        return StemPoly(self.coeffs[1:] * d, self.domain)

    # algebra

    def __add__(self, other: "StemPoly") -> "StemPoly":
        n = max(self.coeffs.shape[0], other.coeffs.shape[0])
        out = np.zeros((n, 4), dtype=complex)
        out[: self.coeffs.shape[0]] += self.coeffs
        out[: other.coeffs.shape[0]] += other.coeffs
        return StemPoly(out, _merge_domain(self.domain, other.domain))

    def __neg__(self) -> "StemPoly":
        return StemPoly(-self.coeffs, self.domain)

    def __sub__(self, other: "StemPoly") -> "StemPoly":
        return self + (-other)

    def scale(self, c: complex) -> "StemPoly":
        dom = self.domain if complex(c).imag == 0 else Domain.UPPER_ONLY
        return StemPoly(self.coeffs * c, dom)


@dataclass(frozen=True, eq=False)
class StemSampled:
    """Stem values known only on a finite sample set.

    Lookups snap to the nearest sample within ``tol * (1 + |z|)``; a query
    whose conjugate is a sample returns the conjugated value.
    """

    points: np.ndarray
    values_: np.ndarray
    tol: float = 1e-12

    def __post_init__(self):
        p = np.array(self.points, dtype=complex).reshape(-1)
        v = np.array(self.values_, dtype=complex).reshape(-1, 4)
        if p.shape[0] != v.shape[0]:
            raise ValueError("one stem value per sample point is required")
        p.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "points", p)
        object.__setattr__(self, "values_", v)

    domain = Domain.SAMPLED

    @classmethod
    def from_function(cls, func: Callable, points, tol: float = 1e-12) -> "StemSampled":
        pts = np.asarray(points, dtype=complex).reshape(-1)
        return cls(pts, np.array([np.asarray(func(z), dtype=complex) for z in pts]), tol)

    def values(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        shape = z.shape
        flat = z.reshape(-1)
        out = np.empty((flat.shape[0], 4), dtype=complex)
        for i, zi in enumerate(flat):
            lim = self.tol * (1.0 + abs(zi))
            d = np.abs(self.points - zi)
            j = int(np.argmin(d))
            if d[j] <= lim:
                out[i] = self.values_[j]
                continue
            d = np.abs(self.points - zi.conjugate())
            j = int(np.argmin(d))
            if d[j] <= lim:
                out[i] = self.values_[j].conj()
                continue
            raise OutOfDomain(f"no stem sample within {lim:.3g} of {zi!r}")
        return out.reshape(shape + (4,))

    def __call__(self, z) -> CQuat:
        return CQuat.from_array(self.values(complex(z)))


Stem = Union[StemPoly, StemSampled]


def star_product(F: StemPoly, G: StemPoly) -> StemPoly:
    """Stem of the star-product: polynomial convolution with the C (x) H product."""
    prod = cmul_array(F.coeffs[:, None, :], G.coeffs[None, :, :])
    nf, ng = F.coeffs.shape[0], G.coeffs.shape[0]
    out = np.zeros((nf + ng - 1, 4), dtype=complex)
    for a in range(nf):
        out[a : a + ng] += prod[a]
    return StemPoly(out, _merge_domain(F.domain, G.domain))


def star_conj(F: StemPoly) -> StemPoly:
    """Slice conjugate: negate the i, j, k components."""
    return StemPoly(F.coeffs * np.array([1, -1, -1, -1]), F.domain)


def symmetrization(F: StemPoly) -> StemPoly:
    """``F`` star its slice conjugate; always slice preserving."""
    return star_product(F, star_conj(F))


def star_power(F: StemPoly, k: int) -> StemPoly:
    """k-th star-power by repeated squaring."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    result = None
    base = F
    while k:
        if k & 1:
            result = base if result is None else star_product(result, base)
        k >>= 1
        if k:
            base = star_product(base, base)
    return result


def stem_values(F, z) -> np.ndarray:
    """Values of a polynomial stem, sampled stem or callable at ``z``."""
    if isinstance(F, (StemPoly, StemSampled)):
        return F.values(z)
    z = np.asarray(z, dtype=complex)
    return np.array([np.asarray(F(zi), dtype=complex) for zi in z.reshape(-1)]).reshape(
        z.shape + (4,)
    )


def eval_slice(F: Stem, z: complex, I) -> Quaternion:
    """Value of the induced slice function at the quaternion ``Re z + I Im z``."""
    return project_pi(stem_values(F, complex(z)), I)


# distinguished upper-half-plane constants
J_STEM = StemPoly(np.array([[1j, 0, 0, 0]]), Domain.UPPER_ONLY)
ELL_PLUS = StemPoly(np.array([[0.5, -0.5j, 0, 0]]), Domain.UPPER_ONLY)
ELL_MINUS = StemPoly(np.array([[0.5, 0.5j, 0, 0]]), Domain.UPPER_ONLY)


def peirce_parts(F: StemPoly) -> tuple[StemPoly, StemPoly]:
    """Split an upper-half-plane stem as ``Fplus * ELL_PLUS + Fminus * ELL_MINUS``.

    The idempotents are zero divisors, so the split is not unique; this
    returns the one whose parts have real coefficients: each coefficient
    ``a + sqrt(-1) b`` gives ``a + b i`` to the plus part and ``a - b i`` to
    the minus part.

    Raises
    ------
    RealPointsInDomain
        For whole-plane stems, where the idempotents are undefined.
    """
    if F.domain is not Domain.UPPER_ONLY:
        raise RealPointsInDomain("Peirce parts need a stem on a domain without real points")
    plus = np.empty_like(F.coeffs)
    minus = np.empty_like(F.coeffs)
    unit_i = (0.0, 1.0, 0.0, 0.0)
    for d, c in enumerate(F.coeffs):
        re = Quaternion(*c.real)
        bi = qmul(Quaternion(*c.imag), unit_i)
        plus[d] = re + bi
        minus[d] = re - bi
    return StemPoly(plus), StemPoly(minus)


def peirce_reconstruct(Fplus: StemPoly, Fminus: StemPoly) -> StemPoly:
    return star_product(Fplus, ELL_PLUS) + star_product(Fminus, ELL_MINUS)


def classify_differential(F: StemPoly, z: complex, I, tol: float = 1e-9) -> SingularityVerdict:
    """Which degeneration, if any, makes the differential of the slice function singular.

    Tests run in order: vanishing imaginary part of ``F(z)``, vanishing
    ``F'(z)``, then the tangency condition ``I a + a I = 0`` for
    ``a = pi(F'(z), I) * Im(F(z))^-1``. Thresholds are ``tol`` times the
    absolute-coefficient evaluation of the relevant polynomial at ``|z|``.
    """
    z = complex(z)
    if z.imag <= 0:
        raise ValueError("classify_differential needs Im z > 0")
    dF = F.derivative()
    w = F(z)
    dw = dF(z)
    sF = float(F.abs_values(z))
    sD = float(dF.abs_values(z))
    F1 = w.im
    n1 = F1.norm()
    if n1 <= tol * sF:
        return SingularityVerdict.SPHERICAL_DERIV_ZERO
    if max(abs(x) for x in dw) <= tol * sD:
        return SingularityVerdict.SLICE_DERIV_ZERO
    a = qmul(project_pi(dw, I), F1.inverse())
    anti = qmul(I, a) + qmul(a, I)
    if anti.norm() <= tol * sD / n1:
        return SingularityVerdict.TANGENT_CASE
    return SingularityVerdict.NONSINGULAR


def phi_multiplicity(F: StemPoly, z: complex, I, tol: float = 1e-9) -> int:
    """Vanishing order at ``z`` of ``zeta -> phi_q(F(zeta), q)`` with ``q = f(Re z + I Im z)``.

    The composite is built as an exact polynomial; its Taylor coefficients at
    ``z`` are compared against ``tol`` times the same coefficients of the
    absolute-value majorant.

    Raises
    ------
    IdenticallyZero
        If every Taylor coefficient vanishes.
    """
    z = complex(z)
    q = np.asarray(eval_slice(F, z, I), dtype=complex)
    P = F.coeffs.copy()
    P[0] -= q
    phi = np.zeros(2 * P.shape[0] - 1, dtype=complex)
    major = np.zeros(2 * P.shape[0] - 1)
    for h in range(4):
        phi += np.convolve(P[:, h], P[:, h])
        major += np.convolve(np.abs(P[:, h]), np.abs(P[:, h]))
    r = abs(z)
    n = phi.shape[0]
    for m in range(n):
        j = np.arange(m, n)
        binom = np.array([math.comb(int(jj), m) for jj in j], dtype=float)
        val = np.sum(binom * phi[m:] * z ** (j - m))
        bound = np.sum(binom * major[m:] * r ** (j - m))
        if abs(val) > tol * bound:
            return m
    raise IdenticallyZero("the composite with the quadric vanishes identically")


__all__ = [
    "Domain",
    "SingularityVerdict",
    "StemPoly",
    "StemSampled",
    "Stem",
    "star_product",
    "star_conj",
    "symmetrization",
    "star_power",
    "stem_values",
    "eval_slice",
    "J_STEM",
    "ELL_PLUS",
    "ELL_MINUS",
    "peirce_parts",
    "peirce_reconstruct",
    "classify_differential",
    "phi_multiplicity",
    "phi_q",
]
