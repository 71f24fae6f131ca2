"""Pointwise k-th roots in C (x) H.

Every ``w`` with nonzero vector square is ``u0 + u1 s`` for a complex pair
``(u0, u1)`` and a complex imaginary unit ``s``. In those coordinates the
k-th power acts like the power of ``u0 + i u1``, and the k*k preimages come
from a Cayley transform followed by two layers of complex radicals:

1. ``lam = u0 / u1`` and ``c = cayley(lam)``;
2. each k-th root ``c_m`` of ``c`` gives ``t_m = cayley_inverse(c_m)``;
3. each k-th root ``omega_mn`` of ``u1 / p1(t_m, 1)`` gives the branch
   ``omega_mn * (t_m + s)``.

Labels ``(m, n)`` count arguments upwards from the principal k-th root.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._kernels import _pykernels
from .complexified import (
    EPS_STRATUM,
    CImUnit,
    CQuat,
    Stratum,
    StratumTag,
    as_carray,
    classify_stratum,
    stratum_codes,
)
from .errors import NotInOmega, OnVinfinity, PoleAtMinusI
from .power_map import power_tables

CAYLEY_GUARD = 1e-14


def principal_root(x, k: int, n: int = 0):
    """k-th root of ``x`` with argument ``(arg x + 2 pi n) / k``, ``arg`` in (-pi, pi]."""
    x = np.asarray(x, dtype=complex)
    r = np.abs(x) ** (1.0 / k)
    ang = (np.arctan2(x.imag, x.real) + 2.0 * np.pi * n) / k
    out = r * (np.cos(ang) + 1j * np.sin(ang))
    return complex(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class RhoLift:
    """``w = u0 + u1 s`` with ``s`` a complex imaginary unit."""

    u0: complex
    u1: complex
    s: CImUnit

    def reconstruct(self) -> CQuat:
        return CQuat(self.u0, self.u1 * self.s.z1, self.u1 * self.s.z2, self.u1 * self.s.z3)

    def flipped(self) -> "RhoLift":
        """The other lift of the same point: ``(u0, -u1, -s)``."""
        s = self.s
        return RhoLift(self.u0, -self.u1, CImUnit(-s.z1, -s.z2, -s.z3, tol=1e-9))


def rho_lift(w, tol: float = EPS_STRATUM) -> RhoLift:
    """Principal lift: ``u1`` is the principal square root of the vector square.

    Raises
    ------
    OnVinfinity
        If the vector square vanishes within ``tol * (1 + max|z_h|^2)``.
    """
    w = CQuat(*map(complex, w))
    ysq = w.vector_square()
    if abs(ysq) <= tol * (1.0 + w.max_abs() ** 2):
        raise OnVinfinity(f"vector square {ysq!r} vanishes")
    u1 = principal_root(ysq, 2)
    return RhoLift(w.z0, u1, CImUnit(w.z1 / u1, w.z2 / u1, w.z3 / u1, tol=1e-9))


def cayley(z: complex) -> complex:
    """``(z - i) / (z + i)``."""
    z = complex(z)
    if z == -1j:
        raise PoleAtMinusI("Cayley transform has a pole at -i")
    return (z - 1j) / (z + 1j)


def cayley_inverse(c: complex) -> complex:
    """``i (1 + c) / (1 - c)``; the value 1 corresponds to the point at infinity."""
    c = complex(c)
    if c == 1:
        raise ZeroDivisionError("the inverse Cayley transform has a pole at 1")
    return 1j * (1 + c) / (1 - c)


@dataclass(frozen=True)
class RootBranch:
    """One of the k*k preimages of ``w`` under the k-th power map."""

    label: tuple
    value: CQuat
    lift: RhoLift
    t: complex
    stratum: Stratum | None = field(default=None, compare=False)

    @property
    def label_str(self) -> str:
        return f"{self.label[0]}.{self.label[1]}"


def distinctness_tolerance(w, k: int) -> float:
    return 1e-8 * max(1.0, float(np.abs(as_carray(w)).max()) ** (1.0 / k))


def star_roots_array(W, k: int) -> np.ndarray:
    """Raw ``(N, k*k, 4)`` branch values for a batch of targets; no stratum checks."""
    W = np.ascontiguousarray(as_carray(W).reshape(-1, 4))
    return _kernels.star_roots(W, k)[0]


def point_star_roots(
    w,
    k: int,
    tol: float = EPS_STRATUM,
    flip_lift: bool = False,
    check_outputs: bool = True,
) -> list[RootBranch]:
    """All k*k preimages of ``w`` under the k-th power map, sorted by label.

    Parameters
    ----------
    w : CQuat or sequence of 4 complex
    k : int
    tol : float
        Stratum tolerance.
    flip_lift : bool
        Start from the lift ``(u0, -u1, -s)`` instead of the principal one.
        The value set is the same; the labels change.
    check_outputs : bool
        Classify every branch value and warn if one falls outside the
        source domain, or if two branches are not distinct.

    Raises
    ------
    NotInOmega
        If ``w`` is on the zero-divisor quadric, has zero vector square or
        zero scalar coordinate. The exception carries the stratum.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    w = CQuat(*map(complex, w))
    st = classify_stratum(w, k, tol)
    if not st.in_omega:
        raise NotInOmega(f"target {tuple(w)} lies on stratum {st}", st)
    lift = rho_lift(w, tol)
    if flip_lift:
        lift = lift.flipped()
    s = lift.s
    if flip_lift:
        values, t, omega = _pykernels.star_roots_from_lift(
            np.array([lift.u0]), np.array([lift.u1]), np.array([[s.z1, s.z2, s.z3]]), k
        )
    else:
        values, t, omega, _ = _kernels.star_roots(w.as_array().reshape(1, 4), k)
    values, t, omega = values[0], t[0], omega[0]
    # c_m = 1 would put t_m at infinity; it cannot happen on the domain, but rounding can get close
    if not (np.all(np.isfinite(values)) and np.abs(t).max() < 1.0 / CAYLEY_GUARD):
        raise NotInOmega(f"Cayley step degenerated at {tuple(w)}; treated as a stratum hit", st)
    if check_outputs:
        codes, ridx = stratum_codes(values, k, tol)
        bad = codes != StratumTag.OMEGA_K.value
        if bad.any():
            warnings.warn(
                f"{int(bad.sum())} branch value(s) of the k-th root fall outside the source domain",
                RuntimeWarning,
                stacklevel=2,
            )
        d = np.abs(values[:, None, :] - values[None, :, :]).max(axis=-1)
        np.fill_diagonal(d, np.inf)
        if d.min() <= distinctness_tolerance(w, k):
            warnings.warn("two root branches coincide within tolerance", RuntimeWarning, stacklevel=2)
    else:
        codes = ridx = None
    rk = power_tables(k).Rk
    out = []
    for m in range(k):
        for n in range(k):
            j = m * k + n
            om = complex(omega[j])
            if codes is None:
                bst = None
            else:
                tag = StratumTag(int(codes[j]))
                bst = Stratum(tag, int(ridx[j]), rk[int(ridx[j])]) if tag is StratumTag.V_RSQ else Stratum(tag)
            out.append(
                RootBranch(
                    label=(m, n),
                    value=CQuat.from_array(values[j]),
                    lift=RhoLift(complex(t[m]) * om, om, s),
                    t=complex(t[m]),
                    stratum=bst,
                )
            )
    return out


def branch_residual(branch: RootBranch, w, k: int) -> float:
    """``max|sigma_k(value) - w|``."""
    from .power_map import sigma_k_array

    return float(np.abs(sigma_k_array(branch.value.as_array(), k) - as_carray(w)).max())
