"""Self-checks behind ``starroots verify``: each returns a measured value and a bound."""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .complexified import classify_stratum, cmul_array
from .continuation import (
    DomainPath,
    global_roots_no_real,
    global_roots_with_real,
    monodromy_of_loop,
    permutation_cycles,
    verify_group_table,
)
from .power_map import finite_difference_jacobian, p_pair, power_tables, sigma_k_array, sigma_k_jacobian_det
from .quaternion import Quaternion, qmul
from .root_solver import point_star_roots
from .slice_function import StemPoly, star_power, star_product


@dataclass
class CheckResult:
    name: str
    measured: float
    bound: float
    passed: bool
    seconds: float


def _random_omega_k(rng, k, n):
    out = []
    while len(out) < n:
        w = rng.normal(size=4) + 1j * rng.normal(size=4)
        if classify_stratum(w, k).in_omega_k:
            out.append(w)
    return np.array(out)


def check_quaternion_norm(rng, n):
    worst = 0.0
    for _ in range(n):
        p, q = Quaternion(*rng.normal(size=4)), Quaternion(*rng.normal(size=4))
        worst = max(worst, abs(qmul(p, q).norm() - p.norm() * q.norm()) / (p.norm() * q.norm()))
    return worst, 1e-12


def check_cmul_associative(rng, n):
    a, b, c = (rng.normal(size=(n, 4)) + 1j * rng.normal(size=(n, 4)) for _ in range(3))
    lhs = cmul_array(cmul_array(a, b), c)
    rhs = cmul_array(a, cmul_array(b, c))
    scale = np.abs(a).max(1) * np.abs(b).max(1) * np.abs(c).max(1)
    return float((np.abs(lhs - rhs).max(1) / scale).max()), 1e-10


def check_pell(rng, n):
    worst = 0.0
    for k in range(1, 21):
        x = rng.normal(size=n) + 1j * rng.normal(size=n)
        y = rng.normal(size=n) + 1j * rng.normal(size=n)
        p0, p1 = p_pair(k, x, y * y)
        scale = (np.abs(x) + np.abs(y)) ** (2 * k)
        worst = max(worst, float((np.abs(p0 ** 2 + y * y * p1 ** 2 - (x * x + y * y) ** k) / scale).max()))
    return worst, 1e-10


def check_jacobian(rng, n):
    worst = 0.0
    for k in range(2, 9):
        for w in _random_omega_k(rng, k, n):
            J = finite_difference_jacobian(w, k, stencil="circle")
            ex = sigma_k_jacobian_det(w, k)
            worst = max(worst, abs(np.linalg.det(J) - ex) / abs(ex))
    return worst, 1e-4


def check_root_round_trip(rng, n):
    worst = 0.0
    for k in range(2, 7):
        for _ in range(n):
            w = rng.normal(size=4) + 1j * rng.normal(size=4)
            if not classify_stratum(w, k).in_omega:
                continue
            br = point_star_roots(w, k)
            V = np.array([b.value for b in br])
            res = np.abs(sigma_k_array(V, k) - w).max() / (1 + np.abs(w).max())
            worst = max(worst, res)
    return worst, 1e-9


def check_q_roots(rng, n):
    bad = sum(len(power_tables(k).Rk) != (k - 1) // 2 for k in range(1, 21))
    return float(bad), 0.0


def check_group_tables(rng, n):
    bad = sum(not verify_group_table(k)["passed"] for k in range(1, 9))
    return float(bad), 0.0


def _cube_stem():
    return StemPoly.from_components([0, -3, 0, 1], [-1, 0, 3])


def check_cube_example(rng, n):
    g0 = StemPoly.from_quaternion_coeffs([[0, 1, 0, 0], [1, 0, 0, 0]])
    err = float(np.abs(star_power(g0, 3).coeffs - _cube_stem().coeffs).max())
    r3 = np.sqrt(3)
    G = [
        lambda z: np.array([z, 1, 0, 0]),
        lambda z: np.array([-z / 2 - r3 / 2, z * r3 / 2 - 0.5, 0, 0]),
        lambda z: np.array([-z / 2 + r3 / 2, -z * r3 / 2 - 0.5, 0, 0]),
    ]
    path = DomainPath.vertical_through(0.0, 0.5, 20)
    for r in global_roots_with_real(_cube_stem(), path, 3):
        err = max(
            err,
            min(float(np.abs(r.branch_values - np.array([g(z) for z in path.points])).max()) for g in G),
        )
    up = DomainPath.segment(1 + 0.5j, 2 + 0.5j, 20)
    xi = np.exp(2j * np.pi / 3)
    for r in global_roots_no_real(_cube_stem(), up, 3):
        vals = r.branch_values[: len(up)]
        err = max(
            err,
            min(
                float(np.abs(vals - xi ** a * np.array([g(z) for z in up.points])).max())
                for a in range(3)
                for g in G
            ),
        )
    return err, 1e-8


def check_quadratic_example(rng, n):
    qi = StemPoly.from_quaternion_coeffs([[0, -1, 0, 0], [1, 0, 0, 0]])
    qj = StemPoly.from_quaternion_coeffs([[0, 0, -1, 0], [1, 0, 0, 0]])
    F = star_product(qi, qj)
    ok = F.allclose(StemPoly.from_components([0, 0, 1], [0, -1], [0, -1], [1]), 0.0)
    loop = DomainPath.circle(1j / np.sqrt(2), 0.15, 200)
    cycles = permutation_cycles(monodromy_of_loop(F, loop, 2))
    ok = ok and len(cycles) == 1 and len(cycles[0]) == 2
    return (0.0 if ok else 1.0), 0.0


CHECKS: list[tuple[str, Callable]] = [
    ("quaternion norm is multiplicative", check_quaternion_norm),
    ("complexified product is associative", check_cmul_associative),
    ("modulus identity of the power polynomials", check_pell),
    ("Jacobian determinant vs difference quotients", check_jacobian),
    ("pointwise roots round-trip", check_root_round_trip),
    ("auxiliary root counts (failures)", check_q_roots),
    ("automorphism group tables (failures)", check_group_tables),
    ("cubic worked example, max deviation", check_cube_example),
    ("quadratic worked example (failures)", check_quadratic_example),
]


def run_checks(samples: int = 50, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        measured, bound = fn(rng, samples)
        out.append(CheckResult(name, float(measured), bound, measured <= bound, time.perf_counter() - t0))
    return out


def format_table(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'check':<{width}}  {'measured':>10}  {'bound':>8}  result"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.name:<{width}}  {r.measured:>10.3e}  {r.bound:>8.1e}  {status}")
    return "\n".join(lines)
