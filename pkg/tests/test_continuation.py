import json

import numpy as np
import pytest

from oracles import ETA, cubic_g, quad_G
from sampling import random_in, random_real_stem
from starroots.continuation import (
    DomainPath,
    MonodromyElement,
    apply_aut,
    class_votes,
    correction_element,
    dihedral_check,
    global_roots_no_real,
    global_roots_with_real,
    lift_path,
    monodromy_of_loop,
    permutation_cycles,
    scalar_orbits,
    stem_correction,
    t_class,
    t_involution,
    verify_group_table,
)
from starroots.errors import AnchorNotInOmega, AnchorNotReal, PathNotSymmetric
from starroots.root_solver import point_star_roots
from starroots.slice_function import StemPoly, star_power

LOOP = DomainPath.circle(1j / np.sqrt(2), 0.15, 200)


def _quad_root(quad_stem, m, path=None):
    path = path or DomainPath.vertical_through(1.0, 1.5, 60)
    seed = quad_G(m, path.points[path.anchor])
    return lift_path(quad_stem, path, seed, 2, start=path.anchor, label=f"G{m}")


def test_path_constructors():
    p = DomainPath.vertical_through(2.0, 1.0, 10)
    assert len(p) == 21 and p.points[p.anchor] == 2.0
    assert np.allclose(p.points[p.conjugate_pairing()], p.points.conj(), rtol=0, atol=1e-15)
    assert LOOP.closed and LOOP.points[0] == LOOP.points[-1]
    with pytest.raises(ValueError):
        DomainPath([0, 1], closed=True)
    with pytest.raises(AnchorNotReal):
        DomainPath([1j, 2j], anchor=0)
    with pytest.raises(PathNotSymmetric):
        DomainPath.segment(1j, 1 + 1j, 5).conjugate_pairing()


def test_path_json_round_trip():
    for p in (DomainPath.vertical_through(0.5, 1.0, 4), LOOP):
        q = DomainPath.from_json(json.loads(json.dumps(p.to_json())))
        assert np.array_equal(p.points, q.points)
        assert (p.closed, p.anchor) == (q.closed, q.anchor)


def test_lift_tracks_whole_plane_root(cubic_stem):
    path = DomainPath.segment(1 + 1j, 3 + 1j, 50)
    root = lift_path(cubic_stem, path, cubic_g(0, 1 + 1j), 3)
    assert np.abs(root.branch_values - cubic_g(0, path.points)).max() <= 1e-12
    assert root.residuals(cubic_stem, 3).max() <= 1e-12


def test_lift_is_reversible(quad_stem):
    path = DomainPath.segment(2.0, 0.5 + 1.2j, 80)
    w0 = quad_stem.values(2.0)
    for b in point_star_roots(w0, 2):
        fwd = lift_path(quad_stem, path, b, 2)
        back = lift_path(quad_stem, path.reversed(), fwd.branch_values[-1], 2)
        assert np.abs(back.branch_values[::-1] - fwd.branch_values).max() <= 1e-10


def test_quadratic_loop_monodromy(quad_stem):
    perm = monodromy_of_loop(quad_stem, LOOP, 2)
    cycles = permutation_cycles(perm)
    assert len(cycles) == 1 and len(cycles[0]) == 2
    # going round twice undoes the exchange
    twice = monodromy_of_loop(quad_stem, LOOP.then(LOOP), 2)
    assert all(a == b for a, b in twice.items())


def test_contractible_loop_is_trivial(quad_stem):
    perm = monodromy_of_loop(quad_stem, DomainPath.circle(2.0, 0.3, 60), 2)
    assert permutation_cycles(perm) == []


def test_cycles_of_a_permutation():
    perm = {"0.0": "0.1", "0.1": "1.0", "1.0": "0.0", "1.1": "1.1"}
    assert permutation_cycles(perm) == [["0.0", "0.1", "1.0"]]


def test_apply_aut_on_global_root(cubic_stem):
    path = DomainPath.vertical_through(2.0, 0.5, 20)
    root = lift_path(cubic_stem, path, cubic_g(0, 2.0), 3, start=path.anchor)
    same = apply_aut(MonodromyElement(), root, 3)
    assert np.allclose(same.branch_values, root.branch_values, rtol=0, atol=1e-15)
    assert same.label == root.label
    rot = apply_aut(MonodromyElement(a=1), root, 3)
    assert np.allclose(rot.branch_values, ETA * root.branch_values)
    # A(eta) rotates (u0, u1); on the whole-plane roots it cycles G0 -> G1 -> G2
    turned = apply_aut(MonodromyElement(b=1), root, 3)
    assert np.abs(turned.branch_values - cubic_g(1, path.points)).max() <= 1e-12
    assert turned.residuals(cubic_stem, 3).max() <= 1e-11


def test_apply_aut_on_branch():
    w = np.array([0.3, 1.2, -0.7, 0.5], dtype=complex)
    b = point_star_roots(w, 4)[5]
    img = apply_aut(MonodromyElement(a=1), b, 4)
    assert np.allclose(np.asarray(img.value), 1j * np.asarray(b.value))
    back = apply_aut(MonodromyElement(t_flag=1), apply_aut(MonodromyElement(t_flag=1), b, 4), 4)
    assert np.allclose(np.asarray(back.value), np.asarray(b.value))


def test_t_involution(quad_stem):
    g1 = _quad_root(quad_stem, 1)
    g2 = t_involution(g1)
    assert np.allclose(g2.branch_values, quad_G(2, g1.path.points))
    assert np.array_equal(t_involution(g2).branch_values, g1.branch_values)
    with pytest.raises(PathNotSymmetric):
        t_involution(lift_path(quad_stem, DomainPath.segment(2.0, 2 + 1j, 10), quad_G(1, 2.0), 2))


def test_quadratic_classes_and_correction(quad_stem):
    assert t_class(_quad_root(quad_stem, 1), 2) == 1
    assert t_class(_quad_root(quad_stem, 2), 2) == 1
    g3 = _quad_root(quad_stem, 3)
    assert t_class(g3, 2) == 0
    assert class_votes(g3, 2)[0] == len(g3.path)
    g, fixed = stem_correction(_quad_root(quad_stem, 1), 2)
    assert (g.a, g.b, g.delta) == (0, 0, 1)
    assert fixed.t_class == 0
    assert fixed.residuals(quad_stem, 2).max() <= 1e-10


@pytest.mark.parametrize("k", range(2, 7))
def test_correction_element_clears_class(k):
    for c in range(k):
        g = correction_element(c, k)
        assert (c - 2 * g.a - g.delta) % k == 0


def test_cubic_with_real_anchor(cubic_stem):
    path = DomainPath.vertical_through(2.0, 1.0, 30)
    roots = global_roots_with_real(cubic_stem, path, 3)
    assert len(roots) == 3
    found = set()
    for r in roots:
        assert r.t_class == 0
        assert r.residuals(cubic_stem, 3).max() <= 1e-10
        d = [np.abs(r.branch_values - cubic_g(b, path.points)).max() for b in range(3)]
        assert min(d) <= 1e-10
        found.add(int(np.argmin(d)))
    assert found == {0, 1, 2}
    # a scalar multiple is no longer reflection-fixed
    assert apply_aut(MonodromyElement(a=1), roots[0], 3).with_class(3).t_class == 1


def test_cubic_without_real_points(cubic_stem):
    up = DomainPath.segment(1 + 0.5j, 2 + 0.5j, 30)
    roots = global_roots_no_real(cubic_stem, up, 3)
    assert len(roots) == 9
    labels = [r.label for r in roots]
    tau = {r.label: r.meta["tau"] for r in roots}
    assert sorted(tau.values()) == sorted(labels)
    assert all(r.meta["tau_inverse_consistent"] for r in roots)
    n = len(up)
    for r in roots:
        assert r.residuals(cubic_stem, 3).max() <= 1e-10
        upper = r.branch_values[:n]
        d = min(
            np.abs(upper - ETA ** a * cubic_g(b, up.points)).max() for a in range(3) for b in range(3)
        )
        assert d <= 1e-10
        # the lower half is a root of the same stem, paired through conjugation
        lower = r.branch_values[n:]
        assert any(
            np.abs(lower - ETA ** a * cubic_g(b, up.points.conj())).max() <= 1e-10
            for a in range(3)
            for b in range(3)
        )
        assert r.t_class is not None


@pytest.mark.parametrize("k", [2, 3, 4])
def test_power_stems_have_no_usable_anchor(k):
    F = star_power(StemPoly.identity(), k)
    with pytest.raises(AnchorNotInOmega):
        global_roots_with_real(F, DomainPath.vertical_through(1.5, 0.5, 5), k)


def test_anchor_is_required(rng):
    with pytest.raises(AnchorNotReal):
        global_roots_with_real(random_real_stem(rng), DomainPath.segment(1j, 2j, 4), 2)


@pytest.mark.parametrize("k", range(1, 9))
def test_group_tables(k):
    table = verify_group_table(k)
    assert table["passed"], table["checks"]
    assert table["order"] == k * k
    assert table["kernel_size"] == (2 if k % 2 == 0 else 1)


def test_group_table_k4():
    table = verify_group_table(4)
    assert table["order"] == 16 and table["kernel_size"] == 2
    assert table["checks"]["S_squared"] and table["checks"]["kernel_is_minus_pair"]


@pytest.mark.parametrize("k", range(2, 7))
def test_dihedral_relation(rng, k):
    w = rng.normal(size=4)
    assert all(dihedral_check(k, w).values())


@pytest.mark.parametrize("k", range(2, 7))
def test_compose_matches_matrices(rng, k):
    deltas = (0, 1) if k % 2 == 0 else (0,)
    for _ in range(30):
        g = MonodromyElement(int(rng.integers(k)), int(rng.integers(k)), int(rng.choice(deltas)))
        h = MonodromyElement(int(rng.integers(k)), int(rng.integers(k)), int(rng.choice(deltas)))
        assert np.allclose(g.compose(h, k).matrix(k), g.matrix(k) @ h.matrix(k))


@pytest.mark.parametrize("k", range(2, 7))
def test_scalar_orbits(rng, k):
    for w in random_in(rng, k, 10, omega_k=False):
        V = np.array([b.value for b in point_star_roots(w, k)], dtype=complex)
        orbits = scalar_orbits(V, k)
        assert len(orbits) == k
        assert all(len(o) == k for o in orbits)
        assert sorted(i for o in orbits for i in o) == list(range(k * k))
