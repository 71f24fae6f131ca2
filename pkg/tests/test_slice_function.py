import json
import math

import numpy as np
import pytest

from sampling import random_imunit, random_real_stem, singular_case
from starroots.errors import IdenticallyZero, OutOfDomain, RealPointsInDomain
from starroots.power_map import sigma_k_array
from starroots.quaternion import I_UNIT, J_UNIT, ImUnit, Quaternion, qmul
from starroots.slice_function import (
    ELL_MINUS,
    ELL_PLUS,
    J_STEM,
    Domain,
    SingularityVerdict,
    StemPoly,
    StemSampled,
    classify_differential,
    eval_slice,
    peirce_parts,
    peirce_reconstruct,
    phi_multiplicity,
    star_conj,
    star_power,
    star_product,
    symmetrization,
)

Q_PLUS_I = StemPoly.from_quaternion_coeffs([[0, 1, 0, 0], [1, 0, 0, 0]])
Q_MINUS_I = StemPoly.from_quaternion_coeffs([[0, -1, 0, 0], [1, 0, 0, 0]])
Q_MINUS_J = StemPoly.from_quaternion_coeffs([[0, 0, -1, 0], [1, 0, 0, 0]])
Q_SQUARED = StemPoly.from_components([0, 0, 1])


def _sample_points(rng, n):
    return rng.normal(size=n) + 1j * rng.uniform(0.1, 2, size=n)


def test_star_product_examples(quad_stem, cubic_stem):
    assert star_product(Q_MINUS_I, Q_MINUS_J).allclose(quad_stem, 0.0)
    assert star_product(quad_stem, StemPoly.constant((1, 0, 0, 0))).allclose(quad_stem, 0.0)
    cube = star_product(star_product(Q_PLUS_I, Q_PLUS_I), Q_PLUS_I)
    assert cube.allclose(cubic_stem, 0.0)


def test_star_product_is_not_pointwise():
    f = star_product(Q_MINUS_I, Q_MINUS_J)
    # q^2 - q(i + j) + k at q = j is 2k, while (j - i)(j - j) = 0
    assert np.allclose(eval_slice(f, 1j, J_UNIT).as_array(), [0, 0, 0, 2])
    assert qmul(Quaternion(0, -1, 1, 0), Quaternion(0, 0, 0, 0)) == Quaternion(0, 0, 0, 0)
    # the left factor still vanishes where expected
    assert np.allclose(eval_slice(f, 1j, I_UNIT).as_array(), 0)


def test_star_conj_examples(quad_stem):
    assert star_conj(Q_PLUS_I).allclose(Q_MINUS_I, 0.0)
    assert star_conj(Q_SQUARED).allclose(Q_SQUARED, 0.0)
    assert star_conj(quad_stem).allclose(StemPoly.from_components([0, 0, 1], [0, 1], [0, 1], [-1]), 0.0)


def test_symmetrization_examples(quad_stem):
    assert symmetrization(Q_MINUS_I).allclose(StemPoly.from_components([1, 0, 1]), 0.0)
    assert symmetrization(Q_SQUARED).allclose(StemPoly.from_components([0, 0, 0, 0, 1]), 0.0)
    sym = symmetrization(quad_stem)
    assert sym.allclose(StemPoly.from_components([1, 0, 2, 0, 1]), 0.0)
    # the same polynomial as the sum of squared components
    comps = [quad_stem.coeffs[:, h].real for h in range(4)]
    total = sum(np.convolve(c, c) for c in comps)
    assert np.allclose(sym.c0.real, total)


def test_star_power_examples(cubic_stem, rng):
    assert star_power(Q_PLUS_I, 3).allclose(cubic_stem, 0.0)
    F = random_real_stem(rng)
    assert star_power(F, 1).allclose(F, 0.0)
    assert star_power(StemPoly.constant((0, 1, 0, 0)), 2).allclose(StemPoly.constant((-1, 0, 0, 0)), 0.0)


@pytest.mark.parametrize("k", range(1, 7))
def test_star_power_matches_pointwise_power_map(rng, k):
    for _ in range(20):
        F = random_real_stem(rng)
        z = _sample_points(rng, 10)
        lhs = star_power(F, k).values(z)
        rhs = sigma_k_array(F.values(z), k)
        scale = (1 + np.abs(F.values(z)).max(1, keepdims=True)) ** k
        assert np.all(np.abs(lhs - rhs) <= 1e-10 * scale)


def test_star_power_matches_recursive_products(rng):
    F = random_real_stem(rng)
    G = F
    for k in range(2, 7):
        G = star_product(G, F)
        assert star_power(F, k).allclose(G, 1e-10 * np.abs(G.coeffs).max())


def test_slice_preserving_stems_are_central(rng):
    for _ in range(1000):
        F = StemPoly.from_components(rng.normal(size=int(rng.integers(1, 4))))
        G = random_real_stem(rng)
        fg, gf = star_product(F, G), star_product(G, F)
        tol = 1e-12 * (1 + np.abs(fg.coeffs).max())
        assert fg.allclose(gf, tol)
        # pointwise product of the stems, coordinate by coordinate
        z = complex(rng.normal(), rng.normal())
        assert np.allclose(fg.values(z), F.values(z)[0] * G.values(z), atol=tol)


def test_symmetrization_is_slice_preserving(rng):
    for _ in range(200):
        F = random_real_stem(rng, 4)
        assert np.abs(symmetrization(F).coeffs[:, 1:]).max() <= 1e-12 * (1 + np.abs(F.coeffs).max() ** 2)


def test_zeros_propagate_to_symmetrization(rng):
    for _ in range(50):
        alpha = Quaternion(*rng.normal(size=4))
        # q - alpha vanishes at alpha, and so does (q - alpha) * g for any g
        lin = StemPoly.from_quaternion_coeffs([(-alpha).as_array(), [1, 0, 0, 0]])
        F = star_product(lin, random_real_stem(rng))
        I = ImUnit.from_vector(alpha.vector / alpha.vector_norm())
        z = complex(alpha.q0, alpha.vector_norm())
        scale = np.abs(F.coeffs).sum() * (1 + abs(z)) ** F.degree
        assert eval_slice(F, z, I).norm() <= 1e-9 * scale
        S = symmetrization(F)
        for _ in range(20):
            J = ImUnit.from_vector(random_imunit(rng))
            assert eval_slice(S, z, J).norm() <= 1e-9 * scale ** 2


def test_eval_slice_examples(cubic_stem):
    assert np.allclose(eval_slice(Q_PLUS_I, 2j, J_UNIT).as_array(), [0, 1, 2, 0])
    I = ImUnit(0.0, 0.6, 0.8)
    v = eval_slice(Q_SQUARED, 1 + 1j, I)
    assert np.allclose(v.vector, v.vector_norm() * np.array(I[1:]))
    assert np.allclose(eval_slice(cubic_stem, 1j, I_UNIT).as_array(), [0, -8, 0, 0])


def test_eval_lower_half_plane_uses_symmetry(rng):
    F = random_real_stem(rng)
    z = complex(rng.normal(), 1.3)
    assert np.allclose(F.values(z.conjugate()), F.values(z).conj())
    U = StemPoly(np.array([[1j, 2, 0, 1 - 1j]]), Domain.UPPER_ONLY)
    assert np.allclose(U.values(z.conjugate()), U.values(z).conj())
    with pytest.raises(OutOfDomain):
        U.values(0.5)


def test_whole_plane_stems_need_real_coefficients():
    with pytest.raises(ValueError):
        StemPoly(np.array([[1j, 0, 0, 0]]))


def test_json_round_trip(rng):
    F = StemPoly(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)), Domain.UPPER_ONLY)
    G = StemPoly.from_json(json.loads(json.dumps(F.to_json())))
    assert G.domain is Domain.UPPER_ONLY
    z = _sample_points(rng, 100)
    assert np.array_equal(F.values(z), G.values(z))


def test_sampled_stem(quad_stem):
    pts = np.array([1 + 1j, 2 + 1j, 0.5j])
    S = StemSampled.from_function(quad_stem, pts)
    assert np.allclose(S.values(2 + 1j), quad_stem.values(2 + 1j))
    assert np.allclose(S.values(2 - 1j), quad_stem.values(2 - 1j))
    with pytest.raises(OutOfDomain):
        S.values(3 + 1j)


def test_peirce_parts_of_constant_pair_branch():
    c = math.sqrt(2) / 2
    G1 = StemPoly(c * np.array([[1j, 0, 0, -1j], [0, 1j, 1j, 0]]), Domain.UPPER_ONLY)
    plus, minus = peirce_parts(G1)
    R = StemPoly.from_components([0, 1], [-1], [1], [0, 1])
    assert plus.allclose(R.scale(-c), 1e-15)
    assert minus.allclose(R.scale(c), 1e-15)
    assert peirce_reconstruct(plus, minus).allclose(G1, 1e-15)


def test_peirce_trivial_cases(rng):
    F = StemPoly(rng.normal(size=(3, 1)) * np.array([[1, 0, 0, 0]]) + 0j, Domain.UPPER_ONLY)
    plus, minus = peirce_parts(F)
    assert plus.allclose(StemPoly(F.coeffs), 0.0) and minus.allclose(StemPoly(F.coeffs), 0.0)
    plus, minus = peirce_parts(ELL_PLUS)
    assert plus.allclose(StemPoly.constant((1, 0, 0, 0)), 0.0)
    assert minus.allclose(StemPoly.constant((0, 0, 0, 0)), 0.0)
    assert star_product(ELL_PLUS, ELL_MINUS).allclose(StemPoly.constant((0, 0, 0, 0), Domain.UPPER_ONLY), 0.0)
    assert star_product(J_STEM, J_STEM).allclose(StemPoly.constant((-1, 0, 0, 0), Domain.UPPER_ONLY), 0.0)
    with pytest.raises(RealPointsInDomain):
        peirce_parts(Q_PLUS_I)


def test_peirce_reconstruction(rng):
    for _ in range(50):
        F = StemPoly(rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4)), Domain.UPPER_ONLY)
        plus, minus = peirce_parts(F)
        z = _sample_points(rng, 10)
        assert np.allclose(peirce_reconstruct(plus, minus).values(z), F.values(z), atol=1e-12 * 10)


# classifier


@pytest.mark.parametrize(
    "kind, verdict",
    [
        ("spherical", SingularityVerdict.SPHERICAL_DERIV_ZERO),
        ("slice", SingularityVerdict.SLICE_DERIV_ZERO),
        ("tangent", SingularityVerdict.TANGENT_CASE),
    ],
)
def test_constructed_singularities(rng, kind, verdict):
    for _ in range(30):
        F, z, I = singular_case(rng, kind)
        assert classify_differential(F, z, I) is verdict
        assert phi_multiplicity(F, z, I) >= 2


def test_classifier_examples():
    assert classify_differential(StemPoly.constant((1, 2, 0, 0)), 1j, I_UNIT) is SingularityVerdict.SPHERICAL_DERIV_ZERO
    const = StemPoly(np.array([[1j, 2, 0, 0]]), Domain.UPPER_ONLY)
    assert classify_differential(const, 1j, I_UNIT) is SingularityVerdict.SLICE_DERIV_ZERO
    # q^2 is constant on the sphere through i: F(i) = (-1, 0, 0, 0) is real
    assert classify_differential(Q_SQUARED, 1j, J_UNIT) is SingularityVerdict.SPHERICAL_DERIV_ZERO
    assert phi_multiplicity(Q_SQUARED, 1j, J_UNIT) == 2
    for z in (1j, 2 + 0.5j, -1 + 3j):
        assert classify_differential(Q_PLUS_I, z, J_UNIT) is SingularityVerdict.NONSINGULAR
        assert phi_multiplicity(Q_PLUS_I, z, J_UNIT) == 1
    with pytest.raises(IdenticallyZero):
        phi_multiplicity(StemPoly.constant((1, 2, 3, 4)), 1j, I_UNIT)


def test_classifier_equivalence(rng):
    kinds = ["spherical", "slice", "tangent"]
    for n in range(1000):
        if n % 4 == 3:
            F, z, I = singular_case(rng, kinds[n % 3])
        else:
            F = random_real_stem(rng, 4)
            z = complex(rng.normal(), rng.uniform(0.1, 2))
            I = ImUnit.from_vector(random_imunit(rng))
        singular = classify_differential(F, z, I) is not SingularityVerdict.NONSINGULAR
        assert singular == (phi_multiplicity(F, z, I) >= 2)
