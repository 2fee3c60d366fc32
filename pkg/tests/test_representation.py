import numpy as np
import pytest

from orbit_frames.errors import InvalidInput, LengthMismatch
from orbit_frames.frames.analysis import canonical_tight, frame_bounds, tight_orbit_operator
from orbit_frames.frames.duals import canonical_dual
from orbit_frames.frames.family import VectorFamily
from orbit_frames.linalg.core import operator_norm, range_basis
from orbit_frames.representation.shift import (
    candidate_operator,
    dual_falsification,
    kernel_shift_invariance,
    right_shift,
    shift_compatible_kernel,
    shift_dual,
    truncated_dual,
)
from orbit_frames.representation.verdict import (
    check_shift_property,
    decide_representability,
    isometry_scale,
    norm_sandwich,
    norm_upper_bound,
    tight_orbit_check,
)
from orbit_frames.spectral.model import DiagonalModel, model_orbit, random_unitary, sample_carleson_sequence
from orbit_frames.structure.reorder import direct_sum_construct


def scaled_unitary_orbit(rng, dim, length, scale=0.9):
    T = scale * random_unitary(dim, rng)
    phi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return T, VectorFamily.orbit(T, phi, length, label=f"orbit d={dim}")


def separated_model(rng, dim):
    moduli = rng.uniform(0.2, 0.9, size=dim)
    angles = 2 * np.pi * np.arange(dim) / dim + rng.uniform(-0.2, 0.2, size=dim)
    return DiagonalModel(moduli * np.exp(1j * angles))


def test_scalar_orbit_candidate():
    F = VectorFamily.from_vectors([[1.0], [0.5], [0.25], [0.125]])
    verdict = decide_representability(F)
    assert verdict.candidate_T[0, 0] == pytest.approx(0.5, abs=1e-10)
    assert verdict.representable
    assert verdict.kernel_invariance_residual < 1e-12


def test_duplicated_first_element_is_not_representable(duplicated_family):
    verdict = decide_representability(duplicated_family)
    assert not verdict.representable
    assert verdict.max_shift_residual == pytest.approx(np.sqrt(0.5))
    assert verdict.kernel_invariance_residual == pytest.approx(1.0)
    assert verdict.shift_residuals[2] == pytest.approx(0.0, abs=1e-12)


def test_riesz_basis_is_representable(rng):
    F = VectorFamily(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
    verdict = decide_representability(F)
    assert verdict.representable
    assert shift_compatible_kernel(F).shape[1] == 0
    assert kernel_shift_invariance(F) == 0.0


def test_shift_dual_choice(duplicated_family, rng):
    basis = VectorFamily(rng.standard_normal((3, 3)))
    assert np.allclose(shift_dual(basis).matrix, canonical_dual(basis).matrix)
    G = shift_dual(duplicated_family)
    assert np.allclose(G.matrix, truncated_dual(duplicated_family).matrix)
    assert np.allclose(G.matrix[:, -1], 0.0)


def test_truncated_dual_recovers_finite_orbits(rng):
    T, F = scaled_unitary_orbit(rng, 3, 7)
    G = truncated_dual(F)
    assert operator_norm(candidate_operator(F, G) - T) < 1e-8


def test_shift_compatible_kernel_has_zero_last_coordinate(duplicated_family):
    K0 = shift_compatible_kernel(duplicated_family)
    assert K0.shape[1] == 1
    assert np.allclose(duplicated_family.matrix @ K0, 0.0)
    assert abs(K0[-1, 0]) < 1e-12


def test_right_shift():
    C = np.arange(6, dtype=complex).reshape(3, 2)
    assert np.array_equal(right_shift(C), [[0, 0], [0, 1], [2, 3]])


def test_zero_family_is_trivially_invariant():
    assert kernel_shift_invariance(VectorFamily(np.zeros((2, 3)))) == 0.0


@pytest.mark.parametrize("func", [kernel_shift_invariance, truncated_dual])
def test_single_element_is_rejected(func):
    with pytest.raises(LengthMismatch):
        func(VectorFamily(np.eye(2)[:, :1]))


def test_candidate_needs_matching_dual(duplicated_family):
    with pytest.raises(LengthMismatch):
        candidate_operator(duplicated_family, VectorFamily(np.eye(3)))


def test_check_shift_property_with_given_operator():
    T = np.array([[0.0, 0.0], [1.0, 0.0]])
    F = VectorFamily.orbit(T, [1.0, 0.0], 2)
    assert check_shift_property(F, T).representable
    assert not check_shift_property(F, np.eye(2)).representable


def test_verdict_json(duplicated_family):
    document = decide_representability(duplicated_family).to_json()
    assert set(document) == {
        "representable", "max_shift_residual", "kernel_invariance_residual",
        "norm_T", "norm_lo", "norm_hi", "residuals",
    }
    assert document["norm_hi"] == pytest.approx(np.sqrt(2.0))
    assert len(document["residuals"]) == 3


def test_norm_upper_bound_of_zero_family():
    assert norm_upper_bound(VectorFamily(np.zeros((2, 2)))) == np.inf


def equivalence_corpus(rng):
    corpus = []
    for _ in range(10):
        dim = int(rng.integers(2, 5))
        corpus.append(scaled_unitary_orbit(rng, dim, dim + 3)[1])
    for _ in range(6):
        dim = int(rng.integers(2, 5))
        corpus.append(VectorFamily(rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))))
    for _ in range(4):
        E = VectorFamily(np.eye(2))
        H = scaled_unitary_orbit(rng, 2, 5)[1]
        corpus.append(direct_sum_construct(E, H))
    for _ in range(10):
        dim = int(rng.integers(2, 5))
        F = scaled_unitary_orbit(rng, dim, dim + 3)[1]
        corpus.append(F.subfamily([1] + list(range(1, F.size))))
    for _ in range(10):
        dim = int(rng.integers(2, 5))
        F = scaled_unitary_orbit(rng, dim, dim + 3)[1]
        position = int(rng.integers(1, F.size))
        zero = VectorFamily(np.zeros((dim, 1)))
        head = F.subfamily(range(1, position)).concatenated(zero) if position > 1 else zero
        corpus.append(head.concatenated(F.subfamily(range(position, F.size))))
    for _ in range(10):
        dim = int(rng.integers(2, 4))
        F = scaled_unitary_orbit(rng, dim, dim + 4)[1]
        corpus.append(F.swapped(2, F.size - 1))
    return corpus


def test_shift_property_and_kernel_invariance_agree(rng):
    corpus = equivalence_corpus(rng)
    assert len(corpus) == 50
    outcomes = set()
    for F in corpus:
        verdict = decide_representability(F)
        invariant = verdict.kernel_invariance_residual <= 1e-6
        assert verdict.representable == invariant, F.label
        outcomes.add(verdict.representable)
    assert outcomes == {True, False}


def test_operator_recovery_from_canonical_dual(rng):
    for _ in range(20):
        model = separated_model(rng, int(rng.integers(2, 5)))
        F = model_orbit(model, 1e-12)
        G = canonical_dual(F)
        error = operator_norm(candidate_operator(F, G) - model.operator)
        last = np.linalg.norm(F.matrix[:, -1])
        A = frame_bounds(F).lower_bound_A
        assert error <= 1e-6
        assert error <= last ** 2 / A + 1e-12


def test_representable_families_do_not_depend_on_the_dual(rng):
    for _ in range(10):
        F = scaled_unitary_orbit(rng, int(rng.integers(2, 5)), 8)[1]
        G = canonical_dual(F)
        K0 = shift_compatible_kernel(F)
        C = rng.standard_normal((K0.shape[1], F.dim)) + 1j * rng.standard_normal((K0.shape[1], F.dim))
        other = VectorFamily(G.matrix + (K0 @ C).conj().T)
        assert dual_falsification(F, G, other) <= 1e-6


def test_dual_falsification_needs_distinct_duals(duplicated_family):
    G = canonical_dual(duplicated_family)
    with pytest.raises(InvalidInput):
        dual_falsification(duplicated_family, G, G)


def test_norm_sandwich_upper_bound(rng):
    families = [VectorFamily(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) for d in (2, 3, 5)]
    families.append(VectorFamily.orbit(np.roll(np.eye(4), 1, axis=0), np.eye(4)[:, 0], 4))
    families.extend(model_orbit(separated_model(rng, d), 1e-10) for d in (2, 3))
    for F in families:
        verdict = decide_representability(F)
        assert verdict.representable
        sandwich = norm_sandwich(F, verdict.candidate_T)
        assert sandwich.hi_ok
        assert verdict.norm_T <= np.sqrt(frame_bounds(F).upper_bound_B / frame_bounds(F).lower_bound_A) + 1e-8


def test_norm_sandwich_lower_bound_only_for_infinite_orbits():
    F = model_orbit(sample_carleson_sequence(2.0, 4), 1e-10)
    T = decide_representability(F).candidate_T
    flagged = norm_sandwich(F, T)
    assert flagged.lower_enforced
    assert flagged.norm_T == pytest.approx(15 / 16, abs=1e-6)
    assert not flagged.lo_ok
    assert flagged.hi_ok
    finite = norm_sandwich(F, T, infinite_model=False)
    assert finite.lo_ok and not finite.lower_enforced
    assert finite.to_json()["lower"] == 1.0


def test_basis_block_followed_by_an_orbit_is_representable():
    E = VectorFamily(np.eye(2))
    H = model_orbit(sample_carleson_sequence(2.0, 2), 1e-10)
    F = direct_sum_construct(E, H)
    verdict = decide_representability(F)
    assert verdict.representable
    assert verdict.kernel_invariance_residual < 1e-6
    assert range_basis(F.matrix).shape[1] == 4


@pytest.mark.parametrize("dim", [2, 3])
def test_tight_representable_family_has_unit_norm(dim):
    F = canonical_tight(model_orbit(sample_carleson_sequence(2.0, dim), 1e-12))
    verdict = decide_representability(F)
    assert verdict.representable
    assert verdict.norm_T == pytest.approx(1.0, abs=1e-6)


def scaled_shift_orbit(scale, length, dim=4):
    T = scale * np.roll(np.eye(dim), 1, axis=0)
    return T, VectorFamily.orbit(T, np.eye(dim)[:, 0], length, label=f"{scale} x shift")


def test_tight_orbit_of_the_cyclic_shift():
    T, F = scaled_shift_orbit(1.0, 8)
    check = tight_orbit_check(F, decide_representability(F).candidate_T)
    assert check.is_tight and check.unit_norm
    assert check.isometry_scale == pytest.approx(1.0)
    assert check.consistent
    assert check.to_json()["consistent"] is True


@pytest.mark.parametrize("dim", [2, 3])
def test_canonical_tight_orbit_operator_has_unit_norm(dim):
    model = sample_carleson_sequence(2.0, dim)
    F = model_orbit(model, 1e-12)
    W = tight_orbit_operator(F, model.operator)
    check = tight_orbit_check(canonical_tight(F), W)
    assert check.is_tight
    assert check.unit_norm
    assert check.isometry_scale is None


@pytest.mark.parametrize("scale", [0.9, 1.1])
def test_scaled_isometry_is_not_admissible(scale):
    T, F = scaled_shift_orbit(scale, 8)
    assert isometry_scale(T) == pytest.approx(scale)
    check = tight_orbit_check(F, T)
    assert not check.is_tight
    assert not check.scale_admissible and not check.consistent


def test_expanding_isometry_has_no_upper_frame_bound():
    bounds = [frame_bounds(scaled_shift_orbit(1.1, length)[1]).upper_bound_B for length in (8, 16, 32)]
    assert bounds[1] > 2 * bounds[0]
    assert bounds[2] > 2 * bounds[1]


def test_contracting_isometry_violates_the_norm_lower_bound():
    T, F = scaled_shift_orbit(0.9, 8)
    sandwich = norm_sandwich(F, T, infinite_model=True)
    assert sandwich.norm_T == pytest.approx(0.9)
    assert not sandwich.lo_ok


def test_isometry_scale_of_a_non_normal_operator():
    assert isometry_scale(np.array([[1.0, 1.0], [0.0, 1.0]])) is None
    assert isometry_scale(2 * random_unitary(3, np.random.default_rng(1))) == pytest.approx(2.0)
