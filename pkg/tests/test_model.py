import numpy as np
import pytest

from qfeedback.errors import (
    DimensionMismatch,
    DuplicateLabel,
    Incomplete,
    InvalidEffect,
    InvalidState,
    NonFinite,
    NotHermitian,
    NotOrthonormal,
    ZeroVector,
)
from qfeedback.linalg import hermitian_eig
from qfeedback.model import (
    PAULI_X,
    PAULI_Z,
    DensityMatrix,
    Effect,
    Observable,
    Povm,
    expectation,
    ket,
    maximally_mixed,
    outcome_probability,
    projective_povm_from_basis,
    pure_state,
    random_density_matrix,
    random_observable,
    random_povm,
    random_pure_state,
    random_unitary,
    theta_state,
    variance,
    z_basis,
)


class TestDensityMatrix:
    def test_pure_state_is_normalized(self):
        rho = pure_state([1, 1])
        np.testing.assert_allclose(rho.matrix, 0.5 * np.ones((2, 2)), atol=1e-15)
        assert rho.is_pure

    def test_zero_vector(self):
        with pytest.raises(ZeroVector):
            pure_state([0, 0])

    def test_wrong_trace(self):
        with pytest.raises(InvalidState, match="trace"):
            DensityMatrix(np.diag([0.5, 0.4]))

    def test_negative_eigenvalue(self):
        with pytest.raises(InvalidState, match="negative eigenvalue"):
            DensityMatrix(np.diag([1.5, -0.5]))

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            DensityMatrix(np.array([[0.5, 0.5], [0.0, 0.5]]))

    def test_maximally_mixed_purity(self):
        rho = maximally_mixed(4)
        assert rho.purity == pytest.approx(0.25)
        assert not rho.is_pure

    def test_matrix_is_read_only(self):
        rho = maximally_mixed(2)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0

    @pytest.mark.parametrize("bad", [np.nan, np.inf])
    def test_non_finite_entries(self, bad):
        with pytest.raises(NonFinite):
            DensityMatrix(np.full((2, 2), bad))

    def test_nan_vector(self):
        with pytest.raises(NonFinite):
            pure_state([np.nan, 1.0])


class TestObservable:
    def test_spectral_range(self):
        assert Observable(PAULI_Z).spectral_range == pytest.approx((-1.0, 1.0))

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            Observable(np.array([[0, 1], [2, 0]]))

    @pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
    def test_non_finite_entries(self, bad):
        with pytest.raises(NonFinite):
            Observable([[bad, 0.0], [0.0, 1.0]])

    def test_expectation_and_variance(self, plus_state):
        z = Observable(PAULI_Z)
        assert expectation(z, plus_state) == pytest.approx(0.0, abs=1e-15)
        assert variance(z, plus_state) == pytest.approx(1.0)
        assert expectation(Observable(PAULI_X), plus_state) == pytest.approx(1.0)

    def test_theta_state_expectation(self):
        rho = pure_state(theta_state(np.pi / 8))
        assert expectation(Observable(PAULI_Z), rho) == pytest.approx(np.cos(np.pi / 4))

    def test_dimension_mismatch(self, plus_state):
        with pytest.raises(DimensionMismatch):
            expectation(Observable(np.eye(3)), plus_state)


class TestPovm:
    def test_incomplete(self):
        with pytest.raises(Incomplete, match="POVM incomplete"):
            Povm.from_matrices({0: np.diag([1.0, 0.0]), 1: np.diag([0.0, 0.9])})

    def test_duplicate_label(self):
        with pytest.raises(DuplicateLabel):
            Povm((Effect("a", np.diag([1.0, 0.0])), Effect("a", np.diag([0.0, 1.0]))))

    def test_effect_spectrum_outside_unit_interval(self):
        with pytest.raises(InvalidEffect):
            Effect("big", 1.5 * np.eye(2))

    @pytest.mark.parametrize("bad", [np.nan, np.inf])
    def test_effect_non_finite_entries(self, bad):
        with pytest.raises(NonFinite):
            Effect("e", np.diag([bad, 0.0]))

    def test_effect_dimensions_must_agree(self):
        with pytest.raises(DimensionMismatch):
            Povm((Effect(0, np.eye(2)), Effect(1, np.zeros((3, 3)))))

    def test_trivial(self):
        povm = Povm.trivial(3)
        assert povm.labels == ["I"]
        assert povm.dim == 3
        np.testing.assert_allclose(povm.get("I").matrix, np.eye(3))

    def test_labels_keep_input_order(self):
        povm = projective_povm_from_basis(z_basis(), ["b", "a"])
        assert povm.labels == ["b", "a"]
        assert [e.label for e in povm] == ["b", "a"]
        assert len(povm) == 2

    def test_default_labels(self):
        assert projective_povm_from_basis(z_basis()).labels == [0, 1]

    def test_probability(self, plus_state, z_povm):
        assert outcome_probability(z_povm.get(0), plus_state) == pytest.approx(0.5)

    def test_basis_not_orthonormal(self):
        with pytest.raises(NotOrthonormal):
            projective_povm_from_basis([ket(1, 0), ket(1, 1) / np.sqrt(2)])

    def test_basis_incomplete(self):
        with pytest.raises(Incomplete):
            projective_povm_from_basis([ket(1, 0, 0), ket(0, 1, 0)])

    def test_random_unitary_columns_form_a_povm(self, rng):
        u = random_unitary(4, rng)
        povm = projective_povm_from_basis([u[:, k] for k in range(4)])

        total = sum(e.matrix for e in povm)
        np.testing.assert_allclose(total, np.eye(4), atol=1e-10)


class TestRandomGenerators:
    def test_random_observable_norm(self, rng):
        a = random_observable(5, rng, scale=2.0)
        assert float(np.max(np.abs(hermitian_eig(a.matrix).eigenvalues))) == pytest.approx(2.0)

    def test_rank_one_density_matrix_is_pure(self, rng):
        assert random_density_matrix(3, rng, rank=1).is_pure
        assert random_pure_state(3, rng).is_pure

    def test_full_rank_density_matrix_is_mixed(self, rng):
        assert not random_density_matrix(3, rng).is_pure

    def test_random_povm_labels_and_completeness(self, rng):
        povm = random_povm(3, 4, rng)
        assert povm.labels == ["m0", "m1", "m2", "m3"]
        np.testing.assert_allclose(sum(e.matrix for e in povm), np.eye(3), atol=1e-10)

    def test_same_seed_same_draw(self):
        a = random_observable(3, np.random.default_rng(7))
        b = random_observable(3, np.random.default_rng(7))
        np.testing.assert_array_equal(a.matrix, b.matrix)
