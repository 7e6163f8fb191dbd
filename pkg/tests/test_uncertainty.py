import math

import numpy as np
import pytest

from qfeedback.errors import NoConvergence, NonzeroMean, NotProjective, NotPure, ValidationError
from qfeedback.model import (
    Observable,
    Povm,
    maximally_mixed,
    projective_povm_from_basis,
    pure_state,
    random_basis,
    random_povm,
    random_pure_state,
    theta_state,
    z_basis,
)
from qfeedback.protocol import (
    EstimateMap,
    EstimateStrategy,
    compare_strategies,
    eigenvalue_estimates,
    estimate_gradient,
    find_real_weak_value_basis,
    optimize_estimates,
    ozawa_uncertainty,
    residual_convergence,
    small_sigma_residual,
    strategy_estimates,
    variance_residual,
    weak_value_estimates,
    zero_error_closed_form,
)

TAN_PI_8 = math.tan(math.pi / 8)


class TestOzawaUncertainty:
    def test_eigenbasis_is_error_free(self, plus_state, z_observable, z_povm):
        report = ozawa_uncertainty(plus_state, z_observable, z_povm, EstimateMap({0: 1.0, 1: -1.0}))
        assert report.epsilon_squared == pytest.approx(0.0, abs=1e-12)
        assert report.variance == pytest.approx(1.0)

    @pytest.mark.parametrize("c", [-2.0, 0.0, 0.7])
    def test_orthogonal_blind_minus_outcome_is_estimate_independent(self, c, plus_state, z_observable, x_povm):
        report = ozawa_uncertainty(plus_state, z_observable, x_povm, EstimateMap({"+": 0.0, "-": c}))
        assert report.epsilon_squared == pytest.approx(1.0, abs=1e-10)
        assert report.contributions["-"] == pytest.approx(1.0, abs=1e-10)

    def test_orthogonal_blind_plus_outcome_costs_c_squared(self, plus_state, z_observable, x_povm):
        report = ozawa_uncertainty(plus_state, z_observable, x_povm, EstimateMap({"+": 0.6, "-": 0.0}))
        assert report.epsilon_squared == pytest.approx(1.36, abs=1e-10)

    def test_no_measurement_reduces_to_variance(self, random_scenario):
        rho, a, _, _ = random_scenario(dim=4)
        povm = Povm.trivial(4)
        est = strategy_estimates(EstimateStrategy.MEAN, rho, a, povm)
        report = ozawa_uncertainty(rho, a, povm, est)
        assert report.epsilon_squared == pytest.approx(report.variance, abs=1e-12)

    def test_contributions_sum(self, random_scenario):
        report = ozawa_uncertainty(*random_scenario(dim=3, n_effects=4))
        assert sum(report.contributions.values()) == pytest.approx(report.epsilon_squared, abs=1e-14)
        assert all(v >= 0.0 for v in report.contributions.values())

    def test_predicted_residual(self, plus_state, z_observable, x_povm):
        report = ozawa_uncertainty(plus_state, z_observable, x_povm, EstimateMap({"+": 0.0, "-": 0.0}))
        assert report.predicted_residual(0.1) == pytest.approx(0.02)
        assert small_sigma_residual(report, 0.2) == pytest.approx(0.08)


class TestWeakValues:
    def test_xbasis_theta_values(self, z_observable, x_povm):
        psi = pure_state(theta_state(math.pi / 8))
        report = weak_value_estimates(psi, z_observable, x_povm)

        assert report["+"].estimate == pytest.approx(TAN_PI_8, abs=1e-9)
        assert report["-"].estimate == pytest.approx(1.0 / TAN_PI_8, abs=1e-9)
        assert not report["+"].anomalous
        assert report["-"].anomalous
        assert report.all_real

    def test_degenerate_outcome(self, plus_state, z_observable, x_povm):
        report = weak_value_estimates(plus_state, z_observable, x_povm)

        entry = report["-"]
        assert entry.degenerate
        assert entry.estimate == 0.0
        assert not entry.anomalous
        assert report["+"].estimate == pytest.approx(0.0, abs=1e-12)

    def test_weak_values_minimize_epsilon(self, random_scenario):
        rho, a, povm, _ = random_scenario(dim=3, n_effects=4)
        est, optimal = optimize_estimates(rho, a, povm)
        for label in povm.labels:
            worse = ozawa_uncertainty(rho, a, povm, est.shifted(label, 0.3))
            assert worse.epsilon_squared > optimal.epsilon_squared

    def test_gradient_vanishes_at_weak_values(self, random_scenario):
        rho, a, povm, _ = random_scenario(dim=3)
        est, _ = optimize_estimates(rho, a, povm)
        for value in estimate_gradient(rho, a, povm, est).values():
            assert abs(value) <= 1e-10

    def test_gradient_matches_finite_difference(self, random_scenario):
        rho, a, povm, est = random_scenario(dim=2)
        h = 1e-6
        gradient = estimate_gradient(rho, a, povm, est)
        for label in povm.labels:
            up = ozawa_uncertainty(rho, a, povm, est.shifted(label, h)).epsilon_squared
            down = ozawa_uncertainty(rho, a, povm, est.shifted(label, -h)).epsilon_squared
            assert (up - down) / (2 * h) == pytest.approx(gradient[label], abs=1e-6)


class TestClosedForms:
    def test_zero_error_closed_form_matches(self, rng):
        for dim in (2, 3):
            psi = random_pure_state(dim, rng)
            a = Observable(np.diag(rng.uniform(-1, 1, dim)))
            povm = projective_povm_from_basis(random_basis(dim, rng))
            _, report = optimize_estimates(psi, a, povm)
            assert zero_error_closed_form(psi, a, povm) == pytest.approx(report.epsilon_squared, abs=1e-10)

    def test_closed_form_counts_degenerate_outcomes(self, plus_state, z_observable, x_povm):
        assert zero_error_closed_form(plus_state, z_observable, x_povm) == pytest.approx(1.0, abs=1e-10)

    def test_closed_form_needs_pure_state(self, z_observable, z_povm):
        with pytest.raises(NotPure):
            zero_error_closed_form(maximally_mixed(2), z_observable, z_povm)

    def test_closed_form_needs_projective_povm(self, plus_state, z_observable, rng):
        with pytest.raises(NotProjective):
            zero_error_closed_form(plus_state, z_observable, random_povm(2, 3, rng))

    def test_variance_model_needs_zero_mean(self, z_observable):
        with pytest.raises(NonzeroMean):
            variance_residual(pure_state(z_basis()[0]), z_observable, 0.1)

    def test_variance_model_plus_state(self, plus_state, z_observable):
        assert variance_residual(plus_state, z_observable, 0.1) == pytest.approx(0.02)


class TestStrategies:
    def test_eigenvalue_strategy(self, z_observable, z_povm):
        est = eigenvalue_estimates(z_observable, z_povm)
        assert est[0] == pytest.approx(1.0)
        assert est[1] == pytest.approx(-1.0)

    def test_eigenvalue_strategy_rejects_other_bases(self, z_observable, x_povm):
        with pytest.raises(ValidationError):
            eigenvalue_estimates(z_observable, x_povm)

    def test_custom_strategy_needs_values(self, plus_state, z_observable, z_povm):
        with pytest.raises(ValidationError):
            strategy_estimates(EstimateStrategy.CUSTOM, plus_state, z_observable, z_povm)

    def test_custom_strategy_label_mismatch(self, plus_state, z_observable, z_povm):
        with pytest.raises(ValidationError, match="label mismatch"):
            strategy_estimates(EstimateStrategy.CUSTOM, plus_state, z_observable, z_povm, EstimateMap({0: 1.0}))

    def test_compare_strategies_weak_value_is_best(self, z_observable, x_povm):
        psi = pure_state(theta_state(math.pi / 8))
        rows = dict(compare_strategies(psi, z_observable, x_povm))

        assert EstimateStrategy.EIGENVALUE not in rows
        assert rows[EstimateStrategy.WEAK_VALUE] == pytest.approx(0.0, abs=1e-12)
        assert min(rows.values()) == rows[EstimateStrategy.WEAK_VALUE]

    def test_compare_strategies_eigenbasis(self, plus_state, z_observable, z_povm):
        rows = dict(compare_strategies(plus_state, z_observable, z_povm))
        assert rows[EstimateStrategy.EIGENVALUE] == pytest.approx(0.0, abs=1e-12)
        assert rows[EstimateStrategy.ZERO] == pytest.approx(1.0)


class TestRealWeakValueSearch:
    def test_real_inputs_find_an_error_free_basis(self, rng):
        psi = pure_state(rng.standard_normal(3))
        a = Observable(np.diag([1.0, 0.0, -1.0]))
        povm = find_real_weak_value_basis(psi, a, rng)

        report = weak_value_estimates(psi, a, povm)
        assert report.all_real
        assert ozawa_uncertainty(psi, a, povm, report.estimates).epsilon_squared <= 1e-10

    def test_complex_inputs_give_up(self, rng):
        psi = random_pure_state(2, rng)
        a = Observable(np.array([[0, -1j], [1j, 0]]))
        with pytest.raises(NoConvergence):
            find_real_weak_value_basis(psi, a, rng, attempts=3)

    def test_needs_pure_state(self, z_observable, rng):
        with pytest.raises(NotPure):
            find_real_weak_value_basis(maximally_mixed(2), z_observable, rng)


def test_residual_convergence_ratios(random_scenario):
    rho, a, povm, est = random_scenario(dim=3)
    report = residual_convergence(rho, a, povm, est)

    assert report.sigmas == (0.04, 0.02, 0.01)
    assert report.expected_ratios == pytest.approx((16.0, 16.0))
    for ratio in report.ratios:
        assert 12.0 <= ratio <= 20.0
