import numpy as np
import pytest

from planar_squeezing.bound_solver import (
    AsymptoticBounds,
    BoundResult,
    BoundSolver,
    planar_hamiltonian,
)
from planar_squeezing.spin_core import SpinAlgebra, SpinQuantumNumber
from planar_squeezing.tridiagonal import ground_state

from .conftest import TABULATED_BOUNDS


def relative_deviation(exact, predicted):
    return max(abs(e - p) / abs(p) for e, p in zip(exact, predicted))


class TestExactBound:
    """C_J from the lambda-parameterized ground states."""

    @pytest.mark.parametrize("j, expected", sorted(TABULATED_BOUNDS.items()))
    def test_tabulated_values(self, exact_bound, j, expected):
        tolerance = 0.0005 if j in (0.5, 1) else 0.001
        assert exact_bound(j).c_exact == pytest.approx(expected, abs=tolerance)

    def test_small_spins_are_exact_fractions(self, exact_bound):
        assert exact_bound(0.5).c_exact == pytest.approx(0.25, abs=1e-10)
        assert exact_bound(1).c_exact == pytest.approx(7 / 16, abs=1e-10)

    def test_fixed_point_and_axis_convention(self, exact_bound):
        for j in (0.5, 1, 2.5, 10, 50):
            result = exact_bound(j)
            ground = ground_state(planar_hamiltonian(result.j, result.lambda_star))
            moments = SpinAlgebra.moments(result.optimal_state)
            assert result.lambda_star > 0
            assert abs(result.lambda_star - moments.mean[0]) <= 1e-9
            np.testing.assert_allclose(moments.mean[1:], 0, atol=1e-10)
            assert result.optimal_moments.planar_sum == pytest.approx(result.c_exact, abs=1e-9)
            np.testing.assert_allclose(np.abs(ground.vector), np.abs(result.optimal_state.amplitudes), atol=1e-8)

    def test_monotone_and_below_standard_limit(self, exact_bound):
        spins = [SpinQuantumNumber(t) for t in range(1, 101)]
        values = [exact_bound(j).c_exact for j in spins]
        assert all(b > a for a, b in zip(values, values[1:]))
        assert all(c < j.value for j, c in zip(spins, values) if j.value >= 1)

    def test_spin_zero(self, solver):
        result = solver.cj_exact(0)
        assert result.c_exact == 0.0
        assert result.c_asymptotic is None

    def test_serialization_round_trip(self, exact_bound):
        result = exact_bound(3)
        restored = BoundResult.from_dict(result.to_dict())
        assert restored.j == result.j
        assert restored.c_exact == result.c_exact
        assert restored.lambda_star == result.lambda_star
        np.testing.assert_allclose(restored.optimal_moments.variances, result.optimal_moments.variances)

    def test_rejects_bad_settings(self):
        with pytest.raises(ValueError):
            BoundSolver(tol=0)
        with pytest.raises(ValueError):
            BoundSolver(restarts=0)


class TestDirectMinimization:
    """Quasi-Newton cross-check over state amplitudes."""

    def test_agrees_with_exact(self, exact_bound):
        solver = BoundSolver(restarts=5, seed=3)
        for two_j in range(1, 21):
            j = SpinQuantumNumber(two_j)
            exact = exact_bound(j).c_exact
            assert solver.cj_direct(j) == pytest.approx(exact, rel=1e-6)

    def test_never_below_exact(self, exact_bound):
        solver = BoundSolver(restarts=2)
        for j in (1.5, 4, 7):
            assert solver.cj_direct(j) >= exact_bound(j).c_exact - 1e-9

    def test_bound_table_keeps_order(self, solver):
        results = solver.bound_table([2, 0.5, 1], direct=True, n_jobs=2)
        assert [r.j.value for r in results] == [2, 0.5, 1]
        for result in results:
            assert abs(result.c_exact - result.c_direct) <= 1e-6 * max(1.0, result.c_exact)


class TestAsymptotics:
    """Closed-form large-J results."""

    def test_fitted_series_values(self):
        assert AsymptoticBounds.cj_asymptotic(5) == pytest.approx(1.4829, abs=1e-4)
        assert AsymptoticBounds.cj_asymptotic(10) == pytest.approx(2.4315, abs=1e-4)

    def test_fitted_series_within_one_percent(self, exact_bound):
        for two_j in range(10, 101):
            result = exact_bound(SpinQuantumNumber(two_j))
            assert result.rel_err_asymptotic < 0.01

    def test_leading_order_and_width(self):
        assert AsymptoticBounds.gaussian_width(50) == pytest.approx(100 ** (-2 / 3), rel=1e-12)
        assert AsymptoticBounds.gaussian_width(50) == pytest.approx(0.046416, abs=1e-6)
        assert AsymptoticBounds.cj_leading_order(50) == pytest.approx(3 * 100 ** (2 / 3) / 8)

    def test_gaussian_trial_state_is_close_to_optimal(self, exact_bound):
        trial = AsymptoticBounds.variational_gaussian_state(50)
        planar = SpinAlgebra.moments(trial).planar_sum
        assert exact_bound(50).c_exact <= planar < 1.1 * exact_bound(50).c_exact

    def test_gaussian_trial_state_needs_spin_one(self):
        with pytest.raises(ValueError):
            AsymptoticBounds.variational_gaussian_state(0.5)

    def test_moment_closed_forms(self):
        moments = AsymptoticBounds.asymptotic_moments(50)
        np.testing.assert_allclose(moments.as_tuple(), (48.84, 2.693, 5.386, 116.04), atol=0.01)
        assert np.sqrt(moments.var_y * moments.var_z) == pytest.approx(25.0, abs=0.01)
        assert moments.heisenberg_ratio == pytest.approx(25.0 / (48.84 / 2), abs=1e-3)

    def test_optimal_state_tends_to_closed_forms(self, exact_bound):
        deviations = []
        for j in (50, 100, 200):
            m = exact_bound(j).optimal_moments
            exact = (m.mean[0], m.var_x, m.var_y, m.var_z)
            deviations.append(relative_deviation(exact, AsymptoticBounds.asymptotic_moments(j).as_tuple()))
        # largest miss is var_x, about 10.2% at J = 50
        assert deviations[0] < 0.11
        assert deviations[0] > deviations[1] > deviations[2]

    def test_heisenberg_ratio(self, exact_bound):
        ratios = [exact_bound(j).heisenberg_ratio for j in (50, 100, 200)]
        assert all(1 - 1e-9 <= r <= 1.1 for r in ratios)

    def test_z_variance_exceeds_planar_components(self, exact_bound):
        m = exact_bound(50).optimal_moments
        assert m.var_z > 50 / 2 > m.var_y > m.var_x

    def test_variance_ordering(self, exact_bound):
        for two_j in range(4, 101):
            m = exact_bound(SpinQuantumNumber(two_j)).optimal_moments
            assert m.var_x < m.var_y < m.var_z, f"J = {two_j / 2}"

    def test_variance_ratio_at_large_spin(self, exact_bound):
        m = exact_bound(200).optimal_moments
        assert m.var_x / m.var_y == pytest.approx(0.5, abs=0.1)
