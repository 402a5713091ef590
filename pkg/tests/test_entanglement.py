import numpy as np
import pytest

from planar_squeezing.entanglement import (
    WITNESS_COLUMNS,
    EntanglementWitness,
    MultiSiteState,
    SignConfig,
    Verdict,
    WernerParams,
    collective_operator,
    random_product_state,
)
from planar_squeezing.exceptions import DimensionTooLargeError
from planar_squeezing.spin_core import SpinQuantumNumber, SpinState

SMALL_SPINS = [SpinQuantumNumber(t) for t in (1, 2, 3, 4)]


@pytest.fixture(scope="module")
def witness():
    return EntanglementWitness()


class TestSignConfig:
    """Per-site sign vectors."""

    def test_presets(self):
        assert SignConfig.uniform(3) == SignConfig((1, 1, 1), (1, 1, 1))
        assert SignConfig.correlated(3) == SignConfig((1, -1, 1), (1, 1, 1))
        assert SignConfig.correlated(2).flipped() == SignConfig((-1, 1), (-1, -1))

    @pytest.mark.parametrize("x_signs, y_signs", [((1, 0), (1, 1)), ((1, -1), (1,)), ((2,), (1,))])
    def test_rejects_invalid(self, x_signs, y_signs):
        with pytest.raises(ValueError):
            SignConfig(x_signs, y_signs)


class TestMultiSiteState:
    """Validation of explicit multi-site states."""

    def test_normalizes_vector(self):
        state = MultiSiteState(2, SpinQuantumNumber(1), vector=[1, 0, 0, 1])
        assert np.linalg.norm(state.vector) == pytest.approx(1.0)

    def test_rejects_bad_density(self):
        j = SpinQuantumNumber(1)
        with pytest.raises(ValueError):
            MultiSiteState(1, j, density=np.array([[0.6, 0.0], [0.0, 0.6]]))
        with pytest.raises(ValueError):
            MultiSiteState(1, j, density=np.array([[0.5, 0.1], [0.3, 0.5]]))
        with pytest.raises(ValueError):
            MultiSiteState(1, j, density=np.array([[1.5, 0.0], [0.0, -0.5]]))

    def test_needs_exactly_one_representation(self):
        with pytest.raises(ValueError):
            MultiSiteState(1, SpinQuantumNumber(1))

    def test_dimension_limit(self):
        with pytest.raises(DimensionTooLargeError):
            EntanglementWitness.maximally_entangled_state(SpinQuantumNumber(20), 5)
        with pytest.raises(DimensionTooLargeError):
            random_product_state(SpinQuantumNumber(18), 5, np.random.default_rng(0))


class TestReferenceStates:
    """Maximally entangled and singlet states."""

    def test_spin_half_maximally_entangled(self):
        state = EntanglementWitness.maximally_entangled_state(SpinQuantumNumber(1), 2)
        np.testing.assert_allclose(state.vector, np.array([1, 0, 0, 1]) / np.sqrt(2))

    @pytest.mark.parametrize("j", SMALL_SPINS, ids=str)
    def test_maximally_entangled_has_zero_correlated_variance(self, j):
        state = EntanglementWitness.maximally_entangled_state(j, 2)
        assert np.linalg.norm(state.vector) == pytest.approx(1.0)
        assert EntanglementWitness.s2(state, SignConfig.correlated(2)) == pytest.approx(0.0, abs=1e-10)

    @pytest.mark.parametrize("j", SMALL_SPINS, ids=str)
    def test_singlet_has_zero_total_spin(self, j):
        state = EntanglementWitness.singlet_state(j)
        signs = SignConfig.uniform(2)
        assert EntanglementWitness.s2(state, signs) == pytest.approx(0.0, abs=1e-10)
        for axis in "xyz":
            total = collective_operator(j, 2, axis, signs.x_signs)
            assert np.linalg.norm(total @ state.vector) == pytest.approx(0.0, abs=1e-10)

    def test_singlet_invariant_under_sign_flip(self):
        state = EntanglementWitness.singlet_state(SpinQuantumNumber(2))
        signs = SignConfig((1, -1), (1, -1))
        assert EntanglementWitness.s2(state, signs) == pytest.approx(
            EntanglementWitness.s2(state, signs.flipped()), abs=1e-12
        )

    @pytest.mark.parametrize("j", SMALL_SPINS, ids=str)
    def test_extremal_product_state(self, j):
        top = SpinState.basis(j, j.value)
        state = EntanglementWitness.product_state([top, top])
        assert EntanglementWitness.s2(state, SignConfig.uniform(2)) == pytest.approx(2 * j.value)


class TestWerner:
    """Werner mixtures of the singlet with white noise."""

    def test_closed_form_values(self):
        assert EntanglementWitness.werner_s2_closed(WernerParams(SpinQuantumNumber(1), 2, 1.0)) == pytest.approx(1.0)
        assert EntanglementWitness.werner_s2_closed(WernerParams(SpinQuantumNumber(2), 2, 0.5)) == pytest.approx(4 / 3)
        assert EntanglementWitness.werner_s2_closed(WernerParams(SpinQuantumNumber(2), 2, 0.0)) == 0.0

    @pytest.mark.parametrize("two_j", [1, 2, 3])
    @pytest.mark.parametrize("p_n", [0.0, 0.3, 1.0])
    def test_closed_form_matches_density_matrix(self, two_j, p_n):
        params = WernerParams(SpinQuantumNumber(two_j), 2, p_n)
        explicit = EntanglementWitness.s2(EntanglementWitness.werner_state(params), SignConfig.uniform(2))
        assert explicit == pytest.approx(EntanglementWitness.werner_s2_closed(params), abs=1e-10)

    def test_rejects_invalid_noise(self):
        with pytest.raises(ValueError):
            WernerParams(SpinQuantumNumber(1), 2, 1.2)

    def test_explicit_state_needs_two_sites(self):
        with pytest.raises(ValueError):
            EntanglementWitness.werner_state(WernerParams(SpinQuantumNumber(1), 3, 0.5))


class TestWitness:
    """Verdicts, thresholds and tables."""

    @pytest.mark.parametrize("j, expected, tolerance", [(0.5, 0.5, 1e-9), (1, 0.328125, 1e-9), (10, 0.03334, 1e-5)])
    def test_noise_thresholds(self, witness, j, expected, tolerance):
        assert witness.noise_threshold(j) == pytest.approx(expected, abs=tolerance)

    def test_verdicts(self, witness):
        assert witness.witness(0.0, 2, 1) is Verdict.ENTANGLED
        assert witness.witness(2 * witness.c_j(1), 2, 1) is Verdict.NOT_DETECTED
        s2 = EntanglementWitness.werner_s2_closed(WernerParams(SpinQuantumNumber(1), 2, 0.4))
        assert s2 == pytest.approx(0.4)
        assert witness.witness(s2, 2, 0.5) is Verdict.ENTANGLED

    def test_random_product_states_are_not_detected(self, witness, rng):
        for two_j in (1, 2):
            j = SpinQuantumNumber(two_j)
            bound = 2 * witness.c_j(j)
            for _ in range(1000):
                state = random_product_state(j, 2, rng)
                for signs in (SignConfig.uniform(2), SignConfig.correlated(2)):
                    s2 = EntanglementWitness.s2(state, signs)
                    assert s2 >= bound - 1e-9
                    assert witness.witness(s2, 2, j) is Verdict.NOT_DETECTED

    def test_three_site_product_state(self, witness, rng):
        j = SpinQuantumNumber(2)
        state = random_product_state(j, 3, rng)
        assert EntanglementWitness.s2(state, SignConfig.correlated(3)) >= 3 * witness.c_j(j) - 1e-9

    def test_table_crossings(self, witness):
        spins = [0.5, 1, 2, 10]
        p_grid = np.round(np.arange(0, 101) * 0.01, 12)
        frame = witness.witness_table(spins, p_grid)
        assert list(frame.columns) == WITNESS_COLUMNS
        assert len(frame) == len(spins) * len(p_grid)
        for j in spins:
            rows = frame[frame["j"] == j]
            threshold = witness.noise_threshold(j)
            slope = np.polyfit(rows["p_n"], rows["s2_over_nj"], 1)[0]
            assert slope == pytest.approx(2 / 3 * (j + 1))
            crossing = rows["cj_over_j"].iloc[0] / slope
            assert crossing == pytest.approx(threshold, abs=1e-9)
            below = rows[rows["p_n"] < threshold - 1e-9]
            above = rows[rows["p_n"] > threshold + 1e-9]
            assert set(below["verdict"]) == {Verdict.ENTANGLED.value}
            assert set(above["verdict"]) == {Verdict.NOT_DETECTED.value}
