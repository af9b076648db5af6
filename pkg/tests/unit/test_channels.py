"""
Noisy channels, fidelity curves and the five-qubit GHZ example
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.channels import (
    CSV_COLUMNS,
    ChannelMode,
    ChannelSpec,
    affinity,
    apply_channel,
    bound_dominance_violations,
    bound_is_valid,
    bures_fidelity,
    channel_average,
    curve_header,
    fidelity_curve,
    ghz5_basis_states,
    ghz5_coefficient_grid,
    ghz5_coefficients,
    ghz5_populations_mc,
    grid_overshoots,
    local_hamiltonians,
    local_unitaries,
    max_population_deviation,
    never_equal_spread,
    overlap_fidelity_mc,
    population_table,
    quadrature_fidelity,
    read_curve_csv,
    sphere_grid,
    t_star,
    t_star_marker,
    time_grid,
    tm_bound,
    twirl_populations_mc,
    write_curve_csv,
)
from src.errors import ArgumentError, DimensionMismatchError, DomainError, UnsupportedRestrictionError
from src.hamiltonians import pauli_basis
from src.linalg import exp_hermitian, tensor_product_all
from src.states import DensityMatrix, PureState, StateFactory


def diagonal_state(probabilities):
    return DensityMatrix.from_matrix(np.diag(probabilities), n=1, d=2)


class TestFidelity:
    """Fidelity and bound tests"""

    def test_pure_states(self, ghz4):
        assert bures_fidelity(ghz4, ghz4) == pytest.approx(1.0)
        assert bures_fidelity(ghz4, DensityMatrix.maximally_mixed(4, 2)) == pytest.approx(1.0 / 16.0)

    def test_commuting_mixed_states(self):
        """(sum_k sqrt(p_k q_k))^2 for diagonal states"""
        p, q = diagonal_state([0.5, 0.5]), diagonal_state([0.9, 0.1])
        assert bures_fidelity(p, q) == pytest.approx(0.8, abs=1e-10)
        assert bures_fidelity(q, p) == pytest.approx(0.8, abs=1e-10)
        assert affinity(p, q) == pytest.approx(math.sqrt(0.8), abs=1e-10)

    def test_dimension_mismatch(self, ghz4):
        with pytest.raises(DimensionMismatchError):
            bures_fidelity(ghz4, diagonal_state([0.5, 0.5]))

    def test_bound(self):
        """cos^2(sqrt(F) t / 2) reaches zero at t* = pi / sqrt(F)"""
        assert tm_bound(16.0, 0.0) == pytest.approx(1.0)
        assert tm_bound(16.0, math.pi / 4.0) == pytest.approx(0.0, abs=1e-15)
        assert np.allclose(tm_bound(4.0, np.array([0.0, math.pi / 2.0])), [1.0, 0.0])
        assert t_star(16.0) == pytest.approx(math.pi / 4.0)

    def test_bound_window(self):
        assert bound_is_valid(16.0, math.pi / 4.0)
        assert not bound_is_valid(16.0, 1.0)
        assert list(bound_is_valid(4.0, np.array([1.0, 2.0]))) == [True, False]

    def test_bound_needs_positive_qfi(self):
        with pytest.raises(DomainError):
            tm_bound(0.0, 1.0)
        with pytest.raises(DomainError):
            t_star(-1.0)


class TestChannelSpec:
    """ChannelSpec validation tests"""

    def test_dynamical_channel_needs_ensemble(self):
        with pytest.raises(ValidationError):
            ChannelSpec(mode=ChannelMode.COLLECTIVE)

    def test_twirl_without_ensemble(self):
        spec = ChannelSpec(mode=ChannelMode.TWIRL, samples=10)
        assert spec.describe() == "twirl/haar"

    def test_negative_time(self, pauli_sphere):
        with pytest.raises(ValidationError):
            ChannelSpec(mode=ChannelMode.COLLECTIVE, ensemble=pauli_sphere, t=-0.1)

    def test_fixed_alpha_length(self, pauli_sphere):
        with pytest.raises(ValidationError):
            ChannelSpec(mode=ChannelMode.COLLECTIVE, ensemble=pauli_sphere, fixed_alpha=[1.0, 0.0])

    def test_at_time(self, pauli_sphere):
        spec = ChannelSpec(mode=ChannelMode.NONCOLLECTIVE, ensemble=pauli_sphere)
        moved = spec.at_time(0.5)
        assert moved.t == 0.5 and spec.t == 0.0


class TestChannels:
    """Channel realization tests"""

    def test_zero_time_is_identity(self, ghz4, pauli_sphere):
        spec = ChannelSpec(mode=ChannelMode.COLLECTIVE, ensemble=pauli_sphere, t=0.0, samples=5)
        output = apply_channel(ghz4, spec)
        assert np.allclose(output.matrix, ghz4.density_matrix().matrix)

    def test_draws_do_not_depend_on_time(self, pauli_sphere, seed):
        """Common random numbers: the same sample index gives the same Hamiltonians at every t"""
        early = ChannelSpec(mode=ChannelMode.NONCOLLECTIVE, ensemble=pauli_sphere, t=0.1, seed=seed)
        late = early.at_time(2.0)
        for a, b in zip(local_hamiltonians(early, 3, 7), local_hamiltonians(late, 3, 7)):
            assert np.array_equal(a, b)

    def test_noncollective_draws_differ_per_site(self, pauli_sphere, seed):
        spec = ChannelSpec(mode=ChannelMode.NONCOLLECTIVE, ensemble=pauli_sphere, seed=seed)
        first, second = local_hamiltonians(spec, 2, 0)
        assert not np.allclose(first, second)

    def test_fixed_alpha_is_one_unitary(self, ghz4, pauli_sphere):
        """A fixed coefficient vector reduces the channel to U^{x n} rho U^{x n, dagger}"""
        spec = ChannelSpec(mode=ChannelMode.NONCOLLECTIVE, ensemble=pauli_sphere, t=0.3, samples=3,
                           fixed_alpha=[0.0, 0.6, 0.8])
        u = exp_hermitian(pauli_basis().hamiltonian([0.0, 0.6, 0.8]), 0.3)
        full = tensor_product_all([u] * 4)
        rho = ghz4.density_matrix().matrix
        output = apply_channel(ghz4, spec)
        assert np.allclose(output.matrix, full @ rho @ full.conj().T, atol=1e-12)

    def test_channel_average_is_a_state(self, pauli_sphere, seed, executor):
        psi = StateFactory.create("haar2_2_s1")
        spec = ChannelSpec(mode=ChannelMode.NONCOLLECTIVE, ensemble=pauli_sphere, t=0.8, samples=50, seed=seed)
        averaged = channel_average(psi, spec, executor)
        assert np.trace(averaged).real == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(averaged, averaged.conj().T, atol=1e-12)
        output = apply_channel(psi, spec, executor)
        assert output.purity() < 1.0

    def test_fidelity_concave_in_output(self, pauli_sphere, seed, executor):
        """F(rho, mean of U rho U^dagger) >= mean of F(rho, U rho U^dagger) for a mixed input"""
        rng = np.random.default_rng(seed)
        z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = DensityMatrix.from_matrix(z @ z.conj().T, n=2, d=2)
        spec = ChannelSpec(mode=ChannelMode.NONCOLLECTIVE, ensemble=pauli_sphere, t=0.9, samples=1000, seed=seed)
        per_sample = []
        for index in range(spec.samples):
            u = tensor_product_all(local_unitaries(spec, 2, 2, index))
            rotated = DensityMatrix.from_matrix(u @ rho.matrix @ u.conj().T, n=2, d=2)
            per_sample.append(bures_fidelity(rho, rotated))
        averaged = apply_channel(rho, spec, executor)
        assert bures_fidelity(rho, averaged) >= float(np.mean(per_sample)) - 1e-10

    def test_pure_input_saturates_average(self, ghz4, pauli_sphere, seed, executor):
        """For a pure input the output fidelity is the mean overlap of the same draws"""
        spec = ChannelSpec(mode=ChannelMode.NONCOLLECTIVE, ensemble=pauli_sphere, t=0.5, samples=300, seed=seed)
        output = apply_channel(ghz4, spec, executor)
        overlap = overlap_fidelity_mc(ghz4, spec, [spec.t], executor)[0]
        assert bures_fidelity(ghz4, output) == pytest.approx(overlap.estimate, abs=1e-9)

    def test_twirl_single_qubit(self, seed, executor):
        """The twirl of a qubit state approaches the maximally mixed state"""
        psi = PureState(n=1, d=2, amplitudes=[1.0, 0.0])
        spec = ChannelSpec(mode=ChannelMode.TWIRL, samples=2000, seed=seed)
        output = apply_channel(psi, spec, executor)
        assert np.allclose(output.matrix, np.eye(2) / 2, atol=0.05)


class TestFidelityCurves:
    """Fidelity curve tests"""

    def test_time_grid(self):
        assert np.allclose(time_grid(0.0, 1.0, 5), [0.0, 0.25, 0.5, 0.75, 1.0])
        with pytest.raises(ArgumentError):
            time_grid(1.0, 1.0, 5)
        with pytest.raises(ArgumentError):
            time_grid(0.0, 1.0, 1)

    def test_sphere_grid_weights(self):
        points, weights = sphere_grid(6)
        assert weights.sum() == pytest.approx(1.0)
        assert np.allclose(np.linalg.norm(points, axis=1), 1.0)

    def test_quadrature_needs_three_generators(self, gellmann_sphere):
        with pytest.raises(UnsupportedRestrictionError):
            quadrature_fidelity(StateFactory.create("q4_1"), gellmann_sphere, [0.1])

    def test_quadrature_curve_dominates_bound(self, ghz4, pauli_sphere):
        spec = ChannelSpec(mode=ChannelMode.COLLECTIVE, ensemble=pauli_sphere)
        times = time_grid(0.0, 0.99 * t_star(8.0), 11)
        curve = fidelity_curve(ghz4, spec, times)
        assert curve.method == "quadrature"
        assert curve.mean_qfi == pytest.approx(8.0)
        assert curve.fidelity[0] == pytest.approx(1.0, abs=1e-9)
        assert bound_dominance_violations(curve) == 0
        assert np.all(curve.valid_window)

    def test_quadrature_matches_monte_carlo(self, ghz4, pauli_sphere, seed, executor):
        spec = ChannelSpec(mode=ChannelMode.COLLECTIVE, ensemble=pauli_sphere, samples=4000, seed=seed)
        times = np.array([0.3, 0.6, 0.9])
        exact = fidelity_curve(ghz4, spec, times, method="quadrature")
        sampled = fidelity_curve(ghz4, spec, times, method="monte-carlo", executor=executor)
        assert np.all(np.abs(exact.fidelity - sampled.fidelity) <= 4.0 * sampled.fidelity_stderr + 1e-9)

    def test_fixed_alpha_curve(self, ghz4, pauli_sphere):
        """GHZ4 under a fixed z field has fidelity cos^2(2t)"""
        spec = ChannelSpec(mode=ChannelMode.COLLECTIVE, ensemble=pauli_sphere, samples=1,
                           fixed_alpha=[0.0, 0.0, 1.0])
        times = np.array([0.0, 0.2, 0.4])
        curve = fidelity_curve(ghz4, spec, times)
        assert curve.method == "monte-carlo"
        assert np.allclose(curve.fidelity, np.cos(2.0 * times) ** 2, atol=1e-12)
        assert np.all(curve.fidelity_stderr == 0.0)

    def test_monte_carlo_curve(self, ghz4, pauli_sphere, seed, executor):
        spec = ChannelSpec(mode=ChannelMode.NONCOLLECTIVE, ensemble=pauli_sphere, samples=400, seed=seed)
        times = time_grid(0.0, t_star(4.0), 6)
        curve = fidelity_curve(ghz4, spec, times, executor=executor)
        assert curve.mean_qfi == pytest.approx(4.0)
        assert bound_dominance_violations(curve, sigmas=4.0) == 0

    def test_twirl_curve_rejected(self, ghz4):
        with pytest.raises(ArgumentError):
            fidelity_curve(ghz4, ChannelSpec(mode=ChannelMode.TWIRL), [0.0, 1.0])

    def test_unknown_method(self, ghz4, pauli_sphere):
        spec = ChannelSpec(mode=ChannelMode.COLLECTIVE, ensemble=pauli_sphere)
        with pytest.raises(ArgumentError):
            fidelity_curve(ghz4, spec, [0.0, 0.1], method="simpson")

    def test_csv(self, ghz4, pauli_sphere, tmp_path):
        """Header lines then the documented columns"""
        spec = ChannelSpec(mode=ChannelMode.COLLECTIVE, ensemble=pauli_sphere)
        curve = fidelity_curve(ghz4, spec, time_grid(0.0, 1.0, 5))
        path = write_curve_csv(curve, tmp_path / "curves" / "ghz4.csv")
        lines = path.read_text(encoding="utf-8").splitlines()
        assert "# state: ghz4_2" in lines
        assert "# mode: collective" in lines
        frame = read_curve_csv(path)
        assert list(frame.columns) == CSV_COLUMNS
        assert len(frame) == 5
        assert np.allclose(frame["fidelity"], curve.fidelity, atol=1e-14)
        assert set(frame["valid_window"]) == {1}
        assert set(frame["is_t_star"]) == {0}

    def test_t_star_row_in_csv(self, ghz4, pauli_sphere, tmp_path):
        """A grid ending at t* marks its last row"""
        spec = ChannelSpec(mode=ChannelMode.COLLECTIVE, ensemble=pauli_sphere)
        curve = fidelity_curve(ghz4, spec, time_grid(0.0, t_star(8.0), 4))
        frame = read_curve_csv(write_curve_csv(curve, tmp_path / "ghz4_t_star.csv"))
        assert list(frame["is_t_star"]) == [0, 0, 0, 1]
        assert frame["bound"].iloc[-1] == pytest.approx(0.0, abs=1e-12)

    def test_overshooting_grid(self, ghz4, pauli_sphere):
        """Grids past t* keep the rows but flag them outside the window"""
        spec = ChannelSpec(mode=ChannelMode.COLLECTIVE, ensemble=pauli_sphere)
        curve = fidelity_curve(ghz4, spec, time_grid(0.0, 2.2 * t_star(8.0), 5))
        assert grid_overshoots(curve)
        assert "warning" in curve_header(curve)
        assert list(curve.valid_window) == [True, True, False, False, False]
        assert list(t_star_marker(curve)) == [0, 0, 1, 0, 0]


class TestGhz5:
    """Five-qubit GHZ closed form and populations"""

    def test_initial_coefficients(self):
        coefficients = ghz5_coefficients(0.0)
        assert np.allclose(coefficients.zeta, [0.0, 0.0, 1.0, 0.0])
        assert coefficients.populations[4] == pytest.approx(1.0)

    def test_normalization(self):
        grid = ghz5_coefficient_grid(np.linspace(0.0, 2.0 * np.pi, 1000))
        normalization = 2 * grid[:, 0] + 2 * grid[:, 1] + grid[:, 2] + grid[:, 3]
        assert np.allclose(normalization, 1.0, atol=1e-12)

    def test_never_equal(self):
        """The four coefficients never coincide, so the state never reaches the twirl"""
        assert never_equal_spread() > 0.0

    def test_basis_is_orthonormal(self):
        states = ghz5_basis_states()
        rows = np.stack([psi.amplitudes for psi in states.values()])
        assert np.allclose(rows @ rows.conj().T, np.eye(6), atol=1e-12)

    def test_population_table(self):
        rows = population_table([0.0, 1.0])
        assert rows[0]["zeta3"] == pytest.approx(1.0)
        assert rows[1]["normalization"] == pytest.approx(1.0)

    def test_populations_from_one_pass(self, seed, executor):
        """Means and errors come from the same per-sample populations, which sum to one"""
        estimate = ghz5_populations_mc(0.4, 64, seed, executor=executor)
        assert estimate.samples == 64
        assert estimate.populations.sum() == pytest.approx(1.0, abs=1e-10)
        assert np.all(estimate.std_errors > 0.0)
        initial = ghz5_populations_mc(0.0, 8, seed, executor=executor)
        assert np.allclose(initial.populations, [0, 0, 0, 0, 1, 0], atol=1e-12)
        assert np.allclose(initial.std_errors, 0.0, atol=1e-12)

    @pytest.mark.slow
    def test_collective_populations(self, seed, executor):
        estimate = ghz5_populations_mc(1.0, 2000, seed, executor=executor)
        limit = max(5e-3, 4.0 * float(np.max(estimate.std_errors)))
        assert max_population_deviation(estimate) <= limit
        assert abs(estimate.leakage) < 1e-10

    @pytest.mark.slow
    def test_twirl_populations(self, seed, executor):
        estimate = twirl_populations_mc(4000, seed, executor=executor)
        assert estimate.t is None
        limit = np.maximum(5e-3, 4.0 * estimate.std_errors)
        assert np.all(np.abs(estimate.populations - 1.0 / 6.0) <= limit)
