"""
Exact and ensemble-averaged quantum Fisher information
"""

import math
from fractions import Fraction

import numpy as np
import orjson
import pytest

from config.settings import get_reference_table
from src.errors import DimensionMismatchError, DomainError, UnsupportedRestrictionError
from src.channels import bures_fidelity
from src.hamiltonians import HamiltonianEnsemble, EnsembleKind, collective_sum, gellmann_basis, pauli_basis
from src.linalg import exp_hermitian, haar_unitary
from src.qfi import (
    Provenance,
    QfiKernel,
    estimation_bound,
    fisher_matrix_diag,
    mc_mean_qfi,
    mc_mean_qfi_summary,
    mean_qfi_collective,
    mean_qfi_noncollective,
    mean_qfi_noncollective_literal,
    mean_qfi_pure_tensor_collective,
    mean_qfi_pure_tensor_noncollective,
    mean_qfi_summary,
    omega,
    qfi_general,
    qfi_pure,
    skew_information,
    t_star,
)
from src.states import DensityMatrix, StateFactory
from src.utils import counter_rng
from src.validation import table1_cases


def random_hermitian(dim, rng):
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (z + z.conj().T)


def random_density(n, d, rng):
    dim = d ** n
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = z @ z.conj().T
    return DensityMatrix.from_matrix(rho, n=n, d=d)


class TestExactQfi:
    """Exact QFI tests"""

    def test_ghz_collective_z(self, ghz4):
        """GHZ4 under the collective z generator reaches n^2 = 16"""
        jz = collective_sum(pauli_basis().generators[2], 4)
        assert qfi_pure(ghz4, jz) == pytest.approx(16.0)
        assert qfi_general(ghz4, jz) == pytest.approx(16.0, abs=1e-9)

    def test_pure_matches_general(self):
        psi = StateFactory.create("haar3_2_s5")
        h = random_hermitian(8, counter_rng(2, 0))
        assert qfi_general(psi.density_matrix(), h) == pytest.approx(qfi_pure(psi, h), abs=1e-8)

    def test_maximally_mixed_is_zero(self):
        h = random_hermitian(4, counter_rng(3, 0))
        assert qfi_general(DensityMatrix.maximally_mixed(2, 2), h) == pytest.approx(0.0, abs=1e-12)

    def test_unitary_invariance(self):
        """F(U rho U^dagger, H) = F(rho, U^dagger H U)"""
        rng = counter_rng(4, 0)
        rho = random_density(2, 2, rng)
        h = random_hermitian(4, rng)
        u = haar_unitary(4, rng)
        rotated = DensityMatrix.from_matrix(u @ rho.matrix @ u.conj().T, n=2, d=2)
        assert qfi_general(rotated, h) == pytest.approx(qfi_general(rho, u.conj().T @ h @ u), rel=1e-8)

    def test_convexity(self):
        """F is convex in rho"""
        rng = counter_rng(5, 0)
        a, b = random_density(1, 3, rng), random_density(1, 3, rng)
        h = random_hermitian(3, rng)
        mixture = DensityMatrix.from_matrix(0.5 * (a.matrix + b.matrix), n=1, d=3)
        assert qfi_general(mixture, h) <= 0.5 * (qfi_general(a, h) + qfi_general(b, h)) + 1e-10

    def test_skew_information_bounds(self):
        """I_skew <= F/4 <= 2 I_skew"""
        rng = counter_rng(6, 0)
        rho = random_density(1, 3, rng)
        h = random_hermitian(3, rng)
        skew = skew_information(rho, h)
        quarter = qfi_general(rho, h) / 4.0
        assert skew <= quarter + 1e-10
        assert quarter <= 2.0 * skew + 1e-10

    def test_kernel_shares_decomposition(self):
        rho = random_density(1, 2, counter_rng(7, 0))
        kernel = QfiKernel(rho)
        h = np.diag([1.0, -1.0])
        assert kernel.qfi(h) == pytest.approx(qfi_general(rho, h))
        with pytest.raises(DimensionMismatchError):
            kernel.qfi(np.eye(3))

    def test_fisher_matrix_diag(self, ghz4):
        basis = pauli_basis()
        assert np.allclose(fisher_matrix_diag(ghz4, basis, "collective"), [4.0, 4.0, 16.0])
        assert np.allclose(fisher_matrix_diag(ghz4, basis, "noncollective"), np.ones(12))
        with pytest.raises(DomainError):
            fisher_matrix_diag(ghz4, basis, "global")
        with pytest.raises(DimensionMismatchError):
            fisher_matrix_diag(ghz4, gellmann_basis(3))

    def test_estimation_bound(self):
        assert estimation_bound(16.0) == pytest.approx(0.25)
        with pytest.raises(DomainError):
            estimation_bound(0.0)


class TestMeanQfi:
    """Ensemble-averaged QFI tests"""

    @pytest.mark.parametrize("index", range(18))
    def test_reference_rows(self, index):
        """Every stored row is reproduced exactly by the basis-sum forms"""
        row, state, ensemble = list(table1_cases())[index]
        assert mean_qfi_collective(state, ensemble) == pytest.approx(float(row.collective), abs=1e-9)
        assert mean_qfi_noncollective(state, ensemble) == pytest.approx(float(row.noncollective), abs=1e-9)

    @pytest.mark.parametrize("index", range(18))
    def test_tensor_forms_agree(self, index):
        """Correlation-tensor forms equal the basis-sum forms for pure states"""
        _, state, ensemble = list(table1_cases())[index]
        assert mean_qfi_pure_tensor_collective(state, ensemble) == pytest.approx(
            mean_qfi_collective(state, ensemble), abs=1e-9)
        assert mean_qfi_pure_tensor_noncollective(state, ensemble) == pytest.approx(
            mean_qfi_noncollective(state, ensemble), abs=1e-9)

    def test_literal_noncollective(self, pauli_sphere, spin1_sphere):
        """Explicit H_0 factors with the compensating prefactor give the same value"""
        for state_id, ensemble in (("dicke4_1", pauli_sphere), ("q4_1", spin1_sphere)):
            state = StateFactory.create(state_id)
            assert mean_qfi_noncollective_literal(state, ensemble) == pytest.approx(
                mean_qfi_noncollective(state, ensemble), abs=1e-9)

    def test_ghz_ordering(self, ghz4, pauli_sphere):
        """GHZ4 is more fragile under collective noise: 8 > 4"""
        assert mean_qfi_collective(ghz4, pauli_sphere) == pytest.approx(8.0)
        assert mean_qfi_noncollective(ghz4, pauli_sphere) == pytest.approx(4.0)

    def test_prefactor_scaling(self, catalog):
        """Changing the ensemble only rescales by the mean purity"""
        psi = StateFactory.create("q4_2")
        sphere = catalog.get_ensemble("gellmann_sphere")
        gue = catalog.get_ensemble("gellmann_gue")
        ratio = gue.mean_purity() / sphere.mean_purity()
        assert mean_qfi_collective(psi, gue) == pytest.approx(ratio * mean_qfi_collective(psi, sphere), rel=1e-12)

    def test_identity_direction_adds_nothing(self, catalog, ghz4):
        """Including H_0 only changes the sampled dimension"""
        gue = catalog.get_ensemble("pauli_gue")
        full = catalog.get_ensemble("pauli_gue_full")
        expected = mean_qfi_collective(ghz4, gue) * full.mean_purity() / gue.mean_purity() * gue.r / full.r
        assert mean_qfi_collective(ghz4, full) == pytest.approx(expected, rel=1e-12)

    def test_zero_scale(self, ghz4):
        ensemble = HamiltonianEnsemble(kind=EnsembleKind.SPHERE, basis=pauli_basis(), scale=0.0)
        assert mean_qfi_collective(ghz4, ensemble) == 0.0

    def test_mixed_state(self, pauli_sphere):
        """Fully depolarized input carries no information"""
        rho = DensityMatrix.maximally_mixed(3, 2)
        assert mean_qfi_collective(rho, pauli_sphere) == pytest.approx(0.0, abs=1e-12)
        assert mean_qfi_noncollective(rho, pauli_sphere) == pytest.approx(0.0, abs=1e-12)

    def test_tensor_form_needs_pure_state(self, pauli_sphere):
        with pytest.raises(DomainError):
            mean_qfi_pure_tensor_collective(DensityMatrix.maximally_mixed(2, 2), pauli_sphere)

    def test_tensor_form_needs_scalar_square_sum(self):
        ensemble = HamiltonianEnsemble(kind=EnsembleKind.SPHERE, basis=gellmann_basis(3), restriction=[1, 3, 8])
        with pytest.raises(UnsupportedRestrictionError):
            mean_qfi_pure_tensor_noncollective(StateFactory.create("q4_1"), ensemble)

    def test_dimension_mismatch(self, ghz4, spin1_sphere):
        with pytest.raises(DimensionMismatchError):
            mean_qfi_collective(ghz4, spin1_sphere)


class TestSummary:
    """QfiSummary tests"""

    def test_omega_and_t_star(self):
        assert omega(16.0) == pytest.approx(2.0)
        assert t_star(16.0) == pytest.approx(math.pi / 4.0)
        assert t_star(0.0) == math.inf

    def test_summary(self, ghz4, pauli_sphere):
        summary = mean_qfi_summary(ghz4, pauli_sphere, "ghz4_2")
        assert summary.mean_qfi_collective == pytest.approx(8.0)
        assert summary.omega_collective == pytest.approx(math.sqrt(2.0))
        assert summary.t_star_noncollective == pytest.approx(math.pi / 2.0)
        assert summary.delta_t_noncollective == pytest.approx(0.5)
        row = orjson.loads(summary.to_json())
        assert row["provenance"] == "analytic"
        assert row["t_star_collective"] == pytest.approx(math.pi / math.sqrt(8.0))

    def test_tensor_form_summary(self, ghz4, pauli_sphere):
        summary = mean_qfi_summary(ghz4, pauli_sphere, provenance=Provenance.TENSOR_FORM)
        assert summary.state_id == "ghz4_2"
        assert summary.mean_qfi_noncollective == pytest.approx(4.0)

    def test_monte_carlo_provenance_rejected(self, ghz4, pauli_sphere):
        with pytest.raises(DomainError):
            mean_qfi_summary(ghz4, pauli_sphere, provenance=Provenance.MONTE_CARLO)


class TestMonteCarloQfi:
    """Monte Carlo oracle tests"""

    def test_agrees_with_analytic(self, ghz4, pauli_sphere, seed, executor):
        for mode, exact in (("collective", 8.0), ("noncollective", 4.0)):
            estimate = mc_mean_qfi(ghz4, pauli_sphere, mode, 2000, seed, executor)
            assert abs(estimate.estimate - exact) <= 4.0 * estimate.std_error
            assert estimate.samples == 2000

    def test_independent_of_workers(self, ghz4, pauli_sphere, seed):
        """Chunking is fixed, so the worker count does not change a single bit"""
        from src.utils import MonteCarloExecutor

        serial = mc_mean_qfi(ghz4, pauli_sphere, "collective", 300, seed, MonteCarloExecutor(1, 64))
        parallel = mc_mean_qfi(ghz4, pauli_sphere, "collective", 300, seed, MonteCarloExecutor(2, 64))
        assert serial == parallel

    def test_minimum_samples(self, ghz4, pauli_sphere, seed):
        with pytest.raises(DomainError):
            mc_mean_qfi(ghz4, pauli_sphere, "collective", 99, seed)

    def test_unknown_mode(self, ghz4, pauli_sphere, seed):
        with pytest.raises(DomainError):
            mc_mean_qfi(ghz4, pauli_sphere, "twirl", 100, seed)

    def test_summary(self, ghz4, pauli_sphere, seed, executor):
        summary = mc_mean_qfi_summary(ghz4, pauli_sphere, 500, seed, executor=executor)
        assert summary.provenance == Provenance.MONTE_CARLO
        assert summary.samples == 500
        assert summary.std_error_collective > 0

    @pytest.mark.slow
    def test_reference_rows_within_three_sigma(self, seed, executor):
        """At most one row per mode falls outside 3 standard errors"""
        misses = {"collective": 0, "noncollective": 0}
        for row, state, ensemble in table1_cases(get_reference_table()):
            for mode, expected in (("collective", row.collective), ("noncollective", row.noncollective)):
                estimate = mc_mean_qfi(state, ensemble, mode, 10_000, seed, executor)
                exact = float(Fraction(expected))
                if abs(estimate.estimate - exact) > max(3.0 * estimate.std_error, 1e-9 * abs(exact)):
                    misses[mode] += 1
        assert misses["collective"] <= 1
        assert misses["noncollective"] <= 1

    def test_constant_qfi_rows(self, spin1_sphere, seed, executor):
        """AME reductions are maximally mixed, so every draw gives the same QFI and the error vanishes"""
        estimate = mc_mean_qfi(StateFactory.create("ame4_3"), spin1_sphere, "collective", 200, seed, executor)
        assert estimate.std_error < 1e-12
        assert abs(estimate.estimate - 32.0 / 3.0) <= max(3.0 * estimate.std_error, 1e-9 * 32.0 / 3.0)


class TestQfiProperties:
    """Relations between QFI, fidelity and skew information"""

    def test_skew_information_pure_state(self):
        """For rank-1 rho, sqrt(rho) = rho and I_skew = 2 Var(H) = F / 2"""
        psi = StateFactory.create("haar2_3_s9")
        h = random_hermitian(9, counter_rng(8, 0))
        v = psi.amplitudes
        mean = np.vdot(v, h @ v).real
        variance = np.vdot(v, h @ h @ v).real - mean ** 2
        skew = skew_information(psi.density_matrix(), h)
        assert skew == pytest.approx(2.0 * variance, abs=1e-6)
        assert skew == pytest.approx(qfi_pure(psi, h) / 2.0, abs=1e-6)

    def test_fidelity_power_series(self):
        """F_B(rho, rho_t) = 1 - F_Q t^2 / 4 + O(t^3) for a unitary orbit"""
        rng = counter_rng(9, 0)
        rho = random_density(2, 2, rng)
        h = random_hermitian(4, rng)
        h = h / np.max(np.abs(np.linalg.eigvalsh(h)))
        quarter = qfi_general(rho, h) / 4.0
        ratios = []
        for t in (1e-3, 2e-3, 5e-3, 1e-2):
            u = exp_hermitian(h, t)
            rotated = DensityMatrix.from_matrix(u @ rho.matrix @ u.conj().T, n=2, d=2)
            residual = abs(bures_fidelity(rho, rotated) - 1.0 + quarter * t ** 2)
            ratios.append(residual / t ** 3)
        assert max(ratios) <= 1.0

    def test_haar_states_split_evenly(self, pauli_sphere):
        """Collective minus noncollective mean QFI has zero Haar average for qubits.

        Neither mode dominates: GHZ4 is strictly worse under collective noise,
        while Haar-random 4-qubit states fall on both sides.
        """
        noncollective_worse = 0
        for s in range(100):
            psi = StateFactory.create(f"haar4_2_s{s}")
            if mean_qfi_noncollective(psi, pauli_sphere) > mean_qfi_collective(psi, pauli_sphere):
                noncollective_worse += 1
        assert 30 <= noncollective_worse <= 70
        ghz = StateFactory.create("ghz4_2")
        assert mean_qfi_collective(ghz, pauli_sphere) > mean_qfi_noncollective(ghz, pauli_sphere)
