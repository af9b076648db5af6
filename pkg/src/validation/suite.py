#!/usr/bin/env python3
"""
End-to-end invariant checks grouped for the `validate` command
"""

import logging
import math
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field
from scipy import stats

from config.settings import get_ensemble_catalog
from src.channels import (
    ChannelMode,
    ChannelSpec,
    apply_channel,
    bound_accuracy_fraction,
    bound_dominance_violations,
    channel_average,
    fidelity_curve,
    ghz5_coefficient_grid,
    never_equal_spread,
    time_grid,
)
from src.hamiltonians import second_moment_mc
from src.linalg import (
    EigensolverFactory,
    exp_hermitian,
    haar_unitary,
    hermitian_eig,
    partial_trace,
    psd_sqrt,
)
from src.qfi import (
    mc_mean_qfi,
    mean_qfi_collective,
    mean_qfi_noncollective,
    mean_qfi_noncollective_literal,
    mean_qfi_pure_tensor_collective,
    mean_qfi_pure_tensor_noncollective,
    qfi_general,
    qfi_pure,
)
from src.states import AME6_2_COEFFICIENTS, DensityMatrix, StateFactory, is_k_uniform
from src.utils import MonteCarloExecutor, counter_rng
from .table1 import evaluate_table1, table1_cases

logger = logging.getLogger(__name__)

# RNG streams reserved for validation draws
LINALG_STREAM = 11
INVARIANCE_STREAM = 12

MOMENT_ENSEMBLES = ["pauli_sphere", "spin1_sphere", "gellmann_sphere", "pauli_gue",
                    "pauli_gue_full", "pauli_goe_full"]

ACCURACY_SHARES = {
    # state id: (ensemble preset, reproduced share, claimed share) of the 301-point grid on [0, t*]
    # with (F - B) / F <= 1%. The claimed shares are not reached by this measure; see DESIGN.md.
    "ame6_2": ("pauli_sphere", 0.3156, 0.7667),
    "ame4_3": ("spin1_sphere", 0.3023, 0.7422),
}
ACCURACY_GRID_POINTS = 301
ACCURACY_TOL = 0.01

# relative floor for rows whose sampled QFI is constant and the standard error vanishes
MC_ORACLE_FLOOR = 1e-9


class CheckResult(BaseModel):
    name: str
    passed: bool
    value: Optional[float] = None
    limit: Optional[float] = None
    detail: str = ""


class GroupResult(BaseModel):
    name: str
    passed: bool
    checks: List[CheckResult] = Field(default_factory=list)


class ValidationReport(BaseModel):
    seed: int
    samples: int
    passed: bool
    groups: List[GroupResult]


def _check(name: str, value: float, limit: float, detail: str = "") -> CheckResult:
    """Pass when value <= limit"""
    value = float(value)
    return CheckResult(name=name, passed=bool(value <= limit), value=value, limit=float(limit), detail=detail)


def _random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (z + z.conj().T)


def _random_density(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = z @ z.conj().T
    return rho / np.trace(rho).real


class ValidationSuite:
    """Runs the invariant groups; optional groups are only run when requested by name"""

    default_groups = ["linalg", "states", "table1", "tensor_paths", "invariance", "second_moment",
                      "ensemble_symmetry", "prefactor", "channels"]
    optional_groups = ["mc_oracle", "bound_accuracy"]

    def __init__(self, seed: int, samples: int = 20_000, executor: Optional[MonteCarloExecutor] = None):
        self.seed = seed
        self.samples = samples
        self.executor = executor or MonteCarloExecutor()
        self.catalog = get_ensemble_catalog()

    def available_groups(self) -> List[str]:
        return self.default_groups + self.optional_groups

    def run(self, groups: Optional[List[str]] = None) -> ValidationReport:
        groups = groups or self.default_groups
        unknown = [g for g in groups if g not in self.available_groups()]
        if unknown:
            raise ValueError(f"Unknown validation groups: {', '.join(unknown)}. "
                             f"Available: {', '.join(self.available_groups())}")

        results = []
        for name in groups:
            runner: Callable[[], List[CheckResult]] = getattr(self, f"_group_{name}")
            logger.info(f"Validating group {name}")
            checks = runner()
            results.append(GroupResult(name=name, passed=all(c.passed for c in checks), checks=checks))
        return ValidationReport(seed=self.seed, samples=self.samples,
                                passed=all(g.passed for g in results), groups=results)

    def _group_linalg(self) -> List[CheckResult]:
        rng = counter_rng(self.seed, 0, stream=LINALG_STREAM)
        lapack = EigensolverFactory.create("lapack")
        checks = []
        for dim in (2, 9, 27):
            h = _random_hermitian(dim, rng)
            eig = hermitian_eig(h)
            norm = np.linalg.norm(h)
            v = eig.eigenvectors
            checks.append(_check(f"reconstruction_dim{dim}", np.linalg.norm(eig.reconstruct() - h), 1e-10 * norm))
            checks.append(_check(f"orthonormality_dim{dim}", np.max(np.abs(v.conj().T @ v - np.eye(dim))), 1e-10))
            checks.append(_check(f"lapack_agreement_dim{dim}",
                                 np.max(np.abs(eig.eigenvalues - lapack.decompose(h).eigenvalues)), 1e-9 * norm))
            u = exp_hermitian(h, 1.0)
            checks.append(_check(f"unitarity_dim{dim}", np.max(np.abs(u.conj().T @ u - np.eye(dim))), 1e-10))
            checks.append(_check(f"exp_inverse_dim{dim}",
                                 np.max(np.abs(u @ exp_hermitian(h, -1.0) - np.eye(dim))), 1e-10))
            rho = _random_density(dim, rng)
            root = psd_sqrt(rho)
            checks.append(_check(f"psd_sqrt_square_dim{dim}", np.max(np.abs(root @ root - rho)), 1e-9))

        rho = _random_density(8, rng)
        stepwise = partial_trace(partial_trace(rho, [2, 2, 2], [0, 2]), [2, 2], [0])
        checks.append(_check("partial_trace_composition",
                             np.max(np.abs(stepwise - partial_trace(rho, [2, 2, 2], [0]))), 1e-12))
        return checks

    def _group_states(self) -> List[CheckResult]:
        checks = []
        for state_id in ["ghz4_2", "dicke4_1", "dicke6_3", "ghz4_3", "q4_1", "q4_2", "q4_3", "q4_4",
                         "ame6_2", "ame4_3"]:
            psi = StateFactory.create(state_id)
            checks.append(_check(f"norm_{state_id}", abs(np.linalg.norm(psi.amplitudes) - 1.0), 1e-12))
        checks.append(CheckResult(name="ame6_2_uniform", passed=is_k_uniform(StateFactory.create("ame6_2"), 3)))
        checks.append(CheckResult(name="ame4_3_uniform", passed=is_k_uniform(StateFactory.create("ame4_3"), 2)))
        checks.append(_check("ame6_2_nonzero_count",
                             abs(sum(1 for c in AME6_2_COEFFICIENTS if c != 0) - 32), 0))

        dicke = StateFactory.create("dicke6_3").tensor()
        swapped = np.swapaxes(dicke, 1, 4)
        checks.append(_check("dicke_permutation_invariance", np.max(np.abs(swapped - dicke)), 0.0))
        return checks

    def _group_table1(self) -> List[CheckResult]:
        results = evaluate_table1(table1_cases())
        return [_check(f"{r.state}_{r.basis}", r.deviation, 1e-9) for r in results]

    def _group_tensor_paths(self) -> List[CheckResult]:
        checks = []
        for row, state, ensemble in table1_cases():
            label = f"{row.state}_{row.basis}"
            checks.append(_check(f"collective_{label}", abs(
                mean_qfi_pure_tensor_collective(state, ensemble) - mean_qfi_collective(state, ensemble)), 1e-9))
            noncollective = mean_qfi_noncollective(state, ensemble)
            checks.append(_check(f"noncollective_{label}", abs(
                mean_qfi_pure_tensor_noncollective(state, ensemble) - noncollective), 1e-9))
            checks.append(_check(f"literal_noncollective_{label}", abs(
                mean_qfi_noncollective_literal(state, ensemble) - noncollective), 1e-9))
        return checks

    def _group_invariance(self) -> List[CheckResult]:
        rng = counter_rng(self.seed, 0, stream=INVARIANCE_STREAM)
        checks = []
        for trial, (n, d) in enumerate(((2, 2), (3, 2), (2, 3))):
            dim = d ** n
            rho = _random_density(dim, rng)
            h = _random_hermitian(dim, rng)
            u = haar_unitary(dim, rng)
            rotated = DensityMatrix.from_matrix(u @ rho @ u.conj().T, n=n, d=d)
            original = DensityMatrix.from_matrix(rho, n=n, d=d)
            left = qfi_general(rotated, h)
            right = qfi_general(original, u.conj().T @ h @ u)
            checks.append(_check(f"unitary_invariance_{trial}", abs(left - right), 1e-8 * max(1.0, abs(left))))

        psi = StateFactory.create("haar3_2_s5")
        h = _random_hermitian(8, rng)
        checks.append(_check("rank1_general_vs_pure",
                             abs(qfi_general(psi.density_matrix(), h) - qfi_pure(psi, h)), 1e-8))
        return checks

    def _group_second_moment(self) -> List[CheckResult]:
        checks = []
        for name in MOMENT_ENSEMBLES:
            ensemble = self.catalog.get_ensemble(name)
            mean, std_error = second_moment_mc(ensemble, self.samples, self.seed)
            expected = np.eye(ensemble.r) * ensemble.c / ensemble.r * ensemble.mean_purity()
            excess = np.abs(mean - expected) > 3.0 * std_error
            # one 3-sigma excursion among the r^2 entries is expected at this confidence
            checks.append(_check(f"second_moment_{name}", int(np.sum(excess)), 1,
                                 detail=f"max |deviation| {np.max(np.abs(mean - expected)):.3e}"))
        return checks

    def _group_ensemble_symmetry(self) -> List[CheckResult]:
        checks = []
        count = self.samples
        for name in MOMENT_ENSEMBLES:
            ensemble = self.catalog.get_ensemble(name)
            alphas = ensemble.sample_many(count, self.seed)
            variance = ensemble.coefficient_variance()
            means = np.abs(alphas.mean(axis=0))
            std = alphas.std(axis=0, ddof=1)
            checks.append(_check(f"zero_mean_{name}", float(np.max(means / (4.0 * std / math.sqrt(count)))), 1.0))
            covariance = np.cov(alphas, rowvar=False)
            off_diagonal = np.abs(covariance - np.diag(np.diag(covariance)))
            checks.append(_check(f"isotropy_{name}", float(np.max(off_diagonal)), 4.0 * variance / math.sqrt(count)))

        gue = self.catalog.get_ensemble("gellmann_gue")
        sphere = self.catalog.get_ensemble("gellmann_sphere")
        normalized = gue.sample_many(count, self.seed)
        normalized = normalized / np.linalg.norm(normalized, axis=1, keepdims=True)
        shape = (sphere.r - 1) / 2.0
        # First coordinate on S^{r-1}: (x + 1) / 2 ~ Beta((r-1)/2, (r-1)/2)
        result = stats.kstest((normalized[:, 0] + 1.0) / 2.0, stats.beta(shape, shape).cdf)
        checks.append(CheckResult(name="normalized_gue_is_sphere", passed=bool(result.pvalue > 0.01),
                                  value=float(result.pvalue), limit=0.01, detail="KS p-value, must exceed limit"))
        return checks

    def _group_prefactor(self) -> List[CheckResult]:
        checks = []
        pairs = [("ghz4_2", "pauli_sphere", "pauli_gue_full"), ("dicke4_1", "pauli_sphere", "pauli_gue"),
                 ("q4_2", "gellmann_sphere", "gellmann_gue")]
        for state_id, sphere_name, gue_name in pairs:
            psi = StateFactory.create(state_id)
            sphere = self.catalog.get_ensemble(sphere_name)
            gue = self.catalog.get_ensemble(gue_name)
            for mode, mean_qfi in (("collective", mean_qfi_collective), ("noncollective", mean_qfi_noncollective)):
                if gue.r != sphere.r:
                    # the identity direction adds no QFI, only the sampled dimension changes
                    ratio = gue.mean_purity() / sphere.mean_purity() * sphere.r / gue.r
                else:
                    ratio = gue.mean_purity() / sphere.mean_purity()
                deviation = abs(mean_qfi(psi, gue) - ratio * mean_qfi(psi, sphere))
                checks.append(_check(f"{mode}_{state_id}_{gue_name}", deviation, 1e-9))
        return checks

    def _group_channels(self) -> List[CheckResult]:
        checks = []
        sphere = self.catalog.get_ensemble("pauli_sphere")
        psi = StateFactory.create("ghz4_2")
        for mode in (ChannelMode.COLLECTIVE, ChannelMode.NONCOLLECTIVE, ChannelMode.TWIRL):
            spec = ChannelSpec(mode=mode, ensemble=None if mode == ChannelMode.TWIRL else sphere,
                               t=0.7, samples=512, seed=self.seed)
            averaged = self._raw_channel_trace(psi, spec)
            checks.append(_check(f"trace_preservation_{mode.value}", averaged, 1e-12))
            unchanged = apply_channel(psi, spec.at_time(0.0)) if mode != ChannelMode.TWIRL else None
            if unchanged is not None:
                checks.append(_check(f"identity_at_t0_{mode.value}",
                                     np.max(np.abs(unchanged.matrix - psi.density_matrix().matrix)), 1e-12))

        grid = ghz5_coefficient_grid(np.linspace(0.0, 2.0 * np.pi, 10_000))
        normalization = 2 * grid[:, 0] + 2 * grid[:, 1] + grid[:, 2] + grid[:, 3]
        checks.append(_check("ghz5_normalization", np.max(np.abs(normalization - 1.0)), 1e-12))
        spread = never_equal_spread()
        checks.append(CheckResult(name="ghz5_never_equal", passed=spread > 0, value=spread, limit=0.0,
                                  detail="minimum spread, must be positive"))

        for state_id, preset in (("ghz4_2", "pauli_sphere"), ("ame6_2", "pauli_sphere"), ("ame4_3", "spin1_sphere")):
            state = StateFactory.create(state_id)
            ensemble = self.catalog.get_ensemble(preset)
            spec = ChannelSpec(mode=ChannelMode.COLLECTIVE, ensemble=ensemble, seed=self.seed)
            horizon = math.pi / math.sqrt(mean_qfi_collective(state, ensemble))
            curve = fidelity_curve(state, spec, time_grid(0.0, horizon, 50))
            checks.append(_check(f"bound_dominance_{state_id}", bound_dominance_violations(curve), 0))
        return checks

    def _raw_channel_trace(self, psi, spec: ChannelSpec) -> float:
        """Trace drift and Hermiticity defect of the averaged output before renormalization"""
        averaged = channel_average(psi, spec, self.executor)
        return float(max(abs(np.trace(averaged) - 1.0), np.max(np.abs(averaged - averaged.conj().T))))

    def _group_mc_oracle(self) -> List[CheckResult]:
        checks = []
        misses = {"collective": 0, "noncollective": 0}
        for row, state, ensemble in table1_cases():
            for mode, expected in (("collective", row.collective), ("noncollective", row.noncollective)):
                estimate = mc_mean_qfi(state, ensemble, mode, self.samples, self.seed, self.executor)
                limit = max(3.0 * estimate.std_error, MC_ORACLE_FLOOR * abs(float(expected)))
                if abs(estimate.estimate - float(expected)) > limit:
                    misses[mode] += 1
        for mode, missed in misses.items():
            checks.append(_check(f"mc_oracle_{mode}", missed, 1, detail="rows outside 3 standard errors"))
        return checks

    def _group_bound_accuracy(self) -> List[CheckResult]:
        checks = []
        for state_id, (preset, reproduced, claimed) in ACCURACY_SHARES.items():
            state = StateFactory.create(state_id)
            ensemble = self.catalog.get_ensemble(preset)
            spec = ChannelSpec(mode=ChannelMode.COLLECTIVE, ensemble=ensemble, seed=self.seed)
            horizon = math.pi / math.sqrt(mean_qfi_collective(state, ensemble))
            curve = fidelity_curve(state, spec, time_grid(0.0, horizon, ACCURACY_GRID_POINTS))
            share = bound_accuracy_fraction(curve, ACCURACY_TOL)
            checks.append(_check(f"accuracy_{state_id}", abs(share - reproduced), 0.02,
                                 detail=f"share {share:.4f}, reproduced {reproduced:.4f}, claimed {claimed:.4f}"))
        return checks


def report_to_dict(report: ValidationReport) -> Dict[str, Any]:
    return report.model_dump(mode="json")
