#!/usr/bin/env python3
"""
Command implementations: table1, curve, ghz5, validate and sample-ham.

Every command takes a RunConfig and a MonteCarloExecutor and returns an ExitCode.
"""

import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

import numpy as np
import orjson
import pandas as pd

from config.settings import get_ensemble_catalog, get_reference_table, get_settings
from src.channels import (
    POPULATION_LABELS,
    ChannelMode,
    ChannelSpec,
    bound_dominance_violations,
    curve_header,
    curve_to_frame,
    fidelity_curve,
    ghz5_coefficient_grid,
    ghz5_populations_mc,
    grid_overshoots,
    max_population_deviation,
    never_equal_spread,
    t_star,
    time_grid,
    twirl_populations_mc,
    write_curve_csv,
)
from src.channels.curves import CSV_FLOAT_FORMAT, curve_mean_qfi
from src.errors import ArgumentError, DimensionMismatchError, StateArgumentError
from src.hamiltonians import HamiltonianEnsemble, embed_collective, embed_noncollective, ensemble_from_config
from src.qfi.monte_carlo import draw_coefficients
from src.states import PureState, StateFactory
from src.utils import MonteCarloExecutor, summarize
from src.validation import TABLE1_TOL, ValidationSuite, evaluate_table1, report_to_dict, table1_cases
from .models import Command, ExitCode, OutputFormat, RunConfig

logger = logging.getLogger(__name__)

DEFAULT_MC_SAMPLES = 10_000
DEFAULT_VALIDATE_SAMPLES = 20_000
DEFAULT_SAMPLE_HAM_DRAWS = 10
DEFAULT_GHZ5_SAMPLES = 100_000
DEFAULT_GHZ5_TIMES = (0.0, 0.5, 1.0, 2.0)
GHZ5_TOL = 5e-3
GHZ5_TWIRL_SIGMAS = 3.0
NORMALIZATION_TOL = 1e-12


def _write_json(payload: Any, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(orjson.dumps(payload, option=orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY))
    return path


def _write_rows(rows: List[Dict[str, Any]], path: Union[str, Path], fmt: OutputFormat) -> Path:
    path = Path(path)
    if fmt == OutputFormat.JSON:
        return _write_json(rows, path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(rows).to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    return path


def _complex_payload(matrix: np.ndarray) -> Dict[str, list]:
    return {"real": matrix.real.tolist(), "imag": matrix.imag.tolist()}


def resolve_ensemble(config: RunConfig, d: Optional[int] = None) -> HamiltonianEnsemble:
    """Ensemble from, in order: an inline config, a preset name, or a kind plus basis"""
    catalog = get_ensemble_catalog()
    if config.ensemble_config:
        settings = dict(config.ensemble_config)
        if d is not None:
            settings.setdefault("d", d)
        ensemble = ensemble_from_config(settings)
    elif config.ensemble in catalog.list_ensembles():
        ensemble = catalog.get_ensemble(config.ensemble)
    else:
        basis = config.basis or ("pauli" if d in (None, 2) else "spin")
        if d is None and basis == "pauli":
            d = 2
        ensemble = ensemble_from_config({"kind": config.ensemble or "sphere", "basis": basis, "d": d})

    if d is not None and ensemble.basis.d != d:
        raise DimensionMismatchError(f"Ensemble {ensemble.name} acts on d={ensemble.basis.d}, state has d={d}")
    return ensemble


def cmd_table1(config: RunConfig, executor: MonteCarloExecutor) -> ExitCode:
    """Analytic mean QFI for every reference row, with optional Monte Carlo columns"""
    table = get_reference_table()
    known = {row.state for row in table.rows}
    unknown = [s for s in config.states if s not in known]
    if unknown:
        raise StateArgumentError(f"No reference row for state id(s): {', '.join(unknown)}")

    mc_samples = (config.samples or DEFAULT_MC_SAMPLES) if config.mc else 0
    print(f"📊 Mean QFI reference table (version {table.version}, {len(table.rows)} rows)")
    if mc_samples:
        print(f"   Monte Carlo columns: {mc_samples} samples, seed {config.seed}")

    cases = table1_cases(table=table, states=config.states or None)
    results = evaluate_table1(cases, mc_samples=mc_samples, seed=config.seed or 0, executor=executor)
    for r in results:
        status = "✅" if r.matches else "❌"
        line = (f"   {status} d={r.d} n={r.n} {r.basis:<9} {r.state:<8} "
                f"collective {r.collective:.10g} ({r.expected_collective})  "
                f"non-collective {r.noncollective:.10g} ({r.expected_noncollective})")
        if r.mc_collective is not None:
            line += (f"  MC {r.mc_collective:.4f}±{r.mc_collective_stderr:.4f}"
                     f" / {r.mc_noncollective:.4f}±{r.mc_noncollective_stderr:.4f}")
        print(line)

    if config.out:
        path = _write_rows([r.model_dump(exclude_none=True) for r in results], config.out, config.format)
        print(f"💾 Saved: {path}")

    mismatches = sum(1 for r in results if not r.matches)
    if mismatches:
        print(f"❌ {mismatches} rows deviate from the stored values by more than {TABLE1_TOL:g}")
        return ExitCode.MISMATCH
    print(f"✅ All {len(results)} rows match to {TABLE1_TOL:g}")
    return ExitCode.OK


def cmd_curve(config: RunConfig, executor: MonteCarloExecutor) -> ExitCode:
    """Fidelity curve and averaged bound, one file per state and mode"""
    if not config.states:
        raise ArgumentError("curve needs at least one --state")
    modes = config.modes or [ChannelMode.COLLECTIVE, ChannelMode.NONCOLLECTIVE]
    if ChannelMode.TWIRL in modes:
        raise ArgumentError("Fidelity curves need a collective or non-collective channel")
    out_dir = Path(config.out or get_settings().output_dir)

    for state_id in config.states:
        psi = StateFactory.create(state_id)
        ensemble = resolve_ensemble(config, psi.d)
        for mode in modes:
            spec = ChannelSpec(mode=mode, ensemble=ensemble, seed=config.seed,
                               samples=config.samples or DEFAULT_MC_SAMPLES)
            stop = config.t_stop if config.t_stop is not None else t_star(curve_mean_qfi(psi, spec))
            times = time_grid(config.t_start, stop, config.t_points)
            print(f"📈 {state_id} {mode.value} {ensemble.name}: {config.t_points} points on "
                  f"[{config.t_start:g}, {stop:.6g}]")

            curve = fidelity_curve(psi, spec, times, state_id, method=config.method, executor=executor)
            path = out_dir / f"{state_id}_{mode.value}_{ensemble.name.replace(':', '_')}.{config.format.value}"
            if config.format == OutputFormat.CSV:
                write_curve_csv(curve, path)
            else:
                _write_json({"header": curve_header(curve),
                             "rows": curve_to_frame(curve).to_dict(orient="list")}, path)

            print(f"   ✅ Saved: {path} (method {curve.method}, mean QFI {curve.mean_qfi:.10g}, "
                  f"t* {curve.t_star:.6g})")
            if grid_overshoots(curve):
                print("   ⚠️  Grid extends beyond 1.05 t*; rows outside the window are marked valid_window=0")
            violations = bound_dominance_violations(curve)
            if violations:
                print(f"   ⚠️  {violations} points inside [0, t*] fall below the bound by more than 3 standard errors")
    return ExitCode.OK


def _population_row(mode: str, t: Optional[float], expected: np.ndarray, estimate) -> Dict[str, Any]:
    row: Dict[str, Any] = {"mode": mode, "t": t}
    for label, value, error, target in zip(POPULATION_LABELS, estimate.populations,
                                           estimate.std_errors, expected):
        row[f"p_{label}"] = float(value)
        row[f"stderr_{label}"] = float(error)
        row[f"expected_{label}"] = float(target)
    row["max_deviation"] = float(np.max(np.abs(estimate.populations - expected)))
    row["leakage"] = estimate.leakage
    return row


def _populations_agree(estimate, expected: np.ndarray, sigmas: Optional[float] = None) -> bool:
    """Fixed tolerance for the closed form, or sigmas standard errors when given"""
    limits = GHZ5_TOL if sigmas is None else sigmas * estimate.std_errors
    return bool(np.all(np.abs(estimate.populations - expected) <= limits))


def cmd_ghz5(config: RunConfig, executor: MonteCarloExecutor) -> ExitCode:
    """Closed-form GHZ5 coefficients against Monte Carlo populations"""
    modes = config.modes or [ChannelMode.COLLECTIVE]
    if ChannelMode.NONCOLLECTIVE in modes:
        raise ArgumentError("ghz5 supports the collective and twirl channels")
    samples = config.samples or DEFAULT_GHZ5_SAMPLES
    if config.t_stop is None:
        times = list(DEFAULT_GHZ5_TIMES)
    else:
        times = time_grid(config.t_start, config.t_stop, config.t_points).tolist()

    print("🧮 GHZ5 closed-form coefficients")
    grid = ghz5_coefficient_grid(np.asarray(times))
    for t, z in zip(times, grid):
        print(f"   t={t:<8.4g} z1={z[0]:.6f} z2={z[1]:.6f} z3={z[2]:.6f} z4={z[3]:.6f}")

    dense = ghz5_coefficient_grid(np.linspace(0.0, 2.0 * np.pi, 10_000))
    normalization_error = float(np.max(np.abs(2 * dense[:, 0] + 2 * dense[:, 1] + dense[:, 2] + dense[:, 3] - 1.0)))
    spread = never_equal_spread()
    print(f"📐 Normalization error {normalization_error:.2e}, min spread {spread:.6g}")

    rows = []
    agree = True
    if ChannelMode.COLLECTIVE in modes:
        print(f"🎲 Collective populations ({samples} samples, seed {config.seed})")
        for t, z in zip(times, grid):
            estimate = ghz5_populations_mc(t, samples, config.seed, executor=executor)
            expected = np.array([z[0], z[1], z[1], z[0], z[2], z[3]])
            ok = _populations_agree(estimate, expected)
            agree = agree and ok
            rows.append(_population_row("collective", t, expected, estimate))
            print(f"   {'✅' if ok else '❌'} t={t:<8.4g} max deviation {max_population_deviation(estimate):.2e}")

    if ChannelMode.TWIRL in modes:
        print(f"🌀 Twirled populations ({samples} samples, seed {config.seed})")
        estimate = twirl_populations_mc(samples, config.seed, executor=executor)
        expected = np.full(len(POPULATION_LABELS), 1.0 / len(POPULATION_LABELS))
        ok = _populations_agree(estimate, expected, sigmas=GHZ5_TWIRL_SIGMAS)
        agree = agree and ok
        rows.append(_population_row("twirl", None, expected, estimate))
        print(f"   {'✅' if ok else '❌'} max deviation from 1/6 {rows[-1]['max_deviation']:.2e}")

    if config.out:
        for row in rows:
            row["min_spread"] = spread
        path = _write_rows(rows, config.out, config.format)
        print(f"💾 Saved: {path}")

    if normalization_error > NORMALIZATION_TOL or spread <= 0 or not agree:
        print("❌ GHZ5 check failed")
        return ExitCode.MISMATCH
    print("✅ GHZ5 populations agree with the closed form")
    return ExitCode.OK


def cmd_validate(config: RunConfig, executor: MonteCarloExecutor) -> ExitCode:
    """Run the invariant groups and write the JSON verdict"""
    suite = ValidationSuite(config.seed, samples=config.samples or DEFAULT_VALIDATE_SAMPLES, executor=executor)
    if config.groups:
        unknown = [g for g in config.groups if g not in suite.available_groups()]
        if unknown:
            raise ArgumentError(f"Unknown validation group(s): {', '.join(unknown)}. "
                                f"Available: {', '.join(suite.available_groups())}")

    print(f"🔬 Validating with seed {config.seed}, {suite.samples} samples")
    report = suite.run(config.groups)
    for group in report.groups:
        passed = sum(1 for c in group.checks if c.passed)
        print(f"   {'✅' if group.passed else '❌'} {group.name}: {passed}/{len(group.checks)} checks")
        for check in group.checks:
            if not check.passed:
                print(f"      ❌ {check.name}: value {check.value} limit {check.limit} {check.detail}".rstrip())

    path = Path(config.out or Path(get_settings().output_dir) / f"validation_seed{config.seed}.json")
    _write_json(report_to_dict(report), path)
    print(f"💾 Saved: {path}")
    return ExitCode.OK if report.passed else ExitCode.MISMATCH


def cmd_sample_ham(config: RunConfig, executor: MonteCarloExecutor) -> ExitCode:
    """Dump sampled coefficient vectors and embedded Hamiltonians for auditing"""
    modes = config.modes or [ChannelMode.COLLECTIVE]
    if len(modes) != 1 or modes[0] == ChannelMode.TWIRL:
        raise ArgumentError("sample-ham needs exactly one of --mode collective|noncollective")
    mode = modes[0]

    psi: Optional[PureState] = StateFactory.create(config.states[0]) if config.states else None
    ensemble = resolve_ensemble(config, psi.d if psi else config.local_dim)
    n = psi.n if psi else (config.sites or 1)
    basis = ensemble.sampling_basis
    draws = config.samples or DEFAULT_SAMPLE_HAM_DRAWS

    records = []
    purities = []
    for index in range(draws):
        vectors = draw_coefficients(ensemble, mode.value, n, config.seed, index).reshape(-1, ensemble.r)
        site_purity = [float(np.real(np.trace(h @ h))) for h in (ensemble.hamiltonian(v) for v in vectors)]
        purities.extend(site_purity)
        record: Dict[str, Any] = {
            "index": index,
            "alpha": vectors.tolist(),
            "norms": np.linalg.norm(vectors, axis=1).tolist(),
            "purity": site_purity,
        }
        if config.embed:
            embedded = (embed_collective(vectors[0], basis, n) if mode == ChannelMode.COLLECTIVE
                        else embed_noncollective(vectors, basis, n))
            record["hamiltonian"] = _complex_payload(embedded.matrix)
        records.append(record)

    summary = summarize(np.asarray(purities))
    expected = ensemble.mean_purity()
    slack = max(3.0 * summary.std_error, 1e-9 * max(1.0, expected))
    within = abs(summary.estimate - expected) <= slack
    payload = {
        "ensemble": ensemble.describe(),
        "mode": mode.value,
        "n": n,
        "d": ensemble.basis.d,
        "seed": config.seed,
        "summary": {
            "mean_purity": summary.estimate,
            "std_error": summary.std_error,
            "expected_mean_purity": expected,
            "within_3_sigma": within,
        },
        "draws": records,
    }

    path = Path(config.out or Path(get_settings().output_dir)
                / f"sample_ham_{ensemble.name.replace(':', '_')}_{mode.value}_seed{config.seed}.json")
    _write_json(payload, path)
    print(f"🎲 {draws} draws from {ensemble.name} ({mode.value}, n={n}, seed {config.seed})")
    print(f"   {'✅' if within else '⚠️ '} mean Tr H^2 {summary.estimate:.6g} ± {summary.std_error:.2g}, "
          f"expected {expected:.6g}")
    print(f"💾 Saved: {path}")
    return ExitCode.OK


COMMANDS: Dict[Command, Callable[[RunConfig, MonteCarloExecutor], ExitCode]] = {
    Command.TABLE1: cmd_table1,
    Command.CURVE: cmd_curve,
    Command.GHZ5: cmd_ghz5,
    Command.VALIDATE: cmd_validate,
    Command.SAMPLE_HAM: cmd_sample_ham,
}


def run_command(config: RunConfig, executor: Optional[MonteCarloExecutor] = None) -> ExitCode:
    executor = executor or MonteCarloExecutor()
    logger.debug(f"Running {config.command.value} with {config.model_dump(exclude_none=True)}")
    return COMMANDS[config.command](config, executor)
