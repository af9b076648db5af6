#!/usr/bin/env python3
"""
Fidelity curves with the averaged bound, and their CSV representation
"""

import logging
from pathlib import Path
from typing import Dict, Optional, Sequence, Union

import numpy as np
import pandas as pd

from src.errors import ArgumentError
from src.hamiltonians import EnsembleKind
from src.qfi import mean_qfi_collective, mean_qfi_noncollective
from src.states import PureState
from src.utils import MonteCarloExecutor
from .channel import overlap_fidelity_mc
from .fidelity import tm_bound, t_star
from .models import ChannelMode, ChannelSpec, FidelityCurve
from .quadrature import quadrature_fidelity

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["t", "fidelity", "fidelity_stderr", "bound", "valid_window", "is_t_star"]
CSV_FLOAT_FORMAT = "%.15g"
GRID_OVERSHOOT = 1.05
# relative slack for a grid that ends at t* up to rounding
T_STAR_SLACK = 1e-9


def time_grid(start: float, stop: float, points: int) -> np.ndarray:
    if points < 2 or stop <= start or start < 0:
        raise ArgumentError(f"Time grid needs 0 <= start < stop and points >= 2, got ({start}, {stop}, {points})")
    return np.linspace(start, stop, points)


def curve_mean_qfi(psi: PureState, spec: ChannelSpec) -> float:
    if spec.mode == ChannelMode.COLLECTIVE:
        return mean_qfi_collective(psi, spec.ensemble)
    if spec.mode == ChannelMode.NONCOLLECTIVE:
        return mean_qfi_noncollective(psi, spec.ensemble)
    raise ArgumentError("Fidelity curves need a collective or non-collective channel")


def quadrature_available(spec: ChannelSpec) -> bool:
    ensemble = spec.ensemble
    return (spec.mode == ChannelMode.COLLECTIVE and spec.fixed_alpha is None
            and ensemble.kind == EnsembleKind.SPHERE and ensemble.r == 3)


def fidelity_curve(psi: PureState, spec: ChannelSpec, times: Sequence[float], state_id: str = "",
                   method: str = "auto", executor: Optional[MonteCarloExecutor] = None) -> FidelityCurve:
    """Fidelity (sphere quadrature when available, Monte Carlo otherwise) and the bound cos^2(Omega t)"""
    times = np.asarray(times, dtype=float)
    mean_qfi = curve_mean_qfi(psi, spec)
    horizon = t_star(mean_qfi)
    if times[-1] > GRID_OVERSHOOT * horizon:
        logger.warning(f"Time grid ends at {times[-1]:.4g}, beyond {GRID_OVERSHOOT} t* = "
                       f"{GRID_OVERSHOOT * horizon:.4g}; the bound is not valid there")

    if method == "auto":
        method = "quadrature" if quadrature_available(spec) else "monte-carlo"

    if method == "quadrature":
        fidelity = quadrature_fidelity(psi, spec.ensemble, times)
        stderr = np.zeros_like(fidelity)
    elif method == "monte-carlo":
        estimates = overlap_fidelity_mc(psi, spec, times, executor)
        fidelity = np.array([e.estimate for e in estimates])
        stderr = np.array([e.std_error for e in estimates])
    else:
        raise ArgumentError(f"Unknown fidelity method '{method}'")

    return FidelityCurve(
        state_id=state_id or psi.label,
        spec=spec,
        mean_qfi=mean_qfi,
        method=method,
        times=times,
        fidelity=fidelity,
        fidelity_stderr=stderr,
        bound=np.asarray(tm_bound(mean_qfi, times)),
        valid_window=times <= horizon,
    )


def bound_accuracy_fraction(curve: FidelityCurve, rel_tol: float = 0.01) -> float:
    """Share of the grid points in [0, t*] where (F - B) / F <= rel_tol"""
    window = curve.valid_window
    if not np.any(window):
        return 0.0
    relative = (curve.fidelity[window] - curve.bound[window]) / curve.fidelity[window]
    return float(np.mean(relative <= rel_tol))


def bound_dominance_violations(curve: FidelityCurve, sigmas: float = 3.0) -> int:
    """Grid points in [0, t*] where fidelity + sigmas * stderr falls below the bound"""
    window = curve.valid_window
    slack = 1e-12 + sigmas * curve.fidelity_stderr[window]
    return int(np.sum(curve.fidelity[window] + slack < curve.bound[window]))


def t_star_marker(curve: FidelityCurve) -> np.ndarray:
    """1 on the grid point nearest t*, all zeros when t* lies outside the grid"""
    marker = np.zeros(curve.times.size, dtype=int)
    if curve.times[0] <= curve.t_star <= curve.times[-1] * (1.0 + T_STAR_SLACK):
        marker[int(np.argmin(np.abs(curve.times - curve.t_star)))] = 1
    return marker


def curve_to_frame(curve: FidelityCurve) -> pd.DataFrame:
    return pd.DataFrame({
        "t": curve.times,
        "fidelity": curve.fidelity,
        "fidelity_stderr": curve.fidelity_stderr,
        "bound": curve.bound,
        "valid_window": curve.valid_window.astype(int),
        "is_t_star": t_star_marker(curve),
    }, columns=CSV_COLUMNS)


def curve_header(curve: FidelityCurve) -> Dict[str, Union[str, int, float]]:
    spec = curve.spec
    header = {
        "state": curve.state_id,
        "mode": spec.mode.value,
        "ensemble": spec.ensemble.name if spec.ensemble is not None else "haar",
        "method": curve.method,
        "seed": spec.seed,
        "samples": spec.samples if curve.method == "monte-carlo" else 0,
        "mean_qfi": float(CSV_FLOAT_FORMAT % curve.mean_qfi),
        "t_star": float(CSV_FLOAT_FORMAT % curve.t_star),
    }
    if grid_overshoots(curve):
        header["warning"] = f"grid ends beyond {GRID_OVERSHOOT} t*, rows with valid_window 0 are outside the bound"
    return header


def grid_overshoots(curve: FidelityCurve) -> bool:
    return bool(curve.times[-1] > GRID_OVERSHOOT * curve.t_star)


def write_curve_csv(curve: FidelityCurve, path: Union[str, Path]) -> Path:
    """CSV with '# key: value' header lines followed by the documented columns"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        for key, value in curve_header(curve).items():
            f.write(f"# {key}: {value}\n")
        curve_to_frame(curve).to_csv(f, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    logger.info(f"Wrote {len(curve.times)} curve rows to {path}")
    return path


def read_curve_csv(path: Union[str, Path]) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")
