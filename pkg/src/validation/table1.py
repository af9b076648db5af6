#!/usr/bin/env python3
"""
Reference-table evaluation: analytic mean QFI for every stored row
"""

import logging
from typing import Iterator, List, NamedTuple, Optional

from pydantic import BaseModel

from config.settings import EnsembleCatalog, ReferenceTable, Table1Row, get_ensemble_catalog, get_reference_table
from src.hamiltonians import HamiltonianEnsemble
from src.qfi import mc_mean_qfi, mean_qfi_collective, mean_qfi_noncollective
from src.states import PureState, StateFactory
from src.utils import MonteCarloExecutor

logger = logging.getLogger(__name__)

TABLE1_TOL = 1e-9


class Table1Case(NamedTuple):
    row: Table1Row
    state: PureState
    ensemble: HamiltonianEnsemble


class Table1Result(BaseModel):
    d: int
    n: int
    basis: str
    state: str
    collective: float
    noncollective: float
    expected_collective: str
    expected_noncollective: str
    deviation: float
    matches: bool
    mc_collective: Optional[float] = None
    mc_collective_stderr: Optional[float] = None
    mc_noncollective: Optional[float] = None
    mc_noncollective_stderr: Optional[float] = None


def table1_cases(table: Optional[ReferenceTable] = None,
                 catalog: Optional[EnsembleCatalog] = None,
                 states: Optional[List[str]] = None) -> Iterator[Table1Case]:
    """Rows in stored order, each with its state and default ensemble"""
    table = table or get_reference_table()
    catalog = catalog or get_ensemble_catalog()
    ensembles = {}
    for row in table.rows:
        if states and row.state not in states:
            continue
        if row.basis not in ensembles:
            ensembles[row.basis] = catalog.get_ensemble(catalog.default_for_basis(row.basis))
        yield Table1Case(row, StateFactory.create(row.state), ensembles[row.basis])


def evaluate_table1(cases: Iterator[Table1Case], mc_samples: int = 0, seed: int = 0,
                    executor: Optional[MonteCarloExecutor] = None) -> List[Table1Result]:
    results = []
    for row, state, ensemble in cases:
        collective = mean_qfi_collective(state, ensemble)
        noncollective = mean_qfi_noncollective(state, ensemble)
        deviation = max(abs(collective - float(row.collective)),
                        abs(noncollective - float(row.noncollective)))
        result = Table1Result(
            d=row.d, n=row.n, basis=row.basis, state=row.state,
            collective=collective, noncollective=noncollective,
            expected_collective=str(row.collective), expected_noncollective=str(row.noncollective),
            deviation=deviation, matches=deviation <= TABLE1_TOL,
        )
        if mc_samples:
            col = mc_mean_qfi(state, ensemble, "collective", mc_samples, seed, executor)
            nc = mc_mean_qfi(state, ensemble, "noncollective", mc_samples, seed, executor)
            result.mc_collective, result.mc_collective_stderr = col.estimate, col.std_error
            result.mc_noncollective, result.mc_noncollective_stderr = nc.estimate, nc.std_error
        logger.debug(f"{row.state}/{row.basis}: {collective:.12g}, {noncollective:.12g} (dev {deviation:.1e})")
        results.append(result)
    return results
