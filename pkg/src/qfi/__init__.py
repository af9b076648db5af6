"""
Quantum Fisher information: exact values, ensemble means and the Monte Carlo oracle
"""

from .fisher import (
    QfiKernel,
    estimation_bound,
    fisher_matrix_diag,
    qfi_general,
    qfi_pure,
    qfi_values,
    skew_information,
)
from .models import Provenance, QfiSummary, omega, precision_bound, t_star
from .monte_carlo import mc_mean_qfi, mc_mean_qfi_summary
from .ensemble_mean import (
    mean_qfi_collective,
    mean_qfi_noncollective,
    mean_qfi_noncollective_literal,
    mean_qfi_pure_tensor_collective,
    mean_qfi_pure_tensor_noncollective,
    mean_qfi_summary,
)

__all__ = [
    "QfiKernel",
    "estimation_bound",
    "fisher_matrix_diag",
    "qfi_general",
    "qfi_pure",
    "qfi_values",
    "skew_information",
    "Provenance",
    "QfiSummary",
    "omega",
    "precision_bound",
    "t_star",
    "mc_mean_qfi",
    "mc_mean_qfi_summary",
    "mean_qfi_collective",
    "mean_qfi_noncollective",
    "mean_qfi_noncollective_literal",
    "mean_qfi_pure_tensor_collective",
    "mean_qfi_pure_tensor_noncollective",
    "mean_qfi_summary",
]
