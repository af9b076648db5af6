"""
Reference-table evaluation and grouped invariant checks
"""

from .suite import CheckResult, GroupResult, ValidationReport, ValidationSuite, report_to_dict
from .table1 import TABLE1_TOL, Table1Case, Table1Result, evaluate_table1, table1_cases

__all__ = [
    "CheckResult",
    "GroupResult",
    "ValidationReport",
    "ValidationSuite",
    "report_to_dict",
    "TABLE1_TOL",
    "Table1Case",
    "Table1Result",
    "evaluate_table1",
    "table1_cases",
]
