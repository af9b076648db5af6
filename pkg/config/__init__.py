"""
Configuration module
"""

from .settings import (
    EnsembleCatalog,
    ReferenceTable,
    Settings,
    Table1Row,
    get_ensemble_catalog,
    get_reference_table,
    get_settings,
)

__all__ = [
    "Settings",
    "get_settings",
    "EnsembleCatalog",
    "get_ensemble_catalog",
    "ReferenceTable",
    "Table1Row",
    "get_reference_table",
]
