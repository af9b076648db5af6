"""
Application configuration - runtime settings, ensemble presets and reference values
"""

from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Project .env takes precedence over the process environment
env_file = Path(__file__).parent.parent / ".env"
if env_file.exists():
    load_dotenv(env_file, override=True)

CONFIG_DIR = Path(__file__).parent


class Settings(BaseSettings):
    """Runtime settings, overridable through QFI_NOISE_* environment variables"""

    model_config = SettingsConfigDict(
        env_prefix="QFI_NOISE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Parallelism and Monte Carlo
    workers: int = Field(default=1, ge=1)
    default_seed: int = Field(default=20190101, ge=0)
    mc_chunk_size: int = Field(default=256, ge=1)

    # Linear algebra
    eigensolver: str = Field(default="jacobi")
    psd_tol: float = Field(default=1e-10, gt=0)
    eig_pair_cutoff: float = Field(default=1e-12, gt=0)
    jacobi_tol: float = Field(default=1e-13, gt=0)
    jacobi_max_sweeps: int = Field(default=100, ge=1)

    # Sphere quadrature
    quadrature_tol: float = Field(default=1e-9, gt=0)
    quadrature_start_order: int = Field(default=8, ge=2)
    quadrature_max_order: int = Field(default=256, ge=2)

    # Logging
    log_level: str = Field(default="INFO")

    # Output
    output_dir: str = Field(default="./results")

    # Reference data
    ensembles_file: str = Field(default=str(CONFIG_DIR / "ensembles.yaml"))
    table1_file: str = Field(default=str(CONFIG_DIR / "table1.yaml"))


class EnsembleCatalog:
    """Named Hamiltonian ensemble presets loaded from YAML"""

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = Path(config_path or get_settings().ensembles_file)
        self._config: Optional[Dict[str, Any]] = None
        self.load_config()

    def load_config(self) -> None:
        """Load ensemble presets"""
        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                self._config = yaml.safe_load(f)
        except FileNotFoundError:
            raise FileNotFoundError(f"Ensemble config not found: {self.config_path}")
        except yaml.YAMLError as e:
            raise ValueError(f"Malformed ensemble config: {e}")

        if not isinstance(self._config, dict) or "ensembles" not in self._config:
            raise ValueError(f"Ensemble config has no 'ensembles' section: {self.config_path}")

    def list_ensembles(self) -> List[str]:
        return list(self._config["ensembles"].keys())

    def get_ensemble_config(self, name: str) -> Dict[str, Any]:
        if name not in self._config["ensembles"]:
            available = ", ".join(self.list_ensembles())
            raise ValueError(f"Unknown ensemble preset '{name}'. Available: {available}")
        return dict(self._config["ensembles"][name])

    def get_ensemble(self, name: str):
        """Build a HamiltonianEnsemble from a named preset"""
        from src.hamiltonians import ensemble_from_config

        return ensemble_from_config(self.get_ensemble_config(name))

    def default_for_basis(self, basis: str) -> str:
        """Preset used for Table 1 rows of a given basis"""
        defaults = self._config.get("table1_defaults", {})
        if basis not in defaults:
            raise ValueError(f"No default ensemble preset for basis '{basis}'")
        return defaults[basis]


class Table1Row(BaseModel):
    """One reference row: exact mean QFI values for a state and local basis"""

    d: int
    n: int
    basis: str
    state: str
    collective: Fraction
    noncollective: Fraction

    model_config = {"arbitrary_types_allowed": True}


class ReferenceTable:
    """Versioned Table 1 reference values stored as exact rationals"""

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = Path(config_path or get_settings().table1_file)
        self.version: int = 0
        self.rows: List[Table1Row] = []
        self.load_config()

    def load_config(self) -> None:
        try:
            with open(self.config_path, "r", encoding="utf-8") as f:
                raw = yaml.safe_load(f)
        except FileNotFoundError:
            raise FileNotFoundError(f"Reference table not found: {self.config_path}")
        except yaml.YAMLError as e:
            raise ValueError(f"Malformed reference table: {e}")

        try:
            self.version = int(raw["version"])
            self.rows = [
                Table1Row(
                    d=row["d"],
                    n=row["n"],
                    basis=row["basis"],
                    state=row["state"],
                    collective=Fraction(str(row["collective"])),
                    noncollective=Fraction(str(row["noncollective"])),
                )
                for row in raw["rows"]
            ]
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"Invalid reference table entry: {e}")

    def find(self, state: str, basis: str) -> Table1Row:
        for row in self.rows:
            if row.state == state and row.basis == basis:
                return row
        raise KeyError(f"No reference row for state '{state}' with basis '{basis}'")


def get_settings() -> Settings:
    """Fresh settings instance (environment is re-read on every call)"""
    return Settings()


def get_ensemble_catalog() -> EnsembleCatalog:
    return EnsembleCatalog()


def get_reference_table() -> ReferenceTable:
    return ReferenceTable()
