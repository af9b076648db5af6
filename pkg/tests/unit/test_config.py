"""
Configuration unit tests
"""

import os
from fractions import Fraction
from unittest.mock import patch

import pytest

from config.settings import EnsembleCatalog, ReferenceTable, Settings
from src.errors import EnsembleConfigError
from src.hamiltonians import EnsembleKind


class TestSettings:
    """Settings tests"""

    def test_default_values(self):
        """Defaults match the documented numerics"""
        settings = Settings()
        assert settings.default_seed == 20190101
        assert settings.mc_chunk_size == 256
        assert settings.psd_tol == 1e-10
        assert settings.jacobi_tol == 1e-13
        assert settings.jacobi_max_sweeps == 100

    def test_env_override(self):
        """QFI_NOISE_* variables override defaults"""
        with patch.dict(os.environ, {
            "QFI_NOISE_WORKERS": "4",
            "QFI_NOISE_EIGENSOLVER": "lapack",
            "QFI_NOISE_LOG_LEVEL": "DEBUG",
        }):
            settings = Settings()
            assert settings.workers == 4
            assert settings.eigensolver == "lapack"
            assert settings.log_level == "DEBUG"

    def test_workers_must_be_positive(self):
        """A zero worker count is rejected"""
        with pytest.raises(ValueError):
            Settings(workers=0)


class TestEnsembleCatalog:
    """Ensemble preset loading tests"""

    def test_lists_presets(self, catalog):
        """All shipped presets are listed"""
        names = catalog.list_ensembles()
        for expected in ("pauli_sphere", "spin1_sphere", "gellmann_sphere", "pauli_gue", "pauli_goe_full"):
            assert expected in names

    def test_builds_ensemble(self, catalog):
        """A preset becomes a HamiltonianEnsemble"""
        ensemble = catalog.get_ensemble("gellmann_sphere")
        assert ensemble.kind == EnsembleKind.SPHERE
        assert ensemble.r == 8
        assert ensemble.basis.d == 3

    def test_default_for_basis(self, catalog):
        """Reference rows use the sphere preset of their basis"""
        assert catalog.default_for_basis("pauli") == "pauli_sphere"
        assert catalog.default_for_basis("spin") == "spin1_sphere"
        with pytest.raises(ValueError):
            catalog.default_for_basis("unknown")

    def test_unknown_preset(self, catalog):
        """Unknown preset names are reported with the available ones"""
        with pytest.raises(ValueError, match="Available"):
            catalog.get_ensemble_config("no_such_preset")

    def test_file_not_found(self):
        """Missing preset file"""
        with pytest.raises(FileNotFoundError, match="Ensemble config not found"):
            EnsembleCatalog(config_path="nonexistent.yaml")

    def test_invalid_yaml(self, temp_config_dir):
        """Malformed YAML"""
        path = temp_config_dir / "ensembles.yaml"
        path.write_text("ensembles: [unclosed", encoding="utf-8")
        with pytest.raises(ValueError, match="Malformed ensemble config"):
            EnsembleCatalog(config_path=str(path))

    def test_invalid_preset_content(self, temp_config_dir):
        """A GOE preset over complex generators fails when built"""
        path = temp_config_dir / "ensembles.yaml"
        path.write_text("ensembles:\n  bad:\n    kind: goe\n    basis: pauli\n    d: 2\n", encoding="utf-8")
        catalog = EnsembleCatalog(config_path=str(path))
        with pytest.raises(EnsembleConfigError):
            catalog.get_ensemble("bad")


class TestReferenceTable:
    """Reference table tests"""

    def test_eighteen_rows(self):
        """Rows load as exact rationals"""
        table = ReferenceTable()
        assert table.version >= 1
        assert len(table.rows) == 18
        assert all(isinstance(row.collective, Fraction) for row in table.rows)

    def test_find(self):
        """Rows are addressed by state and basis"""
        row = ReferenceTable().find("q4_2", "gellmann")
        assert row.collective == Fraction(806, 49)
        assert row.noncollective == Fraction(991, 98)

        row = ReferenceTable().find("dicke6_3", "pauli")
        assert (row.collective, row.noncollective) == (16, 6)

    def test_missing_row(self):
        with pytest.raises(KeyError):
            ReferenceTable().find("ghz4_2", "gellmann")

    def test_invalid_entry(self, temp_config_dir):
        """Rows without the rational columns are rejected"""
        path = temp_config_dir / "table1.yaml"
        path.write_text("version: 1\nrows:\n  - {d: 2, n: 4, basis: pauli, state: ghz4_2}\n", encoding="utf-8")
        with pytest.raises(ValueError, match="Invalid reference table entry"):
            ReferenceTable(config_path=str(path))
