"""
Reference table evaluation and validation suite tests
"""

import pytest

from src.validation import ValidationSuite, evaluate_table1, report_to_dict, table1_cases
from src.validation.suite import ACCURACY_SHARES


class TestTable1:
    """Reference table evaluation tests"""

    def test_all_rows_match(self):
        results = evaluate_table1(table1_cases())
        assert len(results) == 18
        assert all(r.matches for r in results)
        assert max(r.deviation for r in results) < 1e-9

    def test_state_filter(self):
        results = evaluate_table1(table1_cases(states=["ame4_3"]))
        assert [r.basis for r in results] == ["spin", "gellmann"]
        assert results[0].expected_collective == "32/3"

    def test_monte_carlo_columns(self, seed, executor):
        results = evaluate_table1(table1_cases(states=["ghz4_2"]), mc_samples=200, seed=seed, executor=executor)
        row = results[0]
        assert row.mc_collective_stderr > 0
        assert abs(row.mc_collective - 8.0) <= 5.0 * row.mc_collective_stderr


class TestValidationSuite:
    """Validation suite tests"""

    def test_groups(self, seed, executor):
        suite = ValidationSuite(seed, samples=1000, executor=executor)
        report = suite.run(["states", "tensor_paths"])
        assert report.passed
        assert [g.name for g in report.groups] == ["states", "tensor_paths"]

    def test_optional_groups_listed(self, seed):
        suite = ValidationSuite(seed)
        assert "mc_oracle" in suite.available_groups()
        assert "mc_oracle" not in suite.default_groups

    def test_unknown_group(self, seed):
        with pytest.raises(ValueError, match="Unknown validation groups"):
            ValidationSuite(seed).run(["everything"])

    def test_report_dict(self, seed, executor):
        report = ValidationSuite(seed, executor=executor).run(["linalg"])
        payload = report_to_dict(report)
        assert report.passed
        assert payload["seed"] == seed
        assert payload["passed"] is True
        assert payload["groups"][0]["checks"]

    @pytest.mark.parametrize("group", ValidationSuite.default_groups)
    def test_default_group_passes(self, seed, group):
        report = ValidationSuite(seed).run([group])
        failed = [c.name for g in report.groups for c in g.checks if not c.passed]
        assert report.passed, failed

    @pytest.mark.slow
    def test_mc_oracle_group(self, seed, executor):
        """Rows with a constant sampled QFI pass on the relative floor"""
        report = ValidationSuite(seed, samples=4000, executor=executor).run(["mc_oracle"])
        assert report.passed
        assert all(c.value <= 1.0 for c in report.groups[0].checks)

    @pytest.mark.slow
    def test_bound_accuracy_shares(self, seed):
        """Quadrature shares with (F - B) / F <= 1% on the 301-point grid over [0, t*]"""
        report = ValidationSuite(seed).run(["bound_accuracy"])
        assert report.passed
        for check in report.groups[0].checks:
            _, reproduced, claimed = ACCURACY_SHARES[check.name.removeprefix("accuracy_")]
            assert check.value <= 0.005
            assert reproduced < claimed
