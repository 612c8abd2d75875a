"""Tests for the report builders."""
import pytest

from src.algebra.finite_algebra import make_cyclic, trivial_action
from src.errors import InternalInconsistencyError
from src.extensions.extensions import fibre_enumerate
from src.fibrations.fibration import Verdict
from src.suites.reports import (
    InstanceResult,
    VerifyReport,
    build_baer_report,
    build_h2_report,
    build_torsors_report,
    render_table,
)


class TestRenderTable:
    """Tests for aligned text tables"""

    def test_columns_are_aligned(self):
        text = render_table(["a", "long"], [[1, 2], ["three", 4]])
        lines = text.splitlines()
        assert lines[0] == "a      long"
        assert lines[1] == "-----  ----"
        assert lines[3] == "three  4"

    def test_header_only(self):
        assert render_table(["x"], []) == "x\n-"


class TestH2Report:
    """pi0 against H2 and pi1 against Z1"""

    def test_trivial_z2_by_z2(self, trivial_z2_module):
        report = build_h2_report(trivial_z2_module)
        data = report.to_dict()
        assert data["pi0"] == {"order": 2, "invariants": [2]}
        assert data["h2"] == {"order": 2, "invariants": [2]}
        assert data["status"] == "AGREE"
        assert report.to_text().endswith("AGREE")

    def test_trivial_group_acting_on_z4(self):
        report = build_h2_report(trivial_action(make_cyclic(1), make_cyclic(4)))
        assert report.h2_invariants == []
        assert report.pi1_invariants == []
        assert report.agree

    def test_sign_action(self, sign_z2_on_z3):
        report = build_h2_report(sign_z2_on_z3, action="inv")
        assert report.to_dict()["action"] == "inv"
        assert report.pi0_order == 1
        assert report.z1_invariants == [3]

    def test_disagreement_is_logged(self, trivial_z2_module, mocker):
        mocker.patch("src.suites.reports.h2_group", return_value=make_cyclic(1))
        warning = mocker.patch("src.suites.reports.logger.warning")
        report = build_h2_report(trivial_z2_module)
        assert report.status == "DISAGREE"
        warning.assert_called_once()


class TestTorsorReport:
    """Counts of torsors"""

    @pytest.mark.parametrize("order,count,tables", [(2, 2, 1), (3, 6, 2)])
    def test_counts(self, order, count, tables):
        data = build_torsors_report(make_cyclic(order)).to_dict()
        assert data["count"] == count
        assert data["torsor_tables"] == tables
        assert data["pi0"] == 1
        assert data["pi1"] == {"order": order, "invariants": [order]}

    def test_text(self, z3):
        text = build_torsors_report(z3).to_text()
        assert text.startswith("Torsors over Z3")
        assert "torsor tables" in text


class TestBaerReport:
    """Baer tensor classified in H2"""

    def test_twisted_plus_twisted_is_split(self, trivial_z2_module):
        split, twisted = fibre_enumerate(trivial_z2_module)
        report = build_baer_report(twisted, twisted)
        assert report.classes == {"first": 1, "second": 1, "tensor": 0}
        assert report.split

    def test_split_plus_twisted(self, trivial_z2_module):
        split, twisted = fibre_enumerate(trivial_z2_module)
        report = build_baer_report(split, twisted)
        assert report.classes["tensor"] == 1
        assert not report.split
        assert report.to_dict()["split"] is False
        assert "split: False" in report.to_text()

    def test_disagreement_with_the_isomorphism_search(self, trivial_z2_module, mocker):
        mocker.patch("src.suites.reports.vertical_isomorphic", return_value=None)
        split, twisted = fibre_enumerate(trivial_z2_module)
        with pytest.raises(InternalInconsistencyError, match="Baer tensor"):
            build_baer_report(twisted, twisted)


class TestVerifyReport:
    """Counts and the final verdict line"""

    def _report(self, *results):
        return VerifyReport("demo", 2, list(results))

    def test_all_pass(self):
        report = self._report(
            InstanceResult(0, "first", Verdict.ok("x", checked=3)),
            InstanceResult(1, "second", Verdict.ok("x", checked=1, sampled=True)),
        )
        assert report.passed
        assert report.to_dict()["counts"] == {"total": 2, "passed": 2, "failed": 0}
        text = report.to_text()
        assert "sampled" in text
        assert text.endswith("PASSED")

    def test_expected_failure_counts_as_ok(self):
        report = self._report(InstanceResult(0, "negative", Verdict.fail("broken", label="x"), expect_pass=False))
        assert report.passed
        assert "(expected failure)" in report.to_text()

    def test_failure_is_reported_with_its_witness(self):
        report = self._report(InstanceResult(0, "bad", Verdict.fail("broken", label="check")))
        assert not report.passed
        text = report.to_text()
        assert "#0 bad [check]: broken" in text
        assert text.endswith("FAILED")

    def test_unexpected_pass(self):
        report = self._report(InstanceResult(3, "neg", Verdict.ok("x"), expect_pass=False))
        assert report.to_dict()["counts"]["failed"] == 1
        assert "unexpected pass" in report.to_text()
