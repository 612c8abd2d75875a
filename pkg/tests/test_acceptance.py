"""
Exhaustive grids over every suite. Slow; run with `pytest -m slow`.
"""
import pytest

from src.actions.torsors import TorsorOracle
from src.algebra.algebra_config import AlgebraConfig
from src.algebra.finite_algebra import abelian_invariants, make_cyclic
from src.cohomology.cocycles import h2_group
from src.extensions.extension_oracle import ExtensionOracle
from src.extensions.extensions import pi0
from src.fibrations.monoidal import two_group_suite
from src.suites.instances import SUITE_BUILDERS, cocartesian_cases, grid_groups, module_case_name, module_grid
from src.suites.reports import build_torsors_report
from src.suites.runner import run_suite

pytestmark = pytest.mark.slow


class TestSuites:
    """Every suite passes on the default grid"""

    @pytest.mark.parametrize("suite", sorted(SUITE_BUILDERS))
    async def test_suite_at_max_two(self, suite):
        report = await run_suite(suite, 2)
        assert report.passed, report.to_text()

    @pytest.mark.parametrize("suite", ["groupal", "two-group", "torsor-char", "cohomology", "contracted", "cocartesian"])
    async def test_suite_at_max_three(self, suite):
        report = await run_suite(suite, 3)
        assert report.passed, report.to_text()

    @pytest.mark.parametrize("suite", ["cohomology", "torsor-char"])
    async def test_suite_at_max_four(self, suite):
        report = await run_suite(suite, 4)
        assert report.passed, report.to_text()

    @pytest.mark.parametrize("suite", ["groupal", "two-group"])
    async def test_whole_fibres_at_max_three(self, suite):
        AlgebraConfig.SUITE_OBJECT_LIMIT = 0
        report = await run_suite(suite, 3)
        assert report.passed, report.to_text()
        assert not any(r.verdict.sampled for r in report.results)


class TestCohomologyGrid:
    """pi0 of extensions against H2 over the whole module grid"""

    @pytest.mark.parametrize("module", module_grid(4), ids=module_case_name)
    def test_pi0_matches_h2(self, module):
        assert abelian_invariants(pi0(module)) == abelian_invariants(h2_group(module))


class TestTorsorCounts:
    """|B|! trivialized torsors and a single isomorphism class"""

    @pytest.mark.parametrize("order", [1, 2, 3, 4])
    def test_counts(self, order):
        data = build_torsors_report(make_cyclic(order)).to_dict()
        assert data["pi0"] == 1
        assert data["count"] == [1, 1, 2, 6, 24][order]


class TestWholeFibres:
    """Checks that quantify over entire fibres"""

    @pytest.mark.parametrize("B", grid_groups(4), ids=lambda g: g.label())
    def test_torsor_two_groups(self, B):
        oracle = TorsorOracle()
        verdict = two_group_suite(oracle, oracle.internal_monoid(B))
        assert verdict.passed
        assert not verdict.sampled

    @pytest.mark.parametrize("module", module_grid(3), ids=module_case_name)
    def test_extension_two_groups(self, module):
        oracle = ExtensionOracle(module.C)
        verdict = two_group_suite(oracle, oracle.internal_monoid(module))
        assert verdict.passed
        assert not verdict.sampled

    @pytest.mark.parametrize("case", [c for c in cocartesian_cases(4) if c.name.startswith("ACT(")],
                             ids=lambda c: c.name)
    def test_action_lifts_against_the_max_four_grid(self, case):
        verdict = case.run()
        assert verdict.passed
        assert not verdict.sampled
