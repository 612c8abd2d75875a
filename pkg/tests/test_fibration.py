"""Tests for the generic opfibration checks, run against both concrete oracles."""
import pytest

from src.actions.action_oracle import ActionOracle
from src.actions.actions import MSet, empty_action, regular_action, terminal_action, trivial_mset
from src.actions.torsors import TorsorOracle
from src.algebra.finite_algebra import Hom, constant_hom, direct_product, identity_hom, make_cyclic
from src.errors import InternalInconsistencyError, InvalidArgumentError
from src.extensions.extension_oracle import ExtensionOracle
from src.extensions.extensions import fibre_enumerate, module_product, split_extension, zero_map
from src.fibrations.fibration import (
    STAR,
    Verdict,
    Witness,
    check_adjunction,
    check_beck_chevalley,
    check_diagonal_cocartesian,
    check_product_of_lifts,
    check_terminal_cocartesian,
    check_unit_diagonal_equivalence,
    counit_epsilon,
    groupoid_check,
    is_cocartesian,
    is_vertical,
    is_vertical_iso,
    mate_component,
    oplax_L,
    oplax_L1,
    oplax_comparison_lifts,
    unit_eta,
    unit_eta_by_search,
)


@pytest.fixture
def act():
    return ActionOracle()


@pytest.fixture
def ext_oracle(z2):
    return ExtensionOracle(z2)


@pytest.fixture
def ext_fibre(trivial_z2_module):
    """Split and non-split extensions of Z2 by the trivial module Z2"""
    return fibre_enumerate(trivial_z2_module)


class TestVerdict:
    """Tests for the verdict record"""

    def test_ok_and_fail(self):
        assert Verdict.ok("x", checked=3)
        failed = Verdict.fail("broken", 1, 2, label="x")
        assert not failed
        assert failed.witness.items == (1, 2)

    def test_witness_exactly_on_failure(self):
        with pytest.raises(InternalInconsistencyError):
            Verdict(True, Witness("should not be here"))
        with pytest.raises(InternalInconsistencyError):
            Verdict(False)

    def test_to_dict_describes_items(self, z2):
        data = Verdict.fail("bad hom", identity_hom(z2), label="demo", size=2).to_dict()
        assert data["passed"] is False
        assert data["witness"]["reason"] == "bad hom"
        assert data["witness"]["items"] == [{"src": "Z2", "dst": "Z2", "map": [0, 1]}]
        assert data["details"] == {"size": 2}


class TestOracleCache:
    """Tests for memoisation on the oracle"""

    def test_cached_computes_once(self, act, mocker):
        compute = mocker.Mock(return_value=5)
        assert act.cached("key", compute) == 5
        assert act.cached("key", compute) == 5
        compute.assert_called_once()

    def test_base_homs_are_cached(self, act, z2, mocker):
        spy = mocker.spy(act, "_base_homs")
        act.base_homs(z2, z2)
        act.base_homs(z2, z2)
        assert spy.call_count == 1


class TestLifts:
    """Tests for chosen cocartesian lifts in the action fibration"""

    def test_identity_lifts_to_identity(self, act, z2):
        X = regular_action(z2)
        lifted = act.lift(identity_hom(z2), X)
        assert lifted.obj == X
        assert lifted.arrow == act.identity(X)

    def test_lift_to_trivial_monoid_is_orbit_set(self, act, z2):
        lifted = act.lift(constant_hom(z2, make_cyclic(1)), regular_action(z2))
        assert lifted.obj.size == 1

    def test_lift_of_point_along_unit_is_regular(self, act, z2):
        e = Hom(make_cyclic(1), z2, (0,))
        assert act.lift(e, terminal_action()).obj == regular_action(z2)

    def test_lift_checks_base(self, act, z2, z3):
        with pytest.raises(InvalidArgumentError, match="does not start"):
            act.lift(identity_hom(z3), regular_action(z2))


class TestCocartesian:
    """Tests for the cocartesian check"""

    def test_chosen_lift_is_cocartesian(self, act, z2):
        arrow = act.lift(constant_hom(z2, make_cyclic(1)), regular_action(z2)).arrow
        verdict = is_cocartesian(act, arrow)
        assert verdict.passed
        assert verdict.checked >= 2

    def test_identity_over_declared_bases_is_exhaustive(self, z2):
        oracle = ActionOracle(base_grid=[make_cyclic(1), z2])
        verdict = is_cocartesian(oracle, oracle.identity(regular_action(z2)))
        assert verdict.passed
        assert not verdict.sampled
        assert verdict.details["probes"] == len(oracle.fibre_objects(make_cyclic(1))) + len(oracle.fibre_objects(z2))

    def test_target_fibre_alone_is_a_sample(self, act, z2):
        verdict = is_cocartesian(act, act.identity(regular_action(z2)))
        assert verdict.passed
        assert verdict.sampled

    def test_declared_bases_reach_other_fibres(self, z2, z3, mocker):
        oracle = ActionOracle(base_grid=[z3])
        spy = mocker.spy(oracle, "fibre_objects")
        is_cocartesian(oracle, oracle.identity(regular_action(z2)))
        assert z3 in [call.args[0] for call in spy.call_args_list]

    def test_proper_sub_action_inclusion_is_not_cocartesian(self, act, z2):
        swap_and_fix = MSet(z2, 3, ((0, 1, 2), (1, 0, 2)))
        (inclusion,) = act.homs(trivial_mset(z2, 1), swap_and_fix, over=identity_hom(z2))
        assert inclusion.f0 == (2,)
        verdict = is_cocartesian(act, inclusion)
        assert not verdict.passed
        assert verdict.witness is not None

    def test_small_probe_budget_marks_sampled(self, z2):
        oracle = ActionOracle(probe_budget=1)
        verdict = is_cocartesian(oracle, oracle.identity(regular_action(z2)))
        assert verdict.passed
        assert verdict.sampled

    def test_vertical_non_iso_is_not_cocartesian(self, act, z2):
        arrow = act.homs(empty_action(z2), trivial_mset(z2, 1), over=identity_hom(z2))[0]
        assert is_vertical(act, arrow)
        assert not is_vertical_iso(act, arrow)
        verdict = is_cocartesian(act, arrow)
        assert not verdict.passed
        assert verdict.witness is not None

    def test_terminal_map(self, act, z2):
        assert check_terminal_cocartesian(act, regular_action(z2)).passed
        verdict = check_terminal_cocartesian(act, empty_action(z2))
        assert not verdict.passed
        assert verdict.label == "terminal-cocartesian"

    def test_diagonal(self, act, z2):
        assert check_diagonal_cocartesian(act, regular_action(z2)).passed
        assert not check_diagonal_cocartesian(act, trivial_mset(z2, 1)).passed

    def test_product_of_lifts(self, act, z2):
        verdict = check_product_of_lifts(
            act, constant_hom(z2, make_cyclic(1)), regular_action(z2), identity_hom(z2), trivial_mset(z2, 1)
        )
        assert verdict.passed
        assert verdict.label == "product-of-lifts"

    def test_extension_lifts_are_cocartesian(self, ext_oracle, trivial_z2_module, ext_fibre):
        for phi in ext_oracle.base_homs(trivial_z2_module, trivial_z2_module):
            for E in ext_fibre:
                assert is_cocartesian(ext_oracle, ext_oracle.lift(phi, E).arrow).passed


class TestOplaxAndAdjoints:
    """Tests for L, R, the unit and the counit"""

    def test_L_splits_regular_product_action(self, act, z2):
        Z = regular_action(direct_product(z2, z2))
        pair = oplax_L(act, Z)
        assert pair.first == regular_action(z2)
        assert pair.second == regular_action(z2)

    def test_L_needs_a_designated_product(self, act, z4):
        with pytest.raises(InvalidArgumentError, match="designated product"):
            oplax_L(act, regular_action(z4))

    def test_L1(self, act, z2):
        assert oplax_L1(act, terminal_action()) == STAR
        with pytest.raises(InvalidArgumentError):
            oplax_L1(act, regular_action(z2))

    def test_unit_from_pairing_matches_search(self, act, z2):
        Z = trivial_mset(direct_product(z2, z2), 2)
        assert unit_eta(act, Z) == unit_eta_by_search(act, Z)
        assert oplax_comparison_lifts(act, Z).passed

    def test_counit_recomposes_to_projections(self, act, z2):
        X, Y = regular_action(z2), trivial_mset(z2, 1)
        P = act.total_product(X, Y)
        product = act.base_product_factors(P.obj.M)
        eps = counit_epsilon(act, (X, Y))
        assert act.compose(eps.first, act.lift(product.pi1, P.obj).arrow) == P.pi1
        assert act.compose(eps.second, act.lift(product.pi2, P.obj).arrow) == P.pi2

    def test_adjunction_in_actions(self, act, z2):
        Z = regular_action(direct_product(z2, z2))
        assert check_adjunction(act, Z, (regular_action(z2), trivial_mset(z2, 1))).passed

    def test_adjunction_in_extensions(self, ext_oracle, trivial_z2_module, ext_fibre):
        Z = split_extension(module_product(trivial_z2_module, trivial_z2_module))
        assert check_adjunction(ext_oracle, Z, (ext_fibre[0], ext_fibre[1])).passed

    def test_unit_invertible_exactly_when_diagonal_cocartesian(self, act, z2):
        torsor = check_unit_diagonal_equivalence(act, regular_action(z2))
        assert torsor.passed
        assert torsor.details["eta_iso"] is True
        point = check_unit_diagonal_equivalence(act, trivial_mset(z2, 1))
        assert point.passed
        assert point.details["eta_iso"] is False


class TestMates:
    """Tests for mate components and Beck-Chevalley"""

    def test_identity_mate_is_iso(self, act, z2):
        pair = (regular_action(z2), trivial_mset(z2, 1))
        mate = mate_component(act, (identity_hom(z2), identity_hom(z2)), pair)
        assert is_vertical_iso(act, mate)

    def test_beck_chevalley_in_actions(self, act, z2):
        arrows = (constant_hom(z2, make_cyclic(1)), identity_hom(z2))
        verdict = check_beck_chevalley(act, arrows, (regular_action(z2), trivial_mset(z2, 2)))
        assert verdict.passed

    def test_beck_chevalley_in_extensions(self, ext_oracle, trivial_z2_module, ext_fibre):
        zero = zero_map(trivial_z2_module, trivial_z2_module)
        identity = ext_oracle.base_identity(trivial_z2_module)
        assert check_beck_chevalley(ext_oracle, (zero, identity), (ext_fibre[1], ext_fibre[1])).passed


class TestGroupoidFibres:
    """Tests for the groupoid check"""

    def test_action_fibre_is_not_groupoid(self, act, z2):
        verdict = groupoid_check(act, z2)
        assert not verdict.passed
        assert verdict.label == "groupoid"

    def test_torsor_fibre_is_groupoid(self, z2):
        assert groupoid_check(TorsorOracle(), z2).passed

    def test_extension_fibre_is_groupoid(self, ext_oracle, trivial_z2_module):
        verdict = groupoid_check(ext_oracle, trivial_z2_module)
        assert verdict.passed
        assert verdict.checked > 0
