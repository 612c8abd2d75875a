"""Unit tests for finite monoids, groups, homs and modules."""
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from src.algebra.algebra_config import AlgebraConfig
from src.algebra.finite_algebra import (
    CModule,
    FiniteAbelianGroup,
    FiniteGroup,
    FiniteMonoid,
    Hom,
    abelian_invariants,
    as_abelian,
    as_group,
    automorphism_group,
    automorphisms,
    check_hom,
    check_monoid,
    classify,
    compose_homs,
    direct_product,
    enumerate_homs,
    enumerate_module_actions,
    find_isomorphism,
    generating_set,
    homs_by_generators,
    identity_hom,
    inverse_hom,
    inversion_action,
    make_cyclic,
    multiplication_hom,
    opposite_monoid,
    pairing_hom,
    projection,
    semidirect_product,
    swap_hom,
    transformation_monoid,
    trivial_action,
)
from src.errors import InvalidArgumentError, ResourceLimitError


class TestMonoidConstruction:
    """Tests for tables, classification and validation"""

    def test_cyclic_group_is_abelian(self, z4):
        """Z4 comes back as an abelian group with inverses filled in"""
        assert isinstance(z4, FiniteAbelianGroup)
        assert z4.label() == "Z4"
        assert z4.inv == (0, 3, 2, 1)
        assert z4.element_order(1) == 4
        assert z4.element_order(2) == 2

    def test_cyclic_order_must_be_positive(self):
        with pytest.raises(InvalidArgumentError):
            make_cyclic(0)

    def test_table_shape_is_checked(self):
        with pytest.raises(InvalidArgumentError, match="2x2"):
            FiniteMonoid(2, ((0, 1),))

    def test_entries_out_of_range_are_rejected(self):
        with pytest.raises(InvalidArgumentError, match="out of range"):
            FiniteMonoid(2, ((0, 1), (1, 2)))

    def test_classify_picks_most_specific_class(self, i2):
        """A group table becomes a group, the idempotent table stays a monoid"""
        assert isinstance(classify(((0, 1), (1, 0))), FiniteAbelianGroup)
        monoid = classify(i2.mul, i2.identity)
        assert type(monoid) is FiniteMonoid
        assert not monoid.is_group()

    def test_classify_with_check_rejects_missing_identity(self):
        with pytest.raises(InvalidArgumentError, match="identity"):
            classify(((1, 0), (0, 1)), 0, check=True)

    def test_check_monoid(self, i2):
        assert check_monoid(i2)
        assert not check_monoid(FiniteMonoid(2, ((1, 0), (0, 1))))

    def test_as_group_rejects_non_group(self, i2):
        with pytest.raises(InvalidArgumentError, match="not a group"):
            as_group(i2)

    def test_as_abelian_rejects_non_abelian(self, z2, z3):
        s3 = semidirect_product(inversion_action(z2, z3)).group
        with pytest.raises(InvalidArgumentError, match="not an abelian group"):
            as_abelian(s3)

    def test_equality_ignores_names(self, z2):
        renamed = FiniteMonoid(2, z2.mul, 0, "other")
        assert renamed == z2
        assert hash(renamed) == hash(z2)

    def test_opposite_of_commutative_monoid_is_itself(self, z3):
        assert opposite_monoid(z3) is z3

    def test_transformation_monoid(self):
        """T2 has the identity first and is not commutative"""
        T = transformation_monoid(2)
        assert T.monoid.size == 4
        assert T.maps[0] == (0, 1)
        assert T.monoid.label() == "T2"
        assert not T.monoid.is_commutative()
        assert T.monoid.is_associative()
        assert transformation_monoid(0).monoid.size == 1


class TestProducts:
    """Tests for designated products and their structure maps"""

    def test_direct_product_encoding(self, z2, z3):
        P = direct_product(z2, z3)
        assert P.label() == "Z2xZ3"
        assert P.size == 6
        assert P.factors == (z2, z3)
        assert isinstance(P, FiniteAbelianGroup)
        # (1, 2) * (1, 2) = (0, 1)
        assert P.mul[1 * 3 + 2][1 * 3 + 2] == 0 * 3 + 1

    def test_product_of_monoids_stays_monoid(self, z2, i2):
        P = direct_product(z2, i2)
        assert type(P) is FiniteMonoid
        assert P.is_associative()

    def test_projections_after_pairing(self, z4, z2):
        f = Hom(z4, z2, (0, 1, 0, 1))
        g = identity_hom(z4)
        paired = pairing_hom(f, g)
        assert check_hom(paired)
        assert compose_homs(projection(paired.dst, 0), paired) == f
        assert compose_homs(projection(paired.dst, 1), paired) == g

    def test_projection_needs_designated_product(self, z4):
        with pytest.raises(InvalidArgumentError, match="designated product"):
            projection(z4, 0)

    def test_swap_is_an_isomorphism(self, z2, z3):
        swap = swap_hom(z2, z3)
        assert check_hom(swap)
        assert swap.is_bijective()

    def test_multiplication_hom(self, z3):
        m = multiplication_hom(z3)
        assert check_hom(m)
        assert m.map[1 * 3 + 2] == 0

    def test_multiplication_needs_commutativity(self):
        with pytest.raises(InvalidArgumentError, match="not commutative"):
            multiplication_hom(transformation_monoid(2).monoid)


class TestHoms:
    """Tests for hom checks and enumeration"""

    def test_check_hom(self, z4, z2):
        assert check_hom(Hom(z4, z2, (0, 1, 0, 1)))
        assert not check_hom(Hom(z4, z2, (0, 1, 1, 0)))
        assert not check_hom(Hom(z2, z4, (1, 0)))

    def test_check_hom_rejects_wrong_shape(self, z4, z2):
        with pytest.raises(InvalidArgumentError):
            check_hom(Hom(z4, z2, (0, 1)))

    def test_compose_requires_matching_ends(self, z4, z2):
        f = Hom(z4, z2, (0, 1, 0, 1))
        with pytest.raises(InvalidArgumentError, match="cannot compose"):
            compose_homs(f, f)

    def test_enumerate_homs_in_lexicographic_order(self, z2, z4):
        maps = [h.map for h in enumerate_homs(z2, z4)]
        assert maps == [(0, 0), (0, 2)]

    def test_enumeration_strategies_agree(self, z4, v4):
        assert enumerate_homs(v4, z4) == homs_by_generators(v4, z4)
        assert enumerate_homs(z4, v4) == homs_by_generators(z4, v4)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=6))
    def test_cyclic_hom_count_is_gcd(self, m, n):
        """There are gcd(m, n) homs Zm -> Zn"""
        assert len(homs_by_generators(make_cyclic(m), make_cyclic(n))) == gcd(m, n)

    def test_budget_is_enforced(self, z4):
        with pytest.raises(ResourceLimitError) as excinfo:
            enumerate_homs(z4, z4, budget=10)
        assert excinfo.value.required == 256
        assert excinfo.value.bound == 10

    def test_configured_budget_is_default(self, z4):
        AlgebraConfig.ENUMERATION_BUDGET = 100
        with pytest.raises(ResourceLimitError):
            enumerate_homs(z4, z4)

    def test_generating_sets(self, z4, v4):
        assert generating_set(z4) == [1]
        assert generating_set(v4) == [1, 2]

    def test_automorphisms(self, z4, v4):
        assert len(automorphisms(z4)) == 2
        aut = automorphism_group(v4)
        assert aut.monoid.size == 6
        assert isinstance(aut.monoid, FiniteGroup)
        assert not aut.monoid.is_commutative()

    def test_inverse_hom(self, z2, z3):
        swap = swap_hom(z2, z3)
        back = inverse_hom(swap)
        assert compose_homs(back, swap).is_identity


class TestModules:
    """Tests for C-modules and their constructors"""

    def test_trivial_action(self, z2, z3):
        module = trivial_action(z2, z3)
        assert module.is_trivial()
        assert module.validate() is module
        assert module.label() == "Z3 over Z2 (trivial)"

    def test_inversion_action(self, sign_z2_on_z3):
        assert sign_z2_on_z3.xi == ((0, 1, 2), (0, 2, 1))
        assert not sign_z2_on_z3.is_trivial()
        sign_z2_on_z3.validate()

    def test_inversion_needs_quotient_of_order_two(self, z3, z2):
        with pytest.raises(InvalidArgumentError, match="quotient of order 2"):
            inversion_action(z3, z2)

    def test_validate_rejects_non_automorphism(self, z2, z3):
        module = CModule(z2, z3, ((0, 1, 2), (0, 0, 0)))
        with pytest.raises(InvalidArgumentError, match="automorphism"):
            module.validate()

    def test_module_needs_abelian_coefficients(self, z2, i2):
        with pytest.raises(InvalidArgumentError):
            CModule(z2, i2, ((0, 1), (0, 1)))

    def test_enumerate_module_actions(self, z2, z3, v4):
        assert len(enumerate_module_actions(z2, z3)) == 2
        # homs Z2 -> Aut(V4) = S3: the identity and three involutions
        assert len(enumerate_module_actions(z2, v4)) == 4

    def test_semidirect_product(self, sign_z2_on_z3):
        sd = semidirect_product(sign_z2_on_z3)
        assert sd.group.size == 6
        assert not sd.group.is_commutative()
        assert check_hom(sd.injection) and sd.injection.is_injective()
        assert check_hom(sd.projection) and sd.projection.is_surjective()


class TestInvariants:
    """Tests for abelian invariants and isomorphism search"""

    @pytest.mark.parametrize("specs,expected", [
        ((1,), []),
        ((4,), [4]),
        ((2, 2), [2, 2]),
        ((2, 3), [6]),
        ((2, 4), [2, 4]),
    ])
    def test_abelian_invariants(self, specs, expected):
        group = make_cyclic(specs[0])
        for n in specs[1:]:
            group = direct_product(group, make_cyclic(n))
        assert abelian_invariants(group) == expected

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_abelian_invariants_ignore_element_labels(self, data):
        specs = data.draw(st.sampled_from([(6,), (8,), (2, 2), (2, 4), (2, 6), (3, 3), (2, 2, 2)]))
        group = make_cyclic(specs[0])
        for n in specs[1:]:
            group = direct_product(group, make_cyclic(n))
        relabel = data.draw(st.permutations(list(group.elements)))
        table = [[0] * group.size for _ in group.elements]
        for x in group.elements:
            for y in group.elements:
                table[relabel[x]][relabel[y]] = relabel[group.mul[x][y]]
        relabelled = classify(table, relabel[group.identity], check=True)
        assert abelian_invariants(relabelled) == abelian_invariants(group)

    def test_isomorphism_found(self, z2, z3):
        iso = find_isomorphism(direct_product(z2, z3), make_cyclic(6))
        assert iso is not None
        assert check_hom(iso) and iso.is_bijective()

    def test_non_isomorphic_groups(self, z4, v4):
        assert find_isomorphism(z4, v4) is None
        assert find_isomorphism(z4, make_cyclic(3)) is None

    def test_isomorphism_size_bound(self, z4):
        AlgebraConfig.ISOMORPHISM_MAX_SIZE = 3
        with pytest.raises(ResourceLimitError):
            find_isomorphism(z4, z4)
