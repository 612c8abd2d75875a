"""Tests for group and action specs."""
import pytest

from src.algebra.finite_algebra import abelian_invariants, trivial_action
from src.errors import InvalidArgumentError, SpecParseError
from src.suites.specs import parse_abelian_group, parse_action_spec, parse_finite_group, parse_group_spec


class TestGroupSpecs:
    """Tests for `Z4`, `Z2xZ2` and `@file` specs"""

    def test_cyclic(self, z4):
        assert parse_group_spec("Z4") == z4

    def test_product(self, v4):
        group = parse_group_spec("Z2xZ2")
        assert group == v4
        assert group.factors is not None

    @pytest.mark.parametrize("text,invariants", [
        ("Z2xZ3", [6]),
        ("z2*Z4", [2, 4]),
        (" Z1 ", []),
        ("Z2XZ2XZ2", [2, 2, 2]),
    ])
    def test_abelian_invariants_of_specs(self, text, invariants):
        assert abelian_invariants(parse_abelian_group(text)) == invariants

    def test_from_file(self, write_json, z3):
        path = write_json("z3.json", z3.to_dict())
        assert parse_group_spec(f"@{path}") == z3

    @pytest.mark.parametrize("text,position", [
        ("", "column 1"),
        ("Q2", "column 1"),
        ("Z", "column 2"),
        ("Z0", "column 2"),
        ("Z2y", "column 3"),
        ("Z2x", "column 4"),
    ])
    def test_parse_errors_carry_a_column(self, text, position):
        with pytest.raises(SpecParseError) as excinfo:
            parse_group_spec(text)
        assert excinfo.value.position == position
        assert f"(at {position})" in str(excinfo.value)

    def test_missing_order_message(self):
        with pytest.raises(SpecParseError, match="expected a group order"):
            parse_group_spec("Z")

    def test_monoid_file_is_not_a_group(self, write_json, i2):
        path = write_json("i2.json", i2.to_dict())
        with pytest.raises(SpecParseError, match="not a group"):
            parse_finite_group(f"@{path}")

    def test_parse_errors_are_invalid_arguments(self):
        with pytest.raises(InvalidArgumentError):
            parse_group_spec("Z-1")


class TestActionSpecs:
    """Tests for `trivial`, `inv` and `@file` actions"""

    def test_trivial_is_default(self, z2, z3):
        assert parse_action_spec(z2, z3) == trivial_action(z2, z3)
        assert parse_action_spec(z2, z3, None) == trivial_action(z2, z3)

    def test_inversion(self, z2, z3, sign_z2_on_z3):
        assert parse_action_spec(z2, z3, "inv") == sign_z2_on_z3

    def test_inversion_needs_index_two(self, z3):
        with pytest.raises(InvalidArgumentError, match="order 2"):
            parse_action_spec(z3, z3, "inv")

    def test_action_from_file(self, write_json, z2, z3, sign_z2_on_z3):
        path = write_json("sign.json", {"xi": [[0, 1, 2], [0, 2, 1]]})
        assert parse_action_spec(z2, z3, f"@{path}") == sign_z2_on_z3

    def test_action_file_must_be_by_automorphisms(self, write_json, z2, z3):
        path = write_json("bad.json", {"xi": [[0, 1, 2], [0, 0, 0]]})
        with pytest.raises(InvalidArgumentError, match="automorphism"):
            parse_action_spec(z2, z3, f"@{path}")

    def test_unknown_action(self, z2, z3):
        with pytest.raises(SpecParseError, match="unknown action"):
            parse_action_spec(z2, z3, "twist")
