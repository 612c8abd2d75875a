"""Tests for JSON documents and their error reporting."""
import json

import pytest

from src.algebra.serialization import (
    CModuleModel,
    MonoidModel,
    dump_json,
    load_module,
    load_monoid,
    parse_document,
)
from src.errors import InvalidArgumentError, SpecParseError


class TestMonoidDocuments:
    """Tests for loading monoid tables"""

    def test_load_from_json_string(self, z2):
        monoid = load_monoid('{"name": "Z2", "size": 2, "mul": [[0, 1], [1, 0]]}')
        assert monoid == z2
        assert monoid.label() == "Z2"

    def test_load_from_file(self, write_json, i2):
        path = write_json("i2.json", i2.to_dict())
        assert load_monoid(str(path)) == i2

    def test_malformed_json_reports_position(self):
        with pytest.raises(SpecParseError) as excinfo:
            load_monoid("{bad")
        assert excinfo.value.position == "line 1 column 2"

    def test_missing_file(self, tmp_path):
        with pytest.raises(SpecParseError, match="cannot read"):
            load_monoid(str(tmp_path / "missing.json"))

    def test_unknown_field_is_rejected(self):
        with pytest.raises(SpecParseError) as excinfo:
            parse_document(MonoidModel, {"size": 1, "mul": [[0]], "colour": "red"})
        assert excinfo.value.position == "colour"

    def test_size_must_be_positive(self):
        with pytest.raises(SpecParseError, match="MonoidModel"):
            parse_document(MonoidModel, {"size": 0, "mul": []})

    def test_row_count_must_match_size(self):
        with pytest.raises(InvalidArgumentError, match="rows"):
            load_monoid({"size": 2, "mul": [[0, 1]]})

    def test_monoid_axioms_are_checked(self):
        with pytest.raises(InvalidArgumentError, match="identity"):
            load_monoid({"size": 2, "mul": [[1, 0], [0, 1]]})

    def test_inverse_table_round_trips(self, z3):
        assert load_monoid(z3.to_dict()).inv == z3.inv

    def test_wrong_inverse_table_is_rejected(self):
        with pytest.raises(InvalidArgumentError, match="inverse table"):
            load_monoid({"size": 3, "mul": [[0, 1, 2], [1, 2, 0], [2, 0, 1]], "inv": [0, 1, 2]})

    def test_inverse_table_on_a_non_group(self, i2):
        data = dict(i2.to_dict(), inv=[0, 1])
        with pytest.raises(InvalidArgumentError, match="inverse table"):
            load_monoid(data)


class TestModuleDocuments:
    """Tests for loading modules"""

    def test_module_from_dict(self, sign_z2_on_z3):
        loaded = load_module(sign_z2_on_z3.to_dict())
        assert loaded == sign_z2_on_z3

    def test_model_from_module_document(self, trivial_z2_module):
        model = CModuleModel.model_validate(trivial_z2_module.to_dict())
        assert model.C.size == 2
        assert model.xi == [[0, 1], [0, 1]]

    def test_action_must_be_by_automorphisms(self, z2, z3):
        data = {"C": z2.to_dict(), "B": z3.to_dict(), "xi": [[0, 1, 2], [0, 0, 0]]}
        with pytest.raises(InvalidArgumentError, match="automorphism"):
            load_module(data)

    def test_coefficients_must_be_abelian(self, z2, i2):
        data = {"C": z2.to_dict(), "B": i2.to_dict(), "xi": [[0, 1], [0, 1]]}
        with pytest.raises(InvalidArgumentError, match="not an abelian group"):
            load_module(data)


class TestDumpJson:
    """Tests for deterministic output"""

    def test_sorted_keys(self):
        text = dump_json({"b": 1, "a": [1, 2]})
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {"a": [1, 2], "b": 1}
