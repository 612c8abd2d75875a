"""Shared test fixtures and configuration."""
import json
import pytest
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.algebra.algebra_config import AlgebraConfig
from src.algebra.finite_algebra import (
    direct_product,
    idempotent_monoid,
    inversion_action,
    make_cyclic,
    trivial_action,
)


@pytest.fixture(autouse=True)
def restore_algebra_config():
    """Tests may tighten the budgets; put the configured values back afterwards."""
    saved = {
        name: getattr(AlgebraConfig, name)
        for name in ("ENUMERATION_BUDGET", "ISOMORPHISM_MAX_SIZE", "PROBE_CARRIER_LIMIT",
                     "PROBE_BUDGET", "SUITE_OBJECT_LIMIT")
    }
    yield
    for name, value in saved.items():
        setattr(AlgebraConfig, name, value)


@pytest.fixture
def z1():
    return make_cyclic(1)


@pytest.fixture
def z2():
    return make_cyclic(2)


@pytest.fixture
def z3():
    return make_cyclic(3)


@pytest.fixture
def z4():
    return make_cyclic(4)


@pytest.fixture
def v4():
    """Klein four-group as the designated product Z2xZ2"""
    return direct_product(make_cyclic(2), make_cyclic(2))


@pytest.fixture
def i2():
    return idempotent_monoid()


@pytest.fixture
def trivial_z2_module(z2):
    """Z2 acting trivially on Z2"""
    return trivial_action(z2, z2)


@pytest.fixture
def sign_z2_on_z3(z2, z3):
    """Z2 acting on Z3 by negation"""
    return inversion_action(z2, z3)


@pytest.fixture
def write_json(tmp_path):
    """Factory fixture writing a JSON document and returning its path."""

    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return path

    return _write
