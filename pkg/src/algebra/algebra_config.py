import os
from typing import Optional


def _int_env(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    return int(value.replace("_", ""))


class AlgebraConfig:

    # Enumeration guardrails
    ENUMERATION_BUDGET = _int_env("ENUMERATION_BUDGET", 10_000_000)
    ISOMORPHISM_MAX_SIZE = _int_env("ISOMORPHISM_MAX_SIZE", 12)

    # Cocartesian probing
    PROBE_CARRIER_LIMIT = _int_env("PROBE_CARRIER_LIMIT", 2)  # largest auxiliary M-set carrier
    PROBE_BUDGET = _int_env("PROBE_BUDGET", 4096)  # per-probe cap on hom-sets and base factorizations

    # Suites: fibre objects per quantifier, 0 for whole fibres
    SUITE_OBJECT_LIMIT = _int_env("SUITE_OBJECT_LIMIT", 9)

    @classmethod
    def budget(cls, override=None) -> int:
        """Resolve an explicit budget against the configured default"""
        return cls.ENUMERATION_BUDGET if override is None else int(override)

    @classmethod
    def object_limit(cls) -> Optional[int]:
        return cls.SUITE_OBJECT_LIMIT or None

    @classmethod
    def validate_config(cls):
        """Validate that budgets are positive and limits non-negative"""
        for name in ("ENUMERATION_BUDGET", "ISOMORPHISM_MAX_SIZE", "PROBE_BUDGET"):
            if getattr(cls, name) < 1:
                raise ValueError(f"{name} must be a positive integer")
        for name in ("PROBE_CARRIER_LIMIT", "SUITE_OBJECT_LIMIT"):
            if getattr(cls, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        return True
