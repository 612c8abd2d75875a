"""
Group and action specs used on the command line and in query strings.

    group  := '@' path | factor ('x' factor)*
    factor := 'Z' digits
    action := 'trivial' | 'inv' | '@' path
"""

import logging
from functools import reduce

from src.algebra.finite_algebra import (
    CModule,
    FiniteAbelianGroup,
    FiniteGroup,
    FiniteMonoid,
    as_abelian,
    as_group,
    direct_product,
    inversion_action,
    make_cyclic,
    trivial_action,
)
from src.algebra.serialization import ActionTableModel, load_monoid, parse_document
from src.errors import InvalidArgumentError, SpecParseError

logger = logging.getLogger(__name__)


def parse_group_spec(text: str) -> FiniteMonoid:
    """Parse `Z4`, `Z2xZ2` or `@file.json` into a monoid"""
    if text is None or not text.strip():
        raise SpecParseError("empty group spec", "column 1")
    spec = text.strip()
    if spec.startswith("@"):
        return load_monoid(spec[1:])

    factors = []
    pos = 0
    while True:
        if pos >= len(spec) or spec[pos] not in "Zz":
            raise SpecParseError(f"expected 'Z' in group spec {spec!r}", f"column {pos + 1}")
        start = pos = pos + 1
        while pos < len(spec) and spec[pos].isdigit():
            pos += 1
        if pos == start:
            raise SpecParseError(f"expected a group order in {spec!r}", f"column {pos + 1}")
        order = int(spec[start:pos])
        if order < 1:
            raise SpecParseError(f"group order must be positive in {spec!r}", f"column {start + 1}")
        factors.append(make_cyclic(order))
        if pos == len(spec):
            break
        if spec[pos] not in "xX*":
            raise SpecParseError(f"unexpected {spec[pos]!r} in group spec {spec!r}", f"column {pos + 1}")
        pos += 1
    return reduce(direct_product, factors)


def parse_finite_group(text: str) -> FiniteGroup:
    group = parse_group_spec(text)
    try:
        return as_group(group)
    except InvalidArgumentError as e:
        raise SpecParseError(str(e), text)


def parse_abelian_group(text: str) -> FiniteAbelianGroup:
    group = parse_group_spec(text)
    try:
        return as_abelian(group)
    except InvalidArgumentError as e:
        raise SpecParseError(str(e), text)


def parse_action_spec(C: FiniteGroup, B: FiniteAbelianGroup, text: str = "trivial") -> CModule:
    """Parse `trivial`, `inv` or `@file.json` into a C-module structure on B"""
    spec = (text or "trivial").strip()
    if spec == "trivial":
        return trivial_action(C, B)
    if spec == "inv":
        return inversion_action(C, B)
    if spec.startswith("@"):
        table = parse_document(ActionTableModel, spec[1:])
        return CModule(C, B, table.xi).validate()
    raise SpecParseError(f"unknown action {spec!r}, expected trivial, inv or @file", "column 1")
