"""
Normalised cochains in degrees one and two, checked against the cocycle
identities directly. Nothing here builds the twisted multiplication of an
extension, so results can be compared with the extension fibre.
"""

import itertools
import logging
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.algebra.algebra_config import AlgebraConfig
from src.algebra.finite_algebra import (
    CModule,
    FiniteAbelianGroup,
    Hom,
    Table,
    abelian_invariants,
    as_abelian,
    as_group,
    check_hom,
    classify,
)
from src.algebra.quotients import quotient_by_generated_relation, quotient_group
from src.extensions.extensions import Extension, FactorSet, ModuleMap, normalised_cochains, search_factor_tables
from src.errors import InternalInconsistencyError, InvalidArgumentError

logger = logging.getLogger(__name__)


class _Arrays:
    """numpy views of a module's tables"""

    def __init__(self, module: CModule):
        self.B = np.asarray(module.B.mul, dtype=np.int64)
        self.C = np.asarray(module.C.mul, dtype=np.int64)
        self.xi = np.asarray(module.xi, dtype=np.int64)
        c = np.arange(module.C.size)
        self.c1, self.c2, self.c3 = c[:, None, None], c[None, :, None], c[None, None, :]


def satisfies_cocycle_identity(module: CModule, table, arrays: Optional[_Arrays] = None) -> bool:
    """c1.t(c2,c3) + t(c1,c2c3) == t(c1c2,c3) + t(c1,c2) for every triple"""
    a = arrays or _Arrays(module)
    t = np.asarray(table, dtype=np.int64)
    c1, c2, c3 = a.c1, a.c2, a.c3
    lhs = a.B[a.xi[c1, t[c2, c3]], t[c1, a.C[c2, c3]]]
    rhs = a.B[t[a.C[c1, c2], c3], t[c1, c2]]
    return bool(np.array_equal(lhs, rhs))


def _cocycle_identity_at(module: CModule):
    add, act, C = module.B.mul, module.xi, module.C.mul

    def holds(t, c1, c2, c3) -> bool:
        return add[act[c1][t[c2][c3]]][t[c1][C[c2][c3]]] == add[t[C[c1][c2]][c3]][t[c1][c2]]

    return holds


def z2_enumerate(module: CModule, budget: Optional[int] = None) -> List[FactorSet]:
    """Every normalised 2-cocycle, in lexicographic order of tables"""
    tables = search_factor_tables(module, _cocycle_identity_at(module), budget, "2-cochains")
    return [FactorSet(module, table) for table in tables]


def coboundary(module: CModule, g: Tuple[int, ...]) -> FactorSet:
    """(dg)(c1,c2) = c1.g(c2) - g(c1c2) + g(c1)"""
    B, C, xi = module.B, module.C, module.xi
    table = [
        [B.mul[B.mul[xi[c1][g[c2]]][B.inv[g[C.mul[c1][c2]]]]][g[c1]] for c2 in C.elements]
        for c1 in C.elements
    ]
    return FactorSet(module, table)


def b2_enumerate(module: CModule) -> List[FactorSet]:
    """Coboundaries of normalised 1-cochains, deduplicated and sorted"""
    tables = {coboundary(module, g).table for g in normalised_cochains(module)}
    return [FactorSet(module, table) for table in sorted(tables)]


def _add_tables(B: FiniteAbelianGroup, s, t) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(B.mul[x][y] for x, y in zip(row_s, row_t)) for row_s, row_t in zip(s, t))


def h2_classes(module: CModule, budget: Optional[int] = None) -> Tuple[FiniteAbelianGroup, Dict[Table, int]]:
    """H2 = Z2 / B2 and the class of every normalised cocycle table.

    Classes are ordered by their smallest cocycle.
    """
    return _h2_classes(module, AlgebraConfig.budget(budget))


@lru_cache(maxsize=64)
def _h2_classes(module: CModule, budget: int) -> Tuple[FiniteAbelianGroup, Dict[Table, int]]:
    cocycles = [z.table for z in z2_enumerate(module, budget)]
    index = {t: i for i, t in enumerate(cocycles)}
    B = module.B
    z2 = as_group(classify(
        [[index[_add_tables(B, s, t)] for t in cocycles] for s in cocycles],
        index[tuple((B.identity,) * module.C.size for _ in module.C.elements)],
        f"Z2({module.label()})",
    ))
    boundaries = [b.table for b in b2_enumerate(module)]
    pairs = [(i, index[_add_tables(B, t, b)]) for i, t in enumerate(cocycles) for b in boundaries]
    quotient, to_class = quotient_group(z2, quotient_by_generated_relation(len(cocycles), pairs),
                                        f"H2({module.label()})")
    group = as_abelian(quotient)
    logger.info(f"H2 over {module.label()} has invariants {abelian_invariants(group)}")
    return group, {t: to_class.map[i] for i, t in enumerate(cocycles)}


def h2_group(module: CModule, budget: Optional[int] = None) -> FiniteAbelianGroup:
    return h2_classes(module, budget)[0]


def h2_map(phi: ModuleMap, budget: Optional[int] = None) -> Hom:
    """H2(C; B) -> H2(C; B') induced by t -> phi . t"""
    source, source_class = h2_classes(phi.src, budget)
    target, target_class = h2_classes(phi.dst, budget)
    image: Dict[int, int] = {}
    for table, cls in source_class.items():
        pushed = target_class[tuple(tuple(phi(b) for b in row) for row in table)]
        if image.setdefault(cls, pushed) != pushed:
            raise InternalInconsistencyError("cohomologous cocycles map to different classes")
    hom = Hom(source, target, tuple(image[cls] for cls in source.elements))
    if not check_hom(hom):
        raise InternalInconsistencyError(f"induced map on H2 over {phi.src.label()} is not a homomorphism")
    return hom


def is_derivation(module: CModule, g: Tuple[int, ...]) -> bool:
    B, C, xi = module.B, module.C, module.xi
    return all(
        g[C.mul[c1][c2]] == B.mul[xi[c1][g[c2]]][g[c1]] for c1 in C.elements for c2 in C.elements
    )


def z1_derivations(module: CModule) -> List[Tuple[int, ...]]:
    """All g: C -> B with g(c1c2) = c1.g(c2) + g(c1), lexicographically"""
    return [g for g in itertools.product(module.B.elements, repeat=module.C.size) if is_derivation(module, g)]


def z1_group(module: CModule) -> FiniteAbelianGroup:
    derivations = z1_derivations(module)
    index = {g: i for i, g in enumerate(derivations)}
    B = module.B
    table = [[index[tuple(B.mul[x][y] for x, y in zip(g, h))] for h in derivations] for g in derivations]
    zero = index[(B.identity,) * module.C.size]
    return as_abelian(classify(table, zero, f"Z1({module.label()})", check=True))


def extension_from_cocycle(cocycle: FactorSet) -> Extension:
    if not satisfies_cocycle_identity(cocycle.module, cocycle.table):
        raise InvalidArgumentError("table does not satisfy the 2-cocycle identity")
    return Extension(cocycle.module, cocycle.table)


def cocycle_from_extension(ext: Extension) -> FactorSet:
    """Factor set read off the group E through the section c -> (0, c)"""
    G, C, zero = ext.E, ext.C, ext.B.identity
    section = [ext.encode(zero, c) for c in C.elements]
    k_inverse = {x: b for b, x in enumerate(ext.k.map)}
    table = [
        [k_inverse[G.mul[G.mul[section[c1]][section[c2]]][G.inv[section[C.mul[c1][c2]]]]] for c2 in C.elements]
        for c1 in C.elements
    ]
    return FactorSet(ext.module, table)


def h2_class_index(module: CModule, table, budget: Optional[int] = None) -> int:
    """Index of the H2 class containing a cocycle table"""
    classes = h2_classes(module, budget)[1]
    key = FactorSet(module, table).table
    if key not in classes:
        raise InvalidArgumentError("table is not a normalised 2-cocycle")
    return classes[key]
