"""
Left actions of finite monoids on finite sets.

Right M-sets are represented as left actions of the opposite monoid. Pairs
in X x Y are encoded as x*|Y| + y throughout.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from src.algebra.finite_algebra import (
    FiniteMonoid,
    Hom,
    Table,
    as_table,
    check_hom,
    compose_homs,
    direct_product,
    homs_by_generators,
    identity_hom,
    multiplication_hom,
    opposite_monoid,
    pairing_hom,
    product_hom,
    projection,
    transformation_monoid,
    trivial_monoid,
)
from src.algebra.quotients import Partition, quotient_by_generated_relation
from src.algebra.serialization import MSetModel, parse_document
from src.errors import InvalidArgumentError
from src.fibrations.fibration import Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MSet:
    M: FiniteMonoid
    size: int
    act: Table

    def __post_init__(self):
        object.__setattr__(self, "act", as_table(self.act))
        if self.size < 0:
            raise InvalidArgumentError("carrier size must be non-negative")
        if len(self.act) != self.M.size or any(len(row) != self.size for row in self.act):
            raise InvalidArgumentError(f"action table must be {self.M.size}x{self.size}")
        if any(not 0 <= v < self.size for row in self.act for v in row):
            raise InvalidArgumentError("action table entry out of range")

    def __call__(self, m: int, x: int) -> int:
        return self.act[m][x]

    @property
    def elements(self) -> range:
        return range(self.size)

    def is_valid(self) -> bool:
        M = self.M
        if self.act[M.identity] != tuple(self.elements):
            return False
        return all(
            self.act[M.mul[m1][m2]][x] == self.act[m1][self.act[m2][x]]
            for m1 in M.elements for m2 in M.elements for x in self.elements
        )

    def validate(self) -> "MSet":
        if not self.is_valid():
            raise InvalidArgumentError("table is not a left action")
        return self

    def orbits(self) -> List[List[int]]:
        partition = quotient_by_generated_relation(
            self.size, ((x, self.act[m][x]) for m in self.M.elements for x in self.elements)
        )
        return list(partition.classes().values())

    def to_dict(self) -> Dict:
        return {"monoid": self.M.label(), "size": self.size, "act": [list(row) for row in self.act]}


@dataclass(frozen=True)
class EquivariantMap:
    src: MSet
    dst: MSet
    f: Hom
    f0: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "f0", tuple(int(v) for v in self.f0))
        if self.f.src != self.src.M or self.f.dst != self.dst.M:
            raise InvalidArgumentError("monoid hom does not match the actions")
        if len(self.f0) != self.src.size or any(not 0 <= v < self.dst.size for v in self.f0):
            raise InvalidArgumentError("carrier map has the wrong shape")

    def is_equivariant(self) -> bool:
        src, dst, f, f0 = self.src, self.dst, self.f.map, self.f0
        return all(f0[src.act[m][x]] == dst.act[f[m]][f0[x]] for m in src.M.elements for x in src.elements)

    def is_bijective(self) -> bool:
        return self.src.size == self.dst.size and len(set(self.f0)) == self.src.size

    def to_dict(self) -> Dict:
        return {"f": list(self.f.map), "f0": list(self.f0)}


def load_mset(source) -> MSet:
    model = parse_document(MSetModel, source)
    return MSet(model.monoid.to_monoid(), model.size, model.act).validate()


def regular_action(M: FiniteMonoid) -> MSet:
    return MSet(M, M.size, M.mul)


def trivial_mset(M: FiniteMonoid, size: int) -> MSet:
    return MSet(M, size, tuple(tuple(range(size)) for _ in M.elements))


def empty_action(M: FiniteMonoid) -> MSet:
    return trivial_mset(M, 0)


def terminal_action() -> MSet:
    return MSet(trivial_monoid(), 1, ((0,),))


def identity_map(X: MSet) -> EquivariantMap:
    return EquivariantMap(X, X, identity_hom(X.M), tuple(X.elements))


def compose_maps(g: EquivariantMap, f: EquivariantMap) -> EquivariantMap:
    if f.dst != g.src:
        raise InvalidArgumentError("cannot compose equivariant maps")
    return EquivariantMap(f.src, g.dst, compose_homs(g.f, f.f), tuple(g.f0[v] for v in f.f0))


# ---------------------------------------------------------------- quotients


def right_action_along(f: Hom) -> MSet:
    """N as a right M-set by n.m = n f(m), i.e. a left M^op-set"""
    M, N = f.src, f.dst
    act = tuple(tuple(N.mul[n][f.map[m]] for n in N.elements) for m in M.elements)
    return MSet(opposite_monoid(M), N.size, act)


@dataclass(frozen=True)
class ContractedProduct:
    """X (x)_M Y: pairs identified by (x.m, y) ~ (x, m.y)"""

    left: MSet
    right: MSet
    partition: Partition

    @property
    def size(self) -> int:
        return self.partition.count

    def label(self, x: int, y: int) -> int:
        return self.partition.labels[x * self.right.size + y]

    def representative(self, label: int) -> Tuple[int, int]:
        return divmod(self.partition.representatives[label], self.right.size)


def contracted_product(X: MSet, Y: MSet) -> ContractedProduct:
    """X is a right M-set given as a left M^op-set, Y a left M-set"""
    if X.M != opposite_monoid(Y.M):
        raise InvalidArgumentError("right and left actions are over different monoids")
    M, ny = Y.M, Y.size
    pairs = (
        (X.act[m][x] * ny + y, x * ny + Y.act[m][y])
        for x in X.elements for y in Y.elements for m in M.elements
    )
    return ContractedProduct(X, Y, quotient_by_generated_relation(X.size * ny, pairs))


def _lift_with_classes(f: Hom, X: MSet) -> Tuple[EquivariantMap, MSet, ContractedProduct]:
    if not check_hom(f):
        raise InvalidArgumentError("lift along a map that is not a monoid hom")
    if f.src != X.M:
        raise InvalidArgumentError("hom does not start at the acting monoid")
    N = f.dst
    product = contracted_product(right_action_along(f), X)
    n_classes = product.size
    act = []
    for n_bar in N.elements:
        row = []
        for label in range(n_classes):
            n, x = product.representative(label)
            row.append(product.label(N.mul[n_bar][n], x))
        act.append(tuple(row))
    for n_bar in N.elements:
        for n in N.elements:
            for x in X.elements:
                if product.label(N.mul[n_bar][n], x) != act[n_bar][product.label(n, x)]:
                    raise InvalidArgumentError("left action on the contracted product is not well defined")
    Y = MSet(N, n_classes, act)
    arrow = EquivariantMap(X, Y, f, tuple(product.label(N.identity, x) for x in X.elements))
    return arrow, Y, product


def cocartesian_lift(f: Hom, X: MSet) -> Tuple[EquivariantMap, MSet]:
    """f_! X = N (x)_M X with N acting on the left; the lift sends x to [e, x]"""
    arrow, Y, _ = _lift_with_classes(f, X)
    return arrow, Y


def product_of_actions(X: MSet, Y: MSet) -> MSet:
    """X x Y over M x N, componentwise"""
    M = direct_product(X.M, Y.M)
    ny, nn = Y.size, Y.M.size
    act = tuple(
        tuple(X.act[mn // nn][p // ny] * ny + Y.act[mn % nn][p % ny] for p in range(X.size * ny))
        for mn in M.elements
    )
    return MSet(M, X.size * ny, act)


def product_projections(X: MSet, Y: MSet) -> Tuple[EquivariantMap, EquivariantMap]:
    P = product_of_actions(X, Y)
    ny = Y.size
    first = EquivariantMap(P, X, projection(P.M, 0), tuple(p // ny for p in P.elements))
    second = EquivariantMap(P, Y, projection(P.M, 1), tuple(p % ny for p in P.elements))
    return first, second


def pair_maps(u: EquivariantMap, v: EquivariantMap) -> EquivariantMap:
    if u.src != v.src:
        raise InvalidArgumentError("paired maps must share a source")
    P = product_of_actions(u.dst, v.dst)
    ny = v.dst.size
    return EquivariantMap(u.src, P, pairing_hom(u.f, v.f, P.M), tuple(a * ny + b for a, b in zip(u.f0, v.f0)))


def tensor_over_M(X: MSet, Y: MSet) -> MSet:
    """X (x) Y for a commutative M: lift X x Y along the multiplication"""
    if X.M != Y.M:
        raise InvalidArgumentError("actions of different monoids")
    return cocartesian_lift(multiplication_hom(X.M), product_of_actions(X, Y))[1]


# ---------------------------------------------------------------- enumeration


def enumerate_actions(M: FiniteMonoid, n: int, budget: Optional[int] = None) -> List[MSet]:
    """Every action of M on n points, one per hom M -> T_n"""
    T = transformation_monoid(n)
    actions = []
    for h in homs_by_generators(M, T.monoid, budget):
        actions.append(MSet(M, n, tuple(T.maps[h.map[m]] for m in M.elements)))
    return actions


def _propagate(X: MSet, Y: MSet, f: Hom, values: List[Optional[int]], x: int, v: int) -> Optional[List]:
    trial = list(values)
    for m in X.M.elements:
        y, w = X.act[m][x], Y.act[f.map[m]][v]
        if trial[y] is None:
            trial[y] = w
        elif trial[y] != w:
            return None
    return trial


def equivariant_maps(
    X: MSet,
    Y: MSet,
    f: Hom,
    fixed: Optional[Dict[int, int]] = None,
    stop_after: Optional[int] = None,
) -> List[EquivariantMap]:
    """Carrier maps over f, optionally with prescribed values, lexicographically"""
    if f.src != X.M or f.dst != Y.M:
        raise InvalidArgumentError("monoid hom does not match the actions")
    values: Optional[List[Optional[int]]] = [None] * X.size
    for x, v in sorted((fixed or {}).items()):
        if values[x] is not None and values[x] != v:
            return []
        values = _propagate(X, Y, f, values, x, v)
        if values is None:
            return []
    found: List[EquivariantMap] = []

    def search(current: List[Optional[int]], start: int):
        if stop_after is not None and len(found) >= stop_after:
            return
        x = next((i for i in range(start, X.size) if current[i] is None), None)
        if x is None:
            found.append(EquivariantMap(X, Y, f, tuple(current)))
            return
        for v in Y.elements:
            trial = _propagate(X, Y, f, current, x, v)
            if trial is not None:
                search(trial, x + 1)

    search(values, 0)
    return found


def product_of_lifts_comparison(f1: Hom, X1: MSet, f2: Hom, X2: MSet) -> EquivariantMap:
    """([n1,x1], [n2,x2]) -> [(n1,n2), (x1,x2)] from f1_!X1 x f2_!X2 to (f1 x f2)_!(X1 x X2)"""
    _, Y1, classes1 = _lift_with_classes(f1, X1)
    _, Y2, classes2 = _lift_with_classes(f2, X2)
    _, YP, classes_p = _lift_with_classes(product_hom(f1, f2), product_of_actions(X1, X2))
    n2_size, x2_size = f2.dst.size, X2.size
    source = product_of_actions(Y1, Y2)
    f0: List[Optional[int]] = [None] * source.size
    for n1 in f1.dst.elements:
        for x1 in X1.elements:
            for n2 in f2.dst.elements:
                for x2 in X2.elements:
                    at = classes1.label(n1, x1) * Y2.size + classes2.label(n2, x2)
                    value = classes_p.label(n1 * n2_size + n2, x1 * x2_size + x2)
                    if f0[at] is None:
                        f0[at] = value
                    elif f0[at] != value:
                        raise InvalidArgumentError("comparison is not well defined on classes")
    comparison = EquivariantMap(source, YP, identity_hom(source.M), tuple(f0))
    if not (comparison.is_equivariant() and comparison.is_bijective()):
        raise InvalidArgumentError("comparison is not an equivariant bijection")
    return comparison


def check_contracted_iso(X: MSet, Y: MSet) -> Verdict:
    """[x, y] -> [1, (x, y)] from X (x)_M Y to the lift of X x Y along the multiplication"""
    M = X.M
    if Y.M != M or not M.is_commutative():
        raise InvalidArgumentError("contracted products are compared over a common commutative monoid")
    classes = contracted_product(X, Y)
    lift, tensor, _ = _lift_with_classes(multiplication_hom(M), product_of_actions(X, Y))

    act = []
    for m in M.elements:
        row = []
        for label in range(classes.size):
            x, y = classes.representative(label)
            row.append(classes.label(x, Y.act[m][y]))
        act.append(tuple(row))
    f0: List[Optional[int]] = [None] * classes.size
    for x in X.elements:
        for y in Y.elements:
            label = classes.label(x, y)
            for m in M.elements:
                if classes.label(x, Y.act[m][y]) != act[m][label]:
                    return Verdict.fail("action on the contracted product is not well defined", x, y,
                                        label="contracted-iso")
            value = lift.f0[x * Y.size + y]
            if f0[label] is None:
                f0[label] = value
            elif f0[label] != value:
                return Verdict.fail("comparison is not constant on a class", x, y, label="contracted-iso")

    source = MSet(M, classes.size, act)
    comparison = EquivariantMap(source, tensor, identity_hom(M), tuple(f0))
    if not comparison.is_equivariant():
        return Verdict.fail("comparison is not equivariant", comparison, label="contracted-iso")
    if not comparison.is_bijective():
        return Verdict.fail("comparison is not a bijection", comparison, label="contracted-iso")
    return Verdict.ok("contracted-iso", checked=X.size * Y.size, size=classes.size)
