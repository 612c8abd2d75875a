"""
Quotients of finite sets by generated equivalence relations, and of
finite groups by congruences.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Tuple

from src.errors import InvalidArgumentError
from .finite_algebra import FiniteGroup, FiniteMonoid, Hom, as_group, classify

logger = logging.getLogger(__name__)


class UnionFind:
    """Disjoint sets over 0..n-1; the root of a class is its smallest member"""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if y < x:
            x, y = y, x
        self.parent[y] = x
        return True


@dataclass(frozen=True)
class Partition:
    size: int
    class_of: Tuple[int, ...]  # element -> smallest member of its class

    @cached_property
    def representatives(self) -> Tuple[int, ...]:
        return tuple(sorted(set(self.class_of)))

    @cached_property
    def labels(self) -> Tuple[int, ...]:
        """element -> dense class index, classes ordered by representative"""
        dense = {rep: i for i, rep in enumerate(self.representatives)}
        return tuple(dense[c] for c in self.class_of)

    @property
    def count(self) -> int:
        return len(self.representatives)

    def classes(self) -> Dict[int, List[int]]:
        members: Dict[int, List[int]] = {rep: [] for rep in self.representatives}
        for x, rep in enumerate(self.class_of):
            members[rep].append(x)
        return members

    def same_class(self, x: int, y: int) -> bool:
        return self.class_of[x] == self.class_of[y]


def quotient_by_generated_relation(n: int, pairs: Iterable[Tuple[int, int]]) -> Partition:
    """Partition of 0..n-1 by the equivalence relation generated by pairs"""
    if n < 0:
        raise InvalidArgumentError("carrier size must be non-negative")
    uf = UnionFind(n)
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise InvalidArgumentError(f"pair ({x}, {y}) is outside 0..{n - 1}")
        uf.union(x, y)
    return Partition(n, tuple(uf.find(x) for x in range(n)))


def quotient_by_law(
    n: int,
    multiply: Callable[[int, int], int],
    identity: int,
    partition: Partition,
    name: str = "",
) -> Tuple[FiniteMonoid, Tuple[int, ...]]:
    """Multiplication induced on the classes of a coset partition.

    Classes must be the cosets of a normal subgroup; the check compares every
    element against every representative on both sides, which is enough for
    cosets.
    """
    if partition.size != n:
        raise InvalidArgumentError("partition does not cover the carrier")
    labels, reps = partition.labels, partition.representatives
    table = [[labels[multiply(p, q)] for q in reps] for p in reps]
    for p in range(n):
        lp = labels[p]
        for j, q in enumerate(reps):
            if labels[multiply(p, q)] != table[lp][j] or labels[multiply(q, p)] != table[j][lp]:
                raise InvalidArgumentError("relation is not compatible with the multiplication")
    return classify(table, labels[identity], name), labels


def quotient_group(G: FiniteGroup, partition: Partition, name: str = "") -> Tuple[FiniteGroup, Hom]:
    """G / ~ together with the class map G -> G / ~"""
    quotient, labels = quotient_by_law(G.size, lambda x, y: G.mul[x][y], G.identity, partition,
                                       name or f"{G.label()}/~")
    quotient = as_group(quotient)
    return quotient, Hom(G, quotient, labels)
