"""
Finite monoids, groups and abelian groups given by multiplication tables.

Elements are the indices 0..n-1. Tables are stored as tuples of tuples so
every algebraic object is immutable and hashable; equality is equality of
the underlying table and identity index, never of names.
"""

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint

from src.errors import InvalidArgumentError, ResourceLimitError
from .algebra_config import AlgebraConfig

logger = logging.getLogger(__name__)

Table = Tuple[Tuple[int, ...], ...]


def as_table(rows) -> Table:
    """Normalise nested sequences (lists, arrays) into a tuple table of ints"""
    return tuple(tuple(int(v) for v in row) for row in rows)


def is_associative_table(table) -> bool:
    """Vectorised associativity test: (xy)z == x(yz) for all triples"""
    arr = np.asarray(table, dtype=np.int64)
    if arr.size == 0:
        return True
    return bool(np.array_equal(arr[arr, :], arr[:, arr]))


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    size: int
    mul: Table
    identity: int = 0
    name: str = ""
    factors: Optional[Tuple["FiniteMonoid", "FiniteMonoid"]] = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "mul", as_table(self.mul))
        if self.size < 1:
            raise InvalidArgumentError(f"carrier size must be positive, got {self.size}")
        if len(self.mul) != self.size or any(len(row) != self.size for row in self.mul):
            raise InvalidArgumentError(f"multiplication table must be {self.size}x{self.size}")
        if not 0 <= self.identity < self.size:
            raise InvalidArgumentError(f"identity index {self.identity} out of range")
        for row in self.mul:
            for value in row:
                if not 0 <= value < self.size:
                    raise InvalidArgumentError(f"table entry {value} out of range 0..{self.size - 1}")

    def _key(self):
        return (self.size, self.mul, self.identity)

    def __eq__(self, other):
        if not isinstance(other, FiniteMonoid):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash(self._key())

    @property
    def elements(self) -> range:
        return range(self.size)

    def op(self, x: int, y: int) -> int:
        return self.mul[x][y]

    def label(self) -> str:
        return self.name or f"M{self.size}"

    def is_commutative(self) -> bool:
        arr = np.asarray(self.mul)
        return bool(np.array_equal(arr, arr.T))

    def is_associative(self) -> bool:
        return is_associative_table(self.mul)

    def has_identity(self) -> bool:
        e = self.identity
        return all(self.mul[e][x] == x and self.mul[x][e] == x for x in self.elements)

    def inverse_table(self) -> Optional[Tuple[int, ...]]:
        """Two-sided inverses of every element, or None if some element has none"""
        inv = []
        for x in self.elements:
            found = next(
                (y for y in self.elements
                 if self.mul[x][y] == self.identity and self.mul[y][x] == self.identity),
                None,
            )
            if found is None:
                return None
            inv.append(found)
        return tuple(inv)

    def is_group(self) -> bool:
        return self.inverse_table() is not None

    def validate(self) -> "FiniteMonoid":
        """Raise InvalidArgumentError unless the table is a monoid with this identity"""
        if not self.has_identity():
            raise InvalidArgumentError(f"{self.label()}: index {self.identity} is not a two-sided identity")
        if not self.is_associative():
            raise InvalidArgumentError(f"{self.label()}: multiplication is not associative")
        return self

    def to_dict(self) -> Dict:
        data = {
            "name": self.name,
            "size": self.size,
            "identity": self.identity,
            "mul": [list(row) for row in self.mul],
        }
        return data

    @classmethod
    def from_table(cls, mul, identity: int = 0, name: str = "", check: bool = True, **kwargs):
        """Build from a square table; checks the monoid axioms unless check=False"""
        table = as_table(mul)
        obj = cls(size=len(table), mul=table, identity=identity, name=name, **kwargs)
        if check:
            obj.validate()
        return obj


@dataclass(frozen=True, eq=False)
class FiniteGroup(FiniteMonoid):
    inv: Tuple[int, ...] = ()

    def __post_init__(self):
        super().__post_init__()
        if not self.inv:
            inv = self.inverse_table()
            if inv is None:
                raise InvalidArgumentError(f"{self.label()}: some element has no inverse")
            object.__setattr__(self, "inv", inv)
            return
        object.__setattr__(self, "inv", tuple(int(v) for v in self.inv))
        if len(self.inv) != self.size:
            raise InvalidArgumentError(f"{self.label()}: inverse table has wrong length")
        for x, y in enumerate(self.inv):
            if not 0 <= y < self.size or self.mul[x][y] != self.identity or self.mul[y][x] != self.identity:
                raise InvalidArgumentError(f"{self.label()}: {y} is not an inverse of {x}")

    def to_dict(self) -> Dict:
        data = super().to_dict()
        data["inv"] = list(self.inv)
        return data

    def element_order(self, x: int) -> int:
        order, y = 1, x
        while y != self.identity:
            y = self.mul[y][x]
            order += 1
        return order


@dataclass(frozen=True, eq=False)
class FiniteAbelianGroup(FiniteGroup):

    def __post_init__(self):
        super().__post_init__()
        if not self.is_commutative():
            raise InvalidArgumentError(f"{self.label()}: multiplication is not commutative")

    def add(self, x: int, y: int) -> int:
        return self.mul[x][y]

    def neg(self, x: int) -> int:
        return self.inv[x]

    def sub(self, x: int, y: int) -> int:
        return self.mul[x][self.inv[y]]

    @property
    def zero(self) -> int:
        return self.identity


def classify(mul, identity: int = 0, name: str = "", factors=None, check: bool = False) -> FiniteMonoid:
    """Return the most specific class (abelian group, group, monoid) for a table"""
    monoid = FiniteMonoid(size=len(mul), mul=as_table(mul), identity=identity, name=name, factors=factors)
    if check:
        monoid.validate()
    inv = monoid.inverse_table()
    if inv is None:
        return monoid
    cls = FiniteAbelianGroup if monoid.is_commutative() else FiniteGroup
    return cls(size=monoid.size, mul=monoid.mul, identity=identity, name=name, factors=factors, inv=inv)


def as_abelian(group: FiniteMonoid) -> FiniteAbelianGroup:
    if isinstance(group, FiniteAbelianGroup):
        return group
    promoted = classify(group.mul, group.identity, group.name, group.factors)
    if not isinstance(promoted, FiniteAbelianGroup):
        raise InvalidArgumentError(f"{group.label()} is not an abelian group")
    return promoted


def as_group(monoid: FiniteMonoid) -> FiniteGroup:
    if isinstance(monoid, FiniteGroup):
        return monoid
    promoted = classify(monoid.mul, monoid.identity, monoid.name, monoid.factors)
    if not isinstance(promoted, FiniteGroup):
        raise InvalidArgumentError(f"{monoid.label()} is not a group")
    return promoted


def check_monoid(monoid: FiniteMonoid) -> bool:
    try:
        monoid.validate()
    except InvalidArgumentError:
        return False
    return True


def make_cyclic(n: int) -> FiniteAbelianGroup:
    if n < 1:
        raise InvalidArgumentError(f"cyclic group order must be positive, got {n}")
    mul = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inv = tuple((-i) % n for i in range(n))
    return FiniteAbelianGroup(size=n, mul=mul, identity=0, name=f"Z{n}", inv=inv)


def trivial_monoid() -> FiniteAbelianGroup:
    return make_cyclic(1)


def idempotent_monoid() -> FiniteMonoid:
    """{1, e} with e * e = e, the smallest monoid that is not a group"""
    return FiniteMonoid(2, ((0, 1), (1, 1)), 0, "I2")


def opposite_monoid(monoid: FiniteMonoid) -> FiniteMonoid:
    mul = tuple(tuple(monoid.mul[y][x] for y in monoid.elements) for x in monoid.elements)
    if mul == monoid.mul:
        return monoid
    return classify(mul, monoid.identity, f"{monoid.label()}^op")


# ---------------------------------------------------------------- homomorphisms


@dataclass(frozen=True)
class Hom:
    src: FiniteMonoid
    dst: FiniteMonoid
    map: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))

    def __call__(self, x: int) -> int:
        return self.map[x]

    @property
    def is_identity(self) -> bool:
        return self.src == self.dst and self.map == tuple(self.src.elements)

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return set(self.map) == set(self.dst.elements)

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def image(self) -> List[int]:
        return sorted(set(self.map))

    def kernel(self) -> List[int]:
        return [x for x in self.src.elements if self.map[x] == self.dst.identity]

    def to_dict(self) -> Dict:
        return {"src": self.src.label(), "dst": self.dst.label(), "map": list(self.map)}


def check_hom(hom: Hom) -> bool:
    """True iff the map preserves identity and multiplication"""
    src, dst, m = hom.src, hom.dst, hom.map
    if len(m) != src.size:
        raise InvalidArgumentError(f"hom table has {len(m)} entries for a source of size {src.size}")
    if any(not 0 <= v < dst.size for v in m):
        raise InvalidArgumentError("hom table entry out of range of the target")
    if m[src.identity] != dst.identity:
        return False
    for x in src.elements:
        row, image_row = src.mul[x], dst.mul[m[x]]
        for y in src.elements:
            if m[row[y]] != image_row[m[y]]:
                return False
    return True


def identity_hom(monoid: FiniteMonoid) -> Hom:
    return Hom(monoid, monoid, tuple(monoid.elements))


def compose_homs(g: Hom, f: Hom) -> Hom:
    """g after f"""
    if f.dst != g.src:
        raise InvalidArgumentError(f"cannot compose: {f.dst.label()} is not {g.src.label()}")
    return Hom(f.src, g.dst, tuple(g.map[v] for v in f.map))


def constant_hom(src: FiniteMonoid, dst: FiniteMonoid) -> Hom:
    return Hom(src, dst, (dst.identity,) * src.size)


def inverse_hom(hom: Hom) -> Hom:
    if not hom.is_bijective():
        raise InvalidArgumentError("only bijective homs have inverses")
    table = [0] * hom.dst.size
    for x, y in enumerate(hom.map):
        table[y] = x
    return Hom(hom.dst, hom.src, tuple(table))


def element_order(G: FiniteGroup, x: int) -> int:
    return as_group(G).element_order(x)


# ---------------------------------------------------------------- products


def direct_product(G: FiniteMonoid, H: FiniteMonoid) -> FiniteMonoid:
    """Componentwise product on the encoding (i, j) -> i*|H| + j"""
    n, m = G.size, H.size
    rows = []
    for a in range(n * m):
        i1, j1 = divmod(a, m)
        g_row, h_row = G.mul[i1], H.mul[j1]
        rows.append(tuple(g_row[b // m] * m + h_row[b % m] for b in range(n * m)))
    identity = G.identity * m + H.identity
    name = f"{G.label()}x{H.label()}"
    if isinstance(G, FiniteGroup) and isinstance(H, FiniteGroup):
        inv = tuple(G.inv[a // m] * m + H.inv[a % m] for a in range(n * m))
        abelian = isinstance(G, FiniteAbelianGroup) and isinstance(H, FiniteAbelianGroup)
        cls = FiniteAbelianGroup if abelian else FiniteGroup
        return cls(size=n * m, mul=tuple(rows), identity=identity, name=name, factors=(G, H), inv=inv)
    return FiniteMonoid(size=n * m, mul=tuple(rows), identity=identity, name=name, factors=(G, H))


def _factors(product: FiniteMonoid) -> Tuple[FiniteMonoid, FiniteMonoid]:
    if product.factors is None:
        raise InvalidArgumentError(f"{product.label()} is not a designated product")
    return product.factors


def projection(product: FiniteMonoid, index: int) -> Hom:
    G, H = _factors(product)
    m = H.size
    if index == 0:
        return Hom(product, G, tuple(a // m for a in product.elements))
    return Hom(product, H, tuple(a % m for a in product.elements))


def injection(product: FiniteMonoid, index: int) -> Hom:
    G, H = _factors(product)
    m = H.size
    if index == 0:
        return Hom(G, product, tuple(x * m + H.identity for x in G.elements))
    return Hom(H, product, tuple(G.identity * m + y for y in H.elements))


def pairing_hom(f: Hom, g: Hom, product: Optional[FiniteMonoid] = None) -> Hom:
    """The map x -> (f(x), g(x)) into the designated product of the targets"""
    if f.src != g.src:
        raise InvalidArgumentError("paired homs must share a source")
    product = product or direct_product(f.dst, g.dst)
    m = g.dst.size
    return Hom(f.src, product, tuple(f.map[x] * m + g.map[x] for x in f.src.elements))


def product_hom(f: Hom, g: Hom) -> Hom:
    """f x g between designated products"""
    src = direct_product(f.src, g.src)
    dst = direct_product(f.dst, g.dst)
    m, m2 = g.src.size, g.dst.size
    return Hom(src, dst, tuple(f.map[a // m] * m2 + g.map[a % m] for a in src.elements))


def swap_hom(G: FiniteMonoid, H: FiniteMonoid) -> Hom:
    src, dst = direct_product(G, H), direct_product(H, G)
    m, n = H.size, G.size
    return Hom(src, dst, tuple((a % m) * n + a // m for a in src.elements))


def multiplication_hom(monoid: FiniteMonoid) -> Hom:
    """The multiplication M x M -> M; a hom exactly when M is commutative"""
    if not monoid.is_commutative():
        raise InvalidArgumentError(f"{monoid.label()} is not commutative")
    square = direct_product(monoid, monoid)
    n = monoid.size
    return Hom(square, monoid, tuple(monoid.mul[a // n][a % n] for a in square.elements))


# ---------------------------------------------------------------- modules


@dataclass(frozen=True)
class CModule:
    """An abelian group B with a left action of C by automorphisms"""

    C: FiniteGroup
    B: FiniteAbelianGroup
    xi: Table
    factors: Optional[Tuple["CModule", "CModule"]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "xi", as_table(self.xi))
        if not isinstance(self.C, FiniteGroup):
            raise InvalidArgumentError(f"{self.C.label()} is not a group")
        if not isinstance(self.B, FiniteAbelianGroup):
            raise InvalidArgumentError(f"{self.B.label()} is not an abelian group")
        if len(self.xi) != self.C.size or any(len(row) != self.B.size for row in self.xi):
            raise InvalidArgumentError(f"action table must be {self.C.size}x{self.B.size}")
        if any(not 0 <= v < self.B.size for row in self.xi for v in row):
            raise InvalidArgumentError("action table entry out of range")

    def act(self, c: int, b: int) -> int:
        return self.xi[c][b]

    def is_trivial(self) -> bool:
        return all(row == tuple(self.B.elements) for row in self.xi)

    def validate(self) -> "CModule":
        C, B = self.C, self.B
        if self.xi[C.identity] != tuple(B.elements):
            raise InvalidArgumentError("the identity of C must act trivially")
        for c in C.elements:
            if not check_hom(Hom(B, B, self.xi[c])) or len(set(self.xi[c])) != B.size:
                raise InvalidArgumentError(f"element {c} does not act by an automorphism")
            for d in C.elements:
                cd = C.mul[c][d]
                if any(self.xi[cd][b] != self.xi[c][self.xi[d][b]] for b in B.elements):
                    raise InvalidArgumentError(f"action is not compatible with {c}*{d}")
        return self

    def label(self) -> str:
        kind = "trivial" if self.is_trivial() else "twisted"
        return f"{self.B.label()} over {self.C.label()} ({kind})"

    def to_dict(self) -> Dict:
        return {"C": self.C.to_dict(), "B": self.B.to_dict(), "xi": [list(row) for row in self.xi]}


def trivial_action(C: FiniteGroup, B: FiniteAbelianGroup) -> CModule:
    return CModule(C, B, tuple(tuple(B.elements) for _ in C.elements))


def inversion_action(C: FiniteGroup, B: FiniteAbelianGroup) -> CModule:
    """C acts by b -> -b through its first non-trivial hom onto Z2"""
    sign = next((h for h in homs_by_generators(C, make_cyclic(2)) if any(h.map)), None)
    if sign is None:
        raise InvalidArgumentError(f"{C.label()} has no quotient of order 2 to act by inversion")
    xi = tuple(B.inv if sign.map[c] else tuple(B.elements) for c in C.elements)
    return CModule(C, B, xi)


class SemidirectProduct(NamedTuple):
    group: FiniteGroup
    injection: Hom
    projection: Hom


def semidirect_product(module: CModule) -> SemidirectProduct:
    """B x| C with (b,c)(b',c') = (b + c.b', cc') on the encoding b*|C| + c"""
    B, C, xi = module.B, module.C, module.xi
    nc = C.size
    rows = []
    for x in range(B.size * nc):
        b, c = divmod(x, nc)
        rows.append(tuple(
            B.mul[b][xi[c][y // nc]] * nc + C.mul[c][y % nc] for y in range(B.size * nc)
        ))
    group = as_group(classify(rows, B.identity * nc + C.identity, f"{B.label()}x|{C.label()}"))
    inj = Hom(B, group, tuple(b * nc + C.identity for b in B.elements))
    proj = Hom(group, C, tuple(x % nc for x in group.elements))
    return SemidirectProduct(group, inj, proj)


# ---------------------------------------------------------------- enumeration


def _require_budget(what: str, required: int, budget: Optional[int]):
    bound = AlgebraConfig.budget(budget)
    if required > bound:
        raise ResourceLimitError(what, required, bound)


def enumerate_homs(G: FiniteMonoid, H: FiniteMonoid, budget: Optional[int] = None) -> List[Hom]:
    """All homs G -> H by backtracking over the tables, in lexicographic order of maps"""
    n, m = G.size, H.size
    _require_budget(f"homs {G.label()} -> {H.label()}", m ** n, budget)

    # each product relation is checked once its largest index is assigned
    checks: List[List[Tuple[int, int, int]]] = [[] for _ in range(n)]
    for x in range(n):
        for y in range(n):
            z = G.mul[x][y]
            checks[max(x, y, z)].append((x, y, z))

    assignment = [0] * n
    results: List[Hom] = []

    def extend(k: int):
        if k == n:
            results.append(Hom(G, H, tuple(assignment)))
            return
        candidates = (H.identity,) if k == G.identity else range(m)
        for v in candidates:
            assignment[k] = v
            if all(assignment[z] == H.mul[assignment[x]][assignment[y]] for x, y, z in checks[k]):
                extend(k + 1)

    extend(0)
    logger.debug(f"Enumerated {len(results)} homs {G.label()} -> {H.label()}")
    return results


def _closure(G: FiniteMonoid, gens: Sequence[int]) -> set:
    reached = {G.identity}
    queue = deque([G.identity])
    while queue:
        y = queue.popleft()
        for g in gens:
            z = G.mul[y][g]
            if z not in reached:
                reached.add(z)
                queue.append(z)
    return reached


def generating_set(G: FiniteMonoid) -> List[int]:
    """A greedy generating set: add the smallest element not yet reached"""
    gens: List[int] = []
    reached = {G.identity}
    for x in G.elements:
        if x not in reached:
            gens.append(x)
            reached = _closure(G, gens)
    return gens


def _extend_from_generators(G, H, gens, images) -> Optional[Tuple[int, ...]]:
    value: List[Optional[int]] = [None] * G.size
    value[G.identity] = H.identity
    queue = deque([G.identity])
    while queue:
        y = queue.popleft()
        for g, image in zip(gens, images):
            z = G.mul[y][g]
            v = H.mul[value[y]][image]
            if value[z] is None:
                value[z] = v
                queue.append(z)
            elif value[z] != v:
                return None
    return tuple(value)


def homs_by_generators(G: FiniteMonoid, H: FiniteMonoid, budget: Optional[int] = None) -> List[Hom]:
    """Same result as enumerate_homs, searching only over images of generators"""
    gens = generating_set(G)
    _require_budget(f"generator images {G.label()} -> {H.label()}", H.size ** len(gens), budget)
    maps = []
    for images in itertools.product(range(H.size), repeat=len(gens)):
        table = _extend_from_generators(G, H, gens, images)
        if table is not None:
            maps.append(table)
    return [Hom(G, H, table) for table in sorted(maps)]


def automorphisms(G: FiniteMonoid, budget: Optional[int] = None) -> List[Hom]:
    return [h for h in homs_by_generators(G, G, budget) if h.is_bijective()]


class AutomorphismMonoid(NamedTuple):
    monoid: FiniteMonoid
    maps: Tuple[Hom, ...]


def automorphism_group(B: FiniteAbelianGroup, budget: Optional[int] = None) -> AutomorphismMonoid:
    """Aut(B) under composition; element i is maps[i]"""
    maps = automorphisms(B, budget)
    index = {h.map: i for i, h in enumerate(maps)}
    mul = [[index[compose_homs(g, f).map] for f in maps] for g in maps]
    identity = index[tuple(B.elements)]
    return AutomorphismMonoid(classify(mul, identity, f"Aut({B.label()})"), tuple(maps))


def enumerate_module_actions(C: FiniteGroup, B: FiniteAbelianGroup, budget: Optional[int] = None) -> List[CModule]:
    """Every action of C on B by automorphisms, via homs C -> Aut(B)"""
    aut = automorphism_group(B, budget)
    modules = []
    for h in homs_by_generators(C, aut.monoid, budget):
        modules.append(CModule(C, B, tuple(aut.maps[h.map[c]].map for c in C.elements)))
    return modules


class TransformationMonoid(NamedTuple):
    monoid: FiniteMonoid
    maps: Tuple[Tuple[int, ...], ...]


def transformation_monoid(n: int) -> TransformationMonoid:
    """All self-maps of n points under composition (f*g = f after g), identity first"""
    if n < 0:
        raise InvalidArgumentError("carrier size must be non-negative")
    ident = tuple(range(n))
    maps = [ident] + [f for f in itertools.product(range(n), repeat=n) if f != ident]
    index = {f: i for i, f in enumerate(maps)}
    mul = [[index[tuple(f[x] for x in g)] for g in maps] for f in maps]
    return TransformationMonoid(FiniteMonoid(len(maps), mul, 0, f"T{n}"), tuple(maps))


# ---------------------------------------------------------------- invariants


def _p_exponents(G: FiniteAbelianGroup, p: int, orders: List[int]) -> List[int]:
    """Exponents of the cyclic p-power factors of G, largest first"""
    counts = [1]  # |G[p^k]| for k = 0, 1, ...
    k = 0
    while True:
        k += 1
        counts.append(sum(1 for o in orders if (p ** k) % o == 0))
        if counts[-1] == counts[-2]:
            break
    at_least = []  # number of factors of order >= p^k
    for k in range(1, len(counts)):
        ratio, rank = counts[k] // counts[k - 1], 0
        while ratio > 1:
            ratio //= p
            rank += 1
        at_least.append(rank)
    exponents = []
    for k, rank in enumerate(at_least, start=1):
        following = at_least[k] if k < len(at_least) else 0
        exponents.extend([k] * (rank - following))
    return sorted(exponents, reverse=True)


def abelian_invariants(G: FiniteMonoid) -> List[int]:
    """Invariant factors d1 | d2 | ... of a finite abelian group, ascending"""
    group = as_abelian(G)
    orders = [group.element_order(x) for x in group.elements]
    primary = {p: _p_exponents(group, p, orders) for p in factorint(group.size)}
    length = max((len(e) for e in primary.values()), default=0)
    factors = []
    for i in range(length):
        d = 1
        for p, exps in primary.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    return sorted(factors)


def find_isomorphism(G: FiniteMonoid, H: FiniteMonoid) -> Optional[Hom]:
    """First isomorphism G -> H found by order-respecting backtracking"""
    if G.size != H.size:
        return None
    if G.size > AlgebraConfig.ISOMORPHISM_MAX_SIZE:
        raise ResourceLimitError(f"isomorphism search {G.label()} ~ {H.label()}", G.size,
                                 AlgebraConfig.ISOMORPHISM_MAX_SIZE)
    n = G.size
    if isinstance(G, FiniteGroup) and isinstance(H, FiniteGroup):
        g_orders = [G.element_order(x) for x in G.elements]
        h_orders = [H.element_order(x) for x in H.elements]
        if sorted(g_orders) != sorted(h_orders):
            return None
    else:
        g_orders = h_orders = [0] * n

    checks: List[List[Tuple[int, int, int]]] = [[] for _ in range(n)]
    for x in range(n):
        for y in range(n):
            z = G.mul[x][y]
            checks[max(x, y, z)].append((x, y, z))
    assignment = [0] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        candidates = (H.identity,) if k == G.identity else range(n)
        for v in candidates:
            if used[v] or g_orders[k] != h_orders[v]:
                continue
            assignment[k] = v
            if all(assignment[z] == H.mul[assignment[x]][assignment[y]] for x, y, z in checks[k]):
                used[v] = True
                if extend(k + 1):
                    return True
                used[v] = False
        return False

    if extend(0):
        return Hom(G, H, tuple(assignment))
    return None
