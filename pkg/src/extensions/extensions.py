"""
Extensions of a group C by a C-module B, on the canonical carrier.

An extension is stored as its module together with a normalised factor
table t: C x C -> B. The group E has carrier B x C encoded as b*|C| + c and
multiplication (b,c)(b',c') = (b + c.b' + t(c,c'), cc'). Any exact sequence
B -> G -> C inducing the module can be re-encoded on this carrier through
a section of G -> C.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra.algebra_config import AlgebraConfig
from src.algebra.finite_algebra import (
    CModule,
    FiniteGroup,
    Hom,
    Table,
    as_abelian,
    as_group,
    as_table,
    check_hom,
    classify,
    compose_homs,
    direct_product,
    homs_by_generators,
    identity_hom,
    is_associative_table,
    make_cyclic,
    pairing_hom,
)
from src.algebra.quotients import quotient_by_generated_relation, quotient_by_law
from src.algebra.serialization import ExtensionModel, parse_document
from src.errors import InternalInconsistencyError, InvalidArgumentError, ResourceLimitError

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------- module maps


@dataclass(frozen=True)
class ModuleMap:
    """A C-equivariant hom between modules over the same C"""

    src: CModule
    dst: CModule
    hom: Hom

    def __post_init__(self):
        if self.src.C != self.dst.C:
            raise InvalidArgumentError("module maps must be over the same group")
        if self.hom.src != self.src.B or self.hom.dst != self.dst.B:
            raise InvalidArgumentError("hom does not match the modules")

    def __call__(self, b: int) -> int:
        return self.hom.map[b]

    def is_equivariant(self) -> bool:
        src, dst, m = self.src, self.dst, self.hom.map
        return all(
            m[src.xi[c][b]] == dst.xi[c][m[b]] for c in src.C.elements for b in src.B.elements
        )

    def to_dict(self) -> Dict:
        return {"map": list(self.hom.map)}


def identity_module_map(module: CModule) -> ModuleMap:
    return ModuleMap(module, module, identity_hom(module.B))


def compose_module_maps(g: ModuleMap, f: ModuleMap) -> ModuleMap:
    return ModuleMap(f.src, g.dst, compose_homs(g.hom, f.hom))


def zero_module(C: FiniteGroup) -> CModule:
    return CModule(C, make_cyclic(1), tuple((0,) for _ in C.elements))


def zero_map(src: CModule, dst: CModule) -> ModuleMap:
    return ModuleMap(src, dst, Hom(src.B, dst.B, (dst.B.identity,) * src.B.size))


def module_product(first: CModule, second: CModule) -> CModule:
    if first.C != second.C:
        raise InvalidArgumentError("modules over different groups")
    B = as_abelian(direct_product(first.B, second.B))
    m = second.B.size
    xi = tuple(
        tuple(first.xi[c][b // m] * m + second.xi[c][b % m] for b in B.elements)
        for c in first.C.elements
    )
    return CModule(first.C, B, xi, factors=(first, second))


def module_projection(product: CModule, index: int) -> ModuleMap:
    first, second = product.factors
    m = second.B.size
    if index == 0:
        return ModuleMap(product, first, Hom(product.B, first.B, tuple(b // m for b in product.B.elements)))
    return ModuleMap(product, second, Hom(product.B, second.B, tuple(b % m for b in product.B.elements)))


def module_pair(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    product = module_product(f.dst, g.dst)
    return ModuleMap(f.src, product, pairing_hom(f.hom, g.hom, product.B))


def addition_map(module: CModule) -> ModuleMap:
    """B x B -> B, (b, b') -> b + b'"""
    square = module_product(module, module)
    n, B = module.B.size, module.B
    return ModuleMap(square, module, Hom(square.B, B, tuple(B.mul[x // n][x % n] for x in square.B.elements)))


def negation_map(module: CModule) -> ModuleMap:
    return ModuleMap(module, module, Hom(module.B, module.B, module.B.inv))


def module_maps(src: CModule, dst: CModule, budget: Optional[int] = None) -> List[ModuleMap]:
    maps = (ModuleMap(src, dst, h) for h in homs_by_generators(src.B, dst.B, budget))
    return [f for f in maps if f.is_equivariant()]


# ---------------------------------------------------------------- extensions


def _multiplication_array(module: CModule, cocycle) -> np.ndarray:
    """Table of B x C under the twisted law, vectorised over all four indices"""
    Bm = np.asarray(module.B.mul, dtype=np.int64)
    Cm = np.asarray(module.C.mul, dtype=np.int64)
    xi = np.asarray(module.xi, dtype=np.int64)
    t = np.asarray(cocycle, dtype=np.int64)
    nb, nc = module.B.size, module.C.size
    b = np.arange(nb)[:, None, None, None]
    c = np.arange(nc)[None, :, None, None]
    b2 = np.arange(nb)[None, None, :, None]
    c2 = np.arange(nc)[None, None, None, :]
    first = Bm[Bm[b, xi[c, b2]], t[c, c2]]
    table = first * nc + Cm[c, c2]
    return table.reshape(nb * nc, nb * nc)


@dataclass(frozen=True)
class FactorSet:
    """A normalised C x C table of B indices (shape only; no cocycle check)"""

    module: CModule
    table: Table

    def __post_init__(self):
        object.__setattr__(self, "table", as_table(self.table))
        C, B = self.module.C, self.module.B
        if len(self.table) != C.size or any(len(row) != C.size for row in self.table):
            raise InvalidArgumentError(f"factor table must be {C.size}x{C.size}")
        if any(not 0 <= v < B.size for row in self.table for v in row):
            raise InvalidArgumentError("factor table entry out of range")
        e, zero = C.identity, B.identity
        if any(self.table[e][c] != zero or self.table[c][e] != zero for c in C.elements):
            raise InvalidArgumentError("factor table is not normalised")

    def to_dict(self) -> Dict:
        return {"table": [list(row) for row in self.table]}


@dataclass(frozen=True)
class Extension:
    module: CModule
    cocycle: Table

    def __post_init__(self):
        object.__setattr__(self, "cocycle", FactorSet(self.module, self.cocycle).table)

    @property
    def factor_set(self) -> FactorSet:
        return FactorSet(self.module, self.cocycle)

    @property
    def C(self) -> FiniteGroup:
        return self.module.C

    @property
    def B(self):
        return self.module.B

    def encode(self, b: int, c: int) -> int:
        return b * self.C.size + c

    def decode(self, x: int) -> Tuple[int, int]:
        return divmod(x, self.C.size)

    def multiplication_table(self) -> np.ndarray:
        return _multiplication_array(self.module, self.cocycle)

    def is_group_law(self) -> bool:
        return is_associative_table(self.multiplication_table())

    @cached_property
    def E(self) -> FiniteGroup:
        table = self.multiplication_table()
        if not is_associative_table(table):
            raise InvalidArgumentError("factor table does not give an associative multiplication")
        identity = self.encode(self.B.identity, self.C.identity)
        return as_group(classify(table.tolist(), identity, f"E({self.B.label()},{self.C.label()})"))

    @cached_property
    def k(self) -> Hom:
        return Hom(self.B, self.E, tuple(self.encode(b, self.C.identity) for b in self.B.elements))

    @cached_property
    def f(self) -> Hom:
        return Hom(self.E, self.C, tuple(x % self.C.size for x in range(self.E.size)))

    def is_split(self) -> bool:
        return all(v == self.B.identity for row in self.cocycle for v in row)

    def to_dict(self) -> Dict:
        return {"module": self.module.to_dict(), "cocycle": [list(row) for row in self.cocycle]}

    @classmethod
    def from_exact_sequence(cls, module: CModule, G: FiniteGroup, k: Hom, f: Hom) -> Tuple["Extension", Hom]:
        """Canonical extension for B -k-> G -f-> C and the isomorphism G -> E"""
        C, B = module.C, module.B
        nc = C.size
        k_inverse = {k.map[b]: b for b in B.elements}
        section = []
        for c in C.elements:
            if c == C.identity:
                section.append(G.identity)
            else:
                section.append(min(x for x in G.elements if f.map[x] == c))
        code = []
        for x in G.elements:
            c = f.map[x]
            code.append(k_inverse[G.mul[x][G.inv[section[c]]]] * nc + c)
        cocycle = [
            [k_inverse[G.mul[G.mul[section[c1]][section[c2]]][G.inv[section[C.mul[c1][c2]]]]] for c2 in C.elements]
            for c1 in C.elements
        ]
        ext = cls(module, cocycle)
        iso = Hom(G, ext.E, code)
        if not check_hom(iso):
            raise InvalidArgumentError("the sequence does not induce the given module")
        return ext, iso


def split_extension(module: CModule) -> Extension:
    zero = module.B.identity
    return Extension(module, tuple((zero,) * module.C.size for _ in module.C.elements))


def load_extension(source) -> Extension:
    model = parse_document(ExtensionModel, source)
    return Extension(model.module.to_module(), model.cocycle)


@dataclass(frozen=True)
class ExtMorphism:
    """(phi, psi) with psi k = k' phi and f' psi = f"""

    src: Extension
    dst: Extension
    phi: Hom
    psi: Hom

    def commutes(self) -> bool:
        src, dst = self.src, self.dst
        left = all(self.psi.map[src.k.map[b]] == dst.k.map[self.phi.map[b]] for b in src.B.elements)
        right = all(dst.f.map[self.psi.map[x]] == src.f.map[x] for x in src.E.elements)
        return left and right

    def module_map(self) -> ModuleMap:
        return ModuleMap(self.src.module, self.dst.module, self.phi)

    def to_dict(self) -> Dict:
        return {"phi": list(self.phi.map), "psi": list(self.psi.map)}


def identity_morphism(ext: Extension) -> ExtMorphism:
    return ExtMorphism(ext, ext, identity_hom(ext.B), identity_hom(ext.E))


def compose_morphisms(g: ExtMorphism, f: ExtMorphism) -> ExtMorphism:
    if f.dst != g.src:
        raise InvalidArgumentError("cannot compose extension morphisms")
    return ExtMorphism(f.src, g.dst, compose_homs(g.phi, f.phi), compose_homs(g.psi, f.psi))


def induced_action(B, G: FiniteGroup, k: Hom, f: Hom) -> CModule:
    """Conjugation action of C on B for an exact sequence B -k-> G -f-> C"""
    G = as_group(G)
    for h in (k, f):
        if not check_hom(h):
            raise InvalidArgumentError("sequence maps must be homomorphisms")
    if not k.is_injective():
        raise InvalidArgumentError("k is not injective")
    if not f.is_surjective():
        raise InvalidArgumentError("f is not surjective")
    if sorted(k.map) != f.kernel():
        raise InvalidArgumentError("image of k is not the kernel of f")
    C = as_group(f.dst)
    k_inverse = {k.map[b]: b for b in B.elements}
    xi: List[List[Optional[int]]] = [[None] * B.size for _ in C.elements]
    for x in G.elements:
        c = f.map[x]
        for b in B.elements:
            conjugate = k_inverse[G.mul[G.mul[x][k.map[b]]][G.inv[x]]]
            if xi[c][b] is None:
                xi[c][b] = conjugate
            elif xi[c][b] != conjugate:
                raise InvalidArgumentError("conjugation action depends on the chosen preimage")
    return CModule(C, as_abelian(B), xi).validate()


# ---------------------------------------------------------------- constructions


def pushforward(phi: ModuleMap, ext: Extension) -> Tuple[ExtMorphism, Extension]:
    """phi_! E as the quotient of B' x| E by {(-phi(b), k(b))}"""
    if phi.src != ext.module:
        raise InvalidArgumentError("module map does not start at the extension's module")
    if not phi.is_equivariant():
        raise InvalidArgumentError("module map is not C-equivariant")
    target = phi.dst
    B2, G = target.B, ext.E
    n2, nE = B2.size, G.size
    k, f = ext.k.map, ext.f.map

    def idx(b2: int, x: int) -> int:
        return b2 * nE + x

    def multiply(p: int, q: int) -> int:
        b2, x = divmod(p, nE)
        b3, y = divmod(q, nE)
        return idx(B2.mul[b2][target.xi[f[x]][b3]], G.mul[x][y])

    pairs = (
        (idx(B2.mul[b2][phi.hom.map[b]], x), idx(b2, G.mul[k[b]][x]))
        for b2 in range(n2) for x in range(nE) for b in ext.B.elements
    )
    partition = quotient_by_generated_relation(n2 * nE, pairs)
    quotient, labels = quotient_by_law(n2 * nE, multiply, idx(B2.identity, G.identity), partition)
    quotient = as_group(quotient)
    reps = partition.representatives
    k2 = Hom(B2, quotient, tuple(labels[idx(b2, G.identity)] for b2 in range(n2)))
    f2 = Hom(quotient, ext.C, tuple(f[rep % nE] for rep in reps))
    pushed, code = Extension.from_exact_sequence(target, quotient, k2, f2)
    psi = Hom(G, pushed.E, tuple(code.map[labels[idx(B2.identity, x)]] for x in range(nE)))
    return ExtMorphism(ext, pushed, phi.hom, psi), pushed


@lru_cache(maxsize=4096)
def _pullback(first: Extension, second: Extension):
    if first.C != second.C:
        raise InvalidArgumentError("extensions of different groups")
    G1, G2 = first.E, second.E
    f1, f2 = first.f.map, second.f.map
    elements = [(x, y) for x in G1.elements for y in G2.elements if f1[x] == f2[y]]
    index = {pair: i for i, pair in enumerate(elements)}
    mul = [[index[(G1.mul[x1][x2], G2.mul[y1][y2])] for (x2, y2) in elements] for (x1, y1) in elements]
    P = as_group(classify(mul, index[(G1.identity, G2.identity)]))
    module = module_product(first.module, second.module)
    m = second.B.size
    k = Hom(module.B, P, tuple(
        index[(first.k.map[b // m], second.k.map[b % m])] for b in module.B.elements
    ))
    f = Hom(P, first.C, tuple(f1[x] for x, _ in elements))
    ext, code = Extension.from_exact_sequence(module, P, k, f)
    position = {(x, y): code.map[i] for i, (x, y) in enumerate(elements)}
    return ext, position


def product_over_C(first: Extension, second: Extension) -> Extension:
    """E x_C E' over the module B x B'"""
    return _pullback(first, second)[0]


def product_projections(first: Extension, second: Extension) -> Tuple[ExtMorphism, ExtMorphism]:
    ext, position = _pullback(first, second)
    back = {code: pair for pair, code in position.items()}
    projections = []
    for index, target in enumerate((first, second)):
        psi = Hom(ext.E, target.E, tuple(back[x][index] for x in ext.E.elements))
        projections.append(ExtMorphism(ext, target, module_projection(ext.module, index).hom, psi))
    return projections[0], projections[1]


def product_pairing(u: ExtMorphism, v: ExtMorphism) -> ExtMorphism:
    """<u, v> into product_over_C(target u, target v)"""
    if u.src != v.src:
        raise InvalidArgumentError("paired morphisms must share a source")
    ext, position = _pullback(u.dst, v.dst)
    phi = pairing_hom(u.phi, v.phi, ext.B)
    psi = Hom(u.src.E, ext.E, tuple(position[(u.psi.map[x], v.psi.map[x])] for x in u.src.E.elements))
    return ExtMorphism(u.src, ext, phi, psi)


def baer_tensor(first: Extension, second: Extension) -> Extension:
    """Baer sum: push the fibre product forward along addition"""
    if first.module != second.module:
        raise InvalidArgumentError("Baer sum needs extensions of the same module")
    product = product_over_C(first, second)
    return pushforward(addition_map(first.module), product)[1]


def baer_inverse(ext: Extension) -> Extension:
    return pushforward(negation_map(ext.module), ext)[1]


# ---------------------------------------------------------------- fibres


def vertical_isomorphisms(first: Extension, second: Extension, stop_after: Optional[int] = None) -> List[ExtMorphism]:
    """Isomorphisms (id_B, psi), psi(b,c) = (b + g(c), c), in lexicographic order of g"""
    if first.module != second.module:
        raise InvalidArgumentError("extensions of different modules")
    B, C = first.B, first.C
    found = []
    for g in itertools.product(B.elements, repeat=C.size):
        if g[C.identity] != B.identity:
            continue
        psi = Hom(first.E, second.E, tuple(
            second.encode(B.mul[b][g[c]], c) for b in B.elements for c in C.elements
        ))
        if check_hom(psi):
            found.append(ExtMorphism(first, second, identity_hom(B), psi))
            if stop_after is not None and len(found) >= stop_after:
                break
    return found


def vertical_isomorphic(first: Extension, second: Extension) -> Optional[ExtMorphism]:
    found = vertical_isomorphisms(first, second, stop_after=1)
    return found[0] if found else None


def search_factor_tables(
    module: CModule,
    triple_holds: Callable[[List[List[int]], int, int, int], bool],
    budget: Optional[int] = None,
    what: str = "factor tables",
) -> List[Table]:
    """Normalised tables passing triple_holds at every triple of C, lexicographically.

    Free entries are filled row by row; a triple is tested as soon as every
    entry it reads (t(c2,c3), t(c1,c2c3), t(c1c2,c3), t(c1,c2)) is filled.
    """
    B, C = module.B, module.C
    e = C.identity
    free = [(c1, c2) for c1 in C.elements for c2 in C.elements if c1 != e and c2 != e]
    required = B.size ** len(free)
    bound = AlgebraConfig.budget(budget)
    if required > bound:
        raise ResourceLimitError(f"{what} over {module.label()}", required, bound)
    position = {entry: i for i, entry in enumerate(free)}
    due: List[List[Tuple[int, int, int]]] = [[] for _ in free]
    fixed: List[Tuple[int, int, int]] = []
    for c1, c2, c3 in itertools.product(C.elements, repeat=3):
        reads = ((c2, c3), (c1, C.mul[c2][c3]), (C.mul[c1][c2], c3), (c1, c2))
        last = max((position[r] for r in reads if r in position), default=None)
        (fixed if last is None else due[last]).append((c1, c2, c3))

    table = [[B.identity] * C.size for _ in C.elements]
    if not all(triple_holds(table, *t) for t in fixed):
        return []
    found: List[Table] = []

    def fill(depth: int):
        if depth == len(free):
            found.append(tuple(tuple(row) for row in table))
            return
        c1, c2 = free[depth]
        for b in B.elements:
            table[c1][c2] = b
            if all(triple_holds(table, *t) for t in due[depth]):
                fill(depth + 1)
        table[c1][c2] = B.identity

    fill(0)
    logger.debug(f"{len(found)} of {required} {what} over {module.label()} pass")
    return found


def _twisted_law_associates(module: CModule) -> Callable[[List[List[int]], int, int, int], bool]:
    """((b1,c1)(b2,c2))(b3,c3) == (b1,c1)((b2,c2)(b3,c3)) for every b1, b2, b3"""
    add, act, C = module.B.mul, module.xi, module.C.mul
    elements = module.B.elements

    def holds(t, c1, c2, c3) -> bool:
        c12, c23 = C[c1][c2], C[c2][c3]
        for b1 in elements:
            for b2 in elements:
                first = add[add[b1][act[c1][b2]]][t[c1][c2]]
                for b3 in elements:
                    left = add[add[first][act[c12][b3]]][t[c12][c3]]
                    inner = add[add[b2][act[c2][b3]]][t[c2][c3]]
                    right = add[add[b1][act[c1][inner]]][t[c1][c23]]
                    if left != right:
                        return False
        return True

    return holds


def fibre_enumerate(module: CModule, budget: Optional[int] = None) -> List[Extension]:
    """Every extension of the module on the canonical carrier, lexicographically"""
    tables = search_factor_tables(module, _twisted_law_associates(module), budget, "factor tables")
    return [Extension(module, table) for table in tables]


def normalised_cochains(module: CModule) -> List[Tuple[int, ...]]:
    """Maps g: C -> B with g(e) = 0, lexicographically"""
    e, B = module.C.identity, module.B
    return [g for g in itertools.product(B.elements, repeat=module.C.size) if g[e] == B.identity]


def shear_table(module: CModule, table: Table, g: Sequence[int]) -> Table:
    """The factor table s for which (b, c) -> (b + g(c), c) is an isomorphism E_t -> E_s"""
    B, C, xi = module.B, module.C, module.xi
    neg = B.inv
    return tuple(
        tuple(
            B.mul[B.mul[B.mul[table[c1][c2]][g[C.mul[c1][c2]]]][neg[g[c1]]]][neg[xi[c1][g[c2]]]]
            for c2 in C.elements
        )
        for c1 in C.elements
    )


def vertical_classes(module: CModule, budget: Optional[int] = None) -> Tuple[List[Extension], Dict[Table, int]]:
    """Representatives of the vertical isomorphism classes and the class of every fibre table.

    A class is led by its first member in fibre order and consists of every
    shear of that member.
    """
    shears = normalised_cochains(module)
    representatives: List[Extension] = []
    label: Dict[Table, int] = {}
    for ext in fibre_enumerate(module, budget):
        if ext.cocycle in label:
            continue
        for g in shears:
            label[shear_table(module, ext.cocycle, g)] = len(representatives)
        representatives.append(ext)
    return representatives, label


def pi0_with_representatives(module: CModule, budget: Optional[int] = None):
    """Isomorphism classes of the fibre under Baer sum, with their representatives.

    Baer sums are taken only with a generating set of classes; the rest of
    the table follows by walking the resulting Cayley graph.
    """
    representatives, label = vertical_classes(module, budget)

    def class_of(ext: Extension) -> int:
        if ext.cocycle not in label:
            raise InternalInconsistencyError("Baer sum left the enumerated fibre")
        return label[ext.cocycle]

    generators: List[int] = []
    steps: List[Dict[int, int]] = []

    def step(j: int, x: int) -> int:
        if x not in steps[j]:
            steps[j][x] = class_of(baer_tensor(representatives[x], representatives[generators[j]]))
        return steps[j][x]

    identity = class_of(split_extension(module))
    word: Dict[int, Tuple[int, ...]] = {identity: ()}
    for candidate in range(len(representatives)):
        if candidate in word:
            continue
        generators.append(candidate)
        steps.append({})
        reached = list(word)
        i = 0
        while i < len(reached):
            x = reached[i]
            for j in range(len(generators)):
                y = step(j, x)
                if y not in word:
                    word[y] = word[x] + (j,)
                    reached.append(y)
            i += 1

    def walk(x: int, path: Tuple[int, ...]) -> int:
        for j in path:
            x = step(j, x)
        return x

    n = len(representatives)
    table = [[walk(x, word[y]) for y in range(n)] for x in range(n)]
    group = as_abelian(classify(table, identity, f"pi0({module.label()})", check=True))
    logger.info(f"pi0 over {module.label()} has order {group.size} with {len(generators)} generator(s)")
    return group, representatives


def pi0(module: CModule, budget: Optional[int] = None):
    return pi0_with_representatives(module, budget)[0]


def pi1_derivations(module: CModule) -> List[Tuple[int, ...]]:
    """Maps g: C -> B whose shear (b,c) -> (b + g(c), c) is an automorphism of the split extension"""
    split = split_extension(module)
    derivations = []
    for iso in vertical_isomorphisms(split, split):
        derivations.append(tuple(split.decode(iso.psi.map[split.encode(module.B.identity, c)])[0]
                                 for c in module.C.elements))
    return derivations


def pi1(module: CModule):
    """Automorphisms of the split extension over the identity, under composition"""
    split = split_extension(module)
    autos = vertical_isomorphisms(split, split)
    index = {a.psi.map: i for i, a in enumerate(autos)}
    table = [[index[compose_homs(a.psi, b.psi).map] for b in autos] for a in autos]
    identity = index[tuple(split.E.elements)]
    return as_abelian(classify(table, identity, f"pi1({module.label()})", check=True))
