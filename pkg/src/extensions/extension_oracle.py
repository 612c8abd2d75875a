"""
Extensions of a fixed group C as an opfibration over C-modules.
"""

import itertools
import logging
from typing import List, Optional, Sequence

from src.algebra.finite_algebra import FiniteGroup, Hom, check_hom
from src.fibrations.fibration import BaseProduct, FibrationOracle, InternalMonoid, Lift, TotalProduct
from src.errors import InvalidArgumentError, ResourceLimitError

from .extensions import (
    Extension,
    ExtMorphism,
    ModuleMap,
    addition_map,
    compose_module_maps,
    compose_morphisms,
    fibre_enumerate,
    identity_module_map,
    identity_morphism,
    module_maps,
    module_pair,
    module_product,
    module_projection,
    negation_map,
    product_over_C,
    product_pairing,
    product_projections,
    pushforward,
    split_extension,
    zero_map,
    zero_module,
)

logger = logging.getLogger(__name__)


class ExtensionOracle(FibrationOracle):
    """Base: C-modules and equivariant maps. Total: extensions and their morphisms."""

    name = "extensions"

    def __init__(self, C: FiniteGroup, budget: Optional[int] = None, probe_budget: Optional[int] = None,
                 base_grid: Optional[Sequence] = None):
        super().__init__(budget, probe_budget, base_grid)
        self.C = C

    # ---------------------------------------------------------- base

    def base_source(self, f: ModuleMap):
        return f.src

    def base_target(self, f: ModuleMap):
        return f.dst

    def base_compose(self, g: ModuleMap, f: ModuleMap) -> ModuleMap:
        return compose_module_maps(g, f)

    def base_identity(self, A) -> ModuleMap:
        return identity_module_map(A)

    def _base_homs(self, A, B, budget: int) -> List[ModuleMap]:
        return module_maps(A, B, budget)

    def base_product(self, A, B) -> BaseProduct:
        product = module_product(A, B)
        return BaseProduct(product, A, B, module_projection(product, 0), module_projection(product, 1))

    def base_pair(self, f: ModuleMap, g: ModuleMap) -> ModuleMap:
        return module_pair(f, g)

    def base_terminal(self):
        return zero_module(self.C)

    def base_terminal_map(self, A) -> ModuleMap:
        return zero_map(A, self.base_terminal())

    def base_product_factors(self, A) -> Optional[BaseProduct]:
        if A.factors is None:
            return None
        return self.base_product(*A.factors)

    def internal_monoid(self, A) -> InternalMonoid:
        """Every module is an abelian group object: addition, zero and negation"""
        e = zero_map(self.base_terminal(), A)
        return InternalMonoid(A, addition_map(A), e, negation_map(A), True)

    # ---------------------------------------------------------- total

    def base_of(self, X: Extension):
        return X.module

    def source(self, a: ExtMorphism):
        return a.src

    def target(self, a: ExtMorphism):
        return a.dst

    def project(self, a: ExtMorphism) -> ModuleMap:
        return a.module_map()

    def compose(self, g: ExtMorphism, f: ExtMorphism) -> ExtMorphism:
        return compose_morphisms(g, f)

    def identity(self, X: Extension) -> ExtMorphism:
        return identity_morphism(X)

    def _lift(self, f: ModuleMap, X: Extension) -> Lift:
        arrow, pushed = pushforward(f, X)
        return Lift(arrow, pushed)

    def total_product(self, X: Extension, Y: Extension) -> TotalProduct:
        pi1, pi2 = product_projections(X, Y)
        return TotalProduct(product_over_C(X, Y), pi1, pi2)

    def total_pair(self, u: ExtMorphism, v: ExtMorphism) -> ExtMorphism:
        return product_pairing(u, v)

    def total_terminal(self) -> Extension:
        return split_extension(self.base_terminal())

    def total_terminal_map(self, X: Extension) -> ExtMorphism:
        T = self.total_terminal()
        psi = Hom(X.E, T.E, tuple(T.encode(T.B.identity, X.decode(x)[1]) for x in X.E.elements))
        return ExtMorphism(X, T, self.base_terminal_map(X.module).hom, psi)

    def _homs(self, X: Extension, Y: Extension, over, limit: Optional[int]) -> List[ExtMorphism]:
        """Every morphism is (phi, psi) with psi(b,c) = (phi(b) + g(c), c)"""
        maps = [over] if over is not None else self.base_homs(X.module, Y.module)
        B2, C = Y.B, self.C
        found = []
        for phi in maps:
            for g in itertools.product(B2.elements, repeat=C.size):
                if g[C.identity] != B2.identity:
                    continue
                psi = Hom(X.E, Y.E, tuple(
                    Y.encode(B2.mul[phi.hom.map[b]][g[c]], c) for b in X.B.elements for c in C.elements
                ))
                if check_hom(psi):
                    found.append(ExtMorphism(X, Y, phi.hom, psi))
                    if limit is not None and len(found) > limit:
                        raise ResourceLimitError("extension morphisms", len(found), limit)
        return found

    def fibre_objects(self, A, budget: Optional[int] = None) -> List[Extension]:
        if A.C != self.C:
            raise InvalidArgumentError("module is over a different group")
        return self.cached(("fibre", A, budget), lambda: fibre_enumerate(A, budget or self.budget))
