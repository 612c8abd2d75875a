"""
Monoid actions as an opfibration over finite monoids.
"""

import logging
from typing import List, Optional, Sequence

from src.algebra.algebra_config import AlgebraConfig
from src.algebra.finite_algebra import (
    FiniteGroup,
    FiniteMonoid,
    Hom,
    compose_homs,
    constant_hom,
    direct_product,
    homs_by_generators,
    identity_hom,
    multiplication_hom,
    pairing_hom,
    projection,
    trivial_monoid,
)
from src.fibrations.fibration import BaseProduct, FibrationOracle, InternalMonoid, Lift, TotalProduct
from src.errors import ResourceLimitError

from .actions import (
    EquivariantMap,
    MSet,
    cocartesian_lift,
    compose_maps,
    enumerate_actions,
    equivariant_maps,
    identity_map,
    pair_maps,
    product_of_actions,
    product_projections,
    terminal_action,
)

logger = logging.getLogger(__name__)


class ActionOracle(FibrationOracle):
    """Base: finite monoids. Total: left actions and equivariant maps."""

    name = "actions"

    def __init__(self, budget: Optional[int] = None, probe_budget: Optional[int] = None,
                 carrier_limit: Optional[int] = None, base_grid: Optional[Sequence] = None):
        super().__init__(budget, probe_budget, base_grid)
        self.carrier_limit = AlgebraConfig.PROBE_CARRIER_LIMIT if carrier_limit is None else carrier_limit

    # ---------------------------------------------------------- base

    def base_source(self, f: Hom):
        return f.src

    def base_target(self, f: Hom):
        return f.dst

    def base_compose(self, g: Hom, f: Hom) -> Hom:
        return compose_homs(g, f)

    def base_identity(self, A) -> Hom:
        return identity_hom(A)

    def _base_homs(self, A, B, budget: int) -> List[Hom]:
        return homs_by_generators(A, B, budget)

    def base_product(self, A, B) -> BaseProduct:
        product = direct_product(A, B)
        return BaseProduct(product, A, B, projection(product, 0), projection(product, 1))

    def base_pair(self, f: Hom, g: Hom) -> Hom:
        return pairing_hom(f, g)

    def base_terminal(self) -> FiniteMonoid:
        return trivial_monoid()

    def base_terminal_map(self, A) -> Hom:
        return constant_hom(A, self.base_terminal())

    def base_product_factors(self, A) -> Optional[BaseProduct]:
        if A.factors is None:
            return None
        return self.base_product(*A.factors)

    def internal_monoid(self, A) -> InternalMonoid:
        """A commutative monoid is a monoid object via its multiplication"""
        m = multiplication_hom(A)
        e = Hom(self.base_terminal(), A, (A.identity,))
        inv = Hom(A, A, A.inv) if isinstance(A, FiniteGroup) else None
        return InternalMonoid(A, m, e, inv, True)

    # ---------------------------------------------------------- total

    def base_of(self, X: MSet):
        return X.M

    def source(self, a: EquivariantMap):
        return a.src

    def target(self, a: EquivariantMap):
        return a.dst

    def project(self, a: EquivariantMap) -> Hom:
        return a.f

    def compose(self, g: EquivariantMap, f: EquivariantMap) -> EquivariantMap:
        return compose_maps(g, f)

    def identity(self, X: MSet) -> EquivariantMap:
        return identity_map(X)

    def _lift(self, f: Hom, X: MSet) -> Lift:
        arrow, lifted = cocartesian_lift(f, X)
        return Lift(arrow, lifted)

    def total_product(self, X: MSet, Y: MSet) -> TotalProduct:
        pi1, pi2 = product_projections(X, Y)
        return TotalProduct(product_of_actions(X, Y), pi1, pi2)

    def total_pair(self, u: EquivariantMap, v: EquivariantMap) -> EquivariantMap:
        return pair_maps(u, v)

    def total_terminal(self) -> MSet:
        return terminal_action()

    def total_terminal_map(self, X: MSet) -> EquivariantMap:
        return EquivariantMap(X, self.total_terminal(), self.base_terminal_map(X.M), (0,) * X.size)

    def _homs(self, X: MSet, Y: MSet, over, limit: Optional[int]) -> List[EquivariantMap]:
        maps = [over] if over is not None else self.base_homs(X.M, Y.M)
        found: List[EquivariantMap] = []
        for h in maps:
            remaining = None if limit is None else limit + 1 - len(found)
            found.extend(equivariant_maps(X, Y, h, stop_after=remaining))
            if limit is not None and len(found) > limit:
                raise ResourceLimitError("equivariant maps", len(found), limit)
        return found

    def fills(self, arrow: EquivariantMap, g: EquivariantMap, over, stop_after: int = 2) -> List[EquivariantMap]:
        """Search only maps that agree with g on the image of arrow"""
        if compose_homs(over, arrow.f) != g.f:
            return []
        fixed = {}
        for x, y in enumerate(arrow.f0):
            if fixed.setdefault(y, g.f0[x]) != g.f0[x]:
                return []
        return equivariant_maps(self.target(arrow), self.target(g), over, fixed=fixed, stop_after=stop_after)

    def fibre_objects(self, A, budget: Optional[int] = None) -> List[MSet]:
        """Actions of A on at most carrier_limit points"""

        def compute():
            objects = []
            for n in range(self.carrier_limit + 1):
                objects.extend(enumerate_actions(A, n, budget or self.budget))
            return objects

        return self.cached(("fibre", A, budget, self.carrier_limit), compute)

