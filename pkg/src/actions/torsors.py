"""
Torsors over finite groups and the cocartesian characterization of them.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from src.algebra.finite_algebra import FiniteAbelianGroup, FiniteGroup, FiniteMonoid, as_abelian, classify, identity_hom
from src.fibrations.fibration import Verdict, check_diagonal_cocartesian, check_terminal_cocartesian
from src.errors import InvalidArgumentError

from .action_oracle import ActionOracle
from .actions import MSet, enumerate_actions, equivariant_maps, regular_action

logger = logging.getLogger(__name__)


def is_torsor(B: FiniteMonoid, X: MSet) -> bool:
    """Nonempty, and (b, x) -> (x, b.x) is a bijection B x X -> X x X"""
    if not isinstance(B, FiniteGroup):
        raise InvalidArgumentError(f"{B.label()} is not a group")
    if X.M != B:
        raise InvalidArgumentError("the action is not over this group")
    if X.size == 0 or B.size * X.size != X.size * X.size:
        return False
    image = {(x, X.act[b][x]) for b in B.elements for x in X.elements}
    return len(image) == X.size * X.size


def torsors_enumerate(B: FiniteGroup, budget: Optional[int] = None) -> List[MSet]:
    """Every torsor action table on the carrier 0..|B|-1"""
    return [X for X in enumerate_actions(B, B.size, budget) if is_torsor(B, X)]


def trivializations(X: MSet) -> List[int]:
    """Base points x0 for which b -> b.x0 is a bijection B -> X"""
    return [x0 for x0 in X.elements if len({X.act[b][x0] for b in X.M.elements}) == X.M.size == X.size]


def trivialized_torsor_count(torsors: List[MSet]) -> int:
    """Torsor tables paired with a base point that trivializes them"""
    return sum(len(trivializations(X)) for X in torsors)


class TorsorOracle(ActionOracle):
    """Actions restricted to torsors over finite groups"""

    name = "torsors"

    def fibre_objects(self, A, budget: Optional[int] = None) -> List[MSet]:
        if not isinstance(A, FiniteGroup):
            raise InvalidArgumentError(f"{A.label()} is not a group")
        return self.cached(("torsors", A, budget), lambda: torsors_enumerate(A, budget or self.budget))


def torsor_characterization_check(B: FiniteGroup, X: MSet, oracle: Optional[ActionOracle] = None) -> Verdict:
    """X is a torsor exactly when its terminal and diagonal maps are cocartesian"""
    oracle = oracle or ActionOracle()
    torsor = is_torsor(B, X)
    terminal = check_terminal_cocartesian(oracle, X)
    diagonal = check_diagonal_cocartesian(oracle, X) if X.size > 0 else None
    characterized = terminal.passed and diagonal is not None and diagonal.passed
    details = {
        "torsor": torsor,
        "terminal": terminal.passed,
        "diagonal": None if diagonal is None else diagonal.passed,
    }
    sampled = terminal.sampled or (diagonal is not None and diagonal.sampled)
    if torsor != characterized:
        return Verdict.fail("torsor test disagrees with the cocartesian characterization", X,
                            label="torsor-characterization", sampled=sampled, **details)
    return Verdict.ok("torsor-characterization", checked=1, sampled=sampled, **details)


@dataclass
class TorsorInvariants:
    classes: int
    automorphisms: FiniteAbelianGroup
    tables: int
    trivialized: int
    representatives: List[MSet] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            "pi0": self.classes,
            "pi1_order": self.automorphisms.size,
            "torsor_tables": self.tables,
            "trivialized_torsors": self.trivialized,
        }


def _equivariant_bijections(X: MSet, Y: MSet) -> list:
    return [u for u in equivariant_maps(X, Y, identity_hom(X.M)) if u.is_bijective()]


def tors_pi0_pi1(B: FiniteGroup, budget: Optional[int] = None) -> TorsorInvariants:
    """Isomorphism classes of B-torsors, and automorphisms of the regular torsor"""
    torsors = torsors_enumerate(B, budget)
    representatives: List[MSet] = []
    for X in torsors:
        if not any(_equivariant_bijections(R, X) for R in representatives):
            representatives.append(X)

    regular = regular_action(B)
    autos = _equivariant_bijections(regular, regular)
    index = {u.f0: i for i, u in enumerate(autos)}
    table = [[index[tuple(u.f0[v] for v in w.f0)] for w in autos] for u in autos]
    identity = index[tuple(regular.elements)]
    group = as_abelian(classify(table, identity, f"Aut({B.label()}-torsor)", check=True))
    logger.info(f"{B.label()}: {len(torsors)} torsor tables in {len(representatives)} class(es)")
    return TorsorInvariants(len(representatives), group, len(torsors),
                            trivialized_torsor_count(torsors), representatives)
