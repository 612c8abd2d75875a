"""
Generic opfibration machinery over a finite oracle.

An oracle presents a base category with chosen finite products and a
terminal object, a total category over it, a projection functor, chosen
cocartesian lifts (a cleavage) and chosen products in the total category.
Every check in this module is phrased only in terms of that interface, so
the same code runs for extensions and for monoid actions.
"""

import logging
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, List, NamedTuple, Optional, Sequence, Tuple

from src.algebra.algebra_config import AlgebraConfig
from src.errors import InternalInconsistencyError, InvalidArgumentError, ResourceLimitError

logger = logging.getLogger(__name__)


class Lift(NamedTuple):
    arrow: Any
    obj: Any


class BaseProduct(NamedTuple):
    obj: Any
    left: Any
    right: Any
    pi1: Any
    pi2: Any


class TotalProduct(NamedTuple):
    obj: Any
    pi1: Any
    pi2: Any


class FibreObjectPair(NamedTuple):
    first: Any
    second: Any


class InternalMonoid(NamedTuple):
    """A monoid object (A, m, e) in the base, optionally with an inverse"""

    obj: Any
    m: Any
    e: Any
    inv: Optional[Any] = None
    commutative: bool = False


STAR = "*"  # the single object of the fibre over the terminal object of the two-point base


def describe(item: Any) -> Any:
    if hasattr(item, "to_dict"):
        return item.to_dict()
    if isinstance(item, (list, tuple)):
        return [describe(i) for i in item]
    if isinstance(item, (str, int, float, bool)) or item is None:
        return item
    return repr(item)


@dataclass
class Witness:
    reason: str
    items: Tuple[Any, ...] = ()

    def to_dict(self) -> Dict:
        return {"reason": self.reason, "items": [describe(i) for i in self.items]}


@dataclass
class Verdict:
    passed: bool
    witness: Optional[Witness] = None
    label: str = ""
    checked: int = 0
    sampled: bool = False
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.passed == (self.witness is not None):
            raise InternalInconsistencyError("a verdict carries a witness exactly when it fails")

    def __bool__(self) -> bool:
        return self.passed

    @classmethod
    def ok(cls, label: str = "", checked: int = 0, sampled: bool = False, **details) -> "Verdict":
        return cls(True, None, label, checked, sampled, details)

    @classmethod
    def fail(cls, reason: str, *items, label: str = "", checked: int = 0, sampled: bool = False,
             **details) -> "Verdict":
        return cls(False, Witness(reason, tuple(items)), label, checked, sampled, details)

    def to_dict(self) -> Dict:
        return {
            "label": self.label,
            "passed": self.passed,
            "checked": self.checked,
            "sampled": self.sampled,
            "witness": self.witness.to_dict() if self.witness else None,
            "details": {k: describe(v) for k, v in self.details.items()},
        }


class FibrationOracle(ABC):
    """Finite presentation of a cloven opfibration with chosen products"""

    name = "fibration"

    def __init__(self, budget: Optional[int] = None, probe_budget: Optional[int] = None,
                 base_grid: Optional[Sequence] = None):
        self.budget = AlgebraConfig.budget(budget)
        self.probe_budget = probe_budget or AlgebraConfig.PROBE_BUDGET
        self.base_grid = None if base_grid is None else list(base_grid)
        self._cache: Dict[Hashable, Any] = {}
        self._lock = threading.Lock()

    def cached(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = compute()
        with self._lock:
            return self._cache.setdefault(key, value)

    # ---------------------------------------------------------- base category

    @abstractmethod
    def base_source(self, f): ...

    @abstractmethod
    def base_target(self, f): ...

    @abstractmethod
    def base_compose(self, g, f):
        """g after f"""

    @abstractmethod
    def base_identity(self, A): ...

    @abstractmethod
    def _base_homs(self, A, B, budget: int) -> List: ...

    @abstractmethod
    def base_product(self, A, B) -> BaseProduct: ...

    @abstractmethod
    def base_pair(self, f, g):
        """<f, g> into base_product(target f, target g)"""

    @abstractmethod
    def base_terminal(self): ...

    @abstractmethod
    def base_terminal_map(self, A): ...

    @abstractmethod
    def base_product_factors(self, A) -> Optional[BaseProduct]:
        """The chosen product structure A is designated with, if any"""

    @abstractmethod
    def internal_monoid(self, A) -> InternalMonoid: ...

    def base_homs(self, A, B, budget: Optional[int] = None) -> List:
        budget = budget or self.budget
        return self.cached(("base_homs", A, B, budget), lambda: self._base_homs(A, B, budget))

    # ---------------------------------------------------------- total category

    @abstractmethod
    def base_of(self, X): ...

    @abstractmethod
    def source(self, a): ...

    @abstractmethod
    def target(self, a): ...

    @abstractmethod
    def project(self, a): ...

    @abstractmethod
    def compose(self, g, f):
        """g after f"""

    @abstractmethod
    def identity(self, X): ...

    @abstractmethod
    def _lift(self, f, X) -> Lift: ...

    @abstractmethod
    def total_product(self, X, Y) -> TotalProduct: ...

    @abstractmethod
    def total_pair(self, u, v):
        """<u, v> into total_product(target u, target v)"""

    @abstractmethod
    def total_terminal(self): ...

    @abstractmethod
    def total_terminal_map(self, X): ...

    @abstractmethod
    def _homs(self, X, Y, over, limit: Optional[int]) -> List: ...

    @abstractmethod
    def fibre_objects(self, A, budget: Optional[int] = None) -> List: ...

    def homs(self, X, Y, over=None, limit: Optional[int] = None) -> List:
        """Total arrows X -> Y, all of them or only those over a base arrow"""
        if over is not None and (self.base_source(over) != self.base_of(X)
                                 or self.base_target(over) != self.base_of(Y)):
            raise InvalidArgumentError("base arrow does not match the objects")
        return self.cached(("homs", X, Y, over, limit), lambda: self._homs(X, Y, over, limit))

    def fills(self, arrow, g, over, stop_after: int = 2) -> List:
        """Arrows k over `over` with k after arrow equal to g, at most stop_after of them"""
        found = []
        for k in self.homs(self.target(arrow), self.target(g), over=over):
            if self.compose(k, arrow) == g:
                found.append(k)
                if len(found) >= stop_after:
                    break
        return found

    def lift(self, f, X) -> Lift:
        """Chosen cocartesian lift of f at X; identities lift to identities"""
        if self.base_source(f) != self.base_of(X):
            raise InvalidArgumentError("base arrow does not start at the base of the object")
        if f == self.base_identity(self.base_of(X)):
            return Lift(self.identity(X), X)
        return self.cached(("lift", f, X), lambda: self._lift(f, X))

    def required_probes(self, arrow) -> List:
        X, Y = self.source(arrow), self.target(arrow)
        return [X, Y, self.lift(self.project(arrow), X).obj]

    def universal_scope(self, arrow) -> Tuple[List, bool]:
        """Fibre objects to test the universal property against, and whether they cover the scope.

        With base_grid declared, every fibre object over every declared base
        is returned and the scope counts as covered. Otherwise only the fibre
        over the target's base is tested, which is a sample.
        """
        if self.base_grid is None:
            objects = self.fibre_objects(self.base_of(self.target(arrow)), budget=self.probe_budget)
            return list(objects), False
        return [Z for A in self.base_grid for Z in self.fibre_objects(A)], True


# -------------------------------------------------------------- basic predicates


def is_vertical(oracle: FibrationOracle, a) -> bool:
    return oracle.project(a) == oracle.base_identity(oracle.base_of(oracle.source(a)))


def vertical_inverse(oracle: FibrationOracle, a):
    """Two-sided inverse of a vertical arrow, or None"""
    if not is_vertical(oracle, a):
        return None
    X, Y = oracle.source(a), oracle.target(a)
    identity_X, identity_Y = oracle.identity(X), oracle.identity(Y)
    for b in oracle.fills(a, identity_X, oracle.base_identity(oracle.base_of(X)), stop_after=1):
        if oracle.compose(a, b) == identity_Y:
            return b
    return None


def is_vertical_iso(oracle: FibrationOracle, a) -> bool:
    return vertical_inverse(oracle, a) is not None


def factor_through(oracle: FibrationOracle, arrow, g, over):
    """The unique k over `over` with k after arrow equal to g"""
    if oracle.source(arrow) != oracle.source(g):
        raise InvalidArgumentError("arrows to factor must share a source")
    found = oracle.fills(arrow, g, over)
    if len(found) != 1:
        raise InternalInconsistencyError(
            f"expected a unique factorization through a cocartesian arrow, found {len(found)}"
        )
    return found[0]


def product_of_arrows(oracle: FibrationOracle, u, v):
    """u x v between chosen total products"""
    P = oracle.total_product(oracle.source(u), oracle.source(v))
    return oracle.total_pair(oracle.compose(u, P.pi1), oracle.compose(v, P.pi2))


# -------------------------------------------------------------- cocartesian arrows


def _comparison_fill(oracle, arrow, target_arrow) -> Optional[Witness]:
    over = oracle.base_identity(oracle.base_of(oracle.target(arrow)))
    found = oracle.fills(arrow, target_arrow, over)
    if len(found) != 1:
        return Witness(f"{len(found)} vertical factorizations of a comparison arrow", (target_arrow,))
    return None


def _universal_probe(oracle, arrow, Z) -> Tuple[Optional[Witness], int]:
    f = oracle.project(arrow)
    X, Y = oracle.source(arrow), oracle.target(arrow)
    by_composite: Dict[Any, List] = {}
    for h in oracle.base_homs(oracle.base_of(Y), oracle.base_of(Z), budget=oracle.probe_budget):
        by_composite.setdefault(oracle.base_compose(h, f), []).append(h)
    count = 0
    for g in oracle.homs(X, Z, limit=oracle.probe_budget):
        for h in by_composite.get(oracle.project(g), ()):
            count += 1
            found = oracle.fills(arrow, g, h)
            if len(found) != 1:
                return Witness(f"{len(found)} factorizations of a test arrow through the candidate", (g, h)), count
    return None, count


def is_cocartesian(oracle: FibrationOracle, arrow) -> Verdict:
    """Decide whether a total arrow is cocartesian.

    The comparison stage is exact provided the oracle's lifts are cocartesian:
    the arrow factors the chosen lift and the chosen lift factors it, both
    uniquely. The probing stage tests the universal property directly against
    the source, target, lift object and the oracle's universal scope. The
    verdict is marked sampled unless that scope covers every object over the
    declared base grid and no probe was skipped for exceeding the probe budget.
    """
    X = oracle.source(arrow)
    lifted = oracle.lift(oracle.project(arrow), X)
    for target_arrow in (lifted.arrow, arrow):
        witness = _comparison_fill(oracle, arrow, target_arrow)
        if witness is not None:
            return Verdict(False, witness, "cocartesian", 0, False)

    probes = []
    for Z in oracle.required_probes(arrow):
        if Z not in probes:
            probes.append(Z)
    try:
        scope, covered = oracle.universal_scope(arrow)
    except ResourceLimitError as e:
        logger.warning(f"Probing only the required objects: {e}")
        scope, covered = [], False
    sampled = not covered
    for Z in scope:
        if Z not in probes:
            probes.append(Z)

    checked = 2
    for Z in probes:
        try:
            witness, count = _universal_probe(oracle, arrow, Z)
        except ResourceLimitError as e:
            logger.debug(f"Skipping probe over {oracle.base_of(Z)!r}: {e}")
            sampled = True
            continue
        checked += count
        if witness is not None:
            return Verdict(False, witness, "cocartesian", checked, sampled)
    return Verdict.ok("cocartesian", checked, sampled, probes=len(probes))


def cleavage_comparison(oracle: FibrationOracle, f, g, X):
    """Vertical comparison from (g f)_! X to g_! f_! X"""
    lf = oracle.lift(f, X)
    lg = oracle.lift(g, lf.obj)
    lgf = oracle.lift(oracle.base_compose(g, f), X)
    return factor_through(oracle, lgf.arrow, oracle.compose(lg.arrow, lf.arrow),
                          oracle.base_identity(oracle.base_of(lg.obj)))


def check_terminal_cocartesian(oracle: FibrationOracle, X) -> Verdict:
    verdict = is_cocartesian(oracle, oracle.total_terminal_map(X))
    verdict.label = "terminal-cocartesian"
    return verdict


def diagonal(oracle: FibrationOracle, X):
    identity = oracle.identity(X)
    return oracle.total_pair(identity, identity)


def check_diagonal_cocartesian(oracle: FibrationOracle, X) -> Verdict:
    verdict = is_cocartesian(oracle, diagonal(oracle, X))
    verdict.label = "diagonal-cocartesian"
    return verdict


def check_product_of_lifts(oracle: FibrationOracle, f1, X1, f2, X2) -> Verdict:
    arrow = product_of_arrows(oracle, oracle.lift(f1, X1).arrow, oracle.lift(f2, X2).arrow)
    verdict = is_cocartesian(oracle, arrow)
    verdict.label = "product-of-lifts"
    return verdict


# -------------------------------------------------------------- oplax comparison


def _designated_factors(oracle: FibrationOracle, Z) -> BaseProduct:
    product = oracle.base_product_factors(oracle.base_of(Z))
    if product is None:
        raise InvalidArgumentError("object does not lie over a designated product")
    return product


def oplax_L(oracle: FibrationOracle, Z) -> FibreObjectPair:
    """Z over A x B goes to (pi1_! Z, pi2_! Z)"""
    product = _designated_factors(oracle, Z)
    return FibreObjectPair(oracle.lift(product.pi1, Z).obj, oracle.lift(product.pi2, Z).obj)


def oplax_L_on_arrow(oracle: FibrationOracle, u) -> FibreObjectPair:
    """Action of L on a vertical arrow u: Z -> Z'"""
    if not is_vertical(oracle, u):
        raise InvalidArgumentError("L acts on vertical arrows only")
    Z, Z2 = oracle.source(u), oracle.target(u)
    product = _designated_factors(oracle, Z)
    parts = []
    for pi, A in ((product.pi1, product.left), (product.pi2, product.right)):
        here, there = oracle.lift(pi, Z), oracle.lift(pi, Z2)
        parts.append(factor_through(oracle, here.arrow, oracle.compose(there.arrow, u),
                                    oracle.base_identity(A)))
    return FibreObjectPair(*parts)


def oplax_L1(oracle: FibrationOracle, X) -> str:
    if oracle.base_of(X) != oracle.base_terminal():
        raise InvalidArgumentError("object does not lie over the terminal object")
    return STAR


def unit_eta1(oracle: FibrationOracle, X):
    """eta at X for L1 -| R1 is the terminal map tau_X"""
    oplax_L1(oracle, X)
    return oracle.total_terminal_map(X)


def oplax_L_pseudonaturality(oracle: FibrationOracle, a, b, Z) -> FibreObjectPair:
    """Comparisons a_! pi1_! Z -> pi1_! (a x b)_! Z and likewise for pi2"""
    product = _designated_factors(oracle, Z)
    if oracle.base_source(a) != product.left or oracle.base_source(b) != product.right:
        raise InvalidArgumentError("base arrows do not start at the factors")
    ab = oracle.base_pair(oracle.base_compose(a, product.pi1), oracle.base_compose(b, product.pi2))
    moved = oracle.lift(ab, Z)
    new_product = oracle.base_product(oracle.base_target(a), oracle.base_target(b))
    parts = []
    for pi, new_pi, c in ((product.pi1, new_product.pi1, a), (product.pi2, new_product.pi2, b)):
        first = oracle.lift(pi, Z)
        path1 = oracle.compose(oracle.lift(c, first.obj).arrow, first.arrow)
        path2 = oracle.compose(oracle.lift(new_pi, moved.obj).arrow, moved.arrow)
        parts.append(factor_through(oracle, path1, path2, oracle.base_identity(oracle.base_target(c))))
    return FibreObjectPair(*parts)


def oplax_comparison_lifts(oracle: FibrationOracle, Z) -> Verdict:
    """L(Z) computed by lifts agrees with L(Z) read off the unit"""
    pair = oplax_L(oracle, Z)
    eta = unit_eta(oracle, Z)
    witness_eta = unit_eta_by_search(oracle, Z)
    if eta != witness_eta:
        return Verdict.fail("unit from pairing differs from the unit found by search", eta, witness_eta,
                            label="oplax-L")
    return Verdict.ok("oplax-L", checked=1, first=pair.first, second=pair.second)


# -------------------------------------------------------------- adjunctions


def right_adjoint_R(oracle: FibrationOracle, pair: Sequence) -> Any:
    X, Y = pair
    return oracle.total_product(X, Y).obj


def unit_eta(oracle: FibrationOracle, Z):
    """eta_Z: Z -> R(L(Z)) as the pairing of the two projection lifts"""
    product = _designated_factors(oracle, Z)
    return oracle.total_pair(oracle.lift(product.pi1, Z).arrow, oracle.lift(product.pi2, Z).arrow)


def unit_eta_by_search(oracle: FibrationOracle, Z):
    """eta_Z recovered from the universal property of the total product alone"""
    product = _designated_factors(oracle, Z)
    l1, l2 = oracle.lift(product.pi1, Z).arrow, oracle.lift(product.pi2, Z).arrow
    P = oracle.total_product(oracle.target(l1), oracle.target(l2))
    found = [
        u for u in oracle.homs(Z, P.obj, over=oracle.base_identity(oracle.base_of(Z)))
        if oracle.compose(P.pi1, u) == l1 and oracle.compose(P.pi2, u) == l2
    ]
    if len(found) != 1:
        raise InternalInconsistencyError(f"expected a unique unit arrow, found {len(found)}")
    return found[0]


def counit_epsilon(oracle: FibrationOracle, pair: Sequence) -> FibreObjectPair:
    """epsilon_i: pi_i! (X x Y) -> X_i, factoring the total projections"""
    X, Y = pair
    P = oracle.total_product(X, Y)
    product = _designated_factors(oracle, P.obj)
    parts = []
    for pi, total_pi, A in ((product.pi1, P.pi1, product.left), (product.pi2, P.pi2, product.right)):
        lifted = oracle.lift(pi, P.obj)
        parts.append(factor_through(oracle, lifted.arrow, total_pi, oracle.base_identity(A)))
    return FibreObjectPair(*parts)


def check_adjunction(oracle: FibrationOracle, Z, pair: Sequence) -> Verdict:
    """Triangle identities for L -| R at Z and at a pair, and for L1 -| R1"""
    eta = unit_eta(oracle, Z)
    L_eta = oplax_L_on_arrow(oracle, eta)
    eps = counit_epsilon(oracle, oplax_L(oracle, Z))
    for i in range(2):
        composite = oracle.compose(eps[i], L_eta[i])
        if composite != oracle.identity(oracle.target(composite)):
            return Verdict.fail("counit after L(unit) is not the identity", composite, label="adjunction")

    R_pair = right_adjoint_R(oracle, pair)
    eta_R = unit_eta(oracle, R_pair)
    eps_pair = counit_epsilon(oracle, pair)
    R_eps = product_of_arrows(oracle, eps_pair.first, eps_pair.second)
    composite = oracle.compose(R_eps, eta_R)
    if composite != oracle.identity(R_pair):
        return Verdict.fail("R(counit) after unit is not the identity", composite, label="adjunction")

    terminal = oracle.total_terminal()
    if unit_eta1(oracle, terminal) != oracle.identity(terminal):
        return Verdict.fail("unit of L1 -| R1 at the terminal object is not the identity", terminal,
                            label="adjunction")
    return Verdict.ok("adjunction", checked=3)


def check_unit_diagonal_equivalence(oracle: FibrationOracle, X) -> Verdict:
    """Delta_X is cocartesian exactly when eta at Delta_! X is invertible"""
    A = oracle.base_of(X)
    delta = oracle.base_pair(oracle.base_identity(A), oracle.base_identity(A))
    moved = oracle.lift(delta, X).obj
    eta_iso = is_vertical_iso(oracle, unit_eta(oracle, moved))
    diagonal_verdict = check_diagonal_cocartesian(oracle, X)
    if eta_iso != diagonal_verdict.passed:
        return Verdict.fail("unit invertibility disagrees with the diagonal check", X,
                            label="unit-diagonal", eta_iso=eta_iso, diagonal=diagonal_verdict.passed)
    return Verdict.ok("unit-diagonal", checked=diagonal_verdict.checked, sampled=diagonal_verdict.sampled,
                      eta_iso=eta_iso, diagonal=diagonal_verdict.passed)


# -------------------------------------------------------------- mates


def mate_component(oracle: FibrationOracle, arrows: Sequence, pair: Sequence):
    """Comparison (a x b)_! (X x Y) -> a_! X x b_! Y"""
    a, b = arrows
    X, Y = pair
    la, lb = oracle.lift(a, X), oracle.lift(b, Y)
    product_arrow = product_of_arrows(oracle, la.arrow, lb.arrow)
    lab = oracle.lift(oracle.project(product_arrow), oracle.source(product_arrow))
    over = oracle.base_identity(oracle.base_of(oracle.target(product_arrow)))
    return factor_through(oracle, lab.arrow, product_arrow, over)


def check_beck_chevalley(oracle: FibrationOracle, arrows: Sequence, pair: Sequence) -> Verdict:
    try:
        mate = mate_component(oracle, arrows, pair)
    except InternalInconsistencyError as e:
        return Verdict.fail(str(e), *pair, label="beck-chevalley")
    if not is_vertical_iso(oracle, mate):
        return Verdict.fail("mate is not invertible", mate, label="beck-chevalley")
    return Verdict.ok("beck-chevalley", checked=1)


def groupoid_check(oracle: FibrationOracle, A, limit: Optional[int] = None) -> Verdict:
    """Every vertical arrow in the fibre over A is invertible"""
    objects = oracle.fibre_objects(A)
    sample = objects if limit is None else objects[:limit]
    over = oracle.base_identity(A)
    checked = 0
    for X in sample:
        for Y in sample:
            for u in oracle.homs(X, Y, over=over):
                checked += 1
                if not is_vertical_iso(oracle, u):
                    return Verdict.fail("non-invertible vertical arrow", u, label="groupoid",
                                        checked=checked, sampled=len(sample) < len(objects))
    return Verdict.ok("groupoid", checked=checked, sampled=len(sample) < len(objects))
