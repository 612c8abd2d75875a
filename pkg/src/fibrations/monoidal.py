"""
Monoidal structure on the fibre over an internal monoid of the base.

For a monoid (A, m, e) in the base, X (x) Y is the chosen lift of m at
X x Y and the unit is the lift of e at the terminal object. Associator,
unitors, braiding and inverse comparisons are all obtained by factoring
through cocartesian lifts, and the coherence checks compare arrows of the
total category directly.
"""

import itertools
import logging
from typing import Dict, List, Optional, Tuple

from src.errors import InternalInconsistencyError, InvalidArgumentError

from .fibration import (
    FibrationOracle,
    InternalMonoid,
    Lift,
    Verdict,
    factor_through,
    groupoid_check,
    is_vertical,
    is_vertical_iso,
    product_of_arrows,
)

logger = logging.getLogger(__name__)


def check_internal_monoid(oracle: FibrationOracle, monoid: InternalMonoid) -> InternalMonoid:
    """Raise InvalidArgumentError unless (m, e, inv) satisfy the monoid laws in the base"""
    A = monoid.obj
    AA = oracle.base_product(A, A)
    if oracle.base_source(monoid.m) != AA.obj or oracle.base_target(monoid.m) != A:
        raise InvalidArgumentError("multiplication must be an arrow A x A -> A")
    I = oracle.base_terminal()
    if oracle.base_source(monoid.e) != I or oracle.base_target(monoid.e) != A:
        raise InvalidArgumentError("unit must be an arrow from the terminal object to A")
    identity = oracle.base_identity(A)
    compose, pair = oracle.base_compose, oracle.base_pair

    left = oracle.base_product(AA.obj, A)
    m_times_1 = pair(compose(monoid.m, left.pi1), left.pi2)
    right = oracle.base_product(A, AA.obj)
    one_times_m = pair(right.pi1, compose(monoid.m, right.pi2))
    reassociate = pair(compose(AA.pi1, left.pi1), pair(compose(AA.pi2, left.pi1), left.pi2))
    if compose(monoid.m, m_times_1) != compose(monoid.m, compose(one_times_m, reassociate)):
        raise InvalidArgumentError("multiplication is not associative")

    tau = oracle.base_terminal_map(A)
    IA, AI = oracle.base_product(I, A), oracle.base_product(A, I)
    e_times_1 = pair(compose(monoid.e, IA.pi1), IA.pi2)
    one_times_e = pair(AI.pi1, compose(monoid.e, AI.pi2))
    if compose(monoid.m, compose(e_times_1, pair(tau, identity))) != identity:
        raise InvalidArgumentError("unit is not a left unit")
    if compose(monoid.m, compose(one_times_e, pair(identity, tau))) != identity:
        raise InvalidArgumentError("unit is not a right unit")

    if monoid.inv is not None:
        constant = compose(monoid.e, tau)
        if (compose(monoid.m, pair(identity, monoid.inv)) != constant
                or compose(monoid.m, pair(monoid.inv, identity)) != constant):
            raise InvalidArgumentError("inverse map does not invert")
    swap = pair(AA.pi2, AA.pi1)
    if monoid.commutative and compose(monoid.m, swap) != monoid.m:
        raise InvalidArgumentError("multiplication marked commutative is not")
    return monoid


class MonoidalFibre:
    """Tensor, unit and coherence arrows on the fibre over one internal monoid"""

    def __init__(self, oracle: FibrationOracle, monoid: InternalMonoid, check: bool = True):
        self.oracle = oracle
        self.monoid = monoid
        if check:
            check_internal_monoid(oracle, monoid)
        self.A = monoid.obj
        self.id_A = oracle.base_identity(self.A)
        self._memo: Dict[Tuple, object] = {}

    def _memoized(self, key, compute):
        if key not in self._memo:
            self._memo[key] = compute()
        return self._memo[key]

    def _require_fibre(self, *objects):
        for X in objects:
            if self.oracle.base_of(X) != self.A:
                raise InvalidArgumentError("object does not lie over the monoid")

    # ---------------------------------------------------------- objects

    def tensor_lift(self, X, Y) -> Lift:
        self._require_fibre(X, Y)
        return self.oracle.lift(self.monoid.m, self.oracle.total_product(X, Y).obj)

    def tensor(self, X, Y):
        return self.tensor_lift(X, Y).obj

    def unit_lift(self) -> Lift:
        terminal = self.oracle.total_terminal()
        if terminal is None:
            raise InvalidArgumentError("the total category has no chosen terminal object")
        return self.oracle.lift(self.monoid.e, terminal)

    def unit_object(self):
        return self.unit_lift().obj

    def inverse_lift(self, X) -> Lift:
        if self.monoid.inv is None:
            raise InvalidArgumentError("the monoid has no inverse map")
        self._require_fibre(X)
        return self.oracle.lift(self.monoid.inv, X)

    def inverse_object(self, X):
        return self.inverse_lift(X).obj

    # ---------------------------------------------------------- arrows

    def tensor_arrows(self, u, v):
        """u (x) v for vertical arrows, factored through the source tensor lift"""
        if not (is_vertical(self.oracle, u) and is_vertical(self.oracle, v)):
            raise InvalidArgumentError("tensor of arrows is defined on vertical arrows")
        oracle = self.oracle
        key = ("tensor", u, v)

        def compute():
            source = self.tensor_lift(oracle.source(u), oracle.source(v))
            target = self.tensor_lift(oracle.target(u), oracle.target(v))
            g = oracle.compose(target.arrow, product_of_arrows(oracle, u, v))
            return factor_through(oracle, source.arrow, g, self.id_A)

        return self._memoized(key, compute)

    def _total_associator(self, X, Y, Z):
        oracle = self.oracle
        P = oracle.total_product(X, Y)
        PP = oracle.total_product(P.obj, Z)
        inner = oracle.total_pair(oracle.compose(P.pi2, PP.pi1), PP.pi2)
        return oracle.total_pair(oracle.compose(P.pi1, PP.pi1), inner)

    def associator(self, X, Y, Z):
        """(X (x) Y) (x) Z -> X (x) (Y (x) Z)"""
        oracle = self.oracle

        def compute():
            lxy = self.tensor_lift(X, Y)
            l_xy_z = self.tensor_lift(lxy.obj, Z)
            lyz = self.tensor_lift(Y, Z)
            l_x_yz = self.tensor_lift(X, lyz.obj)
            left_path = oracle.compose(l_xy_z.arrow, product_of_arrows(oracle, lxy.arrow, oracle.identity(Z)))
            right_path = oracle.compose(l_x_yz.arrow, product_of_arrows(oracle, oracle.identity(X), lyz.arrow))
            return factor_through(oracle, left_path,
                                  oracle.compose(right_path, self._total_associator(X, Y, Z)), self.id_A)

        return self._memoized(("assoc", X, Y, Z), compute)

    def left_unitor(self, X):
        """E (x) X -> X"""
        oracle = self.oracle

        def compute():
            unit = self.unit_lift()
            into = oracle.total_pair(oracle.total_terminal_map(X), oracle.identity(X))
            step = product_of_arrows(oracle, unit.arrow, oracle.identity(X))
            lifted = self.tensor_lift(unit.obj, X)
            d = oracle.compose(lifted.arrow, oracle.compose(step, into))
            return factor_through(oracle, d, oracle.identity(X), self.id_A)

        return self._memoized(("lambda", X), compute)

    def right_unitor(self, X):
        """X (x) E -> X"""
        oracle = self.oracle

        def compute():
            unit = self.unit_lift()
            into = oracle.total_pair(oracle.identity(X), oracle.total_terminal_map(X))
            step = product_of_arrows(oracle, oracle.identity(X), unit.arrow)
            lifted = self.tensor_lift(X, unit.obj)
            d = oracle.compose(lifted.arrow, oracle.compose(step, into))
            return factor_through(oracle, d, oracle.identity(X), self.id_A)

        return self._memoized(("rho", X), compute)

    def braiding(self, X, Y):
        """X (x) Y -> Y (x) X; needs a commutative multiplication"""
        if not self.monoid.commutative:
            raise InvalidArgumentError("braiding needs a commutative monoid")
        oracle = self.oracle

        def compute():
            lxy, lyx = self.tensor_lift(X, Y), self.tensor_lift(Y, X)
            P = oracle.total_product(X, Y)
            swap = oracle.total_pair(P.pi2, P.pi1)
            return factor_through(oracle, lxy.arrow, oracle.compose(lyx.arrow, swap), self.id_A)

        return self._memoized(("tau", X, Y), compute)

    def gamma(self, X):
        """E -> X (x) X*, the candidate inverse witness"""
        oracle = self.oracle

        def compute():
            inverse = self.inverse_lift(X)
            unit = self.unit_lift()
            c = oracle.compose(unit.arrow, oracle.total_terminal_map(X))
            lifted = self.tensor_lift(X, inverse.obj)
            g = oracle.compose(lifted.arrow, oracle.total_pair(oracle.identity(X), inverse.arrow))
            return factor_through(oracle, c, g, self.id_A)

        return self._memoized(("gamma", X), compute)

    # ---------------------------------------------------------- coherence

    def _identity(self, X):
        return self.oracle.identity(X)

    def pentagon(self, W, X, Y, Z) -> Verdict:
        oracle, t = self.oracle, self.tensor
        lhs = oracle.compose(self.associator(W, X, t(Y, Z)), self.associator(t(W, X), Y, Z))
        rhs = oracle.compose(
            self.tensor_arrows(self._identity(W), self.associator(X, Y, Z)),
            oracle.compose(self.associator(W, t(X, Y), Z),
                           self.tensor_arrows(self.associator(W, X, Y), self._identity(Z))),
        )
        if lhs != rhs:
            return Verdict.fail("pentagon does not commute", W, X, Y, Z, label="pentagon")
        return Verdict.ok("pentagon", checked=1)

    def triangle(self, X, Y) -> Verdict:
        oracle = self.oracle
        E = self.unit_object()
        lhs = oracle.compose(self.tensor_arrows(self._identity(X), self.left_unitor(Y)), self.associator(X, E, Y))
        rhs = self.tensor_arrows(self.right_unitor(X), self._identity(Y))
        if lhs != rhs:
            return Verdict.fail("triangle does not commute", X, Y, label="triangle")
        return Verdict.ok("triangle", checked=1)

    def symmetry(self, X, Y) -> Verdict:
        composite = self.oracle.compose(self.braiding(Y, X), self.braiding(X, Y))
        if composite != self._identity(self.tensor(X, Y)):
            return Verdict.fail("braiding twice is not the identity", X, Y, label="symmetry")
        return Verdict.ok("symmetry", checked=1)

    def hexagon(self, X, Y, Z) -> Verdict:
        oracle, t = self.oracle, self.tensor
        lhs = oracle.compose(self.associator(Y, Z, X),
                             oracle.compose(self.braiding(X, t(Y, Z)), self.associator(X, Y, Z)))
        rhs = oracle.compose(
            self.tensor_arrows(self._identity(Y), self.braiding(X, Z)),
            oracle.compose(self.associator(Y, X, Z),
                           self.tensor_arrows(self.braiding(X, Y), self._identity(Z))),
        )
        if lhs != rhs:
            return Verdict.fail("hexagon does not commute", X, Y, Z, label="hexagon")
        return Verdict.ok("hexagon", checked=1)

    def inverse_check(self, X) -> Verdict:
        try:
            witness = self.gamma(X)
        except InternalInconsistencyError as e:
            return Verdict.fail(str(e), X, label="inverse")
        if not is_vertical_iso(self.oracle, witness):
            return Verdict.fail("E -> X (x) X* is not invertible", X, label="inverse")
        return Verdict.ok("inverse", checked=1)


def tensor_on_fibre(oracle: FibrationOracle, monoid: InternalMonoid, X, Y):
    return MonoidalFibre(oracle, monoid).tensor(X, Y)


def unit_object(oracle: FibrationOracle, monoid: InternalMonoid):
    return MonoidalFibre(oracle, monoid).unit_object()


def braiding(oracle: FibrationOracle, monoid: InternalMonoid, X, Y):
    return MonoidalFibre(oracle, monoid).braiding(X, Y)


def run_stage(label: str, checks, sampled: bool = False) -> Verdict:
    """Run checks in order and stop at the first failing verdict; sampling propagates upwards"""
    checked = 0
    for check in checks:
        try:
            verdict = check()
        except InternalInconsistencyError as e:
            return Verdict.fail(str(e), label=label, checked=checked, sampled=sampled)
        checked += verdict.checked
        sampled = sampled or verdict.sampled
        if not verdict.passed:
            verdict.label = f"{label}:{verdict.label}"
            verdict.checked = checked
            verdict.sampled = sampled
            return verdict
    return Verdict.ok(label, checked=checked, sampled=sampled)


def two_group_suite(oracle: FibrationOracle, monoid: InternalMonoid, limit: Optional[int] = None) -> Verdict:
    """Groupoid, coherence, inverse and braiding checks on the fibre over a monoid.

    Each coherence quantifier ranges over the whole fibre, or over its first
    `limit` objects when a limit is given; the verdict is marked sampled when
    that truncates the fibre.
    """
    fibre = MonoidalFibre(oracle, monoid)
    objects = oracle.fibre_objects(monoid.obj)
    sample = objects if limit is None else objects[:limit]
    sampled = len(sample) < len(objects)
    if sampled:
        logger.warning(f"2-group checks truncated to {len(sample)} of {len(objects)} fibre objects")
    stages: List[Verdict] = []

    groupoid = groupoid_check(oracle, monoid.obj, limit=limit)
    stages.append(groupoid)
    if not groupoid.passed:
        groupoid.label = "two-group:groupoid"
        return groupoid

    coherence = run_stage(
        "coherence",
        itertools.chain(
            (lambda q=q: fibre.pentagon(*q) for q in itertools.product(sample, repeat=4)),
            (lambda q=q: fibre.triangle(*q) for q in itertools.product(sample, repeat=2)),
        ),
        sampled,
    )
    stages.append(coherence)
    if not coherence.passed:
        return coherence

    if monoid.inv is None:
        return Verdict.fail("the monoid has no inverse map", monoid.obj, label="inverse", sampled=sampled)
    inverses = run_stage("inverse", [lambda X=X: fibre.inverse_check(X) for X in sample], sampled)
    stages.append(inverses)
    if not inverses.passed:
        return inverses

    if monoid.commutative:
        braided = run_stage(
            "braiding",
            itertools.chain(
                (lambda q=q: fibre.symmetry(*q) for q in itertools.product(sample, repeat=2)),
                (lambda q=q: fibre.hexagon(*q) for q in itertools.product(sample, repeat=3)),
            ),
            sampled,
        )
        stages.append(braided)
        if not braided.passed:
            return braided

    sampled = sampled or any(s.sampled for s in stages)
    logger.info(f"2-group checks passed on {len(sample)} of {len(objects)} fibre objects")
    return Verdict.ok("two-group", checked=sum(s.checked for s in stages), sampled=sampled,
                      stages=[s.label for s in stages], objects=len(objects))
