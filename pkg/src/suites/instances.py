"""
Instance grids for the verification suites.

Every suite is a list of SuiteCase objects built from a size bound. A case
owns its oracle, so cases can run on separate threads.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

from src.actions.action_oracle import ActionOracle
from src.actions.actions import check_contracted_iso, enumerate_actions
from src.actions.torsors import TorsorOracle, torsor_characterization_check
from src.algebra.algebra_config import AlgebraConfig
from src.algebra.finite_algebra import (
    CModule,
    FiniteAbelianGroup,
    FiniteGroup,
    FiniteMonoid,
    abelian_invariants,
    as_abelian,
    enumerate_module_actions,
    idempotent_monoid,
)
from src.cohomology.cocycles import h2_class_index, h2_group, h2_map, z1_derivations, z1_group
from src.errors import InvalidArgumentError, ResourceLimitError, UnknownSuiteError
from src.extensions.extension_oracle import ExtensionOracle
from src.extensions.extensions import (
    module_maps,
    pi1,
    pi1_derivations,
    pi0_with_representatives,
    product_over_C,
    pushforward,
    split_extension,
)
from src.fibrations.fibration import (
    FibrationOracle,
    Verdict,
    check_adjunction,
    check_beck_chevalley,
    check_product_of_lifts,
    check_unit_diagonal_equivalence,
    cleavage_comparison,
    groupoid_check,
    is_cocartesian,
    is_vertical_iso,
    oplax_L,
    oplax_L_on_arrow,
    oplax_L_pseudonaturality,
    oplax_comparison_lifts,
)
from src.fibrations.monoidal import check_internal_monoid, run_stage, two_group_suite

from .specs import parse_group_spec

logger = logging.getLogger(__name__)

GRID_SPECS = ("Z1", "Z2", "Z3", "Z4", "Z2xZ2")
NATURALITY_MAPS = 2


@dataclass
class SuiteCase:
    name: str
    run: Callable[[], Verdict]
    expect_pass: bool = True


# ---------------------------------------------------------------- grids


def grid_groups(max_size: int) -> List[FiniteAbelianGroup]:
    return [g for g in (as_abelian(parse_group_spec(s)) for s in GRID_SPECS) if g.size <= max_size]


def monoid_grid(max_size: int) -> List[FiniteMonoid]:
    """Grid groups plus the two-element idempotent monoid"""
    monoids: List[FiniteMonoid] = list(grid_groups(max_size))
    if max_size >= 2:
        monoids.append(idempotent_monoid())
    return monoids


def action_name(module: CModule, index: int) -> str:
    return "trivial" if module.is_trivial() else f"xi{index}"


def module_grid(max_size: int) -> List[CModule]:
    """Every (C, B, xi) with C and B from the grid"""
    groups = grid_groups(max_size)
    return [m for C in groups for B in groups for m in enumerate_module_actions(C, B)]


def module_tag(module: CModule) -> str:
    actions = enumerate_module_actions(module.C, module.B)
    return f"{module.C.label()},{module.B.label()},{action_name(module, actions.index(module))}"


def module_case_name(module: CModule) -> str:
    return f"OPEXT({module_tag(module)})"


def _module_pairs(max_size: int):
    """Pairs of modules over a common C whose product has order at most max_size"""
    modules = module_grid(max_size)
    for C in grid_groups(max_size):
        over_C = [m for m in modules if m.C == C]
        for first, second in itertools.product(over_C, repeat=2):
            if first.B.size * second.B.size <= max_size:
                yield first, second


def _monoid_pairs(max_size: int):
    monoids = monoid_grid(max_size)
    for first, second in itertools.product(monoids, repeat=2):
        if first.size * second.size <= max_size:
            yield first, second


# ---------------------------------------------------------------- sampling


def _sample(oracle: FibrationOracle, A, count: int, fallback: Sequence = ()) -> list:
    """First `count` fibre objects over A, or the fallback when the fibre is too large"""
    try:
        return list(oracle.fibre_objects(A, budget=oracle.probe_budget)[:count])
    except ResourceLimitError as e:
        logger.debug(f"Fibre over {A!r} not enumerated: {e}")
        return list(fallback)[:count]


def _ext_objects(oracle: ExtensionOracle, module: CModule, count: int) -> list:
    return _sample(oracle, module, count, [split_extension(module)])


def _ext_product_objects(oracle: ExtensionOracle, first: CModule, second: CModule, count: int) -> list:
    objects = [split_extension(oracle.base_product(first, second).obj)]
    for E1 in _ext_objects(oracle, first, 2):
        for E2 in _ext_objects(oracle, second, 2):
            Z = product_over_C(E1, E2)
            if Z not in objects:
                objects.append(Z)
    return objects[:count]


def _endomaps(oracle: FibrationOracle, A) -> list:
    """The identity and the first other endomorphism, if any"""
    identity = oracle.base_identity(A)
    others = [f for f in oracle.base_homs(A, A) if f != identity]
    return [identity] + others[:1]


def _vertical_iso_verdict(label: str, oracle: FibrationOracle, arrows) -> Verdict:
    for arrow in arrows:
        if not is_vertical_iso(oracle, arrow):
            return Verdict.fail("comparison is not a vertical isomorphism", arrow, label=label)
    return Verdict.ok(label, checked=len(arrows))


def _L_preserves_identities(oracle: FibrationOracle, Z) -> Verdict:
    pair = oplax_L_on_arrow(oracle, oracle.identity(Z))
    expected = oplax_L(oracle, Z)
    for arrow, X in zip(pair, expected):
        if arrow != oracle.identity(X):
            return Verdict.fail("L does not send the identity to an identity", arrow, label="L-identity")
    return Verdict.ok("L-identity", checked=2)


# ---------------------------------------------------------------- suites


def _oplax_checks(oracle: FibrationOracle, first, second, objects: list) -> Verdict:
    product = oracle.base_product(first, second)
    checks = []
    for Z in objects:
        checks.append(lambda Z=Z: oplax_comparison_lifts(oracle, Z))
        checks.append(lambda Z=Z: _L_preserves_identities(oracle, Z))
        for a, b in itertools.product(_endomaps(oracle, first), _endomaps(oracle, second)):
            checks.append(lambda a=a, b=b, Z=Z: _vertical_iso_verdict(
                "pseudonaturality", oracle, oplax_L_pseudonaturality(oracle, a, b, Z)))
        g = _endomaps(oracle, first)[-1]
        checks.append(lambda g=g, Z=Z: _vertical_iso_verdict(
            "cleavage", oracle, [cleavage_comparison(oracle, product.pi1, g, Z)]))
    return run_stage("oplax", checks)


def _adjoint_checks(oracle: FibrationOracle, objects: list, pairs: list, singles: list) -> Verdict:
    checks = [lambda Z=Z, p=p: check_adjunction(oracle, Z, p) for Z in objects for p in pairs]
    checks += [lambda X=X: check_unit_diagonal_equivalence(oracle, X) for X in singles]
    return run_stage("adjoints", checks)


def _mate_checks(oracle: FibrationOracle, first, second, pairs: list) -> Verdict:
    arrows = [
        (a, b)
        for a in _endomaps(oracle, first)[-1:] + [oracle.base_terminal_map(first)]
        for b in _endomaps(oracle, second)[-1:]
    ]
    checks = []
    for (a, b), (X, Y) in itertools.product(arrows, pairs):
        checks.append(lambda a=a, b=b, X=X, Y=Y: check_beck_chevalley(oracle, (a, b), (X, Y)))
        checks.append(lambda a=a, b=b, X=X, Y=Y: check_product_of_lifts(oracle, a, X, b, Y))
    return run_stage("mates", checks)


def _fibration_cases(max_size: int, kind: str) -> List[SuiteCase]:
    """Cases over pairs of base objects, in both fibrations"""
    limit = AlgebraConfig.object_limit()
    cases: List[SuiteCase] = []

    for first, second in _module_pairs(max_size):
        name = f"OPEXT({module_tag(first)} x {module_tag(second)})"

        def run(first=first, second=second) -> Verdict:
            oracle = ExtensionOracle(first.C)
            pairs = list(itertools.product(_ext_objects(oracle, first, 2), _ext_objects(oracle, second, 2)))
            if kind == "oplax":
                return _oplax_checks(oracle, first, second, _ext_product_objects(oracle, first, second, limit))
            if kind == "adjoints":
                return _adjoint_checks(oracle, _ext_product_objects(oracle, first, second, limit),
                                       pairs[:2], _ext_objects(oracle, first, limit))
            return _mate_checks(oracle, first, second, pairs[:2])

        cases.append(SuiteCase(name, run))

    for first, second in _monoid_pairs(max_size):
        name = f"ACT({first.label()} x {second.label()})"

        def run(first=first, second=second) -> Verdict:
            oracle = ActionOracle()
            product = oracle.base_product(first, second).obj
            objects = _sample(oracle, product, limit)
            pairs = list(itertools.product(_sample(oracle, first, limit), _sample(oracle, second, limit)))
            if kind == "oplax":
                return _oplax_checks(oracle, first, second, objects)
            if kind == "adjoints":
                return _adjoint_checks(oracle, objects, pairs[-2:], _sample(oracle, first, limit))
            return _mate_checks(oracle, first, second, pairs[-2:])

        cases.append(SuiteCase(name, run))
    return cases


def oplax_cases(max_size: int) -> List[SuiteCase]:
    return _fibration_cases(max_size, "oplax")


def adjoint_cases(max_size: int) -> List[SuiteCase]:
    return _fibration_cases(max_size, "adjoints")


def mate_cases(max_size: int) -> List[SuiteCase]:
    return _fibration_cases(max_size, "mates")


def _internal_monoid_verdict(oracle: FibrationOracle, A) -> Verdict:
    try:
        check_internal_monoid(oracle, oracle.internal_monoid(A))
    except InvalidArgumentError as e:
        return Verdict.fail(str(e), A, label="internal-group")
    return Verdict.ok("internal-group", checked=1)


def groupal_cases(max_size: int) -> List[SuiteCase]:
    """Groupoidal fibres over internal groups, and a non-groupoidal ACT fibre"""
    limit = AlgebraConfig.object_limit()
    cases: List[SuiteCase] = []
    for module in module_grid(max_size):
        def run(module=module) -> Verdict:
            oracle = ExtensionOracle(module.C)
            return run_stage("groupal", [
                lambda: _internal_monoid_verdict(oracle, module),
                lambda: groupoid_check(oracle, module, limit=limit),
            ])

        cases.append(SuiteCase(module_case_name(module), run))

    for B in grid_groups(max_size):
        def run(B=B) -> Verdict:
            oracle = TorsorOracle()
            return run_stage("groupal", [
                lambda: _internal_monoid_verdict(oracle, B),
                lambda: groupoid_check(oracle, B, limit=limit),
            ])

        cases.append(SuiteCase(f"TORS({B.label()})", run))

    for M in monoid_grid(max_size):
        if isinstance(M, FiniteGroup):
            continue
        cases.append(SuiteCase(f"ACT({M.label()})", lambda M=M: groupoid_check(ActionOracle(), M, limit=limit),
                               expect_pass=False))
    return cases


def two_group_cases(max_size: int) -> List[SuiteCase]:
    cases: List[SuiteCase] = []
    for module in module_grid(max_size):
        def run(module=module) -> Verdict:
            oracle = ExtensionOracle(module.C)
            return two_group_suite(oracle, oracle.internal_monoid(module), AlgebraConfig.object_limit())

        cases.append(SuiteCase(module_case_name(module), run))

    for B in grid_groups(max_size):
        def run(B=B) -> Verdict:
            oracle = TorsorOracle()
            return two_group_suite(oracle, oracle.internal_monoid(B), AlgebraConfig.object_limit())

        cases.append(SuiteCase(f"TORS({B.label()})", run))
    return cases


def action_grid_oracle(max_size: int) -> ActionOracle:
    """Lifts are tested against every action of every grid monoid on at most max_size points"""
    return ActionOracle(carrier_limit=max_size, base_grid=monoid_grid(max_size))


def extension_grid_oracle(C: FiniteGroup, max_size: int) -> ExtensionOracle:
    """Lifts are tested against every extension of every grid module over C"""
    return ExtensionOracle(C, base_grid=[m for m in module_grid(max_size) if m.C == C])


def torsor_char_cases(max_size: int) -> List[SuiteCase]:
    """Every B-set on at most max_size points, one case per group and carrier"""
    cases: List[SuiteCase] = []
    for B in grid_groups(max_size):
        for n in range(max_size + 1):
            def run(B=B, n=n) -> Verdict:
                oracle = action_grid_oracle(max_size)
                return run_stage("torsor-char", [
                    lambda X=X: torsor_characterization_check(B, X, oracle) for X in enumerate_actions(B, n)
                ])

            cases.append(SuiteCase(f"ACT({B.label()}) on {n} points", run))
    return cases


def contracted_cases(max_size: int) -> List[SuiteCase]:
    cases: List[SuiteCase] = []
    for M in monoid_grid(max_size):
        if not M.is_commutative():
            continue

        def run(M=M) -> Verdict:
            actions = [X for n in range(max_size + 1) for X in enumerate_actions(M, n)]
            return run_stage("contracted-iso", [
                lambda X=X, Y=Y: check_contracted_iso(X, Y) for X in actions for Y in actions
            ])

        cases.append(SuiteCase(f"ACT({M.label()})", run))
    return cases


def cocartesian_cases(max_size: int) -> List[SuiteCase]:
    """Every chosen lift out of the grid passes the cocartesian check against the whole grid"""
    cases: List[SuiteCase] = []
    modules = module_grid(max_size)
    for first, second in itertools.product(modules, repeat=2):
        if first.C != second.C:
            continue

        def run(first=first, second=second) -> Verdict:
            oracle = extension_grid_oracle(first.C, max_size)
            return run_stage("cocartesian", [
                lambda phi=phi, E=E: is_cocartesian(oracle, oracle.lift(phi, E).arrow)
                for phi in oracle.base_homs(first, second) for E in oracle.fibre_objects(first)
            ])

        cases.append(SuiteCase(f"OPEXT({module_tag(first)} -> {module_tag(second)})", run))

    for first, second in itertools.product(monoid_grid(max_size), repeat=2):
        def run(first=first, second=second) -> Verdict:
            oracle = action_grid_oracle(max_size)
            return run_stage("cocartesian", [
                lambda f=f, X=X: is_cocartesian(oracle, oracle.lift(f, X).arrow)
                for f in oracle.base_homs(first, second) for X in oracle.fibre_objects(first)
            ])

        cases.append(SuiteCase(f"ACT({first.label()} -> {second.label()})", run))
    return cases


def cohomology_verdict(module: CModule, budget: Optional[int] = None) -> Verdict:
    """pi0 of the extension fibre against H2, pi1 against Z1.

    Pushforward along up to two endomorphisms of the module must also agree
    with the induced map on H2, class by class.
    """
    classes, representatives = pi0_with_representatives(module, budget)
    pi0_inv, h2_inv = abelian_invariants(classes), abelian_invariants(h2_group(module, budget))
    if pi0_inv != h2_inv:
        return Verdict.fail("pi0 and H2 have different invariants", module, label="cohomology",
                            pi0=pi0_inv, h2=h2_inv)
    pi1_inv, z1_inv = abelian_invariants(pi1(module)), abelian_invariants(z1_group(module))
    if pi1_inv != z1_inv:
        return Verdict.fail("pi1 and Z1 have different invariants", module, label="cohomology",
                            pi1=pi1_inv, z1=z1_inv)
    if sorted(pi1_derivations(module)) != z1_derivations(module):
        return Verdict.fail("automorphisms of the split extension are not the derivations", module,
                            label="cohomology")
    checked = 3
    endomorphisms = [phi for phi in module_maps(module, module, budget) if not phi.hom.is_identity]
    for phi in endomorphisms[:NATURALITY_MAPS]:
        induced = h2_map(phi, budget)
        for rep in representatives:
            pushed = pushforward(phi, rep)[1]
            expected = induced(h2_class_index(module, rep.cocycle, budget))
            if h2_class_index(module, pushed.cocycle, budget) != expected:
                return Verdict.fail("pushforward disagrees with the induced map on H2", phi, rep,
                                    label="cohomology")
            checked += 1
    return Verdict.ok("cohomology", checked=checked, h2=h2_inv, z1=z1_inv)


def cohomology_cases(max_size: int) -> List[SuiteCase]:
    return [SuiteCase(module_case_name(m), lambda m=m: cohomology_verdict(m)) for m in module_grid(max_size)]


SUITE_BUILDERS: Dict[str, Callable[[int], List[SuiteCase]]] = {
    "oplax": oplax_cases,
    "adjoints": adjoint_cases,
    "mates": mate_cases,
    "groupal": groupal_cases,
    "torsor-char": torsor_char_cases,
    "two-group": two_group_cases,
    "contracted": contracted_cases,
    "cocartesian": cocartesian_cases,
    "cohomology": cohomology_cases,
}


def build_cases(suite: str, max_size: int) -> List[SuiteCase]:
    if suite not in SUITE_BUILDERS:
        raise UnknownSuiteError(suite, SUITE_BUILDERS)
    if max_size < 1:
        raise InvalidArgumentError("--max must be at least 1")
    cases = SUITE_BUILDERS[suite](max_size)
    logger.info(f"Suite {suite} with max {max_size}: {len(cases)} instance(s)")
    return cases
