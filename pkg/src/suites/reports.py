"""
Report builders shared by the command line and the HTTP service.

Reports are dataclasses with `to_dict()` for JSON and `to_text()` for an
aligned table. Nothing in a report depends on timing or completion order.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from src.actions.torsors import tors_pi0_pi1
from src.algebra.finite_algebra import CModule, FiniteGroup, abelian_invariants
from src.cohomology.cocycles import cocycle_from_extension, h2_class_index, h2_group, z1_group
from src.errors import InternalInconsistencyError
from src.extensions.extensions import Extension, baer_tensor, pi0, pi1, split_extension, vertical_isomorphic
from src.fibrations.fibration import Verdict

logger = logging.getLogger(__name__)


def render_table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    """Left-aligned columns separated by two spaces"""
    cells = [[str(h) for h in headers]] + [[str(v) for v in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(value.ljust(width) for value, width in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return "\n".join(lines)


# ---------------------------------------------------------------- h2


@dataclass
class H2Report:
    module: CModule
    action: str
    pi0_invariants: List[int]
    h2_invariants: List[int]
    pi1_invariants: List[int]
    z1_invariants: List[int]
    pi0_order: int
    h2_order: int

    @property
    def agree(self) -> bool:
        return self.pi0_invariants == self.h2_invariants and self.pi1_invariants == self.z1_invariants

    @property
    def status(self) -> str:
        return "AGREE" if self.agree else "DISAGREE"

    def to_dict(self) -> Dict:
        return {
            "C": self.module.C.label(),
            "B": self.module.B.label(),
            "action": self.action,
            "pi0": {"order": self.pi0_order, "invariants": self.pi0_invariants},
            "h2": {"order": self.h2_order, "invariants": self.h2_invariants},
            "pi1": {"invariants": self.pi1_invariants},
            "z1": {"invariants": self.z1_invariants},
            "agree": self.agree,
            "status": self.status,
        }

    def to_text(self) -> str:
        rows = [
            ["pi0 (extensions)", self.pi0_order, self.pi0_invariants],
            ["H2 (cocycles)", self.h2_order, self.h2_invariants],
            ["pi1 (extensions)", "", self.pi1_invariants],
            ["Z1 (derivations)", "", self.z1_invariants],
        ]
        title = f"{self.module.B.label()} over {self.module.C.label()} ({self.action})"
        return f"{title}\n{render_table(['invariant', 'order', 'factors'], rows)}\n{self.status}"


def build_h2_report(module: CModule, action: str = "trivial", budget: Optional[int] = None) -> H2Report:
    logger.info(f"Computing pi0/H2 for {module.label()}")
    extensions = pi0(module, budget)
    cohomology = h2_group(module, budget)
    report = H2Report(
        module=module,
        action=action,
        pi0_invariants=abelian_invariants(extensions),
        h2_invariants=abelian_invariants(cohomology),
        pi1_invariants=abelian_invariants(pi1(module)),
        z1_invariants=abelian_invariants(z1_group(module)),
        pi0_order=extensions.size,
        h2_order=cohomology.size,
    )
    if not report.agree:
        logger.warning(f"pi0/H2 disagree for {module.label()}: {report.to_dict()}")
    return report


# ---------------------------------------------------------------- torsors


@dataclass
class TorsorReport:
    group: FiniteGroup
    count: int
    tables: int
    classes: int
    pi1_invariants: List[int]

    def to_dict(self) -> Dict:
        return {
            "B": self.group.label(),
            "count": self.count,
            "torsor_tables": self.tables,
            "pi0": self.classes,
            "pi1": {"order": self.group_order, "invariants": self.pi1_invariants},
        }

    @property
    def group_order(self) -> int:
        order = 1
        for factor in self.pi1_invariants:
            order *= factor
        return order

    def to_text(self) -> str:
        rows = [
            ["torsors (with base point)", self.count],
            ["torsor tables", self.tables],
            ["pi0 classes", self.classes],
            ["pi1 invariants", self.pi1_invariants],
        ]
        return f"Torsors over {self.group.label()}\n{render_table(['quantity', 'value'], rows)}"


def build_torsors_report(B: FiniteGroup, budget: Optional[int] = None) -> TorsorReport:
    invariants = tors_pi0_pi1(B, budget)
    return TorsorReport(
        group=B,
        count=invariants.trivialized,
        tables=invariants.tables,
        classes=invariants.classes,
        pi1_invariants=abelian_invariants(invariants.automorphisms),
    )


# ---------------------------------------------------------------- baer


@dataclass
class BaerReport:
    first: Extension
    second: Extension
    tensor: Extension
    classes: Dict[str, int]
    split: bool

    def to_dict(self) -> Dict:
        return {
            "tensor": self.tensor.to_dict(),
            "h2_classes": self.classes,
            "split": self.split,
        }

    def to_text(self) -> str:
        rows = [[name, index] for name, index in self.classes.items()]
        table = render_table(["extension", "H2 class"], rows)
        return f"Baer tensor over {self.tensor.module.label()}\n{table}\nsplit: {self.split}"


def build_baer_report(first: Extension, second: Extension, budget: Optional[int] = None) -> BaerReport:
    tensor = baer_tensor(first, second)
    cocycle = cocycle_from_extension(tensor)
    module = first.module
    classes = {
        "first": h2_class_index(module, first.cocycle, budget),
        "second": h2_class_index(module, second.cocycle, budget),
        "tensor": h2_class_index(module, cocycle.table, budget),
    }
    split = split_extension(module)
    split_in_h2 = classes["tensor"] == h2_class_index(module, split.cocycle, budget)
    if split_in_h2 != (vertical_isomorphic(tensor, split) is not None):
        raise InternalInconsistencyError("H2 class of the Baer tensor disagrees with a direct isomorphism search")
    return BaerReport(first, second, tensor, classes, split=split_in_h2)


# ---------------------------------------------------------------- verify


@dataclass
class InstanceResult:
    index: int
    name: str
    verdict: Verdict
    expect_pass: bool = True

    @property
    def ok(self) -> bool:
        return self.verdict.passed == self.expect_pass

    def to_dict(self) -> Dict:
        return {
            "index": self.index,
            "name": self.name,
            "expect_pass": self.expect_pass,
            "ok": self.ok,
            "verdict": self.verdict.to_dict(),
        }


@dataclass
class VerifyReport:
    suite: str
    max_size: int
    results: List[InstanceResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results)

    def to_dict(self) -> Dict:
        failed = sum(1 for r in self.results if not r.ok)
        return {
            "suite": self.suite,
            "max": self.max_size,
            "passed": self.passed,
            "counts": {"total": len(self.results), "passed": len(self.results) - failed, "failed": failed},
            "instances": [r.to_dict() for r in self.results],
        }

    def to_text(self) -> str:
        rows = []
        for r in self.results:
            outcome = "PASS" if r.ok else "FAIL"
            note = "" if r.expect_pass else "(expected failure)"
            if r.verdict.sampled:
                note = f"{note} sampled".strip()
            rows.append([r.index, r.name, outcome, r.verdict.checked, note])
        lines = [f"Suite {self.suite} (max {self.max_size})",
                 render_table(["#", "instance", "result", "checked", "note"], rows)]
        for r in self.results:
            if not r.ok:
                witness = r.verdict.witness.reason if r.verdict.witness else "unexpected pass"
                lines.append(f"  #{r.index} {r.name} [{r.verdict.label}]: {witness}")
        lines.append("PASSED" if self.passed else "FAILED")
        return "\n".join(lines)
