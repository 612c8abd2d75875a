"""
Asynchronous suite runner: instances run on worker threads, at most
max_concurrent at a time, and are reported in instance order.
"""

import asyncio
import logging
import time
from enum import Enum
from typing import Callable, List, Optional

from src.errors import InternalInconsistencyError
from src.fibrations.fibration import Verdict

from .instances import SuiteCase, build_cases
from .reports import InstanceResult, VerifyReport

logger = logging.getLogger(__name__)


class InstanceStatus(Enum):
    QUEUED = "queued"
    RUNNING = "running"
    PASSED = "passed"
    FAILED = "failed"


def run_case(case: SuiteCase) -> Verdict:
    """Run one case; an inconsistency becomes a failed verdict with the message as witness"""
    try:
        return case.run()
    except InternalInconsistencyError as e:
        logger.error(f"Instance {case.name} hit an inconsistency: {e}")
        return Verdict.fail(str(e), case.name, label="inconsistency")


async def run_cases(
    cases: List[SuiteCase],
    max_concurrent: int = 2,
    on_status: Optional[Callable[[int, SuiteCase, InstanceStatus], None]] = None,
) -> List[InstanceResult]:
    semaphore = asyncio.Semaphore(max(1, max_concurrent))
    results: List[Optional[InstanceResult]] = [None] * len(cases)

    def notify(i: int, case: SuiteCase, status: InstanceStatus):
        if on_status is not None:
            on_status(i, case, status)

    async def process_single_case(i: int, case: SuiteCase):
        async with semaphore:
            notify(i, case, InstanceStatus.RUNNING)
            start = time.monotonic()
            verdict = await asyncio.to_thread(run_case, case)
            result = InstanceResult(i, case.name, verdict, case.expect_pass)
            results[i] = result
            elapsed = time.monotonic() - start
            if result.ok:
                logger.info(f"Instance {i} {case.name}: ok ({verdict.checked} checked, {elapsed:.2f}s)")
                notify(i, case, InstanceStatus.PASSED)
            else:
                reason = verdict.witness.reason if verdict.witness else "unexpected pass"
                logger.warning(f"Instance {i} {case.name} failed: {reason}")
                notify(i, case, InstanceStatus.FAILED)

    for i, case in enumerate(cases):
        notify(i, case, InstanceStatus.QUEUED)
    await asyncio.gather(*(process_single_case(i, case) for i, case in enumerate(cases)))
    return [r for r in results if r is not None]


async def run_suite(suite: str, max_size: int, max_concurrent: int = 2) -> VerifyReport:
    """Build the suite's cases for the size bound and run them all"""
    cases = build_cases(suite, max_size)
    logger.info(f"Running suite {suite}: {len(cases)} instance(s), {max_concurrent} at a time")
    results = await run_cases(cases, max_concurrent)
    report = VerifyReport(suite, max_size, results)
    logger.info(f"Suite {suite} {'passed' if report.passed else 'failed'}")
    return report
