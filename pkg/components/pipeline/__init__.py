""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import math
import sys
import time
import constants

from dataclasses import dataclass
from typing import List
from aws_lambda_powertools import Logger
from components.errors import BoundaryScopeError, DomainError
from components.pipeline.workflow import SUITES, Check, get_verification_suites
from components.storage import ScanTable

logger = Logger(service=constants.SERVICE_NAME, level=constants.LOG_LEVEL, stream=sys.stderr)


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    threshold: float
    passed: bool
    seconds: float
    message: str = ""


class Pipeline:
    """Runs one verification suite check by check."""

    def __init__(self, suite: str = "all", tol: float = constants.DEFAULT_TOL) -> None:
        if suite not in SUITES:
            raise DomainError(f"Unknown suite '{suite}', expected one of {', '.join(SUITES)}")
        self.suite = suite
        self.tol = tol
        self.checks = get_verification_suites(tol)[suite]
        self.results: List[CheckResult] = []

    @property
    def passed(self) -> bool:
        return bool(self.results) and all(result.passed for result in self.results)

    def run(self) -> List[CheckResult]:
        logger.info(f"Running suite '{self.suite}' with {len(self.checks)} checks at tol={self.tol:g}")
        self.results = [self._run_check(check) for check in self.checks]
        failed = [result.name for result in self.results if not result.passed]
        if failed:
            logger.error(f"Suite '{self.suite}' failed: {', '.join(failed)}")
        else:
            logger.info(f"Suite '{self.suite}' passed")
        return self.results

    def to_table(self) -> ScanTable:
        return ScanTable(
            headers=("check", "deviation", "threshold", "passed", "seconds"),
            rows=[(r.name, r.deviation, r.threshold, r.passed, r.seconds) for r in self.results],
            title=f"Verification suite {self.suite}"
        )

    @staticmethod
    def _run_check(check: Check) -> CheckResult:
        start = time.perf_counter()
        try:
            deviation = float(check.measure())
        except BoundaryScopeError as e:
            logger.error(f"Check '{check.name}' raised {type(e).__name__}: {e}")
            return CheckResult(check.name, math.nan, check.threshold, False, time.perf_counter() - start, str(e))
        elapsed = time.perf_counter() - start
        # NaN deviations fail
        passed = deviation <= check.threshold
        logger.debug(f"Check '{check.name}': deviation {deviation:.3g}, threshold {check.threshold:.3g}, {elapsed:.2f}s")
        return CheckResult(check.name, deviation, check.threshold, passed, elapsed)
