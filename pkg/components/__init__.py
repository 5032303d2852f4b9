""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import constants

from typing import Iterable, List, Union
from components.boundary import AngleLike, boundary_scan
from components.divisor import fig1_table
from components.errors import DomainError
from components.mordell import fig2_scan
from components.pipeline import CheckResult, Pipeline
from components.storage import ScanTable, merge_tables
from components.v_function import VEvaluation, evaluate_v


class BoundaryScope:
    """Evaluation, boundary scans, figure data and verification behind one object."""

    def __init__(self, tol: float = constants.DEFAULT_TOL, threads: int = 1) -> None:
        if not constants.MIN_TOL <= tol <= constants.MAX_TOL:
            raise DomainError(f"tol must lie in [{constants.MIN_TOL:g}, {constants.MAX_TOL:g}], got {tol:g}")
        self.tol = tol
        self.threads = max(1, threads)

    def v(self, N: complex, method: str = "auto") -> Union[VEvaluation, List[VEvaluation]]:
        return evaluate_v(N, self.tol, method)

    def scan(self, x: AngleLike, y_values: Iterable[float]) -> ScanTable:
        return boundary_scan(x, y_values, self.tol, self.threads)

    def figure(self, which: int) -> ScanTable:
        # Divisor sums for n <= 3000
        if which == 1:
            return fig1_table()
        # Both half-planes of the Mordell decomposition
        if which == 2:
            return merge_tables([fig2_scan(sign=1), fig2_scan(sign=-1)])
        raise DomainError(f"There is no figure {which}; expected 1 or 2")

    def verify(self, suite: str = "all") -> List[CheckResult]:
        pipeline = Pipeline(suite, self.tol)
        return pipeline.run()
