""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import argparse
import sys

from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[2]))

from components import BoundaryScope  # noqa: E402
from components.boundary import RationalAngle  # noqa: E402
from components.v_function import route_spread  # noqa: E402

if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=complex, default=10.0)
    parser.add_argument("--tol", type=float, default=1e-10)
    args, _ = parser.parse_known_args()

    scope = BoundaryScope(tol=args.tol)
    print(f"Evaluating v(1/N) at N={args.n} on every applicable route ...")
    evaluations = scope.v(args.n, method="all")
    for evaluation in evaluations:
        print(f"  {evaluation.route.value:>14}: {evaluation.value:.15g}")
    print(f"Largest disagreement between routes: {route_spread(evaluations):.3g}")

    print("Scanning the singular sum toward the boundary at x=1/3 ...")
    table = scope.scan(RationalAngle(1, 3), [1e-1, 1e-2, 1e-3])
    for y, re_s, _, _, predicted in table.rows:
        print(f"  y={y:g}: Re S={re_s:.6g}, leading law {predicted:.6g}")
