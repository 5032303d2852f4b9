""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import argparse
import cmath
import math
import os
import sys
import constants
import numpy as np

from dataclasses import dataclass
from typing import Optional, Sequence
from aws_lambda_powertools import Logger
from components.boundary import RationalAngle, boundary_scan
from components.divisor import (
    DivisorTable, SIGMA_UPPER_BOUND, check_bounds, check_sigma_identities, fig1_table, sigma_k, sigma_o_minus2
)
from components.errors import BoundaryScopeError, DomainError
from components.legfn_cs import (
    cs_identity_residual, gamma_hat, leg_asymptotic, leg_p, leg_p_from_gamma_hat, log_product_P_ratio,
    log_product_P_sine, one_point
)
from components.mordell import auto_k_max, fig2_scan, j_dual, j_mellin_barnes, j_quadrature
from components.pipeline import Pipeline
from components.pipeline.workflow import SUITES
from components.resurgence import borel_pole_coeffs, lateral_difference, stokes_discontinuity
from components.storage import ScanTable, merge_tables, write_table
from components.v_function import METHODS, evaluate_v, route_spread

logger = Logger(service=constants.SERVICE_NAME, level=constants.LOG_LEVEL, stream=sys.stderr)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
MORDELL_METHODS = ("auto", "quadrature", "mellin-barnes", "dual", "all")
ONE_POINT_ORDERS = (1, 2, 3, 4, 6, 8, 12, 16)


@dataclass(frozen=True)
class RunConfig:
    tol: float = constants.DEFAULT_TOL
    max_terms: int = constants.MAX_TERMS
    output_path: Optional[str] = None
    format: str = "csv"
    threads: int = 1

    def __post_init__(self) -> None:
        if not constants.MIN_TOL <= self.tol <= constants.MAX_TOL:
            raise DomainError(f"--tol must lie in [{constants.MIN_TOL:g}, {constants.MAX_TOL:g}], got {self.tol:g}")
        if self.threads < 1:
            raise DomainError(f"--threads must be >= 1, got {self.threads}")
        if self.max_terms < 1:
            raise DomainError(f"--max-terms must be >= 1, got {self.max_terms}")
        if self.format not in ("csv", "svg"):
            raise DomainError(f"--format must be csv or svg, got {self.format}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        threads = args.threads
        if threads is None:
            raw = os.environ.get(constants.THREADS_ENV_VAR, "1")
            try:
                threads = int(raw)
            except ValueError:
                raise DomainError(f"{constants.THREADS_ENV_VAR} must be an integer, got '{raw}'")
        return cls(tol=args.tol, max_terms=args.max_terms, output_path=args.out, format=args.format, threads=threads)


def parse_complex(text: str) -> complex:
    """Read `a+bi` (or `a+bj`) with optional scientific notation."""
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not a complex number of the form a+bi")


def parse_rational(text: str) -> RationalAngle:
    """Read a reduced fraction p/q; unreduced input is rejected."""
    num, _, den = text.strip().partition("/")
    try:
        num, den = int(num), int(den or 1)
    except ValueError:
        raise DomainError(f"'{text}' is not a fraction p/q")
    if den <= 0 or math.gcd(num, den) != 1:
        raise DomainError(f"'{text}' is not a reduced fraction with positive denominator")
    return RationalAngle(num, den)


def _format_complex(value: complex) -> str:
    return f"{value.real:.15g}{value.imag:+.15g}i"


def _emit(table: ScanTable, config: RunConfig) -> None:
    write_table(table, config.output_path, config.format)


def cmd_v(args: argparse.Namespace, config: RunConfig) -> int:
    result = evaluate_v(args.n, config.tol, args.method, config.max_terms)
    evaluations = result if isinstance(result, list) else [result]
    for evaluation in evaluations:
        print(f"N={_format_complex(evaluation.n_value)} route={evaluation.route.value} "
              f"value={_format_complex(evaluation.value)} abs_err={evaluation.abs_err:.3g}")
    if len(evaluations) > 1:
        print(f"spread={route_spread(evaluations):.3g}")
    return EXIT_OK


def cmd_boundary_scan(args: argparse.Namespace, config: RunConfig) -> int:
    x = parse_rational(args.x)
    if args.points < 1 or not 0 < args.y_min < args.y_max:
        raise DomainError(f"Empty y range: need 0 < y_min < y_max and points >= 1, got [{args.y_min}, {args.y_max}], {args.points}")
    ys = np.geomspace(args.y_max, args.y_min, args.points) if args.points > 1 else np.array([args.y_min])
    if args.negative:
        ys = -ys
    _emit(boundary_scan(x, ys.tolist(), config.tol, config.threads), config)
    return EXIT_OK


def cmd_divisor(args: argparse.Namespace, config: RunConfig) -> int:
    if args.n is not None:
        sigma = sigma_o_minus2(args.n)
        print(f"n={args.n} sigma_o_minus2={sigma} ({float(sigma):.15g}) sigma_2={sigma_k(args.n, 2)} "
              f"identity={'holds' if check_sigma_identities(args.n) else 'fails'}")
        return EXIT_OK
    table = DivisorTable.build(args.n_max)
    if not check_bounds(table):
        logger.error(f"A divisor sum up to n={args.n_max} leaves [1, {SIGMA_UPPER_BOUND:.6g})")
        return EXIT_FAILED
    _emit(fig1_table(args.n_max), config)
    return EXIT_OK


def cmd_resurgence(args: argparse.Namespace, config: RunConfig) -> int:
    for l in range(1, args.poles + 1):
        data = borel_pole_coeffs(l)
        print(f"l={l} double={_format_complex(data.double_pole_coeff)} single={_format_complex(data.single_pole_coeff)}")
    if args.n is not None:
        jump = stokes_discontinuity(args.n, args.l_max)
        lateral = lateral_difference(args.n, args.offset, config.tol)
        print(f"N={_format_complex(args.n)} discontinuity={_format_complex(jump)} "
              f"lateral={_format_complex(lateral)} relative_gap={abs(lateral - jump) / abs(jump):.3g}")
    return EXIT_OK


def cmd_legfn(args: argparse.Namespace, config: RunConfig) -> int:
    N = args.n
    if args.k is not None:
        exact = gamma_hat(N, args.k, config.tol)
        asymptotic = leg_asymptotic(N, args.k, args.order)
        print(f"N={N} k={args.k} gamma_hat={_format_complex(exact)} "
              f"asymptotic={_format_complex(asymptotic)} gap={abs(exact - asymptotic):.3g}")
        return EXIT_OK
    if args.z is not None:
        for evaluation in (leg_p(args.z, N), leg_p_from_gamma_hat(args.z, N, config.tol)):
            print(f"N={N} z={_format_complex(args.z)} route={evaluation.route.value} value={_format_complex(evaluation.value)}")
        return EXIT_OK
    rows = []
    for j in range(2 * N):
        evaluation = leg_p(cmath.exp(1j * math.pi * j / N), N)
        rows.append((j, evaluation.value, evaluation.route.value))
    _emit(ScanTable(("j", "p", "route"), rows, title=f"Leg function at the roots, N={N}", plot_columns=("p_re", "p_im")), config)
    return EXIT_OK


def cmd_cs(args: argparse.Namespace, config: RunConfig) -> int:
    rows = []
    for N in range(1, args.n_max + 1):
        sine_form = log_product_P_sine(N)
        rows.append((N, sine_form, abs(log_product_P_ratio(N) - sine_form), cs_identity_residual(N)))
    _emit(ScanTable(("N", "log_P", "route_gap", "cs_residual"), rows, title="P(q) and the Chern-Simons identity",
                    plot_columns=("log_P",)), config)
    return EXIT_OK


def cmd_onepoint(args: argparse.Namespace, config: RunConfig) -> int:
    rows = []
    for N in args.n:
        pair = one_point(N, config.tol)
        rows.append((N, pair.via_v, pair.via_P, abs(pair.via_v / pair.via_P - 1.0)))
    _emit(ScanTable(("N", "via_v", "via_P", "relative_gap"), rows, title="One-point function",
                    plot_columns=("via_v", "via_P")), config)
    return EXIT_OK


def cmd_mordell(args: argparse.Namespace, config: RunConfig) -> int:
    t = args.t
    evaluations = []
    if args.method == "quadrature" or (args.method in ("auto", "all") and t.real > 0):
        evaluations.append(j_quadrature(t, config.tol))
    if args.method in ("mellin-barnes", "all") or (args.method == "auto" and t.real <= 0):
        evaluations.append(j_mellin_barnes(t, config.tol))
    if args.method == "dual" or (args.method == "all" and t.real < 0):
        k_max = max(auto_k_max(t, config.max_terms), auto_k_max(math.pi ** 2 / t, config.max_terms))
        evaluations.append(j_dual(t, args.sign, k_max))
    for evaluation in evaluations:
        print(f"t={_format_complex(evaluation.t)} route={evaluation.route.value} value={_format_complex(evaluation.value)}")
    return EXIT_OK


def cmd_fig(args: argparse.Namespace, config: RunConfig) -> int:
    if args.which == 1:
        table = fig1_table(args.n_max)
        sigma = table.column("sigma_o_minus2")
        if not np.all((sigma >= 1.0) & (sigma < SIGMA_UPPER_BOUND)):
            logger.error("Divisor table leaves the proven bounds")
            return EXIT_FAILED
        _emit(table, config)
        return EXIT_OK
    k_max = min(args.k_max, config.max_terms)
    panels = [
        fig2_scan(args.re_t, (args.y_min, args.y_max), args.points, k_max, sign)
        for sign in (1, -1)
    ]
    _emit(merge_tables(panels, title=f"J(t) at Re t={args.re_t:g}, both signs"), config)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: RunConfig) -> int:
    pipeline = Pipeline(args.suite, config.tol)
    for result in pipeline.run():
        status = "PASS" if result.passed else "FAIL"
        relation = "<=" if result.passed else ">"
        detail = result.message or f"deviation {result.deviation:.3g} {relation} {result.threshold:.3g}"
        print(f"{status} {result.name}: {detail} ({result.seconds:.1f}s)")
    if config.output_path is not None:
        _emit(pipeline.to_table(), config)
    return EXIT_OK if pipeline.passed else EXIT_FAILED


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=constants.DEFAULT_TOL, help="Target tolerance")
    common.add_argument("--threads", type=int, default=None,
                        help=f"Worker threads (default ${constants.THREADS_ENV_VAR} or 1)")
    common.add_argument("--max-terms", type=int, default=constants.MAX_TERMS,
                        help="Term budget for the log-gamma sum and the false theta series")
    common.add_argument("--format", choices=("csv", "svg"), default="csv", help="Table output format")
    common.add_argument("--out", type=str, default=None, help="Output file (stdout when omitted)")
    common.add_argument("--verbose", "-v", action="store_true", help="Log at INFO level")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="boundary-scope",
        description="Finite-volume correction v(1/N), its natural boundary and related identities"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    v = commands.add_parser("v", parents=[common], help="Evaluate v(1/N)")
    v.add_argument("--n", type=parse_complex, required=True, help="N as a+bi")
    v.add_argument("--method", choices=METHODS, default="auto")
    v.set_defaults(handler=cmd_v)

    scan = commands.add_parser("boundary-scan", parents=[common], help="Scan the singular sum toward y=0")
    scan.add_argument("--x", type=str, required=True, help="Reduced fraction p/q")
    scan.add_argument("--y-min", type=float, default=1e-4)
    scan.add_argument("--y-max", type=float, default=1e-1)
    scan.add_argument("--points", type=int, default=31)
    scan.add_argument("--negative", action="store_true", help="Scan y < 0 instead")
    scan.set_defaults(handler=cmd_boundary_scan)

    divisor = commands.add_parser("divisor", parents=[common], help="Odd-divisor sums")
    divisor.add_argument("--n", type=int, default=None, help="Print a single n instead of a table")
    divisor.add_argument("--n-max", type=int, default=constants.FIG1_N_MAX)
    divisor.set_defaults(handler=cmd_divisor)

    resurgence = commands.add_parser("resurgence", parents=[common], help="Borel poles and the Stokes jump")
    resurgence.add_argument("--n", type=parse_complex, default=None, help="N with Im N < 0")
    resurgence.add_argument("--l-max", type=int, default=20)
    resurgence.add_argument("--poles", type=int, default=3, help="Print pole data for l=1..POLES")
    resurgence.add_argument("--offset", type=float, default=constants.LATERAL_RAY_OFFSET)
    resurgence.set_defaults(handler=cmd_resurgence)

    legfn = commands.add_parser("legfn", parents=[common], help="Leg function p(Z, q)")
    legfn.add_argument("--n", type=int, required=True)
    legfn.add_argument("--z", type=parse_complex, default=None)
    legfn.add_argument("--k", type=int, default=None, help="Compare the Gamma-hat integral with its expansion")
    legfn.add_argument("--order", type=int, default=4)
    legfn.set_defaults(handler=cmd_legfn)

    cs = commands.add_parser("cs", parents=[common], help="P(q) against Chern-Simons partition functions")
    cs.add_argument("--n-max", type=int, default=50)
    cs.set_defaults(handler=cmd_cs)

    onepoint = commands.add_parser("onepoint", parents=[common], help="One-point function two ways")
    onepoint.add_argument("--n", type=int, nargs="+", default=list(ONE_POINT_ORDERS))
    onepoint.set_defaults(handler=cmd_onepoint)

    mordell = commands.add_parser("mordell", parents=[common], help="Mordell integral J(t)")
    mordell.add_argument("--t", type=parse_complex, required=True)
    mordell.add_argument("--method", choices=MORDELL_METHODS, default="auto")
    mordell.add_argument("--sign", type=int, choices=(1, -1), default=1, help="Branch t +- i0 of the decomposition")
    mordell.set_defaults(handler=cmd_mordell)

    fig = commands.add_parser("fig", parents=[common], help="Data behind the figures")
    fig.add_argument("which", type=int, choices=(1, 2))
    fig.add_argument("--n-max", type=int, default=constants.FIG1_N_MAX)
    fig.add_argument("--re-t", type=float, default=constants.FIG2_RE_T)
    fig.add_argument("--y-min", type=float, default=constants.FIG2_Y_RANGE[0])
    fig.add_argument("--y-max", type=float, default=constants.FIG2_Y_RANGE[1])
    fig.add_argument("--points", type=int, default=constants.FIG2_POINTS)
    fig.add_argument("--k-max", type=int, default=constants.FIG2_K_MAX)
    fig.set_defaults(handler=cmd_fig)

    verify = commands.add_parser("verify", parents=[common], help="Run an identity-verification suite")
    verify.add_argument("suite", choices=SUITES, nargs="?", default="all")
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    if args.verbose:
        logger.setLevel("INFO")
    try:
        config = RunConfig.from_args(args)
        return args.handler(args, config)
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BoundaryScopeError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
