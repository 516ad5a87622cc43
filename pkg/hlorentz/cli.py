"""
CLI - builds named matrices and runs verification suites from the command line

    python -m hlorentz matrices rh --format text
    python -m hlorentz check exchange-appendix --deformation 1
    python -m hlorentz check all --jobs 4 --format json --out report.json
"""

import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from hlorentz.config import config
from hlorentz.errors import HLorentzError, ParameterError, UnknownNameError
from hlorentz.models.report import MatrixPayload, SuiteResult
from hlorentz.models.suite_runner import SuiteOptions, SuiteRunner, exact_text, rational_params, suite_names
from hlorentz.utils import clifford, exchange, rmat, spacetime
from hlorentz.utils.exactalg import ExactMatrix
from hlorentz.utils.rmat import DEFORMATION_DEPENDENT, Deformation, MatrixName

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


MatrixBuilder = Callable[[Optional[Deformation], Optional[Dict[str, str]]], ExactMatrix]


def _gamma(label: str) -> MatrixBuilder:
    return lambda d, params: clifford.build_gammas(d, params)[label]


# names beyond the rmat table; all of these depend on the deformation
EXTRA_MATRICES: Dict[str, MatrixBuilder] = {
    "exchange": lambda d, params: exchange.exchange_matrix(d, exchange.ExchangeKind.COORDINATES, params),
    "exchange-y": lambda d, params: exchange.exchange_matrix(d, exchange.ExchangeKind.DERIVATIVES, params),
    "twist16": lambda d, params: exchange.twist_matrix(d, params),
    "gh": lambda d, params: spacetime.metric_g_h(d, params),
    "gy": lambda d, params: spacetime.metric_g_Y(d, 1, params),
    "gamma-alpha": _gamma("alpha"),
    "gamma-beta": _gamma("beta"),
    "gamma-gamma": _gamma("gamma"),
    "gamma-delta": _gamma("delta"),
}


def matrix_names() -> List[str]:
    return [m.value for m in MatrixName] + list(EXTRA_MATRICES)


def build_matrices(
    name: str, deformations: Sequence[int], params: Optional[Dict[str, str]]
) -> List[Tuple[Optional[int], ExactMatrix]]:
    """One matrix per requested deformation; deformation-free matrices yield a single entry."""
    key = name.lower()
    if key in EXTRA_MATRICES:
        builder = EXTRA_MATRICES[key]
        dependent = True
    else:
        parsed = MatrixName.parse(key)
        builder = lambda d, p: rmat.build(parsed, d, p)  # noqa: E731
        dependent = parsed in DEFORMATION_DEPENDENT
    targets: List[Optional[int]] = list(deformations) if dependent else [None]
    return [(d, builder(Deformation.parse(d) if d is not None else None, params)) for d in targets]


def payload(name: str, deformation: Optional[int], m: ExactMatrix) -> MatrixPayload:
    return MatrixPayload(
        name=name.lower(), deformation=deformation, rows=m.rows, cols=m.cols, entries=m.canonical_entries(),
    )


def _matrix_text(name: str, deformation: Optional[int], m: ExactMatrix) -> str:
    header = name.lower() if deformation is None else f"{name.lower()} (j{deformation})"
    return f"{header}\n{m.to_text()}"


def _result_text(result: SuiteResult) -> str:
    header = result.suite if result.deformation is None else f"{result.suite} j{result.deformation}"
    lines = [f"{header}: {'PASS' if result.passed else 'FAIL'}"]
    for c in result.checks:
        lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.name}")
        if c.witness:
            lines.extend(f"      {w}" for w in c.witness.splitlines())
    for note in result.notes:
        lines.append(f"  [note: {'equal' if note.passed else 'differs'}] {note.name}")
        if note.witness:
            lines.extend(f"      {w}" for w in note.witness.splitlines())
    return "\n".join(lines)


def _dump_json(items) -> str:
    return json.dumps([item.model_dump(by_alias=True, mode="json") for item in items], indent=2, ensure_ascii=False)


def _emit(text: str, out: Optional[str]):
    print(text)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _params(args) -> Optional[Dict[str, str]]:
    try:
        return rational_params(args.h, args.r)
    except ParameterError as e:
        raise UsageError(f"--{e}")


def cmd_matrices(args) -> int:
    built = build_matrices(args.name, args.deformation, _params(args))
    if args.format == "json":
        _emit(_dump_json([payload(args.name, d, m) for d, m in built]), args.out)
    else:
        _emit("\n\n".join(_matrix_text(args.name, d, m) for d, m in built), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    if args.order is not None and args.order < 1:
        raise UsageError(f"--order must be at least 1, got {args.order}")
    if args.window is not None and args.window < 4:
        raise UsageError(f"--window must be at least 4, got {args.window}")
    params = _params(args) or {}
    if args.suite == "repn" and params.get("h") == "0":
        raise UsageError("--h 0 is not allowed for the representation (delta = x/h)")
    for flag in ("zeta", "length"):
        try:
            exact_text(getattr(args, flag), flag)
        except ParameterError as e:
            raise UsageError(f"--{e}")
    options = SuiteOptions(
        order=args.order, window=args.window, h=params.get("h"), r=params.get("r"),
        zeta=args.zeta, length=args.length,
    )
    runner = SuiteRunner(options, jobs=args.jobs)
    results = runner.run(args.suite, args.deformation)
    if args.format == "json":
        _emit(_dump_json(results), args.out)
    else:
        _emit("\n\n".join(_result_text(r) for r in results), args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def _deformation(value: str) -> int:
    try:
        return Deformation.parse(value).value
    except UnknownNameError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hlorentz", description="Exact checks of the h-deformed Lorentz framework")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--deformation", "-d", type=_deformation, action="append",
                        help="1 or 2; repeat for both (default: both)")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--h", help="rational value substituted for h")
    common.add_argument("--r", help="rational value substituted for r")
    common.add_argument("--out", help="also write the report to this file")
    common.add_argument("--verbose", "-v", action="store_true", help="log progress at INFO level")

    m = sub.add_parser("matrices", parents=[common], help="print a named matrix")
    m.add_argument("name", help=", ".join(matrix_names()))
    m.set_defaults(handler=cmd_matrices)

    c = sub.add_parser("check", parents=[common], help="run a verification suite")
    c.add_argument("suite", choices=suite_names())
    c.add_argument("--order", type=int, help=f"plane-wave truncation order (default {config.PLANEWAVE_ORDER})")
    c.add_argument("--window", type=int, help=f"Laurent window B (default {config.REPN_WINDOW})")
    c.add_argument("--zeta", help="value of zeta in the representation (default: symbolic)")
    c.add_argument("--length", help="value of the length in the representation (default: symbolic)")
    c.add_argument("--jobs", type=int, default=config.JOBS, help="worker processes for independent suites")
    c.set_defaults(handler=cmd_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    level = logging.INFO if args.verbose else getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    if not args.deformation:
        args.deformation = [1, 2]
    args.deformation = sorted(set(args.deformation))

    try:
        return args.handler(args)
    except (UsageError, UnknownNameError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except HLorentzError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
