"""
Suite Runner - maps suite names to the verification checks and runs them
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, field_validator

from hlorentz.config import config
from hlorentz.errors import HLorentzError, ParameterError, TruncationError, UnknownNameError
from hlorentz.models.report import CheckReport, SuiteResult
from hlorentz.utils import clifford, exchange, ncalg, repn, rmat, spacetime
from hlorentz.utils.exactalg import ELL, ZETA, as_scalar
from hlorentz.utils.ncalg import Sector
from hlorentz.utils.rmat import Deformation, MatrixName

logger = logging.getLogger(__name__)

Thunk = Callable[[], CheckReport]


def rational_text(value: Optional[str], label: str) -> Optional[str]:
    """Normalise a rational such as '2/4' to '1/2'."""
    if value is None:
        return None
    try:
        return str(Fraction(value))
    except (ValueError, ZeroDivisionError):
        raise ParameterError(f"{label} expects a rational number, got '{value}'")


def exact_text(value: Optional[str], label: str) -> Optional[str]:
    if value is None:
        return None
    try:
        as_scalar(value)
    except (ValueError, TypeError, ZeroDivisionError, HLorentzError):
        raise ParameterError(f"{label} expects an exact expression, got '{value}'")
    return value


def rational_params(h: Optional[str] = None, r: Optional[str] = None) -> Optional[Dict[str, str]]:
    values = {name: rational_text(value, name) for name, value in (("h", h), ("r", r)) if value is not None}
    return values or None


class SuiteOptions(BaseModel):
    """Flags shared by every suite; None means the configured default."""

    order: Optional[int] = None
    window: Optional[int] = None
    h: Optional[str] = None
    r: Optional[str] = None
    zeta: Optional[str] = None
    length: Optional[str] = None

    @field_validator("h", "r")
    @classmethod
    def normalise_rational(cls, value: Optional[str], info) -> Optional[str]:
        return rational_text(value, info.field_name)

    @field_validator("zeta", "length")
    @classmethod
    def check_exact(cls, value: Optional[str], info) -> Optional[str]:
        return exact_text(value, info.field_name)

    @property
    def params(self) -> Optional[Dict[str, str]]:
        return rational_params(self.h, self.r)


class SuiteDefinition:
    def __init__(self, name: str, build: Callable, per_deformation: bool = True, description: str = ""):
        self.name = name
        self.build = build
        self.per_deformation = per_deformation
        self.description = description


def _ybe(d: Deformation, opts: SuiteOptions) -> List[Tuple[str, Thunk]]:
    params = opts.params
    return [
        ("ybe-rh", lambda: rmat.check_ybe(rmat.build(MatrixName.RH, params=params))),
        ("ybe-r4", lambda: rmat.check_ybe(rmat.build(MatrixName.R4, d, params))),
        ("ybe16", lambda: exchange.check_ybe16(exchange.exchange_matrix(d, params=params))),
    ]


def _frt(d: Deformation, opts: SuiteOptions) -> List[Tuple[str, Thunk]]:
    params = opts.params
    return [(
        "frt-mixed",
        lambda: rmat.check_frt_mixed(rmat.build(MatrixName.RH, params=params), rmat.build(MatrixName.R3, d, params)),
    )]


def _projectors(d: Optional[Deformation], opts: SuiteOptions) -> List[Tuple[str, Thunk]]:
    return [("projectors", rmat.check_projectors)]


def _twist(d: Deformation, opts: SuiteOptions) -> List[Tuple[str, Thunk]]:
    return [
        ("twist4", rmat.check_twist_suite),
        ("twist16", lambda: exchange.check_twist16(
            exchange.exchange_matrix(d, params=opts.params),
            exchange.twist_matrix(d, opts.params),
            f"twist16-j{d.value}",
        )),
    ]


def _appendix(d: Deformation, opts: SuiteOptions) -> List[Tuple[str, Thunk]]:
    return [("exchange-appendix", lambda: exchange.appendix_check(d))]


def _triangularity16(d: Deformation, opts: SuiteOptions) -> List[Tuple[str, Thunk]]:
    return [
        ("triangular16", lambda: exchange.check_triangular16(
            exchange.exchange_matrix(d), f"triangular16-j{d.value}",
        )),
        ("triangular16-Y", lambda: exchange.check_triangular16(
            exchange.exchange_matrix(d, exchange.ExchangeKind.DERIVATIVES), f"triangular16-Y-j{d.value}",
        )),
    ]


def _structure(d: Deformation, opts: SuiteOptions) -> List[Tuple[str, Thunk]]:
    return [
        ("triangular-rh", lambda: rmat.check_triangular4(rmat.build(MatrixName.RH), "triangular-rh")),
        ("triangular-r4", lambda: rmat.check_triangular4(rmat.build(MatrixName.R4, d), "triangular-r4")),
        ("reality", lambda: rmat.check_reality(rmat.build(MatrixName.R3, d))),
        ("trace-ingredient", rmat.check_trace_ingredient),
        ("dh", rmat.check_dh_identities),
        ("reps", lambda: rmat.check_reps_symmetry(d)),
    ]


def _algebra(d: Deformation, opts: SuiteOptions) -> List[Tuple[str, Thunk]]:
    params = opts.params

    def minkowski() -> CheckReport:
        algebra = spacetime.assemble(d, [Sector.K], params)
        printed = ncalg.printed_minkowski(d.value)
        if params:
            printed = [p.subs(params) for p in printed]
        report = ncalg.check_printed_relations(algebra.relators[(Sector.K, Sector.K)], printed)
        return report.model_copy(update={"name": f"minkowski-printed-j{d.value}"})

    return [
        ("gl-h2", lambda: ncalg.gl_h2_check(params)),
        ("minkowski-printed", minkowski),
        ("exchange-consistency", lambda: spacetime.exchange_consistency_check(d, params)),
    ]


def _single(name: str, fn: Callable) -> Callable:
    def build(d: Deformation, opts: SuiteOptions) -> List[Tuple[str, Thunk]]:
        return [(name, lambda: fn(d, opts.params))]

    return build


def _clifford(d: Deformation, opts: SuiteOptions) -> List[Tuple[str, Thunk]]:
    return [
        ("printed-gammas", lambda: clifford.printed_gammas_check(d)),
        ("clifford", lambda: clifford.clifford_check(d, opts.params)),
        ("y-epsilon", lambda: clifford.y_epsilon_check(d)),
    ]


def _planewave(d: Deformation, opts: SuiteOptions) -> List[Tuple[str, Thunk]]:
    order = opts.order if opts.order is not None else config.PLANEWAVE_ORDER
    if order < 1:
        raise TruncationError(order, 1)
    return [("planewave", lambda: spacetime.planewave_check(d, order, opts.params))]


def _classical(d: Deformation, opts: SuiteOptions) -> List[Tuple[str, Thunk]]:
    return [
        ("classical-spacetime", lambda: spacetime.classical_limit_check(d)),
        ("classical-gammas", lambda: clifford.gamma_classical_limit_check(d)),
    ]


def _repn_inputs(opts: SuiteOptions):
    zeta = as_scalar(opts.zeta) if opts.zeta is not None else ZETA
    ell = as_scalar(opts.length) if opts.length is not None else ELL
    window = opts.window if opts.window is not None else config.REPN_WINDOW
    return window, zeta, ell, opts.h


SUITES: Dict[str, SuiteDefinition] = {
    s.name: s
    for s in [
        SuiteDefinition("ybe", _ybe, description="Yang-Baxter equation for R_h, R4 and the exchange matrix"),
        SuiteDefinition("frt", _frt, description="mixed FRT relation for R_h and R3"),
        SuiteDefinition("projectors", _projectors, per_deformation=False, description="spectral projectors of Rhat_h"),
        SuiteDefinition("twist", _twist, description="twist factorizations of the 4x4 and 16x16 matrices"),
        SuiteDefinition("exchange-appendix", _appendix, description="exchange matrix against the golden tables"),
        SuiteDefinition("triangularity16", _triangularity16, description="triangularity of both exchange matrices"),
        SuiteDefinition("structure", _structure, description="triangularity, reality and D_h identities"),
        SuiteDefinition("algebra", _algebra, description="generated relations against the printed tables"),
        SuiteDefinition("central", _single("central", spacetime.central_check), description="central elements"),
        SuiteDefinition("star", _single("star", spacetime.star_closure_check), description="star closure of every relator set"),
        SuiteDefinition("confluence", _single("confluence", spacetime.algebra_confluence_check), description="overlap resolution of the rewrite systems"),
        SuiteDefinition("metrics", _single("metrics", spacetime.metric_check), description="length, metrics and the d'Alembertian"),
        SuiteDefinition("dilatation", _single("dilatation", spacetime.dilatation_check), description="the dilatation operator"),
        SuiteDefinition("forms", _single("forms", spacetime.forms_consistency_check), description="exterior derivative consistency"),
        SuiteDefinition("clifford", _clifford, description="gamma matrices and the Clifford relation"),
        SuiteDefinition("dirac-square", _single("dirac-square", clifford.dirac_square_check), description="square of the Dirac operator"),
        SuiteDefinition("planewave", _planewave, description="truncated plane waves"),
        SuiteDefinition("repn", None, per_deformation=False, description="Laurent representation of the second deformation"),
        SuiteDefinition("classical-limit", _classical, description="h = 0 reductions"),
    ]
}

SUITE_ORDER = list(SUITES)


def suite_names() -> List[str]:
    return SUITE_ORDER + ["all"]


def _timed(label: str, thunk: Thunk) -> CheckReport:
    start = time.perf_counter()
    try:
        report = thunk()
    except HLorentzError as e:
        logger.error(f"❌ {label}: {e}")
        report = CheckReport(name=label, passed=False, witness=f"{type(e).__name__}: {e}")
    millis = round((time.perf_counter() - start) * 1000, 3)
    return report.model_copy(update={"millis": millis})


def _run_repn(opts: SuiteOptions) -> SuiteResult:
    window, zeta, ell, h = _repn_inputs(opts)
    start = time.perf_counter()
    try:
        counted, closed_form = repn.repn_checks(window, zeta, ell, h)
    except HLorentzError as e:
        logger.error(f"❌ repn: {e}")
        failed = CheckReport(name="repn", passed=False, witness=f"{type(e).__name__}: {e}")
        return SuiteResult(suite="repn", deformation=Deformation.J2.value, checks=[failed])
    millis = round((time.perf_counter() - start) * 1000, 3)
    logger.debug(f"repn checks took {millis} ms")
    return SuiteResult(suite="repn", deformation=Deformation.J2.value, checks=counted, notes=[closed_form])


def execute(suite: str, deformation: Optional[int], options: SuiteOptions) -> SuiteResult:
    """Run one suite for one deformation (None for deformation-independent suites)."""
    definition = SUITES.get(suite)
    if definition is None:
        raise UnknownNameError("suite", suite, suite_names())
    label = suite if deformation is None else f"{suite} j{deformation}"
    logger.info(f"🚀 Running {label}")
    if definition.build is None:
        result = _run_repn(options)
    else:
        d = Deformation.parse(deformation) if deformation is not None else None
        checks: List[CheckReport] = []
        try:
            thunks = definition.build(d, options)
        except HLorentzError as e:
            thunks = []
            checks.append(CheckReport(name=suite, passed=False, witness=f"{type(e).__name__}: {e}"))
        for name, thunk in thunks:
            checks.append(_timed(name, thunk))
        result = SuiteResult(suite=suite, deformation=deformation, checks=checks)
    marker = "✅" if result.passed else "❌"
    logger.info(f"{marker} {label}: {sum(c.passed for c in result.checks)}/{len(result.checks)} checks passed")
    return result


def _execute_task(task: Tuple[str, Optional[int], dict]) -> SuiteResult:
    suite, deformation, options = task
    return execute(suite, deformation, SuiteOptions(**options))


class SuiteRunner:
    def __init__(self, options: Optional[SuiteOptions] = None, jobs: Optional[int] = None):
        self.options = options or SuiteOptions()
        self.jobs = jobs if jobs is not None else config.JOBS

    def plan(self, suite: str, deformations: Sequence[int]) -> List[Tuple[str, Optional[int]]]:
        """Expand a suite name (or 'all') into (suite, deformation) tasks in the fixed output order."""
        if suite == "all":
            names = SUITE_ORDER
        elif suite in SUITES:
            names = [suite]
        else:
            raise UnknownNameError("suite", suite, suite_names())
        deformations = [Deformation.parse(d).value for d in deformations]
        tasks: List[Tuple[str, Optional[int]]] = []
        for name in names:
            if SUITES[name].per_deformation:
                tasks.extend((name, d) for d in deformations)
            else:
                tasks.append((name, None))
        return tasks

    def run(self, suite: str, deformations: Sequence[int] = (1, 2)) -> List[SuiteResult]:
        tasks = self.plan(suite, deformations)
        if self.jobs <= 1 or len(tasks) == 1:
            return [execute(name, d, self.options) for name, d in tasks]
        logger.info(f"🚀 Running {len(tasks)} suite tasks on {self.jobs} workers")
        payload = [(name, d, self.options.model_dump()) for name, d in tasks]
        with ProcessPoolExecutor(max_workers=self.jobs) as pool:
            # map keeps the submission order
            return list(pool.map(_execute_task, payload))
