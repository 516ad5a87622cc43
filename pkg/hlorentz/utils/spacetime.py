"""
Spacetime - h-Minkowski differential algebras, invariant operators and their checks

An algebra is assembled from the sectors it contains: K (coordinates),
Y (derivatives), dK (one-forms) and P (momenta). Every pair of sectors
present contributes the relators of its reflection equation, and all
relators are oriented into one rewrite system.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Dict, FrozenSet, Iterable, List, Tuple, Union

from hlorentz.errors import TruncationError, UnknownNameError
from hlorentz.models.report import CheckReport, check, combine
from hlorentz.utils.exactalg import (
    H,
    I,
    ONE,
    ZERO,
    R,
    ExactMatrix,
    leg_swap,
    matrix,
    pair_index,
    permutation,
)
from hlorentz.utils.exchange import ExchangeKind, exchange_matrix
from hlorentz.utils.ncalg import (
    ALPHABET,
    GeneratorSet,
    NcMatrix,
    NcPoly,
    RewriteSystem,
    Sector,
    SECTOR_RANK,
    Template,
    confluence_check,
    exterior_derivative,
    gens,
    ideal_check,
    independent_relators,
    is_central,
    orient,
    relations_from_equation,
    star,
)
from hlorentz.utils.ncalg import star_closure_check as _star_closure
from hlorentz.utils.rmat import (
    Deformation,
    MatrixName,
    Params,
    ParamsKey,
    build,
    check_trace_ingredient,
    matrix_set,
    params_dict,
    params_key,
)

logger = logging.getLogger(__name__)

SectorPair = Tuple[Sector, Sector]

# sector pair -> (template, sectors in template role order)
SECTOR_TEMPLATES: Dict[SectorPair, Tuple[Template, Tuple[Sector, ...]]] = {
    (Sector.K, Sector.K): (Template.REFLECTION_CONTRAVARIANT, (Sector.K,)),
    (Sector.Y, Sector.Y): (Template.REFLECTION_COVARIANT, (Sector.Y,)),
    (Sector.P, Sector.P): (Template.REFLECTION_COVARIANT, (Sector.P,)),
    (Sector.K, Sector.Y): (Template.REFLECTION_MIXED_INHOMOGENEOUS, (Sector.K, Sector.Y)),
    (Sector.K, Sector.DK): (Template.FORMS_MIXED, (Sector.K, Sector.DK)),
    (Sector.DK, Sector.DK): (Template.FORMS_FORMS, (Sector.DK,)),
    (Sector.K, Sector.P): (Template.MOMENTA_MIXED_K, (Sector.K, Sector.P)),
    (Sector.P, Sector.Y): (Template.MOMENTA_MIXED_Y, (Sector.Y, Sector.P)),
}

SPACETIME_SECTORS = frozenset({Sector.K, Sector.Y, Sector.DK, Sector.P})


def _pair(a: Sector, b: Sector) -> SectorPair:
    return (a, b) if SECTOR_RANK[a] <= SECTOR_RANK[b] else (b, a)


@dataclass(frozen=True, eq=False)
class AlgebraSpec:
    deformation: Deformation
    sectors: Tuple[Sector, ...]
    system: RewriteSystem
    relators: Dict[SectorPair, List[NcPoly]]
    params: ParamsKey = ()

    def normal_form(self, p: NcPoly) -> NcPoly:
        return self.system.normal_form(p)

    @property
    def generators(self) -> GeneratorSet:
        return GeneratorSet(self.sectors)


def _pair_rank(pair: SectorPair) -> Tuple[int, int]:
    return SECTOR_RANK[pair[0]], SECTOR_RANK[pair[1]]


def _parse_sectors(sectors: Iterable[Union[Sector, str]]) -> FrozenSet[Sector]:
    parsed = set()
    for s in sectors:
        try:
            parsed.add(Sector(s))
        except ValueError:
            raise UnknownNameError("sector", str(s), [x.value for x in SPACETIME_SECTORS])
    if not parsed:
        raise ValueError("assemble needs at least one sector")
    if not parsed <= SPACETIME_SECTORS:
        raise ValueError(f"spacetime algebras use the sectors K, Y, dK, P; got {sorted(s.value for s in parsed)}")
    return frozenset(parsed)


@lru_cache(maxsize=None)
def _assemble_cached(deformation: Deformation, sectors: FrozenSet[Sector], key: ParamsKey) -> AlgebraSpec:
    mats = matrix_set(deformation, params_dict(key))
    inputs = [mats["R1"], mats["R2"], mats["R3"], mats["R4"]]
    ordered = tuple(sorted(sectors, key=SECTOR_RANK.get))
    logger.info(f"🚀 Assembling j{deformation.value} algebra over {', '.join(s.value for s in ordered)}")
    relators: Dict[SectorPair, List[NcPoly]] = {}
    for a, b in product(ordered, repeat=2):
        pair = _pair(a, b)
        if pair in relators or pair not in SECTOR_TEMPLATES:
            continue
        template, roles = SECTOR_TEMPLATES[pair]
        relators[pair] = relations_from_equation(template, inputs, roles)
    every = [rel for pair in sorted(relators, key=_pair_rank) for rel in relators[pair]]
    system = orient(every, GeneratorSet(ordered))
    logger.info(f"✅ j{deformation.value} algebra: {len(every)} relators, {len(system)} rules")
    return AlgebraSpec(deformation, ordered, system, relators, key)


def assemble(
    deformation: Union[int, str, Deformation],
    sectors: Iterable[Union[Sector, str]],
    params: Params = None,
) -> AlgebraSpec:
    """
    Assemble the algebra generated by the given sectors.

    Args:
        deformation: 1 or 2
        sectors: any nonempty subset of K, Y, dK, P
        params: optional rational values for h and r

    Returns:
        AlgebraSpec with one rewrite system over all requested sectors
    """
    return _assemble_cached(Deformation.parse(deformation), _parse_sectors(sectors), params_key(params))


# --- traces and epsilon-contractions ------------------------------------------

class TraceVariant(str, Enum):
    STANDARD = "standard"
    TILDE = "tilde"


def tr_h(b: NcMatrix, variant: Union[TraceVariant, str] = TraceVariant.STANDARD, params: Params = None) -> NcPoly:
    """tr(D_h B), or tr(D_h^† B) for the tilde variant."""
    variant = TraceVariant(variant)
    d = build(MatrixName.DH if variant == TraceVariant.STANDARD else MatrixName.DH_TILDE, params=params)
    return (d @ b).trace()


def epsilon_contract(m: ExactMatrix, x: NcMatrix) -> NcMatrix:
    """X'_{ij} = m_{ij,kl} X_{kl} for a 4x4 m acting on the entries of a 2x2 X."""
    rows = []
    for i in (1, 2):
        row = []
        for j in (1, 2):
            terms = NcPoly()
            for k, l in product((1, 2), repeat=2):
                c = m.at(i, j, k, l)
                if c:
                    terms = terms + x[k - 1, l - 1].scale(c)
            row.append(terms)
        rows.append(row)
    return NcMatrix(rows)


def k_epsilon(deformation: Union[int, Deformation], params: Params = None) -> NcMatrix:
    """K^ε = R̂^ε K, covariant."""
    return epsilon_contract(build(MatrixName.REPS_HAT, deformation, params), NcMatrix.sector(Sector.K))


def y_epsilon(
    deformation: Union[int, Deformation],
    sector: Union[Sector, str] = Sector.Y,
    params: Params = None,
) -> NcMatrix:
    """Y^ε = (R̂^ε)^-1 Y, contravariant; sector P gives P^ε."""
    return epsilon_contract(build(MatrixName.REPS_HAT_INV, deformation, params), NcMatrix.sector(sector))


def _two_plus_h2(params: Params = None):
    value = 2 + H * H
    return value.subs(params) if params else value


# --- invariants -------------------------------------------------------------------

class InvariantName(str, Enum):
    LH = "lh"
    G_H = "g_h"
    BOX = "box"
    GY = "gY"
    S = "s"
    D_OP = "d_op"
    SCALAR_PRODUCT_KP = "scalar_product_KP"
    P_SQUARE = "p_square"


@dataclass(frozen=True)
class InvariantExpr:
    name: InvariantName
    value: Union[NcPoly, ExactMatrix]


def metric_g_h(deformation: Union[int, Deformation], params: Params = None) -> ExactMatrix:
    """g_{h ij,kl} = D_{h si} R̂^ε_{js,kl} / (2+h²)."""
    d = build(MatrixName.DH, params=params)
    reps = build(MatrixName.REPS_HAT, deformation, params)
    norm = _two_plus_h2(params).inverse()

    def entry(row, col):
        i, j = divmod(row, 2)
        k, l = divmod(col, 2)
        total = ZERO
        for s in range(2):
            total = total + d[s, i] * reps.at(j + 1, s + 1, k + 1, l + 1)
        return total * norm

    return ExactMatrix.from_function(4, 4, entry)


def metric_g_Y(deformation: Union[int, Deformation], variant: int = 1, params: Params = None) -> ExactMatrix:
    """
    Metric for the derivatives, indexed [(ik), (mn)].

    variant 1: D_{h kj} (R̂^ε)^-1_{ji,mn} / (2+h²)
    variant 2: D_{h mj} (R̂^ε)^-1_{nj,ik} / (2+h²)
    """
    if variant not in (1, 2):
        raise ValueError(f"metric variant must be 1 or 2, got {variant}")
    d = build(MatrixName.DH, params=params)
    inv = build(MatrixName.REPS_HAT_INV, deformation, params)
    norm = _two_plus_h2(params).inverse()

    def entry(row, col):
        i, k = divmod(row, 2)
        m, n = divmod(col, 2)
        total = ZERO
        for j in range(2):
            if variant == 1:
                total = total + d[k, j] * inv.at(j + 1, i + 1, m + 1, n + 1)
            else:
                total = total + d[m, j] * inv.at(n + 1, j + 1, i + 1, k + 1)
        return total * norm

    return ExactMatrix.from_function(4, 4, entry)


def quadratic_form(g: ExactMatrix, x: NcMatrix, reverse: bool = False) -> NcPoly:
    """Σ g_{ij,kl} X_ij X_kl, or Σ g_{ik,mn} X_mn X_ik when reverse is set."""
    total = NcPoly()
    for (i, j), (k, l) in product(product((1, 2), repeat=2), repeat=2):
        c = g[pair_index(i, j), pair_index(k, l)]
        if not c:
            continue
        first, second = x[i - 1, j - 1], x[k - 1, l - 1]
        total = total + ((second * first) if reverse else (first * second)).scale(c)
    return total


def minkowski_length(deformation: Union[int, Deformation], params: Params = None) -> NcPoly:
    """l_h = tr_h(K K^ε) / (2+h²), in normal form."""
    algebra = assemble(deformation, [Sector.K], params)
    k = NcMatrix.sector(Sector.K)
    raw = tr_h(k @ k_epsilon(deformation, params), params=params).scale(_two_plus_h2(params).inverse())
    return algebra.normal_form(raw)


def dalembertian(deformation: Union[int, Deformation], params: Params = None) -> Tuple[NcPoly, ExactMatrix]:
    """(□_h, g^Y) with □_h = tr_h(Y^ε Y) / (2+h²) in normal form."""
    algebra = assemble(deformation, [Sector.Y], params)
    box = _box_raw(deformation, Sector.Y, params)
    return algebra.normal_form(box), metric_g_Y(deformation, 1, params)


def _box_raw(deformation, sector: Sector, params: Params) -> NcPoly:
    y = NcMatrix.sector(sector)
    return tr_h(y_epsilon(deformation, sector, params) @ y, params=params).scale(_two_plus_h2(params).inverse())


def p_square(deformation: Union[int, Deformation], params: Params = None) -> NcPoly:
    """P² = tr_h(P^ε P) / (2+h²), in normal form of the P-algebra."""
    return assemble(deformation, [Sector.P], params).normal_form(_box_raw(deformation, Sector.P, params))


def dilatation_operator(params: Params = None) -> NcPoly:
    """s = tr_h(K Y)."""
    return tr_h(NcMatrix.sector(Sector.K) @ NcMatrix.sector(Sector.Y), params=params)


def exterior_derivative_operator(params: Params = None) -> NcPoly:
    """d = tr_h(dK Y)."""
    return tr_h(NcMatrix.sector(Sector.DK) @ NcMatrix.sector(Sector.Y), params=params)


def scalar_product_KP(params: Params = None) -> NcPoly:
    """(K, P) = tr_h(K P)."""
    return tr_h(NcMatrix.sector(Sector.K) @ NcMatrix.sector(Sector.P), params=params)


def zeta() -> NcPoly:
    """Linear central element of the second deformation."""
    be, ga, de = gens("β", "γ", "δ")
    return be + ga - de.scale(H * 3 / 2)


def invariant(name: Union[InvariantName, str], deformation: Union[int, Deformation], params: Params = None) -> InvariantExpr:
    try:
        name = InvariantName(name)
    except ValueError:
        raise UnknownNameError("invariant", str(name), [n.value for n in InvariantName])
    builders = {
        InvariantName.LH: lambda: minkowski_length(deformation, params),
        InvariantName.G_H: lambda: metric_g_h(deformation, params),
        InvariantName.BOX: lambda: dalembertian(deformation, params)[0],
        InvariantName.GY: lambda: metric_g_Y(deformation, 1, params),
        InvariantName.S: lambda: dilatation_operator(params),
        InvariantName.D_OP: lambda: exterior_derivative_operator(params),
        InvariantName.SCALAR_PRODUCT_KP: lambda: scalar_product_KP(params),
        InvariantName.P_SQUARE: lambda: p_square(deformation, params),
    }
    return InvariantExpr(name, builders[name]())


# --- printed forms ------------------------------------------------------------------

def printed_length(deformation: Union[int, Deformation]) -> NcPoly:
    al, be, ga, de = gens("α", "β", "γ", "δ")
    factor = 1 if Deformation.parse(deformation) == Deformation.J1 else 2
    body = al * de - be * ga + (be * de).scale(H * factor)
    return body.scale(2 / (H * H + 2))


def printed_dilatation(forms: bool = False) -> NcPoly:
    prefix = "d" if forms else ""
    al, be, ga, de = gens(*(prefix + n for n in ("α", "β", "γ", "δ")))
    da, db, dg, dd = gens("∂α", "∂β", "∂γ", "∂δ")
    return al * da + be * db + ga * dg + de * dd - (ga * da + de * db).scale(2 * H)


def printed_g_Y(deformation: Union[int, Deformation]) -> ExactMatrix:
    if Deformation.parse(deformation) == Deformation.J1:
        table = matrix([
            [R - H * H, -H, H, 1],
            [H, 0, -1, 0],
            [-H, -1, 0, 0],
            [1, 0, 0, 0],
        ])
    else:
        table = matrix([
            [-5 * H * H, 0, 2 * H, 1],
            [2 * H, 0, -1, 0],
            [0, -1, 0, 0],
            [1, 0, 0, 0],
        ])
    return table.scale((2 + H * H).inverse())


def _subs_poly(p: NcPoly, params: Params) -> NcPoly:
    return p.subs(params) if params else p


def _subs_matrix(m: ExactMatrix, params: Params) -> ExactMatrix:
    return m.subs(params) if params else m


# --- checks -----------------------------------------------------------------------

def _poly_check(name: str, got: NcPoly, want: NcPoly) -> CheckReport:
    return check(name, got == want, f"{got} != {want}")


def _matrix_nf_check(name: str, algebra: AlgebraSpec, got: NcMatrix, want: NcMatrix) -> CheckReport:
    for i in range(got.n):
        for j in range(got.n):
            diff = algebra.normal_form(got[i, j] - want[i, j])
            if diff:
                return check(name, False, f"entry ({i + 1},{j + 1}) differs by {diff}")
    return check(name, True)


def _scalar_identity(n: int, value: NcPoly) -> NcMatrix:
    return NcMatrix([[value if i == j else NcPoly() for j in range(n)] for i in range(n)])


def gdet_check(deformation: Union[int, Deformation], params: Params = None) -> CheckReport:
    """-P₋ K₁ R̂^(3) K₁ P₋† = l_h P₋ P₋† over the K-algebra."""
    algebra = assemble(deformation, [Sector.K], params)
    p_minus = build(MatrixName.PH_MINUS, params=params)
    p_dag = p_minus.conj_transpose()
    rhat3 = permutation(2) @ build(MatrixName.R3, deformation, params)
    k1 = NcMatrix.sector(Sector.K).leg1()
    lhs = -(p_minus @ k1 @ rhat3 @ k1 @ p_dag)
    length = minkowski_length(deformation, params)
    projector = p_minus @ p_dag
    rhs = NcMatrix([[length.scale(projector[i, j]) for j in range(4)] for i in range(4)])
    return _matrix_nf_check("gdet", algebra, lhs, rhs)


def minkowski_length_check(deformation: Union[int, Deformation], params: Params = None) -> CheckReport:
    deformation = Deformation.parse(deformation)
    algebra = assemble(deformation, [Sector.K], params)
    length = minkowski_length(deformation, params)
    printed = algebra.normal_form(_subs_poly(printed_length(deformation), params))
    form = algebra.normal_form(quadratic_form(metric_g_h(deformation, params), NcMatrix.sector(Sector.K)))
    return combine("minkowski-length", [
        _poly_check("printed", length, printed),
        _poly_check("quadratic-form", form, length),
        gdet_check(deformation, params),
        is_central(length, algebra.system, name="central"),
        _poly_check("star-invariant", algebra.normal_form(star(length)), length),
    ])


def dalembertian_check(deformation: Union[int, Deformation], params: Params = None) -> CheckReport:
    deformation = Deformation.parse(deformation)
    algebra = assemble(deformation, [Sector.Y], params)
    box, g_y = dalembertian(deformation, params)
    g_y2 = metric_g_Y(deformation, 2, params)
    printed = _subs_matrix(printed_g_Y(deformation), params)
    y = NcMatrix.sector(Sector.Y)
    y_eps = y_epsilon(deformation, Sector.Y, params)
    factor = _two_plus_h2(params) / 2
    scaled = _scalar_identity(2, box.scale(factor))
    form = algebra.normal_form(quadratic_form(g_y, y, reverse=True))
    return combine("dalembertian", [
        check("gY-variants", g_y == g_y2, g_y.difference_text(g_y2)),
        check("gY-printed", g_y == printed, g_y.difference_text(printed)),
        check("gY-symmetry", g_y.transpose() == leg_swap(g_y), g_y.transpose().difference_text(leg_swap(g_y))),
        _poly_check("quadratic-form", form, box),
        is_central(box, algebra.system, name="central"),
        _matrix_nf_check("yeps-y", algebra, y_eps @ y, scaled),
        _matrix_nf_check("y-yeps", algebra, y @ y_eps, scaled),
        trace_variants_check(deformation, params),
    ])


def trace_variants_check(deformation: Union[int, Deformation], params: Params = None) -> CheckReport:
    """tr_h(Y^ε Y) = t̃r_h(Y Y^ε) in the Y-algebra."""
    algebra = assemble(deformation, [Sector.Y], params)
    y = NcMatrix.sector(Sector.Y)
    y_eps = y_epsilon(deformation, Sector.Y, params)
    left = algebra.normal_form(tr_h(y_eps @ y, params=params))
    right = algebra.normal_form(tr_h(y @ y_eps, TraceVariant.TILDE, params))
    return _poly_check("trace-variants", left, right)


def dilatation_check(deformation: Union[int, Deformation], params: Params = None) -> CheckReport:
    """s K_ij - K_ij s - K_ij reduces to zero, s = tr_h(K Y)."""
    deformation = Deformation.parse(deformation)
    algebra = assemble(deformation, [Sector.K, Sector.Y], params)
    s = dilatation_operator(params)
    reports = [_poly_check("printed", s, _subs_poly(printed_dilatation(), params))]
    k = NcMatrix.sector(Sector.K)
    for i, j in product(range(2), repeat=2):
        x = k[i, j]
        residual = algebra.normal_form(s * x - x * s - x)
        name = ALPHABET[next(iter(x.terms))[0]].name
        reports.append(check(f"sK-{name}", not residual, f"s{name} - {name}s - {name} = {residual}"))
    reports.append(check_trace_ingredient())
    return combine("dilatation", reports)


def planewave_check(
    deformation: Union[int, Deformation],
    order: int,
    params: Params = None,
) -> CheckReport:
    """
    Plane-wave identities up to the truncation order.

    Steps: (K,P) central for K and P; Y(K,P) = (K,P)Y + P; the n-th power
    rule for n <= order; the truncated exponential under Y and □_h; P²
    central. The first-order identity is kept as the witness of its step.
    """
    if order < 1:
        raise TruncationError(order, 1, "plane waves")
    deformation = Deformation.parse(deformation)
    algebra = assemble(deformation, [Sector.K, Sector.Y, Sector.P], params)
    nf = algebra.normal_form
    kp = nf(scalar_product_KP(params))
    k = NcMatrix.sector(Sector.K)
    y = NcMatrix.sector(Sector.Y)
    p = NcMatrix.sector(Sector.P)
    positions = list(product(range(2), repeat=2))
    reports: List[CheckReport] = []

    # (K,P) central
    reports.append(is_central(kp, algebra.system, GeneratorSet([Sector.K, Sector.P]), "kp-central"))

    # first-order rule
    lines = []
    failure = None
    for i, j in positions:
        lhs = nf(y[i, j] * kp)
        rhs = nf(kp * y[i, j] + p[i, j])
        lines.append(f"{y[i, j]}·(K,P) = (K,P)·{y[i, j]} + {p[i, j]}")
        if lhs != rhs and failure is None:
            failure = f"{y[i, j]}·(K,P) - (K,P)·{y[i, j]} - {p[i, j]} = {nf(lhs - rhs)}"
    reports.append(CheckReport(
        name="y-kp",
        passed=failure is None,
        witness=failure if failure is not None else "; ".join(lines),
    ))

    # power rule
    powers = [NcPoly.const(1)]
    for _ in range(order):
        powers.append(nf(powers[-1] * kp))
    power_reports = []
    for n in range(1, order + 1):
        for i, j in positions:
            lhs = nf(y[i, j] * powers[n])
            rhs = nf(powers[n] * y[i, j] + (powers[n - 1] * p[i, j]).scale(n))
            diff = nf(lhs - rhs)
            power_reports.append(check(f"power-{n}", not diff, f"n={n}, {y[i, j]}: residual {diff}"))
    reports.append(combine("y-kp-powers", power_reports))

    # truncated exponential
    if order >= 2:
        reports.append(_exponential_check(algebra, deformation, powers, order, params))

    # P² central
    reports.append(is_central(p_square(deformation, params), algebra.system, name="p2-central"))
    result = combine("planewave", reports)
    if result.passed:
        result = result.model_copy(update={"witness": reports[1].witness})
    return result


def _truncated_exponential(powers: List[NcPoly], order: int) -> NcPoly:
    total = NcPoly()
    for n in range(order + 1):
        total = total + powers[n].scale((I ** n) / factorial(n))
    return total


def _without_derivatives(p: NcPoly) -> NcPoly:
    """Acting on a constant: drop every normal-ordered word that still holds a Y letter."""
    return p.filter_words(lambda word: all(ALPHABET[i].sector != Sector.Y for i in word))


def _exponential_check(algebra: AlgebraSpec, deformation, powers: List[NcPoly], order: int, params: Params) -> CheckReport:
    if order < 2:
        raise TruncationError(order, 2, "the d'Alembertian on exp i(K,P)")
    nf = algebra.normal_form
    y = NcMatrix.sector(Sector.Y)
    p = NcMatrix.sector(Sector.P)
    e_n = _truncated_exponential(powers, order)
    e_n1 = _truncated_exponential(powers, order - 1)
    e_n2 = _truncated_exponential(powers, order - 2)
    reports = []
    for i, j in product(range(2), repeat=2):
        got = _without_derivatives(nf(y[i, j] * e_n))
        want = nf((p[i, j] * e_n1).scale(I))
        reports.append(check(f"y-exp-{i + 1}{j + 1}", got == want, f"{y[i, j]}: residual {nf(got - want)}"))
    box = _box_raw(deformation, Sector.Y, params)
    got = _without_derivatives(nf(box * e_n))
    p2 = _box_raw(deformation, Sector.P, params)
    want = nf(-(p2 * e_n2))
    reports.append(check("box-exp", got == want, f"residual {nf(got - want)}"))
    return combine("exponential", reports)


def central_check(deformation: Union[int, Deformation], params: Params = None) -> CheckReport:
    """l_h, ζ (second deformation), □_h, P² and (K,P) are central where claimed."""
    deformation = Deformation.parse(deformation)
    k_alg = assemble(deformation, [Sector.K], params)
    y_alg = assemble(deformation, [Sector.Y], params)
    full = assemble(deformation, [Sector.K, Sector.Y, Sector.P], params)
    reports = [is_central(minkowski_length(deformation, params), k_alg.system, name="lh")]
    if deformation == Deformation.J2:
        reports.append(is_central(_subs_poly(zeta(), params), k_alg.system, name="zeta"))
    reports.append(is_central(dalembertian(deformation, params)[0], y_alg.system, name="box"))
    reports.append(is_central(full.normal_form(p_square(deformation, params)), full.system, name="p2"))
    kp = full.normal_form(scalar_product_KP(params))
    reports.append(is_central(kp, full.system, GeneratorSet([Sector.K, Sector.P]), "kp"))
    return combine("central", reports)


def star_closure_check(deformation: Union[int, Deformation], params: Params = None) -> CheckReport:
    """Relators of every sector pair are stable under the star."""
    algebra = assemble(deformation, SPACETIME_SECTORS, params)
    reports = []
    for pair in sorted(algebra.relators, key=_pair_rank):
        name = f"star-{pair[0].value}-{pair[1].value}"
        reports.append(_star_closure(algebra.system, algebra.relators[pair], name))
    return combine("star-closure", reports)


def algebra_confluence_check(deformation: Union[int, Deformation], params: Params = None) -> CheckReport:
    reports = []
    for sectors in ([Sector.K], [Sector.Y], [Sector.K, Sector.Y], [Sector.K, Sector.DK], [Sector.K, Sector.Y, Sector.P]):
        algebra = assemble(deformation, sectors, params)
        label = "-".join(s.value for s in algebra.sectors)
        reports.append(confluence_check(algebra.system, name=f"confluence-{label}"))
    return combine("confluence", reports)


FORMS_SECTORS = GeneratorSet([Sector.K, Sector.DK])


def derived_form_relators(kk: Iterable[NcPoly], kdk: Iterable[NcPoly]) -> List[NcPoly]:
    """Independent dK-dK relators obtained as d of the K-dK relators, reduced by the K-K and K-dK rules only."""
    kk, kdk = list(kk), list(kdk)
    base = orient(kk + kdk, FORMS_SECTORS)
    return independent_relators([base.normal_form(exterior_derivative(rel)) for rel in kdk])


def dk_relations_check(
    kk: Iterable[NcPoly],
    kdk: Iterable[NcPoly],
    dkdk: Iterable[NcPoly],
    name: str = "dk-dk-implied",
) -> CheckReport:
    """The stated dK-dK relators span the same ideal as the derived ones, given K-K and K-dK."""
    kk, kdk, dkdk = list(kk), list(kdk), list(dkdk)
    derived = derived_form_relators(kk, kdk)
    with_derived = orient(kk + kdk + derived, FORMS_SECTORS)
    with_stated = orient(kk + kdk + dkdk, FORMS_SECTORS)
    return combine(name, [
        ideal_check(with_derived, dkdk, "stated-in-derived"),
        ideal_check(with_stated, derived, "derived-in-stated"),
    ])


def forms_consistency_check(deformation: Union[int, Deformation], params: Params = None) -> CheckReport:
    """dK-dK relators follow from d of the K-dK relators; d of the K-K relators holds; d = Σ dK ∂."""
    algebra = assemble(deformation, [Sector.K, Sector.DK], params)
    kk = algebra.relators[(Sector.K, Sector.K)]
    kdk = algebra.relators[(Sector.K, Sector.DK)]
    base = orient(kk + kdk, FORMS_SECTORS)
    return combine("forms", [
        dk_relations_check(kk, kdk, algebra.relators[(Sector.DK, Sector.DK)]),
        ideal_check(base, [exterior_derivative(rel) for rel in kk], "d-of-coordinates"),
        _poly_check("d-operator", exterior_derivative_operator(params), _subs_poly(printed_dilatation(forms=True), params)),
    ])


def exchange_consistency_check(deformation: Union[int, Deformation], params: Params = None) -> CheckReport:
    """The 16x16 exchange relations for K and for Y hold in the assembled algebras."""
    deformation = Deformation.parse(deformation)
    k_alg = assemble(deformation, [Sector.K], params)
    y_alg = assemble(deformation, [Sector.Y], params)
    coords = exchange_matrix(deformation, ExchangeKind.COORDINATES, params)
    derivs = exchange_matrix(deformation, ExchangeKind.DERIVATIVES, params)
    k = NcMatrix.sector(Sector.K)
    y = NcMatrix.sector(Sector.Y)
    pairs = list(product((1, 2), repeat=2))
    reports = []

    k_relators = []
    for row, ((d, l), (a, c)) in enumerate(product(pairs, repeat=2)):
        rhs = NcPoly()
        for col, ((j, a2), (b2, d2)) in enumerate(product(pairs, repeat=2)):
            coeff = coords[row, col]
            if coeff:
                rhs = rhs + (k[j - 1, a2 - 1] * k[b2 - 1, d2 - 1]).scale(coeff)
        k_relators.append(k[a - 1, c - 1] * k[d - 1, l - 1] - rhs)
    reports.append(ideal_check(k_alg.system, k_relators, "exchange-K"))

    y_relators = []
    for col, ((d, m), (b, c)) in enumerate(product(pairs, repeat=2)):
        lhs = NcPoly()
        for row, ((i, a2), (c2, d2)) in enumerate(product(pairs, repeat=2)):
            coeff = derivs[row, col]
            if coeff:
                lhs = lhs + (y[i - 1, a2 - 1] * y[c2 - 1, d2 - 1]).scale(coeff)
        y_relators.append(lhs - y[b - 1, c - 1] * y[d - 1, m - 1])
    reports.append(ideal_check(y_alg.system, y_relators, "exchange-Y"))
    return combine("exchange-consistency", reports)


def metric_check(deformation: Union[int, Deformation], params: Params = None) -> CheckReport:
    return combine("metrics", [
        minkowski_length_check(deformation, params),
        dalembertian_check(deformation, params),
    ])


CLASSICAL = {"h": 0, "r": 0}


def classical_limit_check(deformation: Union[int, Deformation]) -> CheckReport:
    """At h = 0 (r = 0) the matrices are trivial, the algebras commute and the invariants are classical."""
    deformation = Deformation.parse(deformation)
    reports = []
    for label, m in matrix_set(deformation, CLASSICAL).items():
        reports.append(check(f"{label}-identity", m.is_identity(), m.difference_text(ExactMatrix.identity(4))))
    for sector in (Sector.K, Sector.Y, Sector.P):
        algebra = assemble(deformation, [sector], CLASSICAL)
        letters = [NcPoly({(g.index,): ONE}) for g in algebra.generators]
        bad = next(
            (f"[{a}, {b}] = {algebra.normal_form(a.commutator(b))}"
             for a in letters for b in letters if algebra.normal_form(a.commutator(b))),
            None,
        )
        reports.append(check(f"{sector.value}-commutative", bad is None, bad))
    al, be, ga, de = gens("α", "β", "γ", "δ")
    length = minkowski_length(deformation, CLASSICAL)
    k_alg = assemble(deformation, [Sector.K], CLASSICAL)
    reports.append(_poly_check("length", length, k_alg.normal_form(al * de - be * ga)))
    da, db, dg, dd = gens("∂α", "∂β", "∂γ", "∂δ")
    box, _ = dalembertian(deformation, CLASSICAL)
    y_alg = assemble(deformation, [Sector.Y], CLASSICAL)
    reports.append(_poly_check("box", box, y_alg.normal_form(da * dd - db * dg)))
    euler = al * da + be * db + ga * dg + de * dd
    reports.append(_poly_check("dilatation", dilatation_operator(CLASSICAL), euler))
    return combine("classical-limit", reports)
