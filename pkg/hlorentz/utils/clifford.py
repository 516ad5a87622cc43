"""
Clifford - deformed gamma matrices, the Dirac operator and the Clifford relation
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, List, Tuple, Union

from hlorentz.errors import UnknownNameError
from hlorentz.models.report import CheckReport, check, combine
from hlorentz.utils.exactalg import (
    H,
    ONE,
    R,
    ExactMatrix,
    double_index,
    kron,
    matrix,
    pair_index,
)
from hlorentz.utils.exchange import ExchangeKind, exchange_matrix
from hlorentz.utils.ncalg import NcMatrix, NcPoly, Sector, gens
from hlorentz.utils.rmat import (
    Deformation,
    MatrixName,
    Params,
    ParamsKey,
    build,
    params_dict,
    params_key,
)
from hlorentz.utils.spacetime import assemble, dalembertian, metric_g_Y, y_epsilon

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
PAIRS: List[Pair] = [(1, 1), (1, 2), (2, 1), (2, 2)]

# Y_21 = ∂β and Y_12 = ∂γ
GAMMA_LABELS: Dict[str, Pair] = {
    "alpha": (1, 1),
    "beta": (2, 1),
    "gamma": (1, 2),
    "delta": (2, 2),
}

SIGMA_UP = matrix([[0, 1], [0, 0]])
SIGMA_DOWN = matrix([[0, 0], [1, 0]])

PRINTED_GAMMAS = {
    Deformation.J1: {
        "alpha": matrix([[0, 0, 1, 0], [0, 0, 0, 0], [H * H + R, H, 0, 0], [H, 1, 0, 0]]),
        "beta": matrix([[0, 0, 0, 0], [0, 0, 1, 0], [-H, 0, 0, 0], [-1, 0, 0, 0]]),
        "gamma": matrix([[0, 0, 0, 1], [0, 0, 0, 0], [-H, -1, 0, 0], [0, 0, 0, 0]]),
        "delta": matrix([[0, 0, 0, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 0, 0, 0]]),
    },
    Deformation.J2: {
        "alpha": matrix([[0, 0, 1, 0], [0, 0, 0, 0], [-H * H, 2 * H, 0, 0], [2 * H, 1, 0, 0]]),
        "beta": matrix([[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [-1, 0, 0, 0]]),
        "gamma": matrix([[0, 0, 0, 1], [0, 0, 0, 0], [0, -1, 0, 0], [0, 0, 0, 0]]),
        "delta": matrix([[0, 0, 0, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 0, 0, 0]]),
    },
}


def unit(i: int, j: int) -> ExactMatrix:
    """e_ij, the 2x2 matrix unit."""
    return ExactMatrix.from_function(2, 2, lambda a, b: 1 if (a, b) == (i - 1, j - 1) else 0)


@dataclass(frozen=True)
class GammaSet:
    deformation: Deformation
    gammas: Dict[Pair, ExactMatrix]
    r_y: ExactMatrix
    g_y: ExactMatrix

    def __getitem__(self, label: Union[str, Pair]) -> ExactMatrix:
        if isinstance(label, str):
            key = label.lower().replace("gamma-", "")
            if key not in GAMMA_LABELS:
                raise UnknownNameError("gamma label", label, list(GAMMA_LABELS))
            return self.gammas[GAMMA_LABELS[key]]
        return self.gammas[label]


def dual_units(deformation: Union[int, Deformation], params: Params = None) -> Dict[Pair, ExactMatrix]:
    """Σ_kl e_kl (R̂^ε)^-1_{kl,ij} for every (ij)."""
    inv = build(MatrixName.REPS_HAT_INV, deformation, params)
    out = {}
    for i, j in PAIRS:
        total = ExactMatrix.zeros(2)
        for k, l in PAIRS:
            c = inv.at(k, l, i, j)
            if c:
                total = total + unit(k, l).scale(c)
        out[(i, j)] = total
    return out


@lru_cache(maxsize=None)
def _gammas_cached(deformation: Deformation, key: ParamsKey) -> GammaSet:
    params = params_dict(key)
    duals = dual_units(deformation, params)
    gammas = {
        (i, j): kron(SIGMA_UP, unit(i, j)) + kron(SIGMA_DOWN, duals[(i, j)])
        for i, j in PAIRS
    }
    logger.debug(f"Built gamma matrices for j{deformation.value}")
    return GammaSet(
        deformation=deformation,
        gammas=gammas,
        r_y=exchange_matrix(deformation, ExchangeKind.DERIVATIVES, params),
        g_y=metric_g_Y(deformation, 2, params),
    )


def build_gammas(deformation: Union[int, str, Deformation], params: Params = None) -> GammaSet:
    return _gammas_cached(Deformation.parse(deformation), params_key(params))


def printed_gammas_check(deformation: Union[int, Deformation]) -> CheckReport:
    deformation = Deformation.parse(deformation)
    gammas = build_gammas(deformation)
    reports = []
    for label, printed in PRINTED_GAMMAS[deformation].items():
        got = gammas[label]
        reports.append(check(f"gamma-{label}", got == printed, got.difference_text(printed)))
    return combine(f"gamma-tables-j{deformation.value}", reports)


def _scalar_factor(params: Params):
    value = 2 + H * H
    return value.subs(params) if params else value


def clifford_check(deformation: Union[int, Deformation], params: Params = None) -> CheckReport:
    """
    γ_ij γ_mn + ℛ^Y_{(ij)(mn),(rs)(kl)} γ_kl γ_rs = (2+h²) g^Y_{mn,ij} I_4 for all 16 label pairs.
    """
    deformation = Deformation.parse(deformation)
    gs = build_gammas(deformation, params)
    factor = _scalar_factor(params)
    identity = ExactMatrix.identity(4)
    products = {(a, b): gs.gammas[a] @ gs.gammas[b] for a, b in product(PAIRS, repeat=2)}
    reports = []
    for (i, j), (m, n) in product(PAIRS, repeat=2):
        row = double_index(i, j, m, n)
        lhs = products[((i, j), (m, n))]
        for (r, s), (k, l) in product(PAIRS, repeat=2):
            c = gs.r_y[row, double_index(r, s, k, l)]
            if c:
                lhs = lhs + products[((k, l), (r, s))].scale(c)
        rhs = identity.scale(factor * gs.g_y[pair_index(m, n), pair_index(i, j)])
        reports.append(check(f"clifford-{i}{j}-{m}{n}", lhs == rhs, lhs.difference_text(rhs)))
    reports.append(clifford_blocks_check(deformation, params))
    return combine(f"clifford-j{deformation.value}", reports)


def clifford_blocks_check(deformation: Union[int, Deformation], params: Params = None) -> CheckReport:
    """The 2x2 block identities: e_ij Ẽ_mn + ℛ^Y e_kl Ẽ_rs and Ẽ_ij e_mn + ℛ^Y Ẽ_kl e_rs."""
    deformation = Deformation.parse(deformation)
    gs = build_gammas(deformation, params)
    duals = dual_units(deformation, params)
    factor = _scalar_factor(params)
    identity = ExactMatrix.identity(2)
    blocks = {
        "upper": (0, lambda a, b: unit(*a) @ duals[b]),
        "lower": (2, lambda a, b: duals[a] @ unit(*b)),
    }
    reports = []
    for label, (offset, block) in blocks.items():
        for (i, j), (m, n) in product(PAIRS, repeat=2):
            row = double_index(i, j, m, n)
            direct = block((i, j), (m, n))
            full = gs.gammas[(i, j)] @ gs.gammas[(m, n)]
            part = ExactMatrix.from_function(2, 2, lambda a, b: full[a + offset, b + offset])
            reports.append(check(f"{label}-split-{i}{j}-{m}{n}", part == direct, part.difference_text(direct)))
            lhs = direct
            for (r, s), (k, l) in product(PAIRS, repeat=2):
                c = gs.r_y[row, double_index(r, s, k, l)]
                if c:
                    lhs = lhs + block((k, l), (r, s)).scale(c)
            rhs = identity.scale(factor * gs.g_y[pair_index(m, n), pair_index(i, j)])
            reports.append(check(f"{label}-{i}{j}-{m}{n}", lhs == rhs, lhs.difference_text(rhs)))
    return combine("clifford-blocks", reports)


def dirac_operator(deformation: Union[int, Deformation], params: Params = None) -> NcMatrix:
    """Σ γ_ij ∂_ij as a 4x4 matrix over the derivative algebra."""
    gs = build_gammas(deformation, params)
    y = NcMatrix.sector(Sector.Y)
    rows = [[NcPoly() for _ in range(4)] for _ in range(4)]
    for (i, j), gamma in gs.gammas.items():
        generator = y[i - 1, j - 1]
        for a, b in product(range(4), repeat=2):
            c = gamma[a, b]
            if c:
                rows[a][b] = rows[a][b] + generator.scale(c)
    return NcMatrix(rows)


def block_dirac_operator(deformation: Union[int, Deformation], params: Params = None) -> NcMatrix:
    """[[0, Y], [Y^ε, 0]]."""
    y = NcMatrix.sector(Sector.Y)
    y_eps = y_epsilon(deformation, Sector.Y, params)
    zero = NcPoly()
    rows = [[zero] * 4 for _ in range(4)]
    for a, b in product(range(2), repeat=2):
        rows[a][b + 2] = y[a, b]
        rows[a + 2][b] = y_eps[a, b]
    return NcMatrix(rows)


def dirac_square_check(deformation: Union[int, Deformation], params: Params = None) -> CheckReport:
    """D̸² = ((2+h²)/2) □_h I_4 in the derivative algebra."""
    deformation = Deformation.parse(deformation)
    algebra = assemble(deformation, [Sector.Y], params)
    dirac = dirac_operator(deformation, params)
    block = block_dirac_operator(deformation, params)
    reports = [check("block-form", dirac == block, "Σ γ_ij ∂_ij differs from [[0,Y],[Y^ε,0]]")]
    box, _ = dalembertian(deformation, params)
    expected = box.scale(_scalar_factor(params) / 2)
    square = dirac @ dirac
    failure = None
    for a, b in product(range(4), repeat=2):
        got = algebra.normal_form(square[a, b])
        want = expected if a == b else NcPoly()
        if got != want:
            failure = f"entry ({a + 1},{b + 1}): {got} != {want}"
            break
    reports.append(check("square", failure is None, failure))
    return combine(f"dirac-square-j{deformation.value}", reports)


def printed_y_epsilon(deformation: Union[int, Deformation]) -> NcMatrix:
    da, db, dg, dd = gens("∂α", "∂β", "∂γ", "∂δ")
    if Deformation.parse(deformation) == Deformation.J1:
        return NcMatrix([
            [da.scale(H * H + R) - (db + dg).scale(H) + dd, da.scale(H) - dg],
            [da.scale(H) - db, da],
        ])
    return NcMatrix([
        [da.scale(-H * H) + dd, da.scale(2 * H) - dg],
        [da.scale(2 * H) - db, da],
    ])


def y_epsilon_check(deformation: Union[int, Deformation]) -> CheckReport:
    got = y_epsilon(deformation)
    want = printed_y_epsilon(deformation)
    for a, b in product(range(2), repeat=2):
        if got[a, b] != want[a, b]:
            return check("y-epsilon", False, f"entry ({a + 1},{b + 1}): {got[a, b]} != {want[a, b]}")
    return check("y-epsilon", True)


CLASSICAL = {"h": 0, "r": 0}

# lower-left blocks of the undeformed Weyl-basis gammas
CLASSICAL_DUALS: Dict[Pair, ExactMatrix] = {
    (1, 1): unit(2, 2),
    (1, 2): unit(1, 2).scale(-1),
    (2, 1): unit(2, 1).scale(-1),
    (2, 2): unit(1, 1),
}


def gamma_classical_limit_check(deformation: Union[int, Deformation]) -> CheckReport:
    """At h = 0 (r = 0) the gammas take the Weyl form and anticommute into the antidiagonal metric."""
    deformation = Deformation.parse(deformation)
    gs = build_gammas(deformation, CLASSICAL)
    reports = []
    for (i, j), gamma in gs.gammas.items():
        weyl = kron(SIGMA_UP, unit(i, j)) + kron(SIGMA_DOWN, CLASSICAL_DUALS[(i, j)])
        reports.append(check(f"weyl-{i}{j}", gamma == weyl, gamma.difference_text(weyl)))
    metric = matrix([[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]).scale(ONE / 2)
    reports.append(check("metric", gs.g_y == metric, gs.g_y.difference_text(metric)))
    identity = ExactMatrix.identity(4)
    for a, b in product(PAIRS, repeat=2):
        anti = gs.gammas[a] @ gs.gammas[b] + gs.gammas[b] @ gs.gammas[a]
        want = identity.scale(2 * metric[pair_index(*b), pair_index(*a)])
        reports.append(check(f"anticommutator-{a[0]}{a[1]}-{b[0]}{b[1]}", anti == want, anti.difference_text(want)))
    return combine("gamma-classical-limit", reports)
