"""
Exchange - 16x16 exchange matrices of the deformed Lorentz group

The coordinate exchange matrix, the derivative exchange matrix and the 16x16
twist are contractions of four 4x4 inputs. A 16-dimensional index is a pair
of pairs (p)(q) with flat value 4*flat(p) + flat(q), flat(i, j) = 2(i-1)+(j-1).
That one convention reproduces the printed golden tables and is shared by
every builder here and by the Clifford relation.
"""

import logging
import os
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Callable, List, Optional, Tuple, Union

from hlorentz.config import config
from hlorentz.errors import ShapeError, SingularMatrixError
from hlorentz.models.report import CheckReport, check
from hlorentz.utils.exactalg import (
    ZERO,
    ExactMatrix,
    Scalar,
    double_index,
    kron,
    leg_swap,
    permutation,
)
from hlorentz.utils.rmat import (
    Deformation,
    MatrixName,
    Params,
    ParamsKey,
    build,
    matrix_set,
    params_dict,
    params_key,
)

logger = logging.getLogger(__name__)

_TWO = (1, 2)


class ExchangeKind(str, Enum):
    COORDINATES = "coordinates"
    DERIVATIVES = "derivatives"


def _require4(*mats: ExactMatrix):
    for m in mats:
        if m.shape != (4, 4):
            raise ShapeError(f"exchange inputs must be 4x4, got {m.rows}x{m.cols}")


def _contract(
    free: int,
    summed: int,
    term: Callable[..., Scalar],
    place: Callable[..., Tuple[int, int]],
) -> ExactMatrix:
    """Sum term(*free_idx, *summed_idx) into the 16x16 slot place(*free_idx)."""
    out: List[Scalar] = [ZERO] * 256
    for free_idx in product(_TWO, repeat=free):
        total = ZERO
        for summed_idx in product(_TWO, repeat=summed):
            value = term(*free_idx, *summed_idx)
            if value:
                total = total + value
        if total:
            row, col = place(*free_idx)
            out[row * 16 + col] = total
    return ExactMatrix(16, 16, out)


def _product(*factors: Scalar) -> Scalar:
    result = factors[0]
    if not result:
        return ZERO
    for f in factors[1:]:
        if not f:
            return ZERO
        result = result * f
    return result


def build_exchange(r1: ExactMatrix, r2: ExactMatrix, r3: ExactMatrix, r4: ExactMatrix) -> ExactMatrix:
    """
    Coordinate exchange matrix.

    Row (dl)(ac), column (ja')(b'd'):
        sum over b, i, k, c' of
        R1^-1[ab,ij] (R2^t2)^-1[kb,cd] R3[ia',b'c'] R4[d'c',kl]
    """
    _require4(r1, r2, r3, r4)
    r1_inv = r1.inverse()
    left = r2.partial_transpose_t2().inverse()

    def term(a, c, d, l, j, a2, b2, d2, b, i, k, c2):
        return _product(
            r1_inv.at(a, b, i, j),
            left.at(k, b, c, d),
            r3.at(i, a2, b2, c2),
            r4.at(d2, c2, k, l),
        )

    def place(a, c, d, l, j, a2, b2, d2):
        return double_index(d, l, a, c), double_index(j, a2, b2, d2)

    return _contract(8, 4, term, place)


def build_exchange_Y(r1: ExactMatrix, r2: ExactMatrix, r3: ExactMatrix, r4: ExactMatrix) -> ExactMatrix:
    """
    Derivative exchange matrix, Y1 Y2 RY = Y2 Y1.

    Row (ia')(c'd'), column (dm)(bc):
        sum over b', n, a, j of
        R1[b'd',mn] ((R2^-1)^t2)^-1[dc,an] R3^-1[a'j,b'c'] R4^-1[ab,ij]
    """
    _require4(r1, r2, r3, r4)
    middle = r2.inverse().partial_transpose_t2().inverse()
    r3_inv = r3.inverse()
    r4_inv = r4.inverse()

    def term(i, a2, c2, d2, d, m, b, c, b2, n, a, j):
        return _product(
            r1.at(b2, d2, m, n),
            middle.at(d, c, a, n),
            r3_inv.at(a2, j, b2, c2),
            r4_inv.at(a, b, i, j),
        )

    def place(i, a2, c2, d2, d, m, b, c):
        return double_index(i, a2, c2, d2), double_index(d, m, b, c)

    return _contract(8, 4, term, place)


def build_twist16(f: ExactMatrix, r2: ExactMatrix, g: ExactMatrix) -> ExactMatrix:
    """
    16x16 twist for R1 = F P F^-1 P and R4 = G P G^-1 P.

    Row (dl)(ac), column (rm)(sn):
        sum over b, k of F[ba,sr] (R2^t2)^-1[kb,cd] G~^-1[mn,kl]
    """
    _require4(f, r2, g)
    left = r2.partial_transpose_t2().inverse()
    g_tilde_inv = leg_swap(g).inverse()

    def term(a, c, d, l, r, m, s, n, b, k):
        return _product(
            f.at(b, a, s, r),
            left.at(k, b, c, d),
            g_tilde_inv.at(m, n, k, l),
        )

    def place(a, c, d, l, r, m, s, n):
        return double_index(d, l, a, c), double_index(r, m, s, n)

    return _contract(8, 2, term, place)


def _require16(m: ExactMatrix):
    if m.shape != (16, 16):
        raise ShapeError(f"expected a 16x16 matrix, got {m.rows}x{m.cols}")


def check_triangular16(m: ExactMatrix, name: str = "triangular16") -> CheckReport:
    """M (P~ M P~) = I_16 with P~ the swap of the two pair factors."""
    _require16(m)
    swap = permutation(4)
    product_ = m @ (swap @ m @ swap)
    identity = ExactMatrix.identity(16)
    return check(name, product_ == identity, product_.difference_text(identity))


def check_twist16(m: ExactMatrix, twist: ExactMatrix, name: str = "twist16") -> CheckReport:
    """M = F P~ F^-1 P~."""
    _require16(m)
    _require16(twist)
    swap = permutation(4)
    try:
        twisted = twist @ (swap @ twist.inverse() @ swap)
    except SingularMatrixError as e:
        return check(name, False, str(e))
    return check(name, twisted == m, twisted.difference_text(m))


def check_ybe16(m: ExactMatrix, name: str = "ybe16") -> CheckReport:
    _require16(m)
    i4 = ExactMatrix.identity(4)
    m12 = kron(m, i4)
    m23 = kron(i4, m)
    swap23 = kron(i4, permutation(4))
    m13 = swap23 @ m12 @ swap23
    lhs = m12 @ m13 @ m23
    rhs = m23 @ m13 @ m12
    return check(name, lhs == rhs, lhs.difference_text(rhs))


# --- per-deformation builders ----------------------------------------------

@lru_cache(maxsize=None)
def _exchange_cached(deformation: Deformation, kind: ExchangeKind, key: ParamsKey) -> ExactMatrix:
    mats = matrix_set(deformation, params_dict(key))
    builder = build_exchange if kind == ExchangeKind.COORDINATES else build_exchange_Y
    logger.debug(f"Building {kind.value} exchange matrix for j{deformation.value}")
    return builder(mats["R1"], mats["R2"], mats["R3"], mats["R4"])


def exchange_matrix(
    deformation: Union[int, Deformation],
    kind: ExchangeKind = ExchangeKind.COORDINATES,
    params: Params = None,
) -> ExactMatrix:
    return _exchange_cached(Deformation.parse(deformation), ExchangeKind(kind), params_key(params))


def twisting_pair(params: Params = None) -> Tuple[ExactMatrix, ExactMatrix]:
    """Twists F', G' with R_h = F' P F'^-1 P and R4 = G' P G'^-1 P (the leg-swapped printed F, G)."""
    return leg_swap(build(MatrixName.F, params=params)), leg_swap(build(MatrixName.G, params=params))


@lru_cache(maxsize=None)
def _twist_cached(deformation: Deformation, key: ParamsKey) -> ExactMatrix:
    params = params_dict(key)
    f, g = twisting_pair(params)
    return build_twist16(f, build(MatrixName.R2, deformation, params), g)


def twist_matrix(deformation: Union[int, Deformation], params: Params = None) -> ExactMatrix:
    return _twist_cached(Deformation.parse(deformation), params_key(params))


# --- golden tables -----------------------------------------------------------
#
# One file per deformation. Each file holds the two printed 8-column blocks:
# 16 lines for columns 1..8, a blank line, then 16 lines for columns 9..16.
# Entries are comma separated exact expressions in h and r; '#' starts a comment.

def load_appendix(deformation: Union[int, Deformation], path: Optional[str] = None) -> ExactMatrix:
    deformation = Deformation.parse(deformation)
    if path is None:
        path = os.path.join(config.APPENDIX_DATA_PATH, config.APPENDIX_FILES[deformation.value])
    blocks: List[List[List[Scalar]]] = [[]]
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                if blocks[-1]:
                    blocks.append([])
                continue
            blocks[-1].append([Scalar.parse(cell.strip()) for cell in line.split(",")])
    blocks = [b for b in blocks if b]
    if len(blocks) != 2 or any(len(b) != 16 or any(len(row) != 8 for row in b) for b in blocks):
        raise ShapeError(f"{path}: expected two blocks of 16 rows x 8 entries")
    rows = [blocks[0][i] + blocks[1][i] for i in range(16)]
    return ExactMatrix.from_rows(rows)


def compare_appendix(m: ExactMatrix, golden: ExactMatrix, name: str = "exchange-appendix") -> CheckReport:
    _require16(m)
    _require16(golden)
    equal = sum(1 for a, b in zip(m.entries, golden.entries) if a == b)
    summary = f"{equal}/256 entries equal"
    if equal == 256:
        return CheckReport(name=name, passed=True, witness=summary)
    return CheckReport(name=name, passed=False, witness=f"{summary}; {m.difference_text(golden)}")


def appendix_check(deformation: Union[int, Deformation]) -> CheckReport:
    deformation = Deformation.parse(deformation)
    return compare_appendix(
        exchange_matrix(deformation),
        load_appendix(deformation),
        name=f"exchange-appendix-j{deformation.value}",
    )
