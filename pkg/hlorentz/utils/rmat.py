"""
R-Matrices - named constant matrices of the Jordanian deformation and their structural checks
"""

import logging
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Tuple, Union

from hlorentz.errors import ShapeError, SingularMatrixError, UnknownNameError
from hlorentz.models.report import CheckReport, check, combine
from hlorentz.utils.exactalg import (
    H,
    ONE,
    R,
    ExactMatrix,
    kron,
    leg_swap,
    matrix,
    permutation,
)

logger = logging.getLogger(__name__)


class Deformation(int, Enum):
    J1 = 1
    J2 = 2

    @classmethod
    def parse(cls, value: Union[int, str, "Deformation"]) -> "Deformation":
        if isinstance(value, Deformation):
            return value
        text = str(value).lower().lstrip("j")
        try:
            return cls(int(text))
        except ValueError:
            raise UnknownNameError("deformation", str(value), ["1", "2"])


class MatrixName(str, Enum):
    RH = "rh"
    RHAT = "rhat"
    R2 = "r2"
    R3 = "r3"
    R4 = "r4"
    EPS_H = "epsh"
    EPS_H_INV = "epshinv"
    DH = "dh"
    DH_TILDE = "dhtilde"
    PH_PLUS = "phplus"
    PH_MINUS = "phminus"
    F = "f"
    G = "g"
    REPS_HAT = "repshat"
    REPS_HAT_INV = "repshatinv"

    @classmethod
    def parse(cls, value: Union[str, "MatrixName"]) -> "MatrixName":
        if isinstance(value, MatrixName):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise UnknownNameError("matrix", str(value), [m.value for m in cls])


DEFORMATION_DEPENDENT = {
    MatrixName.R2,
    MatrixName.R3,
    MatrixName.R4,
    MatrixName.REPS_HAT,
    MatrixName.REPS_HAT_INV,
}

HALF = ONE / 2

# sl(2) generators used by the twist
SL2_H = matrix([[1, 0], [0, -1]])
SL2_E = matrix([[0, 1], [0, 0]])

# Printed tables the constructions are compared against
PRINTED_DH = matrix([[1, -2 * H], [0, 1]])
PRINTED_EPS_H_INV = matrix([[0, -1], [1, H]])
PRINTED_REPS_HAT_INV = {
    Deformation.J1: matrix([
        [H * H + R, -H, -H, 1],
        [H, -1, 0, 0],
        [H, 0, -1, 0],
        [1, 0, 0, 0],
    ]),
    Deformation.J2: matrix([
        [-H * H, 0, 0, 1],
        [2 * H, -1, 0, 0],
        [2 * H, 0, -1, 0],
        [1, 0, 0, 0],
    ]),
}
PRINTED_G = matrix([
    [1, 0, 0, 0],
    [H / 2, 1, 0, 0],
    [-H / 2, 0, 1, 0],
    [H * H / 2, H / 2, -H / 2, 1],
])


def _rh() -> ExactMatrix:
    return matrix([
        [1, -H, H, H * H],
        [0, 1, 0, -H],
        [0, 0, 1, H],
        [0, 0, 0, 1],
    ])


def _r3(deformation: Deformation) -> ExactMatrix:
    if deformation == Deformation.J1:
        return matrix([
            [1, 0, 0, 0],
            [0, 1, R, 0],
            [0, 0, 1, 0],
            [0, 0, 0, 1],
        ])
    return matrix([
        [1, 0, -H, 0],
        [-H, 1, 0, H],
        [0, 0, 1, 0],
        [0, 0, H, 1],
    ])


def _eps_h() -> ExactMatrix:
    return matrix([[H, 1], [-1, 0]])


def _dh() -> ExactMatrix:
    """D_h = tr_(2)(P((R_h^t1)^-1)^t1)."""
    rh = _rh()
    inner = rh.partial_transpose_t1().inverse().partial_transpose_t1()
    return (permutation(2) @ inner).partial_trace_space2()


def _reps_hat(deformation: Deformation) -> ExactMatrix:
    """R^eps = (I x E) P R3 (I x E) with E = (eps_h^-1)^t."""
    e = kron(ExactMatrix.identity(2), _eps_h().inverse().transpose())
    return e @ permutation(2) @ _r3(deformation) @ e


def _twist_f() -> ExactMatrix:
    half_h = H / 2
    return ExactMatrix.identity(4) + (kron(SL2_H, SL2_E) - kron(SL2_E, SL2_H)).scale(half_h)


@lru_cache(maxsize=None)
def _build_symbolic(name: MatrixName, deformation: Optional[Deformation]) -> ExactMatrix:
    if name == MatrixName.RH:
        return _rh()
    if name == MatrixName.RHAT:
        return permutation(2) @ _rh()
    if name == MatrixName.R3:
        return _r3(deformation)
    if name == MatrixName.R2:
        return leg_swap(_r3(deformation))
    if name == MatrixName.R4:
        # deformation-independent; kept in the deformation family with R2, R3
        return _rh().conj_transpose()
    if name == MatrixName.EPS_H:
        return _eps_h()
    if name == MatrixName.EPS_H_INV:
        return _eps_h().inverse()
    if name == MatrixName.DH:
        return _dh()
    if name == MatrixName.DH_TILDE:
        return _dh().conj_transpose()
    if name in (MatrixName.PH_PLUS, MatrixName.PH_MINUS):
        rhat = permutation(2) @ _rh()
        identity = ExactMatrix.identity(4)
        sign = rhat if name == MatrixName.PH_PLUS else -rhat
        return (identity + sign).scale(HALF)
    if name == MatrixName.F:
        return _twist_f()
    if name == MatrixName.G:
        return leg_swap(_twist_f().transpose()).inverse()
    if name == MatrixName.REPS_HAT:
        return _reps_hat(deformation)
    if name == MatrixName.REPS_HAT_INV:
        return _reps_hat(deformation).inverse()
    raise UnknownNameError("matrix", str(name))


def build(
    name: Union[str, MatrixName],
    deformation: Union[int, str, Deformation, None] = None,
    params: Optional[Mapping[str, Union[int, Fraction, str]]] = None,
) -> ExactMatrix:
    """
    Build a named constant matrix.

    Args:
        name: one of MatrixName (lower-case string accepted)
        deformation: 1 or 2; required for R2, R3, R4, RepsHat, RepsHatInv
        params: optional rational values for h and r

    Returns:
        ExactMatrix, symbolic in h and r unless params specialize them
    """
    name = MatrixName.parse(name)
    if name in DEFORMATION_DEPENDENT:
        if deformation is None:
            raise ValueError(f"matrix '{name.value}' needs a deformation (1 or 2)")
        deformation = Deformation.parse(deformation)
    else:
        deformation = None
    value = _build_symbolic(name, deformation)
    return value.subs(params) if params else value


Params = Optional[Mapping[str, Union[int, Fraction, str]]]
ParamsKey = Tuple[Tuple[str, str], ...]


def params_key(params: Params) -> ParamsKey:
    """Hashable, order-independent form of a specialization mapping."""
    if not params:
        return ()
    return tuple(sorted((name, str(Fraction(value))) for name, value in params.items()))


def params_dict(key: ParamsKey) -> Dict[str, Fraction]:
    return {name: Fraction(value) for name, value in key}


def matrix_set(deformation: Union[int, Deformation], params: Params = None) -> Dict[str, ExactMatrix]:
    """The four reflection-equation inputs (R1, R2, R3, R4) of one deformation."""
    deformation = Deformation.parse(deformation)
    return {
        "R1": build(MatrixName.RH, params=params),
        "R2": build(MatrixName.R2, deformation, params),
        "R3": build(MatrixName.R3, deformation, params),
        "R4": build(MatrixName.R4, deformation, params),
    }


# --- checks ----------------------------------------------------------------

def _require_shape(m: ExactMatrix, n: int, what: str):
    if m.shape != (n, n):
        raise ShapeError(f"{what} must be {n}x{n}, got {m.rows}x{m.cols}")


def _embed_triple(m: ExactMatrix, legs: str) -> ExactMatrix:
    """Place a 4x4 matrix on legs 12, 13 or 23 of C^2 x C^2 x C^2."""
    i2 = ExactMatrix.identity(2)
    if legs == "12":
        return kron(m, i2)
    if legs == "23":
        return kron(i2, m)
    swap23 = kron(i2, permutation(2))
    return swap23 @ kron(m, i2) @ swap23


def check_ybe(r: ExactMatrix) -> CheckReport:
    _require_shape(r, 4, "R")
    r12, r13, r23 = (_embed_triple(r, legs) for legs in ("12", "13", "23"))
    lhs = r12 @ r13 @ r23
    rhs = r23 @ r13 @ r12
    return check("ybe", lhs == rhs, lhs.difference_text(rhs))


def check_frt_mixed(rh: ExactMatrix, r3: ExactMatrix) -> CheckReport:
    """R_12 R3_13 R3_23 = R3_23 R3_13 R_12."""
    _require_shape(rh, 4, "R_h")
    _require_shape(r3, 4, "R3")
    rh12 = _embed_triple(rh, "12")
    r13 = _embed_triple(r3, "13")
    r23 = _embed_triple(r3, "23")
    lhs = rh12 @ r13 @ r23
    rhs = r23 @ r13 @ rh12
    return check("frt-mixed", lhs == rhs, lhs.difference_text(rhs))


def check_triangular4(r: ExactMatrix, name: str = "triangular4") -> CheckReport:
    _require_shape(r, 4, "R")
    product = r @ leg_swap(r)
    identity = ExactMatrix.identity(4)
    return check(name, product == identity, product.difference_text(identity))


def check_projectors() -> CheckReport:
    identity = ExactMatrix.identity(4)
    zero = ExactMatrix.zeros(4)
    rhat = build(MatrixName.RHAT)
    plus = build(MatrixName.PH_PLUS)
    minus = build(MatrixName.PH_MINUS)
    eps = build(MatrixName.EPS_H)
    eps_inv = build(MatrixName.EPS_H_INV)

    reports: List[CheckReport] = []

    def expect(label, got, want):
        reports.append(check(label, got == want, got.difference_text(want)))

    expect("plus-idempotent", plus @ plus, plus)
    expect("minus-idempotent", minus @ minus, minus)
    expect("orthogonal", plus @ minus, zero)
    expect("spectral", plus - minus, rhat)
    expect("rhat-involution", rhat @ rhat, identity)
    expect("eps-inverse-printed", eps_inv, PRINTED_EPS_H_INV)
    reports.append(check("rank-plus", plus.rank() == 3, f"rank {plus.rank()}"))
    reports.append(check("rank-minus", minus.rank() == 1, f"rank {minus.rank()}"))

    def eps_entry(row, col):
        i, j = divmod(row, 2)
        k, l = divmod(col, 2)
        return -HALF * eps[i, j] * eps_inv[k, l]

    expect("minus-from-eps", minus, ExactMatrix.from_function(4, 4, eps_entry))

    ppd = minus @ minus.conj_transpose()
    factor = ((2 + H * H) / 2) ** 2
    expect("minus-gram", ppd @ ppd, ppd.scale(factor))
    return combine("projectors", reports)


def check_twist4(r: ExactMatrix, f: ExactMatrix, name: str = "twist4") -> CheckReport:
    """R = F P F^-1 P."""
    _require_shape(r, 4, "R")
    _require_shape(f, 4, "F")
    try:
        twisted = f @ leg_swap(f.inverse())
    except SingularMatrixError as e:
        return check(name, False, str(e))
    return check(name, r == twisted, twisted.difference_text(r))


def check_reality(r3: ExactMatrix, name: str = "reality") -> CheckReport:
    """P R3 P = R3^dagger."""
    _require_shape(r3, 4, "R3")
    swapped = leg_swap(r3)
    dagger = r3.conj_transpose()
    return check(name, swapped == dagger, swapped.difference_text(dagger))


def check_trace_ingredient() -> CheckReport:
    """tr_(2)((I x D_h) Rhat_h) = I_2."""
    traced = (kron(ExactMatrix.identity(2), build(MatrixName.DH)) @ build(MatrixName.RHAT)).partial_trace_space2()
    identity = ExactMatrix.identity(2)
    return check("trace-ingredient", traced == identity, traced.difference_text(identity))


def check_dh_identities() -> CheckReport:
    dh = build(MatrixName.DH)
    eps = build(MatrixName.EPS_H)
    from_eps = -(eps @ build(MatrixName.EPS_H_INV).transpose())
    tilde = build(MatrixName.DH_TILDE)
    return combine("dh", [
        check("dh-printed", dh == PRINTED_DH, dh.difference_text(PRINTED_DH)),
        check("dh-from-eps", dh == from_eps, dh.difference_text(from_eps)),
        check("dh-tilde", tilde == dh.conj_transpose(), tilde.difference_text(dh.conj_transpose())),
        check(
            "kron-entry",
            kron(ExactMatrix.identity(2), dh).at(1, 1, 1, 2) == -2 * H,
            str(kron(ExactMatrix.identity(2), dh).at(1, 1, 1, 2)),
        ),
    ])


def check_reps_symmetry(deformation: Union[int, Deformation]) -> CheckReport:
    """Rhat^eps symmetric under the swap of spaces; inverse matches the printed table."""
    deformation = Deformation.parse(deformation)
    reps = build(MatrixName.REPS_HAT, deformation)
    inverse = build(MatrixName.REPS_HAT_INV, deformation)
    printed = PRINTED_REPS_HAT_INV[deformation]
    return combine("reps", [
        check("reps-swap", leg_swap(reps) == reps, leg_swap(reps).difference_text(reps)),
        check("reps-inverse-printed", inverse == printed, inverse.difference_text(printed)),
    ])


def check_twist_suite() -> CheckReport:
    """Twist factorizations of R_h and R4 by F and G, in both leg conventions."""
    rh = build(MatrixName.RH)
    r4 = build(MatrixName.R4, Deformation.J2)
    f = build(MatrixName.F)
    g = build(MatrixName.G)
    return combine("twist4", [
        check("g-printed", g == PRINTED_G, g.difference_text(PRINTED_G)),
        check_twist4(rh, leg_swap(f), "rh-by-f-tilde"),
        check_twist4(r4, leg_swap(g), "r4-by-g-tilde"),
        check_twist4(rh.inverse(), f, "rh21-by-f"),
        check_twist4(r4.inverse(), g, "r4-21-by-g"),
    ])
