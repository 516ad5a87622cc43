from fractions import Fraction

import pytest

from hlorentz.errors import ScalarDivisionError, ShapeError, SingularMatrixError
from hlorentz.utils.exactalg import (
    ELL,
    H,
    I,
    ONE,
    R,
    ZERO,
    ExactMatrix,
    Scalar,
    as_scalar,
    double_index,
    kron,
    leg_swap,
    mat_core,
    matrix,
    pair_index,
    permutation,
    scalar_arith,
)


def test_parse_and_arithmetic():
    x = Scalar.parse("(1+h)/(2+h^2)")
    assert x * (2 + H * H) == 1 + H
    assert Scalar.parse("h^2 - r/2") == H * H - R / 2
    assert Scalar.parse("3/4*i") == I * Fraction(3, 4)


def test_gaussian_units():
    assert I * I == -1
    assert (1 + I) * (1 - I) == 2
    assert (1 + I).conjugate() == 1 - I
    assert (1 / (1 + I)) == (1 - I) / 2


def test_division_by_zero():
    with pytest.raises(ScalarDivisionError):
        ONE / ZERO
    with pytest.raises(ScalarDivisionError):
        ZERO.inverse()
    with pytest.raises(ScalarDivisionError):
        Scalar.parse("1/0")


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        Scalar.parse("h +* 2")


def test_canonical_is_representation_independent():
    a = (H + 1) * (H - 1)
    b = H * H - 1
    assert a.canonical() == b.canonical()
    assert ((H * H - 1) / (H - 1)).canonical() == (H + 1).canonical()


def test_subs():
    assert Scalar.parse("h^2 - r/2").subs({"h": 2, "r": 1}) == Fraction(7, 2)
    assert H.subs({"h": "1/2"}) == Fraction(1, 2)
    assert (ELL * H).subs({"ell": 3}) == 3 * H
    with pytest.raises(ScalarDivisionError):
        (1 / H).subs({"h": 0})
    with pytest.raises(KeyError):
        H.subs({"q": 1})


def test_subs_keeps_other_symbols():
    assert (H * R + 1).subs({"h": "1/2"}) == R / 2 + 1
    assert ((1 + H) / (2 + H * H)).subs({"h": 1}) == Fraction(2, 3)
    assert (I * H).subs({"h": "-3"}) == -3 * I


def test_scalar_arith():
    assert scalar_arith(1, 2, "div") == Fraction(1, 2)
    assert scalar_arith("h", "h", "mul") == H * H
    assert scalar_arith(H, 1, "add") == H + 1
    with pytest.raises(ValueError):
        scalar_arith(1, 2, "pow")


def test_index_conventions():
    assert pair_index(1, 1) == 0
    assert pair_index(2, 1) == 2
    assert double_index(1, 1, 1, 1) == 0
    assert double_index(1, 2, 2, 1) == 6
    assert double_index(2, 2, 2, 2) == 15


def test_kron_layout():
    a = matrix([[1, 2], [3, 4]])
    b = matrix([[0, 1], [1, 0]])
    k = kron(a, b)
    # kron[(i,k),(j,l)] = A_ij B_kl
    assert k[1, 0] == 1
    assert k[2, 3] == 4
    assert k[3, 2] == 4
    assert k[0, 0] == 0


def test_permutation():
    p = permutation(2)
    assert p.at(1, 2, 2, 1) == 1
    assert p.at(1, 2, 1, 2) == 0
    assert (p @ p).is_identity()
    assert (permutation(4) @ permutation(4)).is_identity()
    with pytest.raises(ShapeError):
        permutation(3)


def test_leg_swap_of_kron():
    a = matrix([[1, H], [0, 1]])
    b = matrix([[2, 0], [R, 1]])
    assert leg_swap(kron(a, b)) == kron(b, a)


def test_inverse():
    rh = matrix([
        [1, -H, H, H * H],
        [0, 1, 0, -H],
        [0, 0, 1, H],
        [0, 0, 0, 1],
    ])
    assert (rh @ rh.inverse()).is_identity()
    m = matrix([[H, 1 + I], [R, 2]])
    assert (m.inverse() @ m).is_identity()


def test_singular_inverse():
    with pytest.raises(SingularMatrixError) as excinfo:
        matrix([[1, H], [1, H]]).inverse()
    assert excinfo.value.column == 1
    assert excinfo.value.pivot == "0"
    assert excinfo.value.previous == "1"
    assert "pivot polynomial of column 2 vanishes" in str(excinfo.value)


def test_rank_and_traces():
    a = matrix([[1, H], [R, 2]])
    b = matrix([[3, 1], [0, H]])
    assert kron(a, b).partial_trace_space2() == a.scale(3 + H)
    assert kron(a, b).trace() == a.trace() * b.trace()
    assert matrix([[1, H], [2, 2 * H]]).rank() == 1
    assert ExactMatrix.identity(4).rank() == 4


def test_partial_transposes():
    a = matrix([[1, H], [R, 2]])
    b = matrix([[3, 1], [0, H]])
    assert kron(a, b).partial_transpose_t1() == kron(a.transpose(), b)
    assert kron(a, b).partial_transpose_t2() == kron(a, b.transpose())


def test_mat_core():
    m = matrix([[1, H], [0, 1]])
    assert mat_core(m, "inverse") == matrix([[1, -H], [0, 1]])
    assert mat_core(m, "mul", m) == matrix([[1, 2 * H], [0, 1]])
    with pytest.raises(ValueError):
        mat_core(m, "determinant")
    with pytest.raises(ShapeError):
        mat_core(m, "mul")


def test_shape_errors():
    with pytest.raises(ShapeError):
        matrix([[1, 2], [3]])
    with pytest.raises(ShapeError):
        ExactMatrix.identity(2) @ ExactMatrix.identity(3)
    with pytest.raises(ShapeError):
        ExactMatrix.identity(2) + ExactMatrix.identity(3)


def test_difference_text():
    a = matrix([[1, 0], [0, 1]])
    b = matrix([[1, 0], [H, 1]])
    assert a.difference_text(a) is None
    assert a.difference_text(b).startswith("entry (2,1)")


def test_matrix_subs():
    m = matrix([[H, R], [1, H * H]])
    assert m.subs({"h": 0, "r": 0}) == matrix([[0, 0], [1, 0]])
    assert as_scalar("h").subs({"h": 0}) == 0
