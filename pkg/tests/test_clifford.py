import pytest

from hlorentz.errors import UnknownNameError
from hlorentz.utils.clifford import (
    PRINTED_GAMMAS,
    build_gammas,
    clifford_blocks_check,
    clifford_check,
    dirac_square_check,
    gamma_classical_limit_check,
    printed_gammas_check,
    y_epsilon_check,
)
from hlorentz.utils.exactalg import H, ExactMatrix, matrix
from hlorentz.utils.rmat import Deformation


def test_printed_tables(deformation):
    assert printed_gammas_check(deformation).passed


def test_lookup_by_label():
    gs = build_gammas(2)
    assert gs["alpha"] == PRINTED_GAMMAS[Deformation.J2]["alpha"]
    assert gs["gamma-delta"] == gs[(2, 2)]
    with pytest.raises(UnknownNameError):
        gs["epsilon"]


def test_gamma_gamma_j1():
    expected = matrix([[0, 0, 0, 1], [0, 0, 0, 0], [-H, -1, 0, 0], [0, 0, 0, 0]])
    assert build_gammas(1)["gamma"] == expected


def test_undeformed_anticommutator():
    gs = build_gammas(2, {"h": 0})
    delta = gs["delta"]
    assert delta[1, 3] == 1 and delta[2, 0] == 1
    anti = gs["alpha"] @ gs["delta"] + gs["delta"] @ gs["alpha"]
    assert anti == ExactMatrix.identity(4)


def test_clifford_relation(deformation):
    assert clifford_check(deformation).passed


def test_clifford_blocks(deformation):
    assert clifford_blocks_check(deformation).passed


def test_clifford_specialized():
    assert clifford_check(1, {"h": "1/2", "r": "3"}).passed


def test_dirac_square(deformation):
    assert dirac_square_check(deformation).passed


def test_y_epsilon(deformation):
    assert y_epsilon_check(deformation).passed


def test_classical_limit(deformation):
    assert gamma_classical_limit_check(deformation).passed
