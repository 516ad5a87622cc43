import pytest

from hlorentz.errors import ShapeError
from hlorentz.utils.exactalg import H, ExactMatrix, permutation
from hlorentz.utils.exchange import (
    ExchangeKind,
    appendix_check,
    check_triangular16,
    check_twist16,
    check_ybe16,
    compare_appendix,
    exchange_matrix,
    load_appendix,
    twist_matrix,
)


def test_appendix_golden(deformation):
    report = appendix_check(deformation)
    assert report.passed
    assert report.witness == "256/256 entries equal"


def test_first_row_j1():
    m = exchange_matrix(1)
    assert m.shape == (16, 16)
    assert m[0, 0] == 1
    assert m[0, 1] == H
    assert m[0, 2] == -H


def test_cached():
    assert exchange_matrix(2) is exchange_matrix(2)
    assert exchange_matrix(2, ExchangeKind.DERIVATIVES) is not exchange_matrix(2)


def test_specialized_matches_substitution():
    params = {"h": "1/3", "r": "2"}
    assert exchange_matrix(1, params=params) == exchange_matrix(1).subs(params)


def test_one_wrong_entry_is_counted():
    golden = load_appendix(2)
    entries = list(golden.entries)
    entries[17] = entries[17] + 1
    tampered = ExactMatrix(16, 16, entries)
    report = compare_appendix(exchange_matrix(2), tampered)
    assert not report.passed
    assert report.witness.startswith("255/256 entries equal")
    assert "entry (2,2)" in report.witness


def test_bad_golden_layout(tmp_path):
    path = tmp_path / "broken.txt"
    path.write_text("1, 0\n0, 1\n", encoding="utf-8")
    with pytest.raises(ShapeError):
        load_appendix(1, str(path))


def test_triangular(deformation):
    assert check_triangular16(exchange_matrix(deformation)).passed
    assert check_triangular16(exchange_matrix(deformation, ExchangeKind.DERIVATIVES)).passed


def test_swap_is_triangular():
    assert check_triangular16(permutation(4)).passed


def test_twist(deformation):
    assert check_twist16(exchange_matrix(deformation), twist_matrix(deformation)).passed


def test_shape_guard():
    with pytest.raises(ShapeError):
        check_triangular16(ExactMatrix.identity(4))


@pytest.mark.slow
def test_ybe16(deformation):
    assert check_ybe16(exchange_matrix(deformation)).passed
