import pytest

from hlorentz.errors import ScalarDivisionError
from hlorentz.utils.exactalg import ELL, H, I
from hlorentz.utils.repn import (
    LaurentSpace,
    build_generators,
    build_xy,
    check_xy_commutators,
    closed_form_alpha,
    closed_form_alpha_report,
    one_dim_check,
    repn_checks,
    representation_check,
    window_stability_check,
)


@pytest.fixture
def space():
    return LaurentSpace(8)


def test_xy_commutators(space):
    x, x_inv, y = build_xy(space)
    assert x.commutator(y).on(0) == {2: 4 * I}
    assert y.commutator(x_inv).on(3) == {3: 4 * I}
    assert y.on(-1) == {}
    assert check_xy_commutators(space).passed


def test_window_too_small():
    with pytest.raises(ValueError):
        LaurentSpace(3)


def test_h_must_be_nonzero(space):
    with pytest.raises(ScalarDivisionError):
        build_generators(space, h=0)


def test_representation_symbolic():
    assert representation_check(8).passed


def test_representation_specialized():
    assert representation_check(8, h="1/2").passed


def test_representation_numeric_scalars():
    assert representation_check(8, zeta=3, ell="1/2", h=2).passed


def test_window_stability():
    assert window_stability_check().passed


def test_one_dimensional():
    assert one_dim_check(1, 1 + I).passed
    assert one_dim_check(0, 0).passed


def test_closed_form_differs_by_inverse_x(space):
    report = closed_form_alpha_report(8)
    assert not report.passed
    assert "x^-1" in report.witness
    alpha = build_generators(space)["α"]
    difference = alpha - closed_form_alpha(space)
    assert difference.on(0) == {-1: H * H * H / 4 * ELL}


def test_repn_checks():
    counted, note = repn_checks(8)
    assert all(r.passed for r in counted)
    assert note.name == "closed-form-alpha"
    assert not note.passed
