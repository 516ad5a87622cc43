from fractions import Fraction

import pytest

from hlorentz.errors import ShapeError, UnknownNameError
from hlorentz.utils.exactalg import H, ExactMatrix, kron, leg_swap, matrix, permutation
from hlorentz.utils.rmat import (
    PRINTED_DH,
    Deformation,
    MatrixName,
    build,
    check_dh_identities,
    check_frt_mixed,
    check_projectors,
    check_reality,
    check_reps_symmetry,
    check_trace_ingredient,
    check_triangular4,
    check_twist4,
    check_twist_suite,
    check_ybe,
    matrix_set,
    params_dict,
    params_key,
)


def test_rh_printed_form():
    rh = build("rh")
    assert rh.at(1, 1, 2, 2) == H * H
    assert rh.at(1, 1, 1, 2) == -H
    assert rh.at(2, 1, 2, 2) == H
    assert build(MatrixName.RHAT) == permutation(2) @ rh


def test_deformation_parse():
    assert Deformation.parse("j2") is Deformation.J2
    assert Deformation.parse(1) is Deformation.J1
    with pytest.raises(UnknownNameError):
        Deformation.parse(3)


def test_unknown_matrix():
    with pytest.raises(UnknownNameError) as excinfo:
        build("nope")
    assert "rh" in str(excinfo.value)


def test_deformation_required():
    with pytest.raises(ValueError):
        build(MatrixName.R3)


def test_r2_is_swapped_r3(deformation):
    assert build("r2", deformation) == leg_swap(build("r3", deformation))


def test_specialization():
    assert build("rh", params={"h": 0}).is_identity()
    assert build("r3", 1, {"r": 0}).is_identity()
    assert build("rh", params={"h": "1/2"}) == build("rh").subs({"h": "1/2"})
    assert build("rh", params={"h": "1/2"}).at(1, 1, 1, 2) == Fraction(-1, 2)
    assert all(not e.free_symbols() for e in build("r3", 1, {"h": "1/2", "r": "1/2"}).entries)


def test_params_key():
    assert params_key(None) == ()
    assert params_key({"r": 1, "h": "1/2"}) == (("h", "1/2"), ("r", "1"))
    assert params_dict(params_key({"h": "2/4"}))["h"] == params_dict((("h", "1/2"),))["h"]


def test_matrix_set(deformation):
    mats = matrix_set(deformation)
    assert list(mats) == ["R1", "R2", "R3", "R4"]
    assert mats["R1"] == build("rh")


def test_ybe_rh():
    assert check_ybe(build("rh")).passed


def test_ybe_r4(deformation):
    assert check_ybe(build("r4", deformation)).passed


def _flipped_rh():
    rh = build("rh")
    entries = list(rh.entries)
    entries[1] = -entries[1]
    return ExactMatrix(4, 4, entries)


def test_ybe_fails_on_flipped_entry():
    report = check_ybe(_flipped_rh())
    assert not report.passed
    assert report.witness.startswith("entry")


def test_ybe_shape():
    with pytest.raises(ShapeError):
        check_ybe(ExactMatrix.identity(2))


def test_frt_mixed(deformation):
    assert check_frt_mixed(build("rh"), build("r3", deformation)).passed


def test_frt_mixed_failure():
    bad = _flipped_rh()
    report = check_frt_mixed(bad, bad)
    assert not report.passed
    assert report.witness.startswith("entry")


def test_projectors():
    assert check_projectors().passed
    assert build("phplus").rank() == 3
    assert build("phminus").rank() == 1


def test_triangular():
    assert check_triangular4(build("rh")).passed
    assert check_triangular4(build("r4", 2)).passed


def test_triangular_failure_has_witness():
    m = kron(matrix([[1, 0], [0, 2]]), ExactMatrix.identity(2))
    report = check_triangular4(m)
    assert not report.passed
    assert report.witness.startswith("entry")


def test_twist_leg_convention():
    rh, f = build("rh"), build("f")
    assert check_twist4(rh, leg_swap(f)).passed
    assert check_twist4(rh.inverse(), f).passed
    assert not check_twist4(rh, f).passed


def test_twist_suite():
    assert check_twist_suite().passed


def test_reality(deformation):
    assert check_reality(build("r3", deformation)).passed


def test_dh():
    assert build("dh") == PRINTED_DH
    assert check_dh_identities().passed
    assert check_trace_ingredient().passed


def test_reps(deformation):
    assert check_reps_symmetry(deformation).passed
    reps = build("repshat", deformation)
    assert (reps @ build("repshatinv", deformation)).is_identity()
