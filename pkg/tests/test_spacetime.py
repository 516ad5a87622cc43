from itertools import product

import pytest

from hlorentz.errors import TruncationError, UnknownNameError
from hlorentz.utils.exactalg import H
from hlorentz.utils.ncalg import NcMatrix, Sector, gens, is_central
from hlorentz.utils.spacetime import (
    InvariantName,
    TraceVariant,
    algebra_confluence_check,
    assemble,
    central_check,
    classical_limit_check,
    dalembertian,
    dalembertian_check,
    derived_form_relators,
    dilatation_check,
    dilatation_operator,
    dk_relations_check,
    exchange_consistency_check,
    forms_consistency_check,
    gdet_check,
    invariant,
    metric_g_Y,
    minkowski_length,
    minkowski_length_check,
    planewave_check,
    printed_dilatation,
    printed_g_Y,
    printed_length,
    star_closure_check,
    tr_h,
    trace_variants_check,
    zeta,
)


def test_assemble_is_cached():
    assert assemble(2, ["K"]) is assemble(2, [Sector.K])
    assert assemble(2, ["K"], {"h": "1/2"}) is not assemble(2, ["K"])


def test_assemble_rejects_bad_sectors():
    with pytest.raises(UnknownNameError):
        assemble(1, ["Q"])
    with pytest.raises(ValueError):
        assemble(1, [Sector.M])
    with pytest.raises(ValueError):
        assemble(1, [])


def test_length_matches_printed(deformation):
    algebra = assemble(deformation, [Sector.K])
    assert minkowski_length(deformation) == algebra.normal_form(printed_length(deformation))


def test_length_at_zero(deformation):
    al, be, ga, de = gens("α", "β", "γ", "δ")
    algebra = assemble(deformation, [Sector.K], {"h": 0, "r": 0})
    assert minkowski_length(deformation, {"h": 0, "r": 0}) == algebra.normal_form(al * de - be * ga)


def test_length_checks(deformation):
    assert minkowski_length_check(deformation).passed
    assert gdet_check(deformation).passed


def test_zeta_central_j2():
    algebra = assemble(2, [Sector.K])
    assert is_central(zeta(), algebra.system).passed


def test_delta_not_central_j2():
    (de,) = gens("δ")
    report = is_central(de, assemble(2, [Sector.K]).system)
    assert not report.passed
    assert report.witness == f"[β, δ] = {(de * de).scale(2 * H)}"


def test_zeta_not_central_j1():
    algebra = assemble(1, [Sector.K])
    assert not is_central(zeta(), algebra.system).passed


def test_g_y_printed(deformation):
    assert metric_g_Y(deformation, 1) == printed_g_Y(deformation)


def test_g_y_variant_guard():
    with pytest.raises(ValueError):
        metric_g_Y(2, 3)


def test_dalembertian(deformation):
    box, g_y = dalembertian(deformation)
    assert g_y.shape == (4, 4)
    assert not box.is_zero
    assert dalembertian_check(deformation).passed


def test_trace_variants(deformation):
    assert trace_variants_check(deformation).passed
    with pytest.raises(ValueError):
        tr_h(NcMatrix.sector(Sector.K), "sideways")


def test_trace_of_identity():
    identity = NcMatrix([[1, 0], [0, 1]])
    assert tr_h(identity) == tr_h(identity, TraceVariant.TILDE)
    assert tr_h(identity).terms[()] == 2


def test_dilatation(deformation):
    assert dilatation_operator() == printed_dilatation()
    assert dilatation_check(deformation).passed


def test_forms(deformation):
    assert forms_consistency_check(deformation).passed


def _forms_relators(deformation):
    algebra = assemble(deformation, [Sector.K, Sector.DK])
    return (
        algebra.relators[(Sector.K, Sector.K)],
        algebra.relators[(Sector.K, Sector.DK)],
        algebra.relators[(Sector.DK, Sector.DK)],
    )


def test_derived_form_relators(deformation):
    kk, kdk, dkdk = _forms_relators(deformation)
    derived = derived_form_relators(kk, kdk)
    assert len(derived) == 10
    assert all(len(word) == 2 for rel in derived for word in rel.terms)
    assert dk_relations_check(kk, kdk, dkdk).passed


def test_stronger_dk_relations_rejected(deformation):
    kk, kdk, _ = _forms_relators(deformation)
    forms = gens("dα", "dβ", "dγ", "dδ")
    every_product = [a * b for a, b in product(forms, repeat=2)]
    report = dk_relations_check(kk, kdk, every_product)
    assert not report.passed
    assert report.witness.startswith("stated-in-derived")


def test_missing_dk_relations_rejected(deformation):
    kk, kdk, _ = _forms_relators(deformation)
    report = dk_relations_check(kk, kdk, [])
    assert not report.passed
    assert report.witness.startswith("derived-in-stated")


def test_exchange_consistency(deformation):
    assert exchange_consistency_check(deformation).passed


def test_central(deformation):
    assert central_check(deformation).passed


def test_star_closure(deformation):
    assert star_closure_check(deformation).passed


def test_confluence(deformation):
    assert algebra_confluence_check(deformation).passed


def test_classical_limit(deformation):
    assert classical_limit_check(deformation).passed


def test_invariant_dispatch():
    expr = invariant("lh", 2)
    assert expr.name is InvariantName.LH
    assert expr.value == minkowski_length(2)
    assert invariant(InvariantName.S, 1).value == dilatation_operator()
    with pytest.raises(UnknownNameError):
        invariant("volume", 2)


def test_specialized_length(deformation):
    params = {"h": "1/2", "r": "1"}
    specialized = minkowski_length(deformation, params)
    algebra = assemble(deformation, [Sector.K], params)
    assert specialized == algebra.normal_form(printed_length(deformation).subs(params))


def test_planewave_order_one(deformation):
    report = planewave_check(deformation, 1)
    assert report.passed
    assert "(K,P)" in report.witness


def test_planewave_order_two(deformation):
    assert planewave_check(deformation, 2).passed


def test_planewave_needs_an_order():
    with pytest.raises(TruncationError):
        planewave_check(2, 0)


@pytest.mark.slow
def test_planewave_order_four(deformation):
    assert planewave_check(deformation, 4).passed


def test_planewave_specialized():
    assert planewave_check(2, 2, {"h": "1/3"}).passed
