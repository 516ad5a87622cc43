import pytest

from hlorentz.errors import OrientationError, RewriteDepthError, ShapeError, StarError, UnknownNameError
from hlorentz.utils.exactalg import H, I, ExactMatrix
from hlorentz.utils.ncalg import (
    NcMatrix,
    NcPoly,
    RewriteSystem,
    Sector,
    Template,
    check_inverse_identity,
    check_printed_relations,
    confluence_check,
    equation_matrix,
    exterior_derivative,
    generator_index,
    gens,
    gl_h2_check,
    gl_h2_system,
    ideal_check,
    independent_relators,
    orient,
    printed_gl_h2,
    printed_minkowski,
    star,
    star_closure_check,
)
from hlorentz.utils.rmat import build
from hlorentz.utils.spacetime import assemble


def test_poly_arithmetic(k_gens):
    al, be, _, _ = k_gens
    p = (al + be) * (al - be)
    assert p == al * al - al * be + be * al - be * be
    assert al.commutator(be) == al * be - be * al
    assert str(NcPoly()) == "0"
    assert (al * 0).is_zero
    assert (al + 1 - al) == NcPoly.const(1)


def test_unknown_generator():
    with pytest.raises(UnknownNameError):
        generator_index("ω")


def test_orient_picks_largest_word(k_gens):
    al, be, _, _ = k_gens
    rs = orient([be * al - al * be])
    assert rs.normal_form(be * al) == al * be
    assert rs.normal_form(al * be) == al * be


def test_orient_rejects_cubic(k_gens):
    al, be, _, _ = k_gens
    with pytest.raises(OrientationError):
        orient([al * al * be - be])


def test_orient_rejects_conflicts(k_gens):
    al, be, _, _ = k_gens
    with pytest.raises(OrientationError):
        orient([be * al - al * be, be * al - al * be.scale(2)])


def test_rewrite_depth(k_gens):
    al, be, _, _ = k_gens
    a, b = generator_index("α"), generator_index("β")
    looping = RewriteSystem({(a, b): be * al, (b, a): al * be}, depth_factor=2)
    with pytest.raises(RewriteDepthError):
        looping.normal_form(al * be)


def test_independent_relators(k_gens):
    al, be, _, _ = k_gens
    p = be * al - al * be
    assert len(independent_relators([p, p.scale(2), NcPoly()])) == 1


def test_equation_matrix_arity():
    rh = build("rh")
    with pytest.raises(ShapeError):
        equation_matrix(Template.FRT, [rh, rh], [Sector.M])
    with pytest.raises(UnknownNameError):
        equation_matrix("nonsense", [rh], [Sector.M])
    with pytest.raises(ShapeError):
        equation_matrix(Template.FRT, [ExactMatrix.identity(2)], [Sector.M])


def test_nc_matrix_legs():
    k = NcMatrix.sector(Sector.K)
    k1 = k.leg1()
    k2 = k.leg2()
    al, be, _, _ = gens("α", "β", "γ", "δ")
    # K1 = K x I, K2 = I x K
    assert k1[0, 0] == al and k1[0, 2] == be and k1[0, 1] == NcPoly()
    assert k2[0, 0] == al and k2[0, 1] == be and k2[2, 3] == be


def test_derivative_sector_layout():
    y = NcMatrix.sector(Sector.Y)
    assert y[0, 1] == NcPoly.gen("∂γ")
    assert y[1, 0] == NcPoly.gen("∂β")


def test_gl_h2():
    relators, rs = gl_h2_system()
    assert len(relators) == 6
    assert len(printed_gl_h2()) == 6
    assert gl_h2_check().passed


def test_gl_h2_specialized():
    assert check_inverse_identity({"h": "1/2"}).passed


def test_gl_h2_commutes_at_zero():
    _, rs = gl_h2_system({"h": 0})
    a, b = gens("a", "b")
    assert rs.normal_form(a * b - b * a).is_zero


def test_minkowski_printed(deformation):
    algebra = assemble(deformation, [Sector.K])
    relators = algebra.relators[(Sector.K, Sector.K)]
    assert len(relators) == 6
    assert check_printed_relations(relators, printed_minkowski(deformation)).passed


def test_minkowski_normal_form_j2(k_gens):
    al, be, ga, de = k_gens
    nf = assemble(2, [Sector.K]).normal_form(de * al)
    expected = al * de - (ga * de).scale(2 * H) - (de * de).scale(4 * H * H) + (be * de).scale(2 * H)
    assert nf == expected


def test_minkowski_confluent_and_star_closed(deformation):
    algebra = assemble(deformation, [Sector.K])
    assert confluence_check(algebra.system).passed
    assert star_closure_check(algebra.system, algebra.relators[(Sector.K, Sector.K)]).passed
    assert ideal_check(algebra.system, printed_minkowski(deformation)).passed


def test_confluence_degree():
    _, rs = gl_h2_system()
    with pytest.raises(ValueError):
        confluence_check(rs, degree=4)


def test_star(k_gens):
    al, be, ga, _ = k_gens
    assert star(al) == al
    assert star(be) == ga
    assert star(al * be) == ga * al
    assert star(al.scale(I)) == al.scale(-I)
    assert star(NcPoly.gen("∂β")) == -NcPoly.gen("∂γ")
    assert star(star(be * NcPoly.gen("∂α"))) == be * NcPoly.gen("∂α")
    with pytest.raises(StarError):
        star(NcPoly.gen("a"))


def test_exterior_derivative(k_gens):
    al, be, _, _ = k_gens
    dal, dbe = gens("dα", "dβ")
    assert exterior_derivative(al * be) == dal * be + al * dbe
    assert exterior_derivative(dal * be) == -(dal * dbe)
    assert exterior_derivative(exterior_derivative(al * be)).is_zero
    with pytest.raises(ValueError):
        exterior_derivative(NcPoly.gen("∂α"))
