import pytest

from hlorentz.utils.ncalg import NcPoly


@pytest.fixture(params=[1, 2], ids=["j1", "j2"])
def deformation(request):
    return request.param


@pytest.fixture
def k_gens():
    return [NcPoly.gen(n) for n in ("α", "β", "γ", "δ")]
