import logging
from typing import List, Optional

from fastapi import APIRouter, HTTPException, Query
from pydantic import BaseModel, Field

from hlorentz.cli import build_matrices, matrix_names, payload
from hlorentz.errors import HLorentzError, UnknownNameError
from hlorentz.models.report import MatrixPayload, SuiteResult
from hlorentz.models.suite_runner import SUITES, SuiteOptions, SuiteRunner, rational_params, suite_names

logger = logging.getLogger(__name__)

router = APIRouter()


class CheckRequest(BaseModel):
    deformations: List[int] = Field(default_factory=lambda: [1, 2])
    order: Optional[int] = None
    window: Optional[int] = None
    h: Optional[str] = None
    r: Optional[str] = None
    zeta: Optional[str] = None
    length: Optional[str] = None


class SuiteInfo(BaseModel):
    name: str
    per_deformation: bool
    description: str


class MatrixResponse(BaseModel):
    name: str
    matrices: List[MatrixPayload]


def _require_deformations(deformations: List[int]):
    bad = [d for d in deformations if d not in (1, 2)]
    if bad or not deformations:
        raise HTTPException(status_code=400, detail=f"deformation must be 1 or 2, got {deformations}")


def _http_error(e: Exception) -> HTTPException:
    if isinstance(e, UnknownNameError):
        return HTTPException(status_code=404, detail=str(e))
    return HTTPException(status_code=400, detail=str(e))


@router.get("/matrices", response_model=List[str])
def list_matrices():
    return matrix_names()


@router.get("/matrices/{name}", response_model=MatrixResponse)
def get_matrix(
    name: str,
    deformation: List[int] = Query(default=[1, 2]),
    h: Optional[str] = None,
    r: Optional[str] = None,
):
    """Build a named matrix; entries are canonical exact strings, row-major."""
    _require_deformations(deformation)
    try:
        built = build_matrices(name, deformation, rational_params(h, r))
    except (HLorentzError, ValueError) as e:
        raise _http_error(e)
    return MatrixResponse(name=name.lower(), matrices=[payload(name, d, m) for d, m in built])


@router.get("/suites", response_model=List[SuiteInfo])
def list_suites():
    return [
        SuiteInfo(name=s.name, per_deformation=s.per_deformation, description=s.description)
        for s in SUITES.values()
    ]


@router.post("/checks/{suite}", response_model=List[SuiteResult])
def run_checks(suite: str, request: CheckRequest):
    """
    Run a suite ('all' runs every suite) and return one result per suite and deformation.

    Runs in the request thread; the heavier suites (planewave, all) take minutes.
    """
    if suite not in suite_names():
        raise HTTPException(status_code=404, detail=f"unknown suite '{suite}'")
    _require_deformations(request.deformations)
    if request.order is not None and request.order < 1:
        raise HTTPException(status_code=400, detail="order must be at least 1")
    if request.window is not None and request.window < 4:
        raise HTTPException(status_code=400, detail="window must be at least 4")

    try:
        options = SuiteOptions(**request.model_dump(exclude={"deformations"}))
        results = SuiteRunner(options, jobs=1).run(suite, request.deformations)
    except (HLorentzError, ValueError) as e:
        raise _http_error(e)
    logger.info(f"✅ {suite}: {sum(r.passed for r in results)}/{len(results)} suite results passed")
    return results
