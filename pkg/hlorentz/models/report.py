"""
Reports - structured check outcomes, suite results and matrix payloads
"""

from typing import Iterable, List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field


class CheckReport(BaseModel):
    """Outcome of one verification; witness carries the first differing value."""

    model_config = ConfigDict(populate_by_name=True)

    name: str
    passed: bool = Field(alias="pass")
    witness: Optional[str] = None
    millis: float = 0.0


class SuiteResult(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    suite: str
    deformation: Optional[int] = None
    checks: List[CheckReport] = Field(default_factory=list)
    # reported alongside the checks, never counted
    notes: List[CheckReport] = Field(default_factory=list)

    @computed_field(alias="pass")
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class MatrixPayload(BaseModel):
    name: str
    deformation: Optional[int] = None
    rows: int
    cols: int
    entries: List[str]


def check(name: str, passed: bool, witness: Optional[str] = None) -> CheckReport:
    return CheckReport(name=name, passed=passed, witness=None if passed else witness)


def combine(name: str, reports: Iterable[CheckReport]) -> CheckReport:
    """Fold sub-checks into one report; the witness names the first failing part."""
    reports = list(reports)
    for report in reports:
        if not report.passed:
            return CheckReport(
                name=name,
                passed=False,
                witness=f"{report.name}: {report.witness}",
                millis=sum(r.millis for r in reports),
            )
    return CheckReport(name=name, passed=True, millis=sum(r.millis for r in reports))
