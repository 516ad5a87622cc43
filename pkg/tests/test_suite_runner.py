import pytest

from hlorentz.errors import ParameterError, TruncationError, UnknownNameError
from hlorentz.models.report import CheckReport, check, combine
from hlorentz.models.suite_runner import (
    SUITE_ORDER,
    SuiteOptions,
    SuiteRunner,
    execute,
    rational_params,
    suite_names,
)


def test_suite_names():
    names = suite_names()
    assert names[-1] == "all"
    assert names[:-1] == SUITE_ORDER
    assert "exchange-appendix" in names


def test_plan_order():
    runner = SuiteRunner(jobs=1)
    assert runner.plan("ybe", [2, 1]) == [("ybe", 2), ("ybe", 1)]
    assert runner.plan("projectors", [1, 2]) == [("projectors", None)]
    tasks = runner.plan("all", [1, 2])
    assert tasks[0] == ("ybe", 1)
    assert ("repn", None) in tasks
    with pytest.raises(UnknownNameError):
        runner.plan("nope", [1])


def test_options_params():
    assert SuiteOptions().params is None
    assert SuiteOptions(h="1/2").params == {"h": "1/2"}


def test_execute_frt():
    result = execute("frt", 1, SuiteOptions())
    assert result.passed
    assert [c.name for c in result.checks] == ["frt-mixed"]
    assert all(c.millis >= 0 for c in result.checks)


def test_truncation_error_becomes_failing_check():
    result = execute("planewave", 2, SuiteOptions(order=0))
    assert not result.passed
    assert TruncationError.__name__ in result.checks[0].witness


def test_combine_reports_first_failure():
    reports = [check("a", True), check("b", False, "entry (1,1)"), check("c", False, "other")]
    folded = combine("all", reports)
    assert not folded.passed
    assert folded.witness == "b: entry (1,1)"
    assert check("ok", True, "ignored").witness is None


def test_report_alias():
    report = CheckReport(name="x", passed=True)
    assert report.model_dump(by_alias=True)["pass"] is True


def test_options_normalise_rationals():
    options = SuiteOptions(h="2/4", r="3")
    assert options.h == "1/2"
    assert options.params == {"h": "1/2", "r": "3"}


def test_options_reject_bad_values():
    with pytest.raises(ValueError):
        SuiteOptions(h="1/0")
    with pytest.raises(ValueError):
        SuiteOptions(r="abc")
    with pytest.raises(ValueError):
        SuiteOptions(zeta="h +* 2")


def test_rational_params():
    assert rational_params() is None
    assert rational_params("0.5") == {"h": "1/2"}
    with pytest.raises(ParameterError):
        rational_params(r="1/0")


def test_specialized_suite():
    result = execute("frt", 2, SuiteOptions(h="1/3"))
    assert result.passed
