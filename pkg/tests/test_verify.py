import pytest

from gatecmp.verify import SUITES, run_suites, shift_equivalence, zeno_equivalence


def test_all_suites_pass():
    reports = run_suites()
    assert [r.name for r in reports] == list(SUITES)
    for report in reports:
        assert report.passed, report.line()
        assert report.cases >= 100


def test_zero_tolerance_fails():
    for report in run_suites(tol_scale=0.0):
        assert not report.passed
        assert report.line().startswith("FAIL")


def test_seeded_runs_repeat():
    assert zeno_equivalence() == zeno_equivalence()
    assert shift_equivalence(cases=10) == shift_equivalence(cases=10)


def test_zeno_suite_covers_both_branches():
    report = zeno_equivalence()
    hyper, osc = (int(s.split()[0]) for s in report.detail.split(",")[0].split("/"))
    assert hyper > 10 and osc > 10


@pytest.mark.parametrize("name", list(SUITES))
def test_single_suite(name):
    (report,) = run_suites([name])
    assert report.name == name
