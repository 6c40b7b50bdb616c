import pytest

from cyclic_cbd.checks import SUITE_NAMES, SuiteResult, all_passed, run_suites


@pytest.mark.parametrize("name", SUITE_NAMES)
def test_suite_passes(name):
    (res,) = run_suites(seed=1, draws=8, samples=5000, names=[name], lp_draws=3)
    assert res.name == name
    assert res.passed > 0
    assert res.ok, res.failures


def test_zero_draws():
    assert run_suites(draws=0) == []
    assert all_passed([])


def test_corrupted_suite_fails():
    results = run_suites(draws=3, names=["variants", "demicube"], corrupt=["variants"])
    by_name = {r.name: r for r in results}
    assert not by_name["variants"].ok
    assert by_name["demicube"].ok
    assert not all_passed(results)


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suites(names=["lemma99"])


def test_seeded():
    a = run_suites(seed=4, draws=5, names=["point_outside"])[0]
    b = run_suites(seed=4, draws=5, names=["point_outside"])[0]
    assert (a.passed, a.failed) == (b.passed, b.failed)


def test_failure_detail_is_capped():
    res = SuiteResult("x")
    for i in range(10):
        res.record(False, i)
    assert res.failed == 10 and res.failures == [0, 1, 2, 3, 4]
    assert res.as_dict()["failures"] == ["0", "1", "2", "3", "4"]
