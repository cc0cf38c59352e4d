import pytest

from ikc.props import SUITES, run_suites


def test_all_suites_pass_at_small_size():
    results = run_suites(sorted(SUITES), size=3, seed=0)
    assert [r.name for r in results] == sorted(SUITES)
    failing = [(r.name, r.detail) for r in results if not r.ok]
    assert failing == []


def test_results_carry_measurements():
    (r,) = run_suites(["subtype-order"], size=2, seed=1)
    assert r.ok
    assert r.detail


def test_unknown_suite_raises():
    with pytest.raises(KeyError):
        run_suites(["no-such-suite"], size=2, seed=0)
