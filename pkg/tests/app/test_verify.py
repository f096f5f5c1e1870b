import pytest

from psdo.app.verify import SUITES, run_suite


FAST_SUITES = ["torus", "embedded", "stability"]
SLOW_SUITES = ["bands", "mourre", "calculus", "ordergap", "unitary", "density"]


@pytest.mark.parametrize("suite", FAST_SUITES)
def test_suite_passes(suite):
    (report,) = run_suite(suite)
    assert report.suite == suite
    assert report.passed, [c.name for c in report.breaches]


def test_unknown_suite():
    with pytest.raises(KeyError, match="unknown suite 'plots'"):
        run_suite("plots")


def test_names_are_normalized():
    (report,) = run_suite(" Torus ")
    assert report.suite == "torus"


def test_every_suite_is_registered():
    assert set(SUITES) == {
        "embedded", "bands", "stability", "mourre", "calculus", "torus", "ordergap", "unitary", "density"
    }


@pytest.mark.slow
@pytest.mark.parametrize("suite", SLOW_SUITES)
def test_slow_suite_passes(suite):
    (report,) = run_suite(suite)
    assert report.passed, [(c.name, c.value, c.bound) for c in report.breaches]


def test_fast_and_slow_cover_every_suite():
    assert sorted(FAST_SUITES + SLOW_SUITES) == sorted(SUITES)
