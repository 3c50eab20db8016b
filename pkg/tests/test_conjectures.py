import pytest

from conftest import NAMES, model
from fctheory.conjectures import DEFAULT_SUITES, SUITES, lagrange, nilpotent_divisors, run_suites
from fctheory.cyclo import cyc
from fctheory.fusion import ModularData
from fctheory.report import Report


@pytest.mark.parametrize("name", NAMES)
def test_default_suites_have_no_counterexamples(name):
    md, lat = model(name)
    for rep in run_suites(md, lat, DEFAULT_SUITES):
        assert rep.get("counterexamples") == 0, rep.render_text()
        assert rep.ok


def test_ds3_lagrange_pairs(ds3):
    md, lat = ds3
    rep = lagrange(md, lat)
    assert rep.get("pairs") == 30
    assert rep.get("counterexamples") == 0


def test_nilpotent_divisors(ds3):
    md, lat = ds3
    rep = nilpotent_divisors(md, lat)
    assert rep.get("nilpotent_sets") == 2
    assert rep.ok


def test_unknown_suite_is_rejected(ising):
    md, lat = ising
    with pytest.raises(ValueError):
        run_suites(md, lat, ["nope"])
    assert set(DEFAULT_SUITES) < set(SUITES)


def test_counterexample_is_reported_not_raised(ising):
    """A wrong S_0sigma^2 breaks the extents; the harness prints a witness instead of crashing."""
    md, lat = ising
    s2 = list(md.s2)
    s2[2] = cyc(1) / 3
    fake = ModularData(md.base, md.rho, md.qdims, s2, md.conductor)
    reps = run_suites(fake, lat, ["algint", "lagrange"])
    assert all(isinstance(r, Report) for r in reps)
    bad = [c for r in reps for c in r.failures()]
    assert bad and all(c.detail for c in bad)
