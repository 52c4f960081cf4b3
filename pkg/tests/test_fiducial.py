"""Fiducial and conjugate posterior distributions for a normal mean."""

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from strengthlab.distributions import improper_flat, normal
from strengthlab.errors import DomainError
from strengthlab.fiducial import (
    ELICITED,
    POSTERIOR,
    POSTERIOR_LIMIT,
    PRIOR,
    FiducialModel,
    bayes_posterior,
    build_ledger_fixture,
    central_interval,
    coverage_check,
    demo_report,
    fiducial_distribution,
    improper_limit_check,
    max_cdf_difference,
    simulate_dga,
    swap_method_tags,
)
from strengthlab.methods import BAYESIAN, FIDUCIAL
from strengthlab.strength import INDETERMINATE, STRONGER, WEAKER, external_strength


MODEL = FiducialModel(n=25, variance=4.0)


def test_model_validation_and_doc():
    with pytest.raises(DomainError):
        FiducialModel(n=0, variance=1.0)
    with pytest.raises(DomainError):
        FiducialModel(n=10, variance=-1.0)
    back = FiducialModel.from_doc(MODEL.to_doc())
    assert back == MODEL
    assert MODEL.sigma == 2.0
    assert MODEL.mean_variance == pytest.approx(0.16)


def test_fiducial_distribution_parameters():
    d = fiducial_distribution(MODEL, 10.0)
    assert d.form == "normal"
    assert (d.mean, d.var) == (10.0, pytest.approx(0.16))
    assert d.method == "fiducial"
    assert d.note


def test_central_interval_matches_reference_quantiles():
    d = fiducial_distribution(MODEL, 10.0)
    lo, hi = central_interval(d, 0.95)
    want_lo = stats.norm.ppf(0.025, 10.0, 0.4)
    want_hi = stats.norm.ppf(0.975, 10.0, 0.4)
    assert lo == pytest.approx(want_lo, abs=1e-9)
    assert hi == pytest.approx(want_hi, abs=1e-9)
    with pytest.raises(DomainError):
        central_interval(d, 1.5)


def test_bayes_posterior_conjugate_formulas():
    prior = normal("mu", 2.0, 9.0)
    post = bayes_posterior(prior, MODEL, xbar=10.0)
    prec = 1 / 9.0 + 25 / 4.0
    want_var = 1 / prec
    want_mean = want_var * (2.0 / 9.0 + 10.0 * 25 / 4.0)
    assert post.var == pytest.approx(want_var)
    assert post.mean == pytest.approx(want_mean)
    assert post.method == "bayesian"
    with pytest.raises(DomainError):
        bayes_posterior(improper_flat("mu"), MODEL, xbar=10.0)


def test_max_cdf_difference_brute_force():
    a = normal("mu", 0.0, 1.0)
    b = normal("mu", 0.5, 1.0)
    got = max_cdf_difference(a, b)
    xs = np.linspace(-8, 8.5, 20001)
    want = max(abs(stats.norm.cdf(xs) - stats.norm.cdf(xs, 0.5, 1.0)))
    assert got == pytest.approx(want, abs=1e-4)
    assert max_cdf_difference(a, a) == 0.0


def test_flat_prior_limit_recovers_the_fiducial_solution():
    rep = improper_limit_check(MODEL, xbar=10.0)
    gaps = [row["max_cdf_gap"] for row in rep["rows"]]
    assert rep["decreasing"]
    assert gaps == sorted(gaps, reverse=True)
    assert rep["final_gap"] < 1e-4
    assert rep["fiducial"]["mean"] == 10.0
    means = [row["posterior_mean"] for row in rep["rows"]]
    assert all(abs(m - 10.0) < abs(means[0] - 10.0) + 1e-12 for m in means[1:])


def test_dga_sample_recenters_residuals():
    sample = simulate_dga(MODEL, mu_true=7.0, seed=11)
    assert len(sample.data) == MODEL.n
    assert float(np.mean(sample.data)) == pytest.approx(sample.xbar, abs=1e-12)
    implied = 7.0 + MODEL.sigma / math.sqrt(MODEL.n) * sample.gamma
    assert sample.xbar == pytest.approx(implied, abs=1e-12)
    again = simulate_dga(MODEL, mu_true=7.0, seed=11)
    assert again.xbar == sample.xbar
    pinned = simulate_dga(MODEL, mu_true=0.0, seed=3, gamma=1.5)
    assert pinned.gamma == 1.5


def test_coverage_matches_nominal_level():
    rep = coverage_check(MODEL, mu_true=3.0, level=0.9, replications=4000, seed=2)
    assert rep["replications"] == 4000
    assert abs(rep["coverage"] - 0.9) < 0.02
    again = coverage_check(MODEL, mu_true=3.0, level=0.9, replications=4000, seed=2)
    assert again["coverage"] == rep["coverage"]


def test_demo_report_shape():
    rep = demo_report(MODEL, xbar=10.0)
    assert rep["interval"][0] < 10.0 < rep["interval"][1]
    assert rep["ladder_report"]["decreasing"]
    assert rep["fiducial"]["mean"] == 10.0


def test_ledger_fixture_ranks_fiducial_over_bayes():
    fixture = build_ledger_fixture()
    lam = fixture.grid[len(fixture.grid) // 2]
    left = fixture.family(POSTERIOR_LIMIT, lam)
    verdict = external_strength(
        left, left, fixture.store,
        methods_left=(FIDUCIAL,), methods_right=(BAYESIAN,),
    )
    assert verdict.relation == STRONGER
    reverse = external_strength(
        left, left, fixture.store,
        methods_left=(BAYESIAN,), methods_right=(FIDUCIAL,),
    )
    assert reverse.relation == WEAKER


def test_ledger_fixture_prior_loses_to_elicited():
    fixture = build_ledger_fixture()
    lam = fixture.grid[len(fixture.grid) // 2]
    prior = fixture.family(PRIOR, lam)
    elicited = fixture.family(ELICITED, lam)
    verdict = external_strength(prior, elicited, fixture.store)
    assert verdict.relation == WEAKER
    posterior = fixture.family(POSTERIOR, lam)
    assert external_strength(posterior, elicited, fixture.store).relation == WEAKER


def test_swapping_method_tags_reverses_the_ledger_verdict():
    fixture = build_ledger_fixture()
    swapped = swap_method_tags(fixture)
    lam = fixture.grid[len(fixture.grid) // 2]
    left = swapped.family(POSTERIOR_LIMIT, lam)
    verdict = external_strength(
        left, left, swapped.store,
        methods_left=(FIDUCIAL,), methods_right=(BAYESIAN,),
    )
    assert verdict.relation == WEAKER


def test_ledger_fixture_grid_needs_three_levels():
    with pytest.raises(DomainError):
        build_ledger_fixture(grid=(Fraction(1, 2), Fraction(1, 2)))


def test_ledger_selector_probability_is_exact():
    fixture = build_ledger_fixture()
    assert fixture.selector_probability == Fraction(7, 10)
