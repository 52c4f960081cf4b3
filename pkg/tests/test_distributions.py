"""Distribution forms, joints, and the additivity policy switches."""

from fractions import Fraction

import pytest
from scipy import stats

from strengthlab.distributions import (
    Distribution,
    JointDistribution,
    condition,
    evaluate,
    finite_pmf,
    improper_flat,
    marginal_consistency,
    marginalize,
    normal,
    piecewise_cdf,
    uniform,
)
from strengthlab.errors import (
    DistributionFormError,
    DomainError,
    SemiAdditiveRefusal,
    UnauthorizedConditioning,
    UnsupportedFormError,
    ZeroMassConditioning,
)


def test_finite_pmf_validation():
    with pytest.raises(DistributionFormError):
        finite_pmf("x", ("a", "b"), (Fraction(1, 2),))
    with pytest.raises(DistributionFormError):
        finite_pmf("x", ("a", "a"), (Fraction(1, 2), Fraction(1, 2)))
    with pytest.raises(DistributionFormError):
        finite_pmf("x", ("a", "b"), (Fraction(3, 4), Fraction(3, 4)))
    with pytest.raises(DistributionFormError):
        finite_pmf("x", ("a", "b"), (Fraction(-1, 4), Fraction(5, 4)))


def test_finite_pmf_mass_and_interval():
    d = finite_pmf("x", (1, 2, 3), (Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)))
    assert d.mass(2) == Fraction(1, 3)
    assert d.mass(9) == 0
    assert evaluate(d, "mass", 1) == Fraction(1, 2)


def test_normal_matches_reference_cdf():
    d = normal("x", 3.0, 4.0)
    for z in (-1.0, 0.0, 2.5, 3.0, 6.0):
        assert d.cdf(z) == pytest.approx(stats.norm.cdf(z, loc=3.0, scale=2.0), abs=1e-12)
    for p in (0.01, 0.25, 0.5, 0.9):
        assert d.quantile(p) == pytest.approx(
            stats.norm.ppf(p, loc=3.0, scale=2.0), abs=1e-9
        )
    assert d.support_bounds() == (float("-inf"), float("inf"))


def test_uniform_matches_reference_cdf():
    d = uniform("x", 2.0, 6.0)
    assert d.cdf(2.0) == 0.0
    assert d.cdf(6.0) == 1.0
    assert d.cdf(3.0) == pytest.approx(0.25)
    assert d.quantile(0.5) == pytest.approx(4.0)
    assert d.interval_mass(((3.0, 5.0),)) == pytest.approx(0.5)


def test_piecewise_cdf_interpolates_linearly():
    d = piecewise_cdf("x", (0.0, 1.0, 3.0), (0.0, 0.5, 1.0))
    assert d.cdf(0.5) == pytest.approx(0.25)
    assert d.cdf(2.0) == pytest.approx(0.75)
    assert d.quantile(0.25) == pytest.approx(0.5)
    assert d.quantile(0.75) == pytest.approx(2.0)
    with pytest.raises(DistributionFormError):
        piecewise_cdf("x", (0.0, 0.0), (0.0, 1.0))
    with pytest.raises(DistributionFormError):
        piecewise_cdf("x", (0.0, 1.0), (0.5, 0.2))


def test_quantile_inverts_cdf():
    for d in (normal("x", -1.0, 2.25), uniform("x", 0.0, 5.0),
              piecewise_cdf("x", (0.0, 2.0, 2.5, 4.0), (0.0, 0.4, 0.7, 1.0))):
        for p in (0.05, 0.3, 0.5, 0.77, 0.95):
            assert d.cdf(d.quantile(p)) == pytest.approx(p, abs=1e-9)


def test_improper_flat_is_tag_only():
    d = improper_flat("mu")
    with pytest.raises(UnsupportedFormError):
        d.cdf(0.0)
    with pytest.raises(UnsupportedFormError):
        d.quantile(0.5)


def test_doc_round_trip_all_forms():
    ds = [
        finite_pmf("x", ("a", "b"), (Fraction(1, 3), Fraction(2, 3))),
        normal("y", 1.5, 2.0, method="fiducial", note="demo"),
        uniform("z", -1.0, 1.0),
        piecewise_cdf("w", (0.0, 1.0), (0.0, 1.0), mode="semi-additive"),
        improper_flat("mu"),
    ]
    for d in ds:
        back = Distribution.from_doc(d.to_doc())
        assert back.to_doc() == d.to_doc()
        assert back.canonical_key() == d.canonical_key()


def test_canonical_key_identifies_equal_masses_across_types():
    a = finite_pmf("x", (1, 2), (Fraction(1, 2), Fraction(1, 2)))
    b = finite_pmf("x", (1, 2), (0.5, 0.5))
    assert a.canonical_key() == b.canonical_key()


def _table_joint(mode="fully-additive") -> JointDistribution:
    return JointDistribution(
        variables=("x", "y"),
        form="table",
        row_support=("r1", "r2"),
        col_support=("c1", "c2", "c3"),
        table=(
            (Fraction(1, 10), Fraction(2, 10), Fraction(1, 10)),
            (Fraction(3, 10), Fraction(0), Fraction(3, 10)),
        ),
        mode=mode,
    )


def test_marginalize_table():
    m = marginalize(_table_joint(), "x")
    assert m.mass("r1") == Fraction(4, 10)
    assert m.mass("r2") == Fraction(6, 10)
    m2 = marginalize(_table_joint(), "y")
    assert m2.mass("c2") == Fraction(2, 10)


def test_semi_additive_marginal_refused_without_override():
    j = _table_joint(mode="semi-additive")
    with pytest.raises(SemiAdditiveRefusal):
        marginalize(j, "x")
    forced = marginalize(j, "x", override=True)
    assert forced.mass("r1") == Fraction(4, 10)


def test_conditioning_requires_authorization():
    j = _table_joint()
    with pytest.raises(UnauthorizedConditioning):
        condition(j, "x", "r1")
    d = condition(j, "x", "r1", authorized=True)
    assert d.mass("c2") == Fraction(1, 2)
    with pytest.raises(DomainError):
        condition(j, "x", "r9", authorized=True)


def test_zero_mass_conditioning_rejected():
    j = JointDistribution(
        variables=("x", "y"),
        form="table",
        row_support=("r1", "r2"),
        col_support=("c1", "c2"),
        table=((Fraction(1, 2), Fraction(1, 2)), (Fraction(0), Fraction(0))),
    )
    with pytest.raises(ZeroMassConditioning):
        condition(j, "x", "r2", authorized=True)


def test_binormal_marginal_and_condition():
    j = JointDistribution(
        variables=("x", "y"),
        form="binormal",
        means=(1.0, -2.0),
        cov=((4.0, 1.0), (1.0, 9.0)),
    )
    mx = marginalize(j, "x")
    assert (mx.mean, mx.var) == (1.0, 4.0)
    c = condition(j, "y", 1.0, authorized=True)
    assert c.mean == pytest.approx(1.0 + 1.0 / 9.0 * 3.0)
    assert c.var == pytest.approx(4.0 - 1.0 / 9.0)


def test_marginal_consistency_report():
    j = _table_joint()
    direct = finite_pmf("x", ("r1", "r2"), (Fraction(4, 10), Fraction(6, 10)))
    rep = marginal_consistency(j, "x", direct)
    assert rep["consistent"]
    skew = finite_pmf("x", ("r1", "r2"), (Fraction(1, 2), Fraction(1, 2)))
    rep2 = marginal_consistency(j, "x", skew)
    assert not rep2["consistent"]
    assert rep2["max_mass_gap"] == pytest.approx(0.1)
    assert rep2["disagreements"]
