"""Post-data inference for a normal mean with known variance.

Three derivations of a distribution for the unknown mean live side by side:
a diffuse conjugate prior with its posterior, the improper flat limit of
that posterior, and the fiducial route that reads the sampling identity
X_bar = mu + (sigma/sqrt(n)) * Gamma backwards after the data are in. The
module provides the simulation algorithm that makes the identity literal, the
resulting distributions, numeric checks that the fiducial distribution is
the flat-prior limit with exact frequentist coverage, and a reasoning ledger
that records how strongly each derivation's event claims resemble reference
events, so the generic strength engine can compare the derivations
themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .distributions import NORMAL, Distribution, normal
from .errors import DomainError
from .events import DiscreteExperiment, Event, physical_probability
from .levels import DEFAULT_GRID, Num, level_doc
from .methods import BAYESIAN, FIDUCIAL
from .similarity import (
    DIRECT,
    EventRef,
    Judgment,
    Relation,
    SimilarityStore,
    SimilarityTerm,
)
from .strength import ContinuousProbeConfig, ProbeFamily, family_builder

MU = "mu"
FIDUCIAL_NOTE = "the strong fiducial argument applied"


@dataclass(frozen=True)
class FiducialModel:
    """Sampling model: n iid draws from normal(mu, variance), variance known."""

    n: int
    variance: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"sample size must be at least 1, got {self.n}")
        if not self.variance > 0:
            raise DomainError(f"variance must be positive, got {self.variance!r}")

    @property
    def sigma(self) -> float:
        return math.sqrt(self.variance)

    @property
    def mean_variance(self) -> float:
        return self.variance / self.n

    def to_doc(self) -> dict:
        return {"n": self.n, "variance": float(self.variance)}

    @staticmethod
    def from_doc(doc: dict) -> "FiducialModel":
        return FiducialModel(n=int(doc["n"]), variance=float(doc["variance"]))


@dataclass(frozen=True)
class DgaSample:
    """One run of the data-generating algorithm."""

    gamma: float
    xbar: float
    data: tuple[float, ...]

    def to_doc(self) -> dict:
        return {
            "gamma": float(self.gamma),
            "xbar": float(self.xbar),
            "data": [float(v) for v in self.data],
        }


def simulate_dga(
    model: FiducialModel, mu_true: float, seed: int, gamma: float | None = None
) -> DgaSample:
    """Generate data in three steps: latent gamma, mean, then the sample.

    The sample is drawn from the conditional law of n iid normal draws given
    their mean: iid residuals recentred to mean zero and shifted to xbar,
    which is exact for the normal model.
    """
    rng = np.random.Generator(np.random.Philox(seed=np.random.SeedSequence(seed)))
    g = float(rng.standard_normal()) if gamma is None else float(gamma)
    xbar = mu_true + model.sigma / math.sqrt(model.n) * g
    residuals = rng.normal(0.0, model.sigma, size=model.n)
    residuals -= residuals.mean()
    data = tuple(float(x) for x in xbar + residuals)
    return DgaSample(gamma=g, xbar=xbar, data=data)


def fiducial_distribution(model: FiducialModel, xbar: float) -> Distribution:
    """The post-data distribution for mu obtained by holding Gamma fixed."""
    return normal(
        MU, float(xbar), model.mean_variance, method=FIDUCIAL, note=FIDUCIAL_NOTE
    )


def bayes_posterior(
    prior: Distribution, model: FiducialModel, xbar: float
) -> Distribution:
    """Conjugate update of a normal prior by the observed sample mean."""
    if prior.form != NORMAL:
        raise DomainError("the conjugate update needs a normal prior")
    prior_precision = 1.0 / prior.var
    data_precision = model.n / model.variance
    precision = prior_precision + data_precision
    mean = (prior.mean * prior_precision + xbar * data_precision) / precision
    return normal(MU, mean, 1.0 / precision, method=BAYESIAN)


def central_interval(dist: Distribution, level: float) -> tuple[float, float]:
    if not 0 < level < 1:
        raise DomainError(f"interval level must be in (0, 1), got {level!r}")
    tail = (1.0 - level) / 2.0
    return dist.quantile(tail), dist.quantile(1.0 - tail)


def max_cdf_difference(a: Distribution, b: Distribution, points: int = 2001) -> float:
    """Largest pointwise cdf gap over a grid spanning both distributions."""
    lo = min(a.quantile(1e-9), b.quantile(1e-9))
    hi = max(a.quantile(1.0 - 1e-9), b.quantile(1.0 - 1e-9))
    xs = np.linspace(lo, hi, points)
    gaps = [abs(a.cdf(float(x)) - b.cdf(float(x))) for x in xs]
    return float(max(gaps))


def improper_limit_check(
    model: FiducialModel,
    xbar: float,
    ladder: tuple[float, ...] | None = None,
    mu0: float = 0.0,
) -> dict:
    """Trace the posterior toward the flat-prior limit along a variance ladder.

    Reports, per prior variance, the largest cdf gap between the posterior
    and the fiducial distribution, plus whether the gaps decrease along the
    ladder as given.
    """
    if ladder is None:
        ladder = tuple(model.variance * t for t in (10.0, 1e3, 1e6))
    if not ladder:
        raise DomainError("the ladder needs at least one prior variance")
    fid = fiducial_distribution(model, xbar)
    rows = []
    for tau2 in ladder:
        posterior = bayes_posterior(normal(MU, mu0, tau2), model, xbar)
        rows.append(
            {
                "prior_var": float(tau2),
                "posterior_mean": posterior.mean,
                "posterior_var": posterior.var,
                "max_cdf_gap": max_cdf_difference(posterior, fid),
            }
        )
    gaps = [r["max_cdf_gap"] for r in rows]
    return {
        "model": model.to_doc(),
        "xbar": float(xbar),
        "mu0": float(mu0),
        "fiducial": fid.to_doc(),
        "rows": rows,
        "decreasing": all(b <= a + 1e-15 for a, b in zip(gaps, gaps[1:])),
        "final_gap": gaps[-1],
    }


def coverage_check(
    model: FiducialModel,
    mu_true: float,
    level: float,
    replications: int,
    seed: int,
) -> dict:
    """Fraction of replications whose central fiducial interval covers mu."""
    if replications < 1:
        raise DomainError("need at least one replication")
    if not 0 < level < 1:
        raise DomainError(f"interval level must be in (0, 1), got {level!r}")
    rng = np.random.Generator(np.random.Philox(seed=np.random.SeedSequence(seed)))
    se = model.sigma / math.sqrt(model.n)
    gammas = rng.standard_normal(replications)
    xbars = mu_true + se * gammas
    # The central fiducial interval is xbar +- z * se for every replication.
    ref = fiducial_distribution(model, 0.0)
    lo_off, hi_off = central_interval(ref, level)
    hits = int(np.count_nonzero((xbars + lo_off <= mu_true) & (mu_true <= xbars + hi_off)))
    return {
        "model": model.to_doc(),
        "mu_true": float(mu_true),
        "level": float(level),
        "replications": replications,
        "hits": hits,
        "coverage": hits / replications,
    }


# ---------------------------------------------------------------------------
# The reasoning ledger
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LedgerEntry:
    """Similarity judgments recorded for one distribution under one method."""

    distribution_id: str
    method: str
    level: Fraction
    judgments: tuple[Judgment, ...]

    def to_doc(self) -> dict:
        return {
            "distribution_id": self.distribution_id,
            "method": self.method,
            "level": level_doc(self.level),
            "judgments": [j.to_doc() for j in self.judgments],
        }


@dataclass(frozen=True)
class LedgerFixture:
    """A worked reasoning ledger over the mean-inference distributions.

    Holds the judgment store, per-distribution probe-family builders, and
    the raw entries. The conclusions (which derivation is better justified,
    how the prior fares against a directly elicited distribution) are not
    stored anywhere; they fall out of the strength engine applied to the
    store.
    """

    store: SimilarityStore
    entries: tuple[LedgerEntry, ...]
    distributions: dict[str, Distribution]
    builders: dict[str, Callable[[Num], ProbeFamily]]
    grid: tuple[Fraction, ...]
    selector_probability: Fraction

    def family(self, key: str, level: Num) -> ProbeFamily:
        return self.builders[key](level)


POSTERIOR_LIMIT = "C(mu|x)"
PRIOR = "D(mu)"
POSTERIOR = "D(mu|x)"
ELICITED = "G(elicited)"

_LEDGER_PROBES = ContinuousProbeConfig(
    tails=True, centered=False, two_tail=False, window_step=0.0
)


def _anchor(level: Fraction, other: Fraction) -> SimilarityTerm:
    return SimilarityTerm.of(EventRef.reference(other), EventRef.reference(level))


def _top(level: Fraction) -> SimilarityTerm:
    ref = EventRef.reference(level)
    return SimilarityTerm.of(ref, ref)


def build_ledger_fixture(
    model: FiducialModel | None = None,
    xbar: float = 10.0,
    mu0: float = 0.0,
    prior_var_factor: float = 1e6,
    selector_urn: tuple[int, int] = (7, 3),
    grid: tuple[Fraction, ...] = DEFAULT_GRID,
) -> LedgerFixture:
    """Encode the reasoning narrative for the mean-inference case as data.

    Under fiducial reasoning the limit posterior's event claims are rated
    equal to the top of the reference scale at every resolution; under
    Bayesian reasoning the diffuse prior's and posterior's claims sit in one
    low band (the prior having been, in the end, an arbitrary choice); a
    directly elicited comparison distribution sits in a middle band. All
    anchor orderings are physical facts about reference events, so every
    cross-method verdict is derived, not asserted.
    """
    if len(set(grid)) < 3:
        raise DomainError("the ledger grid needs at least three distinct levels")
    model = model or FiducialModel(n=25, variance=4.0)
    red, blue = selector_urn
    urn = DiscreteExperiment(red + blue)
    selector_probability = physical_probability(
        urn, Event.discrete(red + blue, range(1, red + 1))
    )

    dists = {
        POSTERIOR_LIMIT: fiducial_distribution(model, xbar),
        PRIOR: normal(MU, mu0, prior_var_factor * model.variance, method=BAYESIAN),
        ELICITED: normal("elicited_quantity", 0.0, 1.0, method=DIRECT),
    }
    dists[POSTERIOR] = bayes_posterior(dists[PRIOR], model, xbar)

    builders = {
        key: family_builder(d, continuous=_LEDGER_PROBES) for key, d in dists.items()
    }

    judgments: list[Judgment] = []
    entries: list[LedgerEntry] = []

    def tie(key: str, method: str, level: Fraction, anchor: SimilarityTerm) -> None:
        batch = tuple(
            Judgment(lhs=t, rhs=anchor, relation=Relation.EQUAL, method=method)
            for t in builders[key](level).terms()
        )
        judgments.extend(batch)
        entries.append(
            LedgerEntry(
                distribution_id=key, method=method, level=level, judgments=batch
            )
        )

    for lam in grid:
        far = max(grid, key=lambda g: (abs(g - lam), g))
        near = min(
            (g for g in grid if g != lam), key=lambda g: (abs(g - lam), g)
        )
        top = _top(lam)
        mid = _anchor(lam, near)
        low = _anchor(lam, far)
        if mid != low:
            judgments.append(
                Judgment(lhs=low, rhs=mid, relation=Relation.LESS, source="physical")
            )
        judgments.append(
            Judgment(lhs=mid, rhs=top, relation=Relation.LESS, source="physical")
        )
        tie(POSTERIOR_LIMIT, FIDUCIAL, lam, top)
        tie(POSTERIOR_LIMIT, BAYESIAN, lam, low)
        tie(PRIOR, BAYESIAN, lam, low)
        tie(POSTERIOR, BAYESIAN, lam, low)
        tie(ELICITED, DIRECT, lam, mid)

    store = SimilarityStore.empty().with_judgments(judgments)
    return LedgerFixture(
        store=store,
        entries=tuple(entries),
        distributions=dists,
        builders=builders,
        grid=tuple(grid),
        selector_probability=selector_probability,
    )


def swap_method_tags(
    fixture: LedgerFixture, a: str = FIDUCIAL, b: str = BAYESIAN
) -> LedgerFixture:
    """The same ledger with two method tags exchanged on every judgment."""

    def swapped(method: str) -> str:
        return b if method == a else a if method == b else method

    judgments = [
        Judgment(
            lhs=j.lhs,
            rhs=j.rhs,
            relation=j.relation,
            source=j.source,
            method=swapped(j.method),
            extended=j.extended,
            timestamp=j.timestamp,
        )
        for j in fixture.store.judgments()
    ]
    entries = tuple(
        LedgerEntry(
            distribution_id=e.distribution_id,
            method=swapped(e.method),
            level=e.level,
            judgments=tuple(
                Judgment(
                    lhs=j.lhs,
                    rhs=j.rhs,
                    relation=j.relation,
                    source=j.source,
                    method=swapped(j.method),
                    extended=j.extended,
                    timestamp=j.timestamp,
                )
                for j in e.judgments
            ),
        )
        for e in fixture.entries
    )
    return LedgerFixture(
        store=SimilarityStore.empty().with_judgments(judgments),
        entries=entries,
        distributions=dict(fixture.distributions),
        builders=dict(fixture.builders),
        grid=fixture.grid,
        selector_probability=fixture.selector_probability,
    )


def demo_report(
    model: FiducialModel,
    xbar: float,
    level: float = 0.95,
    ladder: tuple[float, ...] | None = None,
) -> dict:
    """The numbers behind the worked example, as one JSON-able document."""
    fid = fiducial_distribution(model, xbar)
    lo, hi = central_interval(fid, level)
    return {
        "model": model.to_doc(),
        "xbar": float(xbar),
        "fiducial": fid.to_doc(),
        "interval_level": float(level),
        "interval": [lo, hi],
        "ladder_report": improper_limit_check(model, xbar, ladder),
    }
