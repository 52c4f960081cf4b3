"""Ready-made comparison scenarios.

Each scenario bundles a similarity store preloaded with judgments, builders
for the probe families involved, and the resolution grid the judgments
cover. The stores only ever contain similarity orderings; every verdict the
tests and demos replay is derived from those orderings by the generic
engine, not hard-coded here.

The recurring construction uses three anchor terms per resolution, all of
them pure reference comparisons:

* the self-similarity of the reference event, the top of the scale,
* a near anchor, the reference event one grid step away versus itself,
* a far anchor, the most distant grid point's event versus the same
  reference.

Probe terms from well-understood variables get tied to the top; probe terms
from poorly understood ones get tied to a lower anchor; the anchors' own
ordering against the top is physically grounded and recorded as such.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .distributions import Distribution, finite_pmf, normal, uniform
from .errors import DomainError
from .levels import DEFAULT_GRID, Num, level_key
from .similarity import (
    DIRECT,
    EventRef,
    Judgment,
    Relation,
    SimilarityStore,
    SimilarityTerm,
)
from .strength import (
    ContinuousProbeConfig,
    DiscreteProbeConfig,
    ProbeFamily,
    build_probes,
)

PHYSICAL = "physical"


@dataclass(frozen=True)
class Scenario:
    """A judgment store plus the probe-family builders it covers."""

    name: str
    store: SimilarityStore
    builders: dict[str, Callable[[Num], ProbeFamily]]
    grid: tuple[Fraction, ...]
    method: str = DIRECT
    notes: dict = field(default_factory=dict)

    def family(self, key: str, level: Num) -> ProbeFamily:
        return self.builders[key](level)


def _top(level: Fraction, refset: str = "R") -> SimilarityTerm:
    r = EventRef.reference(level, refset)
    return SimilarityTerm.of(r, r)


def _anchor(level: Fraction, other: Fraction, refset: str = "R") -> SimilarityTerm:
    return SimilarityTerm.of(
        EventRef.reference(other, refset), EventRef.reference(level, refset)
    )


def _far_level(level: Fraction, grid: tuple[Fraction, ...]) -> Fraction:
    return max(grid, key=lambda g: (abs(g - level), g))


def _tie_family(
    family: ProbeFamily, anchor: SimilarityTerm, method: str
) -> list[Judgment]:
    return [
        Judgment(lhs=t, rhs=anchor, relation=Relation.EQUAL, method=method)
        for t in family.terms()
    ]


def calibrated_generator_scenario(
    grid: tuple[Fraction, ...] = DEFAULT_GRID,
) -> Scenario:
    """A calibrated uniform generator against a novel treatment response.

    The generator's event claims are as good as reference claims at every
    resolution; the treatment's are tied to a far anchor, itself below the
    top. The generator family therefore comes out Stronger across the whole
    grid.
    """
    gen = uniform("generator_draw", 0.0, 1.0)
    treat = normal("treatment_response", 0.5, 0.04)
    cfg = ContinuousProbeConfig()

    judgments: list[Judgment] = []
    for lam in grid:
        top = _top(lam)
        low = _anchor(lam, _far_level(lam, grid))
        judgments.append(
            Judgment(lhs=low, rhs=top, relation=Relation.LESS, source=PHYSICAL)
        )
        judgments.extend(_tie_family(build_probes(gen, lam, continuous=cfg), top, DIRECT))
        judgments.extend(
            _tie_family(build_probes(treat, lam, continuous=cfg), low, DIRECT)
        )
    store = SimilarityStore.empty().with_judgments(judgments)

    def gen_family(level: Num) -> ProbeFamily:
        return build_probes(gen, level, continuous=cfg)

    def treat_family(level: Num) -> ProbeFamily:
        return build_probes(treat, level, continuous=cfg)

    return Scenario(
        name="calibrated-generator",
        store=store,
        builders={"generator": gen_family, "treatment": treat_family},
        grid=tuple(grid),
        notes={"expected": {"generator-vs-treatment": "stronger at every level"}},
    )


def two_urns_election_scenario() -> Scenario:
    """Three even-odds claims of very different pedigree at resolution 1/2.

    An urn of known half-and-half composition supports its even-odds claim
    physically (tied to the top anchor). An urn of unknown composition gets
    even odds only by symmetry (tied to the anchor one step below the top).
    A five-way election forecast gets even odds for its leading pair by
    aggregation (tied to the anchor one step above the bottom). The two
    lower anchors are never compared with each other, so the unknown urn
    versus the election stays Indeterminate while both lose to the known
    urn.
    """
    half = Fraction(1, 2)
    grid = DEFAULT_GRID
    known = finite_pmf(
        "known_urn_draw", ("blue", "red"), (Fraction(1, 2), Fraction(1, 2))
    )
    unknown = finite_pmf(
        "unknown_urn_draw", ("blue", "red"), (Fraction(1, 2), Fraction(1, 2))
    )
    election = finite_pmf(
        "election_winner",
        ("alvarez", "baker", "chen", "diaz", "evans"),
        (
            Fraction(30, 100),
            Fraction(25, 100),
            Fraction(20, 100),
            Fraction(15, 100),
            Fraction(10, 100),
        ),
    )
    cfg = DiscreteProbeConfig(completions="one", max_probes=16)

    top = _top(half)
    near_low = _anchor(half, half - Fraction(1, 20))
    deep_low = _anchor(half, Fraction(1, 20))

    judgments = [
        Judgment(lhs=near_low, rhs=top, relation=Relation.LESS, source=PHYSICAL),
        Judgment(lhs=deep_low, rhs=top, relation=Relation.LESS, source=PHYSICAL),
    ]
    judgments += _tie_family(build_probes(known, half, discrete=cfg), top, DIRECT)
    judgments += _tie_family(build_probes(unknown, half, discrete=cfg), near_low, DIRECT)
    judgments += _tie_family(build_probes(election, half, discrete=cfg), deep_low, DIRECT)
    store = SimilarityStore.empty().with_judgments(judgments)

    builders = {
        "known_urn": lambda level: build_probes(known, level, discrete=cfg),
        "unknown_urn": lambda level: build_probes(unknown, level, discrete=cfg),
        "election": lambda level: build_probes(election, level, discrete=cfg),
    }
    return Scenario(
        name="two-urns-election",
        store=store,
        builders=builders,
        grid=(half,),
        notes={
            "expected": {
                "known-vs-unknown": "stronger",
                "election-vs-known": "weaker",
                "election-vs-unknown": "indeterminate",
            }
        },
    )


def crossover_scenario(
    grid: tuple[Fraction, ...] = DEFAULT_GRID,
) -> Scenario:
    """Two variables whose support quality trades places mid-scale.

    A coarse instrument resolves extreme events well but mid-scale events
    poorly; a fine instrument is the opposite. Below one half the coarse
    variable's terms sit at the top, above it the fine variable's do, so a
    resolution sweep of the comparison flips exactly once.
    """
    coarse = uniform("coarse_reading", 0.0, 1.0)
    fine = uniform("fine_reading", -1.0, 1.0)
    cfg = ContinuousProbeConfig()
    half = Fraction(1, 2)

    judgments: list[Judgment] = []
    for lam in grid:
        top = _top(lam)
        low = _anchor(lam, _far_level(lam, grid))
        judgments.append(
            Judgment(lhs=low, rhs=top, relation=Relation.LESS, source=PHYSICAL)
        )
        strong, weak = (coarse, fine) if lam < half else (fine, coarse)
        judgments.extend(
            _tie_family(build_probes(strong, lam, continuous=cfg), top, DIRECT)
        )
        judgments.extend(
            _tie_family(build_probes(weak, lam, continuous=cfg), low, DIRECT)
        )
    store = SimilarityStore.empty().with_judgments(judgments)

    builders = {
        "coarse": lambda level: build_probes(coarse, level, continuous=cfg),
        "fine": lambda level: build_probes(fine, level, continuous=cfg),
    }
    return Scenario(
        name="crossover",
        store=store,
        builders=builders,
        grid=tuple(grid),
        notes={"expected": {"coarse-vs-fine": "flips once at one half"}},
    )


SCENARIOS: dict[str, Callable[[], Scenario]] = {
    "calibrated-generator": calibrated_generator_scenario,
    "two-urns-election": two_urns_election_scenario,
    "crossover": crossover_scenario,
}


def load_scenario(name: str) -> Scenario:
    try:
        factory = SCENARIOS[name]
    except KeyError:
        raise DomainError(
            f"unknown scenario {name!r}; available: {sorted(SCENARIOS)}"
        ) from None
    return factory()
