"""Probe families and order-theoretic strength comparisons.

A distribution claims, for each resolution ``a``, a family of events of
probability exactly ``a``. Those families are infinite in general; the
engine works with finite recorded *probe families* whose members carry the
recipe that produced them. A family's strength at resolution ``a`` is the
worst-case similarity between its probes and the reference event of the same
resolution, known only through recorded judgments.

Internal comparisons read minima off one judgment layer. External
comparisons quantify over sets of reasoning methods: the left side wins when
some method makes every left probe evaluation derivably greater than every
recorded right-side evaluation. All verdicts are three-valued and carry a
coverage report; nothing is ever concluded from missing comparisons.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .distributions import FINITE_PMF, Distribution
from .errors import DomainError, LevelMismatchError, UnsupportedFormError
from .levels import Num, level_doc, level_key
from .similarity import (
    DIRECT,
    EventRef,
    Order,
    SimilarityStore,
    SimilarityTerm,
)

STRONGER = "stronger"
WEAKER = "weaker"
INDETERMINATE = "indeterminate"

_EXACT_TOL = Fraction(0)
_FLOAT_TOL = 1e-12


# ---------------------------------------------------------------------------
# Probe construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContinuousProbeConfig:
    """Recipe switches for continuous probe families."""

    tails: bool = True
    centered: bool = True
    two_tail: bool = True
    window_step: float = 0.25


@dataclass(frozen=True)
class DiscreteProbeConfig:
    """Recipe switches for discrete probe families.

    ``completions`` chooses how subsets short of the target resolution are
    topped up with one fractionally counted outcome: ``"all"`` emits every
    admissible completion, ``"one"`` a single deterministic pick.
    ``max_probes`` caps the family, keeping smallest-weight-count probes
    first (a deterministic, diversity-preserving order).
    """

    exhaustive_limit: int = 12
    completions: str = "all"
    max_probes: int | None = None
    sample_subsets: int = 64
    seed: int = 0


@dataclass(frozen=True)
class Probe:
    """One recorded member of an event family."""

    recipe: str
    event: EventRef

    def to_doc(self) -> dict:
        return {"recipe": self.recipe, "event": self.event.to_doc()}


@dataclass(frozen=True)
class ProbeFamily:
    """Finite recorded slice of a distribution's level-``a`` event family."""

    distribution: Distribution
    level: Fraction
    probes: tuple[Probe, ...]
    refset: str = "R"

    def terms(self) -> tuple[SimilarityTerm, ...]:
        ref = EventRef.reference(self.level, self.refset)
        return tuple(SimilarityTerm.of(p.event, ref) for p in self.probes)

    def reference_term(self) -> SimilarityTerm:
        ref = EventRef.reference(self.level, self.refset)
        return SimilarityTerm.of(ref, ref)

    def to_doc(self) -> dict:
        return {
            "variable": self.distribution.variable,
            "level": level_doc(self.level),
            "distribution": self.distribution.to_doc(),
            "probes": [p.to_doc() for p in self.probes],
        }


def validate_probe_weights(
    dist: Distribution, level: Num, weights: Iterable[Sequence]
) -> None:
    """Check the membership rule for a weighted discrete probe.

    Weights must lie in [0, 1], at most one may be fractional, every
    positively weighted outcome must carry positive mass, and the weighted
    mass must equal the level within 1e-12 (exactly, for rational masses).
    """
    if dist.form != FINITE_PMF:
        raise DomainError("weighted probes only apply to finite pmfs")
    mass_of = dict(zip(dist.support, dist.masses))
    total = Fraction(0)
    fractional = 0
    exact = all(isinstance(m, (int, Fraction)) for m in dist.masses)
    for outcome, w in weights:
        wk = level_key(w)
        if not 0 <= wk <= 1:
            raise DomainError(f"weight {w!r} outside [0, 1]")
        if 0 < wk < 1:
            fractional += 1
        if wk > 0:
            if outcome not in mass_of:
                raise DomainError(f"outcome {outcome!r} not in the support")
            m = mass_of[outcome]
            if not m > 0:
                raise DomainError(
                    f"outcome {outcome!r} has zero mass and cannot be counted"
                )
            total += wk * level_key(m)
    if fractional > 1:
        raise DomainError("at most one outcome may carry a fractional weight")
    gap = abs(total - level_key(level))
    tol = _EXACT_TOL if exact else Fraction(1, 10**12)
    if gap > tol:
        raise DomainError(
            f"weighted mass {float(total)} misses the level {float(level_key(level))}"
        )


def build_probes_continuous(
    dist: Distribution,
    level: Num,
    config: ContinuousProbeConfig | None = None,
    refset: str = "R",
) -> ProbeFamily:
    """Tail, centered, two-tail and sliding-window probes at one level."""
    config = config or ContinuousProbeConfig()
    if dist.form == FINITE_PMF:
        raise DomainError("use build_probes_discrete for finite pmfs")
    a_key = level_key(level)
    if not 0 <= a_key <= 1:
        raise DomainError(f"level {level!r} outside [0, 1]")
    a = float(a_key)
    lo, hi = dist.support_bounds()
    q = dist.quantile

    probes: dict[EventRef, Probe] = {}

    def add(recipe: str, intervals: Sequence[Sequence[float]]) -> None:
        event = EventRef.interval_event(dist.variable, intervals)
        gap = abs(dist.interval_mass(event.payload) - a)
        if gap > 1e-9:
            raise DomainError(
                f"probe {recipe!r} has mass off target by {gap:g}; "
                "the distribution's cdf does not support exact slicing here"
            )
        probes.setdefault(event, Probe(recipe=recipe, event=event))

    if a <= 0.0:
        add("empty", ())
    elif a >= 1.0:
        add("full", ((lo, hi),))
    else:
        if config.tails:
            add("lower-tail", ((lo, q(a)),))
            add("upper-tail", ((q(1 - a), hi),))
        if config.centered:
            add("centered", ((q((1 - a) / 2), q((1 + a) / 2)),))
        if config.two_tail:
            add("two-tail", ((lo, q(a / 2)), (q(1 - a / 2), hi)))
        if config.window_step and config.window_step > 0:
            t = 0.0
            i = 0
            while t <= 1 - a + 1e-12:
                add(f"window@{t:g}", ((q(t), q(min(t + a, 1.0))),))
                i += 1
                t = i * config.window_step

    ordered = sorted(probes.values(), key=lambda p: p.event.sort_token())
    return ProbeFamily(
        distribution=dist, level=a_key, probes=tuple(ordered), refset=refset
    )


def _discrete_subsets(
    positive: Sequence[int], config: DiscreteProbeConfig
) -> list[tuple[int, ...]]:
    m = len(positive)
    if m <= config.exhaustive_limit:
        out: list[tuple[int, ...]] = []
        for r in range(m + 1):
            out.extend(itertools.combinations(positive, r))
        return out
    rng = np.random.Generator(np.random.Philox(seed=config.seed))
    seen = {(), tuple(positive)}
    for _ in range(config.sample_subsets):
        mask = rng.random(m) < 0.5
        seen.add(tuple(i for i, keep in zip(positive, mask) if keep))
    return sorted(seen)


def build_probes_discrete(
    dist: Distribution,
    level: Num,
    config: DiscreteProbeConfig | None = None,
    refset: str = "R",
) -> ProbeFamily:
    """Weighted-outcome probes at one level.

    Enumerates (or samples, past ``exhaustive_limit``) subsets of the
    positive-mass support whose mass does not exceed the level, emitting the
    subset outright when it hits the level exactly and otherwise topping it
    up with a single fractionally weighted outcome.
    """
    config = config or DiscreteProbeConfig()
    if dist.form != FINITE_PMF:
        raise DomainError("build_probes_discrete needs a finite pmf")
    a_key = level_key(level)
    if not 0 <= a_key <= 1:
        raise DomainError(f"level {level!r} outside [0, 1]")
    exact = all(isinstance(m, (int, Fraction)) for m in dist.masses)
    masses = [level_key(m) if exact else float(m) for m in dist.masses]
    target = a_key if exact else float(a_key)
    tol = _EXACT_TOL if exact else _FLOAT_TOL
    positive = [i for i, m in enumerate(masses) if m > 0]

    probes: dict[EventRef, Probe] = {}

    def add(recipe: str, pairs: Iterable[tuple]) -> None:
        event = EventRef.weighted_event(dist.variable, pairs)
        probes.setdefault(event, Probe(recipe=recipe, event=event))

    for subset in _discrete_subsets(positive, config):
        s = sum(masses[i] for i in subset)
        if s > target + tol:
            continue
        rem = target - s
        if abs(rem) <= tol:
            add("subset", [(dist.support[i], 1) for i in subset])
            continue
        others = [j for j in positive if j not in subset]
        if config.completions == "one" and others:
            others = [max(others, key=lambda j: (masses[j], -j))]
        for j in others:
            b = rem / masses[j]
            if tol < b < 1 - tol:
                pairs = [(dist.support[i], 1) for i in subset]
                pairs.append((dist.support[j], b))
                add("subset+fraction", pairs)

    ordered = sorted(
        probes.values(), key=lambda p: (len(p.event.payload), p.event.sort_token())
    )
    if config.max_probes is not None:
        ordered = ordered[: config.max_probes]
    return ProbeFamily(
        distribution=dist, level=a_key, probes=tuple(ordered), refset=refset
    )


def build_probes(
    dist: Distribution,
    level: Num,
    discrete: DiscreteProbeConfig | None = None,
    continuous: ContinuousProbeConfig | None = None,
    refset: str = "R",
) -> ProbeFamily:
    if dist.form == FINITE_PMF:
        return build_probes_discrete(dist, level, discrete, refset)
    return build_probes_continuous(dist, level, continuous, refset)


def family_builder(
    dist: Distribution,
    discrete: DiscreteProbeConfig | None = None,
    continuous: ContinuousProbeConfig | None = None,
    refset: str = "R",
) -> Callable[[Num], ProbeFamily]:
    """Curried probe builder used by sensitivity scans."""

    def build(level: Num) -> ProbeFamily:
        return build_probes(dist, level, discrete, continuous, refset)

    return build


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverageReport:
    """How much of the required comparison set the store could derive."""

    required: int
    derivable: int
    mode: str  # "certificate" | "all-pairs"

    @property
    def complete(self) -> bool:
        return self.required == self.derivable

    def to_doc(self) -> dict:
        return {
            "required": self.required,
            "derivable": self.derivable,
            "mode": self.mode,
            "complete": self.complete,
        }


@dataclass(frozen=True)
class StrengthVerdict:
    """Three-valued outcome of a strength comparison."""

    relation: str
    kind: str  # "internal" | "external"
    level: Fraction
    left: ProbeFamily
    right: ProbeFamily
    coverage: CoverageReport
    methods_left: tuple[str, ...] | None = None
    methods_right: tuple[str, ...] | None = None
    witness: dict | None = None
    notes: dict = field(default_factory=dict)

    def to_doc(self) -> dict:
        doc = {
            "relation": self.relation,
            "kind": self.kind,
            "level": level_doc(self.level),
            "left": self.left.to_doc(),
            "right": self.right.to_doc(),
            "coverage": self.coverage.to_doc(),
        }
        if self.methods_left is not None:
            doc["methods_left"] = list(self.methods_left)
        if self.methods_right is not None:
            doc["methods_right"] = list(self.methods_right)
        if self.witness is not None:
            doc["witness"] = self.witness
        if self.notes:
            doc["notes"] = dict(self.notes)
        return doc


def _check_levels(left: ProbeFamily, right: ProbeFamily) -> Fraction:
    if left.level != right.level:
        raise LevelMismatchError(
            f"families built at different levels: "
            f"{float(left.level)} vs {float(right.level)}"
        )
    if left.refset != right.refset:
        raise LevelMismatchError("families compare against different reference sets")
    return left.level


def minimal_elements(
    terms: Sequence[SimilarityTerm], store: SimilarityStore, method: str = DIRECT
) -> list[SimilarityTerm]:
    """Terms of the list not derivably greater than another listed term."""
    mins: list[SimilarityTerm] = []
    for t in terms:
        dominated = False
        survivors = []
        for m in mins:
            rel = store.query_opt(t, m, method, method)
            if rel is Order.GREATER:
                dominated = True
            if rel is not Order.LESS:
                survivors.append(m)
        if dominated:
            continue
        survivors.append(t)
        mins = survivors
    # Late arrivals can dominate earlier entries; settle with one more pass.
    out = []
    for t in mins:
        if not any(
            store.query_opt(t, m, method, method) is Order.GREATER
            for m in mins
            if m is not t
        ):
            out.append(t)
    return out


def _certificate(
    lower: Sequence[SimilarityTerm],
    upper: Sequence[SimilarityTerm],
    store: SimilarityStore,
    method: str,
) -> tuple[SimilarityTerm, list[SimilarityTerm]] | None:
    """A lower-family term derivably Less than every upper-family term."""
    for b in minimal_elements(lower, store, method):
        if all(store.query_opt(b, a, method, method) is Order.LESS for a in upper):
            return b, list(upper)
    return None


def _pair_coverage(
    left: Sequence[SimilarityTerm],
    right: Sequence[SimilarityTerm],
    store: SimilarityStore,
    method: str,
) -> CoverageReport:
    required = len(left) * len(right)
    derivable = sum(
        1
        for a in left
        for b in right
        if store.query_opt(a, b, method, method) is not Order.INCOMPARABLE
    )
    return CoverageReport(required=required, derivable=derivable, mode="all-pairs")


def _witness_doc(
    b: SimilarityTerm,
    upper: Sequence[SimilarityTerm],
    store: SimilarityStore,
    method: str,
    max_chain: int = 12,
) -> dict:
    chains = []
    for a in upper[:max_chain]:
        chain = store.explain(b, a, method, method)
        chains.append(
            {
                "against": a.to_doc(),
                "judgments": [j.to_doc() for j in chain],
            }
        )
    return {"term": b.to_doc(), "dominated_by_all_of": len(upper), "chains": chains}


def internal_strength(
    left: ProbeFamily,
    right: ProbeFamily,
    store: SimilarityStore,
    method: str = DIRECT,
    explain: bool = False,
) -> StrengthVerdict:
    """Worst-case-similarity comparison of two families at one level.

    Left is Stronger exactly when some right probe term is derivably Less
    than every left probe term, which certifies that the right family's
    minimum sits strictly below the left one's.
    """
    level = _check_levels(left, right)
    lt = left.terms()
    rt = right.terms()
    cert = _certificate(rt, lt, store, method)
    if cert is not None:
        b, uppers = cert
        coverage = CoverageReport(
            required=len(uppers), derivable=len(uppers), mode="certificate"
        )
        witness = _witness_doc(b, uppers, store, method) if explain else None
        return StrengthVerdict(
            relation=STRONGER,
            kind="internal",
            level=level,
            left=left,
            right=right,
            coverage=coverage,
            witness=witness,
        )
    cert = _certificate(lt, rt, store, method)
    if cert is not None:
        b, uppers = cert
        coverage = CoverageReport(
            required=len(uppers), derivable=len(uppers), mode="certificate"
        )
        witness = _witness_doc(b, uppers, store, method) if explain else None
        return StrengthVerdict(
            relation=WEAKER,
            kind="internal",
            level=level,
            left=left,
            right=right,
            coverage=coverage,
            witness=witness,
        )
    return StrengthVerdict(
        relation=INDETERMINATE,
        kind="internal",
        level=level,
        left=left,
        right=right,
        coverage=_pair_coverage(lt, rt, store, method),
    )


def _recorded_methods(
    terms: Sequence[SimilarityTerm], store: SimilarityStore
) -> tuple[str, ...]:
    out: set[str] = set()
    for t in terms:
        out.update(store.methods_recorded(t))
    return tuple(sorted(out))


def external_strength(
    left: ProbeFamily,
    right: ProbeFamily,
    store: SimilarityStore,
    methods_left: Sequence[str] | None = None,
    methods_right: Sequence[str] | None = None,
    explain: bool = False,
) -> StrengthVerdict:
    """Best-method lower bound of the left family against the best-method
    upper bound of the right family.

    A ``None`` method set means every method recorded in the store for the
    relevant terms, which reduces the comparison to the plain minimum-vs-
    maximum check.
    """
    level = _check_levels(left, right)
    lt = left.terms()
    rt = right.terms()
    ml = tuple(methods_left) if methods_left is not None else _recorded_methods(lt, store)
    mr = tuple(methods_right) if methods_right is not None else _recorded_methods(rt, store)

    def recorded_nodes(
        terms: Sequence[SimilarityTerm], methods: Sequence[str]
    ) -> list[tuple[SimilarityTerm, str]]:
        return [
            (t, m) for m in methods for t in terms if store.knows_term(t, m)
        ]

    def dominates(
        winners: Sequence[SimilarityTerm],
        win_method: str,
        losers: list[tuple[SimilarityTerm, str]],
    ) -> bool:
        if not winners or not losers:
            return False
        return all(
            store.query_opt(a, b, win_method, m1) is Order.GREATER
            for a in winners
            for (b, m1) in losers
        )

    right_nodes = recorded_nodes(rt, mr)
    winner_method = next((m0 for m0 in ml if dominates(lt, m0, right_nodes)), None)
    if winner_method is not None:
        witness = None
        if explain:
            witness = {
                "method": winner_method,
                "dominated_evaluations": [
                    {"term": b.to_doc(), "method": m1} for b, m1 in right_nodes
                ],
            }
        return StrengthVerdict(
            relation=STRONGER,
            kind="external",
            level=level,
            left=left,
            right=right,
            coverage=CoverageReport(
                required=len(lt) * len(right_nodes),
                derivable=len(lt) * len(right_nodes),
                mode="certificate",
            ),
            methods_left=ml,
            methods_right=mr,
            witness=witness,
        )

    left_nodes = recorded_nodes(lt, ml)
    loser_method = next((m1 for m1 in mr if dominates(rt, m1, left_nodes)), None)
    if loser_method is not None:
        witness = None
        if explain:
            witness = {
                "method": loser_method,
                "dominated_evaluations": [
                    {"term": a.to_doc(), "method": m0} for a, m0 in left_nodes
                ],
            }
        return StrengthVerdict(
            relation=WEAKER,
            kind="external",
            level=level,
            left=left,
            right=right,
            coverage=CoverageReport(
                required=len(rt) * len(left_nodes),
                derivable=len(rt) * len(left_nodes),
                mode="certificate",
            ),
            methods_left=ml,
            methods_right=mr,
            witness=witness,
        )

    required = max(len(ml), 1) * len(lt) * max(len(mr), 1) * len(rt)
    derivable = sum(
        1
        for m0 in ml
        for a in lt
        for m1 in mr
        for b in rt
        if store.query_opt(a, b, m0, m1) is not Order.INCOMPARABLE
    )
    notes = {}
    if not right_nodes:
        notes["right_layer_empty"] = True
    if not left_nodes:
        notes["left_layer_empty"] = True
    return StrengthVerdict(
        relation=INDETERMINATE,
        kind="external",
        level=level,
        left=left,
        right=right,
        coverage=CoverageReport(required=required, derivable=derivable, mode="all-pairs"),
        methods_left=ml,
        methods_right=mr,
        notes=notes,
    )


def compare_representativeness(
    left: ProbeFamily,
    right: ProbeFamily,
    store: SimilarityStore,
    methods_left: Sequence[str] | None = None,
    methods_right: Sequence[str] | None = None,
    explain: bool = False,
) -> StrengthVerdict:
    """How well one variable is represented by its distribution versus
    another variable by its own: the external comparison verbatim."""
    return external_strength(
        left, right, store, methods_left, methods_right, explain
    )


def choose_best_derivation(
    left: ProbeFamily,
    right: ProbeFamily,
    store: SimilarityStore,
    methods_left: Sequence[str] | None = None,
    methods_right: Sequence[str] | None = None,
    explain: bool = False,
) -> StrengthVerdict:
    """Pick between two candidate distributions for the same variable.

    Indeterminate outcomes flag that a resolution sweep is the sensible next
    step rather than forcing a choice.
    """
    if left.distribution.variable != right.distribution.variable:
        raise DomainError(
            "derivation choice applies to one variable; got "
            f"{left.distribution.variable!r} vs {right.distribution.variable!r}"
        )
    verdict = external_strength(left, right, store, methods_left, methods_right, explain)
    notes = dict(verdict.notes)
    notes["sensitivity_recommended"] = verdict.relation == INDETERMINATE
    return StrengthVerdict(
        relation=verdict.relation,
        kind=verdict.kind,
        level=verdict.level,
        left=verdict.left,
        right=verdict.right,
        coverage=verdict.coverage,
        methods_left=verdict.methods_left,
        methods_right=verdict.methods_right,
        witness=verdict.witness,
        notes=notes,
    )


def best_reasoning_method(
    family: ProbeFamily,
    store: SimilarityStore,
    method_a: str,
    method_b: str,
    explain: bool = False,
) -> StrengthVerdict:
    """Compare two reasoning methods on one family.

    Stronger means ``method_a``'s worst evaluation derivably beats
    ``method_b``'s best one; with ``method_a == method_b`` that would need a
    term above itself, so the verdict can never be Stronger.
    """
    return external_strength(
        family,
        family,
        store,
        methods_left=(method_a,),
        methods_right=(method_b,),
        explain=explain,
    )


# ---------------------------------------------------------------------------
# Sensitivity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    level: Fraction
    relation: str
    coverage: CoverageReport

    def to_doc(self) -> dict:
        return {
            "level": level_doc(self.level),
            "relation": self.relation,
            "coverage": self.coverage.to_doc(),
        }


@dataclass(frozen=True)
class ScanResult:
    rows: tuple[ScanRow, ...]
    flips: tuple[dict, ...]
    stable: bool

    def to_doc(self) -> dict:
        return {
            "rows": [r.to_doc() for r in self.rows],
            "flips": list(self.flips),
            "stable": self.stable,
        }


def sensitivity_scan(
    left_builder: Callable[[Num], ProbeFamily],
    right_builder: Callable[[Num], ProbeFamily],
    store: SimilarityStore,
    grid: Sequence[Num],
    mode: str = "internal",
    method: str = DIRECT,
    methods_left: Sequence[str] | None = None,
    methods_right: Sequence[str] | None = None,
) -> ScanResult:
    """Replay one comparison across a grid of resolutions and report flips."""
    rows: list[ScanRow] = []
    for raw in grid:
        lam = level_key(raw)
        lf = left_builder(lam)
        rf = right_builder(lam)
        if mode == "internal":
            verdict = internal_strength(lf, rf, store, method)
        elif mode == "external":
            verdict = external_strength(lf, rf, store, methods_left, methods_right)
        else:
            raise DomainError(f"unknown scan mode {mode!r}")
        rows.append(ScanRow(level=lam, relation=verdict.relation, coverage=verdict.coverage))
    flips = []
    for prev, cur in zip(rows, rows[1:]):
        if prev.relation != cur.relation:
            flips.append(
                {
                    "from_level": level_doc(prev.level),
                    "to_level": level_doc(cur.level),
                    "from": prev.relation,
                    "to": cur.relation,
                }
            )
    return ScanResult(rows=tuple(rows), flips=tuple(flips), stable=not flips)
