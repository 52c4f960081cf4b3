"""Canonical chance experiments and their exact event algebra.

Two idealized devices anchor every probability in this package: an urn of
``k`` equally likely labelled balls, and a wheel of unit circumference whose
pointer lands uniformly on [0, 1). Events over the urn are subsets of the
outcome labels ``1..k``; events over the wheel are finite unions of half-open
subintervals ``[lo, hi)`` of [0, 1). Both carry exact probabilities: a
rational count ratio for the urn, total interval length for the wheel.

Reference sets are the nested graded events used as comparison standards:
for the urn at resolution ``lam`` the event ``{1, ..., lam * k}``, for the
wheel the interval ``[0, lam)``. Their probability is exactly ``lam``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DomainError,
    KindMismatchError,
    OutcomeRangeError,
    ResolutionError,
)
from .levels import Num, level_doc, level_key, parse_level_doc

DISCRETE = "discrete"
CONTINUOUS = "continuous"

#: Endpoint slack used when normalizing float-valued intervals.
INTERVAL_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteExperiment:
    """An urn with ``k`` equally likely balls labelled ``1..k``."""

    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise DomainError(f"urn size must be a positive integer, got {self.k!r}")


@dataclass(frozen=True)
class WheelExperiment:
    """A unit-circumference wheel: a uniform draw from [0, 1)."""


Experiment = DiscreteExperiment | WheelExperiment


def _is_exact(x: Num) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _normalize_intervals(
    intervals: Iterable[Sequence[Num]],
) -> tuple[tuple[Num, Num], ...]:
    """Sort, clip-check and merge half-open intervals inside [0, 1]."""
    items: list[tuple[Num, Num]] = []
    for pair in intervals:
        lo, hi = pair
        if not (0 <= lo <= 1 and 0 <= hi <= 1):
            raise DomainError(f"interval {pair!r} is not inside [0, 1]")
        if hi < lo:
            raise DomainError(f"interval {pair!r} has hi < lo")
        width = hi - lo
        tol = 0 if _is_exact(lo) and _is_exact(hi) else INTERVAL_TOL
        if width <= tol:
            continue
        items.append((lo, hi))
    items.sort(key=lambda p: (float(p[0]), float(p[1])))
    merged: list[list[Num]] = []
    for lo, hi in items:
        if merged:
            cur = merged[-1]
            tol = 0 if _is_exact(cur[1]) and _is_exact(lo) else INTERVAL_TOL
            if lo <= cur[1] + tol:
                if hi > cur[1]:
                    cur[1] = hi
                continue
        merged.append([lo, hi])
    return tuple((lo, hi) for lo, hi in merged)


@dataclass(frozen=True)
class Event:
    """An event over the urn (outcome subset) or the wheel (interval union).

    Construct through :meth:`discrete` or :meth:`continuous`; the raw
    constructor assumes already-canonical fields.
    """

    kind: str
    k: int | None = None
    outcomes: frozenset = frozenset()
    intervals: tuple[tuple[Num, Num], ...] = ()

    @staticmethod
    def discrete(k: int, outcomes: Iterable[int]) -> "Event":
        if not isinstance(k, int) or k < 1:
            raise DomainError(f"urn size must be a positive integer, got {k!r}")
        outs = frozenset(outcomes)
        for o in outs:
            if not isinstance(o, int) or isinstance(o, bool) or not 1 <= o <= k:
                raise OutcomeRangeError(f"outcome {o!r} outside 1..{k}")
        return Event(kind=DISCRETE, k=k, outcomes=outs)

    @staticmethod
    def continuous(intervals: Iterable[Sequence[Num]]) -> "Event":
        return Event(kind=CONTINUOUS, intervals=_normalize_intervals(intervals))

    # -- algebra -----------------------------------------------------------

    def _check_same_space(self, other: "Event") -> None:
        if self.kind != other.kind:
            raise KindMismatchError(
                f"cannot combine {self.kind} event with {other.kind} event"
            )
        if self.kind == DISCRETE and self.k != other.k:
            raise KindMismatchError(
                f"cannot combine events over urns of size {self.k} and {other.k}"
            )

    def union(self, other: "Event") -> "Event":
        self._check_same_space(other)
        if self.kind == DISCRETE:
            return Event.discrete(self.k, self.outcomes | other.outcomes)
        return Event.continuous(self.intervals + other.intervals)

    def intersect(self, other: "Event") -> "Event":
        self._check_same_space(other)
        if self.kind == DISCRETE:
            return Event.discrete(self.k, self.outcomes & other.outcomes)
        out = []
        for alo, ahi in self.intervals:
            for blo, bhi in other.intervals:
                lo = max(alo, blo)
                hi = min(ahi, bhi)
                if hi > lo:
                    out.append((lo, hi))
        return Event.continuous(out)

    def complement(self) -> "Event":
        if self.kind == DISCRETE:
            return Event.discrete(
                self.k, frozenset(range(1, self.k + 1)) - self.outcomes
            )
        gaps = []
        cursor: Num = 0
        for lo, hi in self.intervals:
            if lo > cursor:
                gaps.append((cursor, lo))
            cursor = hi
        if cursor < 1:
            gaps.append((cursor, 1))
        return Event.continuous(gaps)

    def measure(self) -> Num:
        """Exact size of the event: count for the urn, length for the wheel."""
        if self.kind == DISCRETE:
            return len(self.outcomes)
        total: Num = Fraction(0)
        for lo, hi in self.intervals:
            total = total + (hi - lo)
        return total

    # -- interchange -------------------------------------------------------

    def to_doc(self) -> dict:
        if self.kind == DISCRETE:
            return {
                "kind": DISCRETE,
                "k": self.k,
                "outcomes": sorted(self.outcomes),
            }
        # Exact endpoints keep their ratio form so measures survive the
        # JSON round trip exactly; float endpoints stay floats.
        return {
            "kind": CONTINUOUS,
            "intervals": [[level_doc(lo), level_doc(hi)] for lo, hi in self.intervals],
        }

    @staticmethod
    def from_doc(doc: dict) -> "Event":
        kind = doc.get("kind")
        if kind == DISCRETE:
            return Event.discrete(int(doc["k"]), doc.get("outcomes", ()))
        if kind == CONTINUOUS:
            return Event.continuous(
                [
                    (parse_level_doc(lo), parse_level_doc(hi))
                    for lo, hi in doc.get("intervals", ())
                ]
            )
        raise DomainError(f"unknown event kind {kind!r}")


def event_algebra(op: str, a: Event, b: Event | None = None) -> Event:
    """Functional entry point for union / intersect / complement."""
    if op == "union":
        return a.union(b)
    if op == "intersect":
        return a.intersect(b)
    if op == "complement":
        if b is not None:
            raise DomainError("complement takes a single event")
        return a.complement()
    raise DomainError(f"unknown event operation {op!r}")


def physical_probability(experiment: Experiment, event: Event) -> Num:
    """Exact probability of ``event`` under the canonical experiment.

    Urn events get ``Fraction(|outcomes|, k)``; wheel events get their total
    interval length (a Fraction when all endpoints are exact).
    """
    if isinstance(experiment, DiscreteExperiment):
        if event.kind != DISCRETE:
            raise KindMismatchError("urn experiment needs a discrete event")
        if event.k != experiment.k:
            raise KindMismatchError(
                f"event over urn of size {event.k}, experiment has {experiment.k}"
            )
        return Fraction(len(event.outcomes), experiment.k)
    if isinstance(experiment, WheelExperiment):
        if event.kind != CONTINUOUS:
            raise KindMismatchError("wheel experiment needs a continuous event")
        return event.measure()
    raise KindMismatchError(f"unknown experiment {experiment!r}")


@dataclass(frozen=True)
class ReferenceSet:
    """A graded family of nested standard events over one experiment.

    For the urn of size ``k`` the admissible resolutions are
    ``1/k .. (k-1)/k``; for the wheel any resolution strictly inside (0, 1).
    """

    kind: str
    k: int | None = None

    @staticmethod
    def discrete(k: int) -> "ReferenceSet":
        if not isinstance(k, int) or k < 2:
            raise DomainError("discrete reference set needs an urn of size >= 2")
        return ReferenceSet(kind=DISCRETE, k=k)

    @staticmethod
    def continuous() -> "ReferenceSet":
        return ReferenceSet(kind=CONTINUOUS)

    def grid(self) -> tuple[Fraction, ...] | None:
        """Admissible resolutions; None means the whole open interval (0, 1)."""
        if self.kind == DISCRETE:
            return tuple(Fraction(i, self.k) for i in range(1, self.k))
        return None

    def experiment(self) -> Experiment:
        if self.kind == DISCRETE:
            return DiscreteExperiment(self.k)
        return WheelExperiment()


def reference_event(refset: ReferenceSet, lam: Num) -> Event:
    """The standard event of probability exactly ``lam``."""
    key = level_key(lam)
    if refset.kind == DISCRETE:
        count = key * refset.k
        if count.denominator != 1 or not 1 <= count.numerator <= refset.k - 1:
            raise ResolutionError(
                f"resolution {lam!r} is not i/{refset.k} for i in 1..{refset.k - 1}"
            )
        return Event.discrete(refset.k, range(1, count.numerator + 1))
    if not 0 < key < 1:
        raise ResolutionError(f"wheel resolution must be inside (0, 1), got {lam!r}")
    return Event.continuous([(Fraction(0), key)])


@dataclass(frozen=True)
class TrialRecord:
    """Outcome counts for repeated independent runs of one experiment."""

    n: int
    count: int
    seed: int

    @property
    def freq(self) -> float:
        return self.count / self.n if self.n else 0.0

    def to_doc(self) -> dict:
        return {"n": self.n, "count": self.count, "freq": self.freq, "seed": self.seed}

    @staticmethod
    def from_doc(doc: dict) -> "TrialRecord":
        return TrialRecord(n=int(doc["n"]), count=int(doc["count"]), seed=int(doc["seed"]))


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    # Philox is counter-based: (seed, chunk) keys give independent streams
    # whose merge order cannot change the totals.
    seq = np.random.SeedSequence((seed, chunk_index))
    return np.random.Generator(np.random.Philox(seed=seq))


def run_trials(
    experiment: Experiment,
    event: Event,
    n_trials: int,
    seed: int,
    chunk_size: int = 1 << 20,
) -> TrialRecord:
    """Count occurrences of ``event`` over ``n_trials`` seeded runs.

    Work is split into fixed-size chunks, each driven by its own
    counter-based stream derived from ``(seed, chunk_index)``, so results are
    reproducible and chunks could run in any order or in parallel.
    """
    if n_trials < 0:
        raise DomainError("n_trials must be nonnegative")
    if isinstance(experiment, DiscreteExperiment):
        if event.kind != DISCRETE or event.k != experiment.k:
            raise KindMismatchError("event does not match the urn experiment")
        lookup = np.zeros(experiment.k + 1, dtype=bool)
        if event.outcomes:
            lookup[np.fromiter(event.outcomes, dtype=np.int64)] = True
    elif isinstance(experiment, WheelExperiment):
        if event.kind != CONTINUOUS:
            raise KindMismatchError("event does not match the wheel experiment")
        edges = np.array(
            [float(x) for pair in event.intervals for x in pair], dtype=np.float64
        )
    else:
        raise KindMismatchError(f"unknown experiment {experiment!r}")

    count = 0
    done = 0
    chunk_index = 0
    while done < n_trials:
        size = min(chunk_size, n_trials - done)
        rng = _chunk_rng(seed, chunk_index)
        if isinstance(experiment, DiscreteExperiment):
            draws = rng.integers(1, experiment.k + 1, size=size)
            count += int(lookup[draws].sum())
        else:
            u = rng.random(size)
            if edges.size:
                idx = np.searchsorted(edges, u, side="right")
                count += int((idx % 2 == 1).sum())
        done += size
        chunk_index += 1
    return TrialRecord(n=n_trials, count=count, seed=seed)
