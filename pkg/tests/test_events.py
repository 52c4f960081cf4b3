"""Exactness and algebra of urn and wheel events."""

import random
from fractions import Fraction

import pytest

from strengthlab.errors import (
    DomainError,
    KindMismatchError,
    OutcomeRangeError,
    ResolutionError,
)
from strengthlab.events import (
    DiscreteExperiment,
    Event,
    ReferenceSet,
    WheelExperiment,
    event_algebra,
    physical_probability,
    reference_event,
    run_trials,
)


def test_urn_probability_is_exact_fraction():
    exp = DiscreteExperiment(6)
    ev = Event.discrete(6, {1, 3, 5})
    p = physical_probability(exp, ev)
    assert isinstance(p, Fraction)
    assert p == Fraction(1, 2)


def test_urn_complement_sums_to_one_exactly():
    rng = random.Random(7)
    for _ in range(50):
        k = rng.randrange(2, 50)
        outs = {o for o in range(1, k + 1) if rng.random() < 0.4}
        ev = Event.discrete(k, outs)
        exp = DiscreteExperiment(k)
        assert physical_probability(exp, ev) + physical_probability(exp, ev.complement()) == 1


def test_urn_additivity_on_disjoint_union():
    exp = DiscreteExperiment(10)
    a = Event.discrete(10, {1, 2, 3})
    b = Event.discrete(10, {7, 8})
    u = a.union(b)
    assert physical_probability(exp, u) == Fraction(5, 10)
    assert physical_probability(exp, u) == (
        physical_probability(exp, a) + physical_probability(exp, b)
    )


def test_urn_inclusion_exclusion():
    rng = random.Random(11)
    for _ in range(30):
        k = rng.randrange(2, 30)
        sa = {o for o in range(1, k + 1) if rng.random() < 0.5}
        sb = {o for o in range(1, k + 1) if rng.random() < 0.5}
        a, b = Event.discrete(k, sa), Event.discrete(k, sb)
        exp = DiscreteExperiment(k)
        lhs = physical_probability(exp, a.union(b))
        rhs = (
            physical_probability(exp, a)
            + physical_probability(exp, b)
            - physical_probability(exp, a.intersect(b))
        )
        assert lhs == rhs


def test_wheel_interval_length_exact_when_rational():
    ev = Event.continuous([(Fraction(1, 4), Fraction(2, 3))])
    p = physical_probability(WheelExperiment(), ev)
    assert isinstance(p, Fraction)
    assert p == Fraction(5, 12)


def test_wheel_overlapping_intervals_merge():
    ev = Event.continuous([(0.1, 0.5), (0.4, 0.7)])
    assert ev.intervals == ((0.1, 0.7),)
    assert physical_probability(WheelExperiment(), ev) == pytest.approx(0.6)


def test_wheel_complement_covers_the_rest():
    ev = Event.continuous([(Fraction(1, 10), Fraction(3, 10)), (Fraction(1, 2), Fraction(9, 10))])
    c = ev.complement()
    total = physical_probability(WheelExperiment(), ev) + physical_probability(
        WheelExperiment(), c
    )
    assert total == 1
    assert not ev.intersect(c).intervals


def test_event_algebra_dispatch():
    a = Event.discrete(5, {1, 2})
    b = Event.discrete(5, {2, 3})
    assert event_algebra("union", a, b).outcomes == frozenset({1, 2, 3})
    assert event_algebra("intersect", a, b).outcomes == frozenset({2})
    assert event_algebra("complement", a).outcomes == frozenset({3, 4, 5})
    with pytest.raises(DomainError):
        event_algebra("xor", a, b)


def test_outcome_range_enforced():
    with pytest.raises(OutcomeRangeError):
        Event.discrete(4, {0})
    with pytest.raises(OutcomeRangeError):
        Event.discrete(4, {5})
    with pytest.raises(DomainError):
        Event.continuous([(0.2, 1.4)])
    with pytest.raises(DomainError):
        Event.continuous([(0.5, 0.2)])


def test_cross_space_operations_rejected():
    urn_ev = Event.discrete(5, {1})
    wheel_ev = Event.continuous([(0.0, 0.5)])
    with pytest.raises(KindMismatchError):
        urn_ev.union(wheel_ev)
    with pytest.raises(KindMismatchError):
        physical_probability(DiscreteExperiment(5), wheel_ev)
    with pytest.raises(KindMismatchError):
        Event.discrete(5, {1}).union(Event.discrete(6, {1}))


def test_reference_events_have_exact_resolution():
    rs = ReferenceSet.discrete(8)
    assert rs.grid() == tuple(Fraction(i, 8) for i in range(1, 8))
    ev = reference_event(rs, Fraction(3, 8))
    assert physical_probability(rs.experiment(), ev) == Fraction(3, 8)
    with pytest.raises(ResolutionError):
        reference_event(rs, Fraction(1, 3))

    ws = ReferenceSet.continuous()
    ev = reference_event(ws, Fraction(7, 20))
    assert physical_probability(ws.experiment(), ev) == Fraction(7, 20)
    with pytest.raises(ResolutionError):
        reference_event(ws, 0)


def test_event_doc_round_trip():
    for ev in (
        Event.discrete(9, {2, 4, 8}),
        Event.continuous([(Fraction(1, 8), Fraction(1, 2)), (0.75, 0.9)]),
    ):
        back = Event.from_doc(ev.to_doc())
        assert back.kind == ev.kind
        assert back.k == ev.k
        assert back.outcomes == ev.outcomes
        assert [
            (float(lo), float(hi)) for lo, hi in back.intervals
        ] == [(float(lo), float(hi)) for lo, hi in ev.intervals]


def test_trials_are_seed_deterministic():
    exp = DiscreteExperiment(6)
    ev = Event.discrete(6, {1, 2})
    a = run_trials(exp, ev, 20_000, seed=42)
    b = run_trials(exp, ev, 20_000, seed=42)
    c = run_trials(exp, ev, 20_000, seed=43)
    assert (a.n, a.count) == (b.n, b.count)
    assert a.count != c.count
    assert abs(a.freq - 1 / 3) < 0.01


def test_trials_frequency_tracks_wheel_measure():
    ev = Event.continuous([(0.2, 0.45)])
    rec = run_trials(WheelExperiment(), ev, 100_000, seed=5)
    assert abs(rec.freq - 0.25) < 0.005
    assert rec.to_doc()["freq"] == rec.freq


def test_trials_reject_mismatched_event():
    with pytest.raises(KindMismatchError):
        run_trials(WheelExperiment(), Event.discrete(3, {1}), 10, seed=0)
    with pytest.raises(DomainError):
        run_trials(WheelExperiment(), Event.continuous([(0, 1)]), -1, seed=0)
