"""Exact probabilities for urns and wheels, and what repetition shows.

An urn with k equally likely tickets and a unit-circumference wheel both
give events probabilities by construction, not by opinion. The numbers
are exact rationals, the algebra (complement, union, intersection) is
closed, and simulated long-run frequencies land where the arithmetic
says they must.
"""

from fractions import Fraction

from strengthlab.events import (
    DiscreteExperiment,
    Event,
    WheelExperiment,
    event_algebra,
    physical_probability,
    run_trials,
)


def main() -> None:
    # A 6-ticket urn. Events are just sets of tickets.
    urn = DiscreteExperiment(6)
    evens = Event.discrete(6, {2, 4, 6})
    low = Event.discrete(6, {1, 2})
    print("urn with 6 tickets")
    print("  P(evens)            =", physical_probability(urn, evens))
    print("  P(low)              =", physical_probability(urn, low))
    print("  P(evens and low)    =", physical_probability(urn, evens.intersect(low)))
    print("  P(evens or low)     =", physical_probability(urn, evens.union(low)))
    print("  P(evens) + P(not)   =", physical_probability(urn, evens)
          + physical_probability(urn, evens.complement()))

    # A spinner on the unit circle. Events are unions of arcs; the
    # probability is their total length, exact when the endpoints are.
    wheel = WheelExperiment()
    arc = Event.continuous([(Fraction(1, 5), Fraction(1, 2))])
    print("\nwheel, arc [1/5, 1/2)")
    print("  P(arc)              =", physical_probability(wheel, arc))
    print("  P(arc complement)   =", physical_probability(wheel, arc.complement()))

    # The same algebra through the functional entry point.
    both = event_algebra("intersect", evens, low)
    print("\nevent_algebra('intersect', evens, low) tickets:", sorted(both.outcomes))

    # Long-run frequency: 10^6 spins per seed, all within a hair of 3/10.
    print("\nfrequency of the arc over one million spins")
    for seed in range(3):
        rec = run_trials(wheel, arc, 1_000_000, seed=seed)
        print(f"  seed {seed}: freq = {rec.freq:.6f}   error = {rec.freq - 0.3:+.6f}")


if __name__ == "__main__":
    main()
