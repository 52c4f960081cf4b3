"""Comparing how well two analogical probability claims are supported.

Saying "P(F) is about 1/2" and "P(G) is about 1/2" can rest on very
different footing. Each claim is probed with a family of constructed
events of exact probability 1/2; the recorded similarity judgments then
rank the claims: one is internally stronger when even its weakest probe
beats the other claim's probes, and externally stronger when its best
reasoning method dominates. A sensitivity scan shows whether the verdict
survives changing the claimed level.
"""

from fractions import Fraction

from strengthlab.scenarios import (
    calibrated_generator_scenario,
    crossover_scenario,
    two_urns_election_scenario,
)
from strengthlab.strength import internal_strength, sensitivity_scan


def main() -> None:
    # A calibrated random generator versus a sparse clinical analogy.
    sc = calibrated_generator_scenario()
    half = Fraction(1, 2)
    verdict = internal_strength(
        sc.family("generator", half), sc.family("treatment", half), sc.store
    )
    print("calibrated generator vs treatment analogy at level 1/2")
    print("  verdict:", verdict.relation)

    scan = sensitivity_scan(
        sc.builders["generator"], sc.builders["treatment"], sc.store, sc.grid
    )
    print("  stable across the grid:", scan.stable)

    # Known urn, mystery urn, and an election; all claimed at 1/2.
    urns = two_urns_election_scenario()
    pairs = [
        ("known_urn", "unknown_urn"),
        ("known_urn", "election"),
        ("unknown_urn", "election"),
    ]
    print("\nthree claims at level 1/2, pairwise")
    for left, right in pairs:
        v = internal_strength(
            urns.family(left, half), urns.family(right, half), urns.store
        )
        print(f"  {left:12s} vs {right:12s}: {v.relation}")

    # A verdict that flips when the claimed level moves: what looks
    # stronger at one level is weaker at another.
    cross = crossover_scenario()
    cross_scan = sensitivity_scan(
        cross.builders["coarse"], cross.builders["fine"], cross.store, cross.grid
    )
    print("\ncrossover scan")
    for row in cross_scan.rows:
        print(f"  level {str(row.level):5s} -> {row.relation}")
    print("  flips:", [(f["from"], f["to"], "at", f["to_level"]) for f in cross_scan.flips])


if __name__ == "__main__":
    main()
