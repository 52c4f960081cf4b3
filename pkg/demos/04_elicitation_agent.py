"""Walking an agent from comparisons to a distribution, no numbers asked.

The session never asks "what is your probability". It asks which of two
similarity terms ranks higher, proposes candidate pmfs, and keeps the
ones the answers cannot reject. A synthetic agent with a hidden pmf
stands in for the human; the run recovers the hidden pmf to within a
small total-variation distance, or reports a frontier of undominated
candidates when the agent's discrimination is too coarse to pick one.
"""

from fractions import Fraction

from strengthlab.distributions import finite_pmf
from strengthlab.elicitation import (
    SyntheticAgent,
    VariableSpec,
    elicit_event_probability,
    pmf_total_variation,
    run_agent_session,
)
from strengthlab.levels import DEFAULT_GRID
from strengthlab.similarity import EventRef


def main() -> None:
    latent = finite_pmf(
        "color",
        ("red", "green", "blue"),
        (Fraction(1, 5), Fraction(1, 2), Fraction(3, 10)),
    )
    agent = SyntheticAgent(latent=latent)
    spec = VariableSpec(name="color", outcomes=("red", "green", "blue"))

    session, report = run_agent_session(agent, spec, step=Fraction(1, 100))
    print("hidden pmf     :", [str(m) for m in latent.masses])
    print("recovered pmf  :", [str(m) for m in report.final.masses])
    print("TV distance    :", float(pmf_total_variation(report.final, latent)))
    print("questions asked:", report.questions)
    print("proposals tried:", report.proposals)

    # A coarse agent cannot separate nearby candidates: the session ends
    # with a frontier instead of a single answer.
    coarse = SyntheticAgent(
        latent=finite_pmf("coin", ("h", "t"), (Fraction(1, 2), Fraction(1, 2))),
        resolution=Fraction(1, 20),
    )
    coin = VariableSpec(name="coin", outcomes=("h", "t"))
    coin_session, _ = run_agent_session(coarse, coin, step=Fraction(1, 100))
    members = coin_session.frontier_report()["members"]
    print("\ncoarse agent frontier size:", len(members))
    for doc in members:
        print("  candidate:", doc["masses"])

    # Single-event readings from an ambiguity-averse agent do not add up:
    # the event and its complement together get less than one.
    averse = SyntheticAgent(latent=latent, shrink=Fraction(1, 10))
    event = EventRef.weighted_event("color", [("red", 1), ("green", 1)])
    complement = EventRef.weighted_event("color", [("blue", 1)])
    store, first = elicit_event_probability(averse, event, DEFAULT_GRID)
    store, second = elicit_event_probability(averse, complement, DEFAULT_GRID, store=store)
    total = max(first.maximizers) + max(second.maximizers)
    print("\nambiguity-averse readings")
    print("  P(red or green) ->", str(max(first.maximizers)))
    print("  P(blue)         ->", str(max(second.maximizers)))
    print("  sum             ->", str(total), "(< 1)")


if __name__ == "__main__":
    main()
