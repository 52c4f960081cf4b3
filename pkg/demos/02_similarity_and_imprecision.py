"""Ordering confidence by similarity judgments instead of numbers.

For events with no physical chance setup, the primitive is a judgment
like "my confidence in E resembles a 3/10 draw more than it resembles a
6/10 draw". Judgments accumulate into a partial order over similarity
terms; contradictions are rejected with the exact judgments that close
the cycle; and reading off a probability means finding the reference
levels whose similarity is maximal, which may be a whole band rather
than a point.
"""

from fractions import Fraction

from strengthlab.errors import ConflictError
from strengthlab.levels import DEFAULT_GRID
from strengthlab.similarity import (
    EventRef,
    Judgment,
    Order,
    Relation,
    SimilarityStore,
    SimilarityTerm,
    argmax_similarity,
)


def term(level: Fraction) -> SimilarityTerm:
    rain = EventRef.labeled_event("weather", "rain_tomorrow")
    return SimilarityTerm.of(rain, EventRef.reference(level))


def fmt_ref(ref: EventRef) -> str:
    if ref.kind == "reference":
        return f"R({ref.payload[1]})"
    return f"{ref.variable}:{ref.payload[0]}"


def fmt_term(t: SimilarityTerm) -> str:
    return f"S({fmt_ref(t.a)}, {fmt_ref(t.b)})"


def main() -> None:
    # Confidence in rain feels closest to a 3/10 reference draw: the
    # similarity at 3/10 beats its neighbours, which beat the extremes.
    grid = [Fraction(i, 10) for i in range(1, 10)]
    scores = {g: -abs(g - Fraction(3, 10)) for g in grid}
    ordered = sorted(grid, key=lambda g: scores[g])
    store = SimilarityStore.empty()
    for g1, g2 in zip(ordered, ordered[1:]):
        rel = Relation.EQUAL if scores[g1] == scores[g2] else Relation.LESS
        store = store.with_judgment(Judgment(lhs=term(g1), rhs=term(g2), relation=rel))

    print("pairwise order of similarity terms (sample)")
    for a, b in [(Fraction(3, 10), Fraction(7, 10)), (Fraction(1, 10), Fraction(2, 10))]:
        verdict = store.query(term(a), term(b))
        print(f"  S(rain, R({a})) vs S(rain, R({b})): {verdict.name}")

    rain = EventRef.labeled_event("weather", "rain_tomorrow")
    result = argmax_similarity(store, rain, grid)
    print("\nargmax over the reference grid")
    print("  maximizers:", [str(m) for m in result.maximizers])
    print("  imprecise: ", result.imprecise)

    # A sparser self-report: 4/10 and 5/10 tie at the top, so the agent's
    # probability is only located inside a band.
    band = SimilarityStore.empty()
    top = [Fraction(2, 5), Fraction(1, 2)]
    rest = [g for g in DEFAULT_GRID if g not in top]
    band = band.with_judgment(
        Judgment(lhs=term(top[0]), rhs=term(top[1]), relation=Relation.EQUAL)
    )
    for g in rest:
        band = band.with_judgment(
            Judgment(lhs=term(g), rhs=term(top[0]), relation=Relation.LESS)
        )
    spread = argmax_similarity(band, rain, DEFAULT_GRID)
    print("\na flat top produces an imprecise reading")
    print("  maximizers:", [str(m) for m in spread.maximizers])
    print("  imprecise: ", spread.imprecise)

    # Contradictions never enter the store; the rejection carries a
    # minimal cycle of judgments that cannot hold together.
    try:
        store.with_judgment(
            Judgment(
                lhs=term(Fraction(7, 10)),
                rhs=term(Fraction(3, 10)),
                relation=Relation.GREATER,
            )
        )
    except ConflictError as exc:
        print("\na contradictory judgment is rejected; witness cycle:")
        for j in exc.cycle:
            print(f"    {fmt_term(j.lhs)} {j.relation.name} {fmt_term(j.rhs)}")

    # Queries on untouched pairs stay honest: INCOMPARABLE, not a guess.
    other = SimilarityTerm.of(
        EventRef.labeled_event("sports", "home_win"), EventRef.reference(Fraction(1, 2))
    )
    print("\nunrelated pair:", store.query_opt(term(Fraction(3, 10)), other))


if __name__ == "__main__":
    main()
