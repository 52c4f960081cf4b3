"""Interactive elicitation of a distribution through similarity questions.

A session carries a current proposal for a named variable. Probe events of
each candidate distribution are turned into similarity terms against the
reference event at the session's resolution, and the answerer (human or
synthetic agent) is asked to place each term on a ladder of reference
anchors: terms of the form S(R(lam'), R(lam)) whose mutual order is
physically fixed and seeded automatically. Placement is a bisection over
anchor distances, so each term costs a handful of questions and every
located term becomes comparable with every other through the ladder.

Once both families are located, the generic strength engine delivers the
three-valued verdict that drives the loop: a Stronger candidate replaces
the proposal, a Weaker one is rejected, and an Indeterminate one with full
coverage joins the frontier of mutually non-dominated distributions. Any
residual incomparable probe pairs are asked directly, so coverage always
completes for a coherent answerer.
"""

from __future__ import annotations

import itertools
import uuid
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .distributions import (
    FINITE_PMF,
    NORMAL,
    PIECEWISE_CDF,
    UNIFORM,
    Distribution,
    finite_pmf,
)
from .errors import (
    DistributionFormError,
    DomainError,
    UnknownQuestionError,
)
from .levels import Num, level_doc, level_float, level_key, parse_level_doc
from .similarity import (
    DIRECT,
    ArgmaxResult,
    EventRef,
    Judgment,
    Order,
    Relation,
    SimilarityStore,
    SimilarityTerm,
    argmax_similarity,
)
from .strength import (
    ContinuousProbeConfig,
    DiscreteProbeConfig,
    INDETERMINATE,
    ProbeFamily,
    STRONGER,
    StrengthVerdict,
    WEAKER,
    build_probes,
    internal_strength,
)

AWAITING_ANSWERS = "awaiting-answers"
AWAITING_CANDIDATE = "awaiting-candidate"
CONVERGED = "converged"

ACCEPTED = "accepted"
REJECTED = "rejected"
NEEDS_ANSWERS = "needs-answers"
FRONTIER = "frontier"

PHYSICAL = "physical"
ELICITED = "elicited"


# ---------------------------------------------------------------------------
# Session inputs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VariableSpec:
    """What is being elicited: a finite-outcome or continuous quantity."""

    name: str
    kind: str = "discrete"
    outcomes: tuple = ()

    def __post_init__(self):
        if self.kind not in ("discrete", "continuous"):
            raise DomainError(f"unknown variable kind {self.kind!r}")
        if self.kind == "discrete" and not self.outcomes:
            raise DomainError("a discrete variable needs at least one outcome")

    def validate_distribution(self, dist: Distribution) -> None:
        if dist.variable != self.name:
            raise DistributionFormError(
                f"distribution is for {dist.variable!r}, session is for {self.name!r}"
            )
        if self.kind == "discrete":
            if dist.form != FINITE_PMF:
                raise DistributionFormError(
                    "a discrete variable takes finite-pmf candidates"
                )
            if tuple(dist.support) != tuple(self.outcomes):
                raise DistributionFormError(
                    "candidate support must list the variable's outcomes in order"
                )
        else:
            if dist.form not in (NORMAL, UNIFORM, PIECEWISE_CDF):
                raise DistributionFormError(
                    f"form {dist.form!r} is not usable for a continuous variable"
                )

    def uniform_start(self) -> Distribution:
        if self.kind != "discrete":
            raise DomainError("uniform start is defined for discrete variables")
        m = len(self.outcomes)
        return finite_pmf(self.name, self.outcomes, (Fraction(1, m),) * m)

    def to_doc(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "outcomes": list(self.outcomes),
        }

    @staticmethod
    def from_doc(doc: dict) -> "VariableSpec":
        return VariableSpec(
            name=doc["name"],
            kind=doc.get("kind", "discrete"),
            outcomes=tuple(doc.get("outcomes", ())),
        )


@dataclass(frozen=True)
class SessionConfig:
    """Tunables for questioning and probe construction.

    ``levels`` lists the resolutions probed; the first entry is the one at
    which candidate verdicts are decided. ``max_depth`` bounds the anchor
    bisection per term; an answerer with any finite discrimination pins each
    term with an Equal answer well before the bound.
    """

    method: str = DIRECT
    levels: tuple[Fraction, ...] = (Fraction(1, 2),)
    refset: str = "R"
    question_batch: int = 8
    max_depth: int = 16
    discrete_probes: DiscreteProbeConfig = field(
        default_factory=lambda: DiscreteProbeConfig(completions="all", max_probes=16)
    )
    continuous_probes: ContinuousProbeConfig = field(
        default_factory=ContinuousProbeConfig
    )

    def __post_init__(self):
        if not self.levels:
            raise DomainError("a session needs at least one resolution level")
        for lam in self.levels:
            if not 0 < lam < 1:
                raise DomainError(f"resolution {lam} outside (0, 1)")

    def to_doc(self) -> dict:
        d = self.discrete_probes
        c = self.continuous_probes
        return {
            "method": self.method,
            "levels": [level_doc(lam) for lam in self.levels],
            "refset": self.refset,
            "question_batch": self.question_batch,
            "max_depth": self.max_depth,
            "discrete_probes": {
                "exhaustive_limit": d.exhaustive_limit,
                "completions": d.completions,
                "max_probes": d.max_probes,
                "sample_subsets": d.sample_subsets,
                "seed": d.seed,
            },
            "continuous_probes": {
                "tails": c.tails,
                "centered": c.centered,
                "two_tail": c.two_tail,
                "window_step": c.window_step,
            },
        }

    @staticmethod
    def from_doc(doc: dict) -> "SessionConfig":
        d = doc.get("discrete_probes", {})
        c = doc.get("continuous_probes", {})
        return SessionConfig(
            method=doc.get("method", DIRECT),
            levels=tuple(level_key(x) for x in doc.get("levels", ["1/2"])),
            refset=doc.get("refset", "R"),
            question_batch=doc.get("question_batch", 8),
            max_depth=doc.get("max_depth", 16),
            discrete_probes=DiscreteProbeConfig(
                exhaustive_limit=d.get("exhaustive_limit", 12),
                completions=d.get("completions", "one"),
                max_probes=d.get("max_probes", 10),
                sample_subsets=d.get("sample_subsets", 64),
                seed=d.get("seed", 0),
            ),
            continuous_probes=ContinuousProbeConfig(
                tails=c.get("tails", True),
                centered=c.get("centered", True),
                two_tail=c.get("two_tail", True),
                window_step=c.get("window_step", 0.25),
            ),
        )


@dataclass(frozen=True)
class Question:
    """One comparison put to the answerer.

    Both terms live at the same session resolution, so they always share the
    reference-event argument and the comparison is admissible.
    """

    id: str
    lhs: SimilarityTerm
    rhs: SimilarityTerm
    hints: dict = field(default_factory=dict)

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "lhs": self.lhs.to_doc(),
            "rhs": self.rhs.to_doc(),
            "hints": dict(self.hints),
        }

    @staticmethod
    def from_doc(doc: dict) -> "Question":
        return Question(
            id=doc["id"],
            lhs=SimilarityTerm.from_doc(doc["lhs"]),
            rhs=SimilarityTerm.from_doc(doc["rhs"]),
            hints=dict(doc.get("hints", {})),
        )


@dataclass(frozen=True)
class ProposalResult:
    status: str
    relation: str | None = None
    verdict: dict | None = None
    open_questions: int = 0
    message: str = ""

    def to_doc(self) -> dict:
        doc = {"status": self.status, "open_questions": self.open_questions}
        if self.relation is not None:
            doc["relation"] = self.relation
        if self.verdict is not None:
            doc["verdict"] = self.verdict
        if self.message:
            doc["message"] = self.message
        return doc


@dataclass
class _Location:
    """Bisection state of one term on the anchor-distance ladder."""

    term: SimilarityTerm
    level: Fraction
    lo: Fraction  # deviation is > lo (except at the initial 0)
    hi: Fraction  # deviation is < hi (except at the initial span)
    depth: int = 0
    pinned: Fraction | None = None
    done: bool = False

    def to_doc(self) -> dict:
        return {
            "term": self.term.to_doc(),
            "level": level_doc(self.level),
            "lo": level_doc(self.lo),
            "hi": level_doc(self.hi),
            "depth": self.depth,
            "pinned": None if self.pinned is None else level_doc(self.pinned),
            "done": self.done,
        }

    @staticmethod
    def from_doc(doc: dict) -> "_Location":
        pinned = doc.get("pinned")
        return _Location(
            term=SimilarityTerm.from_doc(doc["term"]),
            level=level_key(parse_level_doc(doc["level"])),
            lo=level_key(parse_level_doc(doc["lo"])),
            hi=level_key(parse_level_doc(doc["hi"])),
            depth=doc.get("depth", 0),
            pinned=None if pinned is None else level_key(parse_level_doc(pinned)),
            done=doc.get("done", False),
        )


def _span(level: Fraction) -> Fraction:
    return max(level, 1 - level)


def _event_hint(ref: EventRef) -> dict:
    hint: dict = {"kind": ref.kind, "variable": ref.variable}
    if ref.kind == "reference":
        hint["level"] = level_float(ref.payload[1])
        hint["refset"] = ref.payload[0]
    elif ref.kind == "weighted":
        hint["weights"] = [[o, level_float(w)] for o, w in ref.payload]
    elif ref.kind == "intervals":
        hint["intervals"] = [list(p) for p in ref.payload]
    else:
        hint["label"] = ref.payload[0]
    return hint


def _term_hint(term: SimilarityTerm) -> dict:
    a, b = term.refs()
    return {"first": _event_hint(a), "second": _event_hint(b)}


# ---------------------------------------------------------------------------
# The session
# ---------------------------------------------------------------------------


class ElicitationSession:
    """Mutable state of one elicitation run.

    All mutation goes through ``submit_answers``, ``propose_candidate`` and
    ``declare_converged``; each bumps ``version``. Readers should use
    ``to_doc`` snapshots. Judgments are appended through an immutable store,
    so a rejected batch leaves every derived order untouched.
    """

    def __init__(
        self,
        spec: VariableSpec,
        config: SessionConfig | None = None,
        proposal: Distribution | None = None,
        session_id: str | None = None,
    ):
        config = config or SessionConfig()
        if proposal is None:
            proposal = spec.uniform_start()
        spec.validate_distribution(proposal)
        self.id = session_id or str(uuid.uuid4())
        self.spec = spec
        self.config = config
        self.store = SimilarityStore.empty()
        self.proposal = proposal
        self.frontier: list[Distribution] = []
        self.queue: list[Distribution] = []
        self.history: list[dict] = []
        self.status = AWAITING_ANSWERS
        self.version = 0
        self._pending: dict[str, Question] = {}
        self._pending_seeds: dict[str, tuple[Judgment, ...]] = {}
        self._asked: set[tuple[SimilarityTerm, SimilarityTerm]] = set()
        self._locations: dict[SimilarityTerm, _Location] = {}
        self._anchors: dict[Fraction, list[Fraction]] = {}
        self._families: dict[tuple[str, Fraction], ProbeFamily] = {}
        self._tried: dict[str, str] = {}
        self._candidate: Distribution | None = None
        self._last_result: ProposalResult | None = None
        self._qcounter = 0
        self._bootstrap = True
        self._require_located(self.proposal)
        self._refresh_status()
        self._bootstrap = False

    # -- plumbing ---------------------------------------------------------------

    def _bump(self) -> None:
        if not self._bootstrap:
            self.version += 1

    def _family(self, dist: Distribution, level: Fraction) -> ProbeFamily:
        key = (dist.canonical_key(), level)
        fam = self._families.get(key)
        if fam is None:
            fam = build_probes(
                dist,
                level,
                discrete=self.config.discrete_probes,
                continuous=self.config.continuous_probes,
                refset=self.config.refset,
            )
            self._families[key] = fam
        return fam

    def _anchor_level(self, level: Fraction, d: Fraction) -> Fraction:
        return level - d if level - d > 0 else level + d

    def _anchor_term(self, level: Fraction, d: Fraction) -> SimilarityTerm:
        ref = EventRef.reference(level, self.config.refset)
        if d == 0:
            return SimilarityTerm.of(ref, ref)
        other = EventRef.reference(self._anchor_level(level, d), self.config.refset)
        return SimilarityTerm.of(other, ref)

    def _anchor_seeds(self, level: Fraction, d: Fraction) -> tuple[Judgment, ...]:
        """Ladder judgments tying a new anchor to its chain neighbours.

        The order of reference-to-reference terms is physically fixed:
        anchors closer to the session resolution are more similar to it.
        """
        distances = self._anchors.setdefault(level, [])
        if d == 0 or d in distances:
            return ()
        seeds = []
        term = self._anchor_term(level, d)
        closer = [x for x in distances if x < d]
        farther = [x for x in distances if x > d]
        above = self._anchor_term(level, max(closer) if closer else Fraction(0))
        seeds.append(
            Judgment(lhs=term, rhs=above, relation=Relation.LESS, source=PHYSICAL)
        )
        if farther:
            below = self._anchor_term(level, min(farther))
            seeds.append(
                Judgment(lhs=below, rhs=term, relation=Relation.LESS, source=PHYSICAL)
            )
        distances.append(d)
        distances.sort()
        return tuple(seeds)

    def _next_qid(self) -> str:
        self._qcounter += 1
        return f"q{self._qcounter:05d}"

    def _enqueue(
        self,
        lhs: SimilarityTerm,
        rhs: SimilarityTerm,
        hints: dict,
        seeds: tuple[Judgment, ...] = (),
    ) -> None:
        pair = (lhs, rhs)
        if pair in self._asked:
            return
        self._asked.add(pair)
        q = Question(id=self._next_qid(), lhs=lhs, rhs=rhs, hints=hints)
        self._pending[q.id] = q
        if seeds:
            self._pending_seeds[q.id] = seeds

    def _enqueue_locate(self, loc: _Location) -> None:
        """Queue the next bisection question for an unfinished term."""
        if loc.done:
            return
        span = _span(loc.level)
        if loc.depth == 0:
            d = Fraction(0)
        else:
            d = (loc.lo + loc.hi) / 2
        if loc.depth > self.config.max_depth or (
            loc.depth > 0 and loc.hi - loc.lo <= span / (1 << self.config.max_depth)
        ):
            loc.done = True
            return
        anchor = self._anchor_term(loc.level, d)
        seeds = self._anchor_seeds(loc.level, d)
        hints = {
            "kind": "locate",
            "level": level_float(loc.level),
            "anchor_distance": level_float(d),
            "lhs": _term_hint(loc.term),
            "rhs": _term_hint(anchor),
        }
        self._enqueue(loc.term, anchor, hints, seeds)

    def _require_located(self, dist: Distribution) -> bool:
        """Ensure every probe term of the distribution is located or queued.

        Returns True when all terms are already done.
        """
        all_done = True
        for level in self.config.levels:
            fam = self._family(dist, level)
            for t in fam.terms():
                loc = self._locations.get(t)
                if loc is None:
                    loc = _Location(
                        term=t, level=level, lo=Fraction(0), hi=_span(level)
                    )
                    self._locations[t] = loc
                    self._enqueue_locate(loc)
                if not loc.done:
                    all_done = False
        return all_done

    # -- questioning ------------------------------------------------------------

    def next_questions(self, batch: int | None = None) -> list[Question]:
        batch = batch if batch is not None else self.config.question_batch
        out = list(itertools.islice(self._pending.values(), max(batch, 0)))
        return out

    def open_question_count(self) -> int:
        return len(self._pending)

    def submit_answers(
        self, answers: Sequence[tuple[str, Relation | str]], source: str = ELICITED
    ) -> dict:
        """Apply a batch of answers atomically.

        A conflicting batch raises ConflictError and changes nothing; the
        questions stay open so the batch can be edited and resubmitted.
        """
        prepared: list[tuple[Question, Judgment, tuple[Judgment, ...]]] = []
        for qid, rel in answers:
            q = self._pending.get(qid)
            if q is None:
                raise UnknownQuestionError(f"question {qid!r} is not open")
            relation = rel if isinstance(rel, Relation) else Relation(rel)
            j = Judgment(
                lhs=q.lhs,
                rhs=q.rhs,
                relation=relation,
                source=source,
                method=self.config.method,
            )
            prepared.append((q, j, self._pending_seeds.get(qid, ())))
        batch: list[Judgment] = []
        for _, j, seeds in prepared:
            batch.extend(seeds)
            batch.append(j)
        self.store = self.store.with_judgments(batch)

        for q, j, _ in prepared:
            self._pending.pop(q.id, None)
            self._pending_seeds.pop(q.id, None)
            self._absorb_answer(q, j.relation)
        self._bump()
        resolution = self._evaluate_pending()
        self._refresh_status()
        report = {
            "applied": len(prepared),
            "open_questions": len(self._pending),
            "status": self.status,
        }
        if resolution is not None:
            report["candidate"] = resolution.to_doc()
        return report

    def _absorb_answer(self, q: Question, relation: Relation) -> None:
        loc = self._locations.get(q.lhs)
        if loc is None or q.hints.get("kind") != "locate":
            return
        d = level_key(q.hints["anchor_distance"])
        if relation is Relation.EQUAL:
            loc.pinned = d
            loc.done = True
            return
        if relation is Relation.GREATER:
            loc.hi = d if d > 0 else loc.hi
        else:
            loc.lo = d
        loc.depth += 1
        self._enqueue_locate(loc)

    # -- candidates -------------------------------------------------------------

    def propose_candidate(self, dist: Distribution) -> ProposalResult:
        self.spec.validate_distribution(dist)
        key = dist.canonical_key()
        if key == self.proposal.canonical_key():
            result = ProposalResult(
                status=REJECTED,
                message="candidate is identical to the current proposal",
            )
            self._bump()
            return result
        prior = self._tried.get(key)
        if prior is not None and prior != NEEDS_ANSWERS:
            self._bump()
            return ProposalResult(
                status=REJECTED,
                message=f"candidate was already evaluated ({prior})",
            )
        if self._candidate is not None and self._candidate.canonical_key() != key:
            raise DomainError(
                "another candidate is still awaiting answers; resolve it first"
            )
        self._candidate = dist
        self._tried[key] = NEEDS_ANSWERS
        self._bump()
        result = self._evaluate_pending()
        self._refresh_status()
        if result is not None:
            return result
        return ProposalResult(status=NEEDS_ANSWERS, open_questions=len(self._pending))

    def poll_candidate(self) -> ProposalResult | None:
        """Latest resolution, or the pending state of the open candidate."""
        if self._candidate is not None:
            return ProposalResult(
                status=NEEDS_ANSWERS, open_questions=len(self._pending)
            )
        return self._last_result

    def seen(self, dist: Distribution) -> bool:
        return dist.canonical_key() in self._tried

    def _decision_verdict(self, cand: Distribution) -> StrengthVerdict:
        level = self.config.levels[0]
        return internal_strength(
            self._family(cand, level),
            self._family(self.proposal, level),
            self.store,
            method=self.config.method,
        )

    def _uncovered_pairs(
        self, left: ProbeFamily, right: ProbeFamily
    ) -> list[tuple[SimilarityTerm, SimilarityTerm]]:
        out = []
        for a in left.terms():
            for b in right.terms():
                if a == b:
                    continue
                rel = self.store.query_opt(
                    a, b, self.config.method, self.config.method
                )
                if rel is Order.INCOMPARABLE:
                    out.append((a, b))
        return out

    def _evaluate_pending(self) -> ProposalResult | None:
        cand = self._candidate
        if cand is None:
            return None
        ready = self._require_located(cand)
        ready = self._require_located(self.proposal) and ready
        if not ready or any(
            q.hints.get("kind") == "locate" for q in self._pending.values()
        ):
            return None
        verdict = self._decision_verdict(cand)
        if verdict.relation == INDETERMINATE and not verdict.coverage.complete:
            level = self.config.levels[0]
            pairs = self._uncovered_pairs(
                self._family(cand, level), self._family(self.proposal, level)
            )
            queued = 0
            for a, b in pairs:
                if (a, b) in self._asked or (b, a) in self._asked:
                    continue
                hints = {
                    "kind": "direct",
                    "level": level_float(level),
                    "lhs": _term_hint(a),
                    "rhs": _term_hint(b),
                }
                self._enqueue(a, b, hints)
                queued += 1
            if queued or self._pending:
                return None
        result = self._resolve(cand, verdict)
        return result

    def _resolve(self, cand: Distribution, verdict: StrengthVerdict) -> ProposalResult:
        key = cand.canonical_key()
        message = ""
        if verdict.relation == STRONGER:
            status = ACCEPTED
            self.proposal = cand
            self.frontier = [
                f for f in self.frontier if not self._dominated_by_proposal(f)
            ]
        elif verdict.relation == WEAKER:
            status = REJECTED
        else:
            status = FRONTIER
            if not verdict.coverage.complete:
                message = "left on the frontier question list: coverage incomplete"
            elif not any(f.canonical_key() == key for f in self.frontier):
                self.frontier.append(cand)
                self.frontier.sort(key=lambda d: d.canonical_key())
        self._tried[key] = status
        self._candidate = None
        result = ProposalResult(
            status=status,
            relation=verdict.relation,
            verdict=verdict.to_doc(),
            open_questions=len(self._pending),
            message=message,
        )
        self._last_result = result
        self.history.append(
            {
                "candidate": cand.to_doc(),
                "status": status,
                "relation": verdict.relation,
                "level": level_doc(self.config.levels[0]),
                "version": self.version,
            }
        )
        self._bump()
        return result

    def _dominated_by_proposal(self, dist: Distribution) -> bool:
        verdict = self._decision_verdict(dist)
        return verdict.relation == WEAKER

    # -- reports ----------------------------------------------------------------

    def frontier_report(self) -> dict:
        """Current proposal, frontier members and their pairwise verdicts."""
        members = [self.proposal] + list(self.frontier)
        level = self.config.levels[0]
        matrix = []
        for a in members:
            row = []
            for b in members:
                if a.canonical_key() == b.canonical_key():
                    row.append("self")
                else:
                    v = internal_strength(
                        self._family(a, level),
                        self._family(b, level),
                        self.store,
                        method=self.config.method,
                    )
                    row.append(v.relation)
            matrix.append(row)
        return {
            "proposal": self.proposal.to_doc(),
            "members": [m.to_doc() for m in members],
            "matrix": matrix,
            "level": level_doc(level),
            "levels": [level_doc(x) for x in self.config.levels],
            "sensitivity_recommended": len(members) > 1,
            "status": self.status,
        }

    def declare_converged(self) -> None:
        if self._pending or self._candidate is not None:
            raise DomainError(
                "cannot declare convergence with open questions or a pending candidate"
            )
        self.status = CONVERGED
        self._bump()

    def _refresh_status(self) -> None:
        if self.status == CONVERGED:
            return
        self.status = AWAITING_ANSWERS if self._pending else AWAITING_CANDIDATE

    # -- serialization ----------------------------------------------------------

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "variable": self.spec.to_doc(),
            "config": self.config.to_doc(),
            "status": self.status,
            "version": self.version,
            "proposal": self.proposal.to_doc(),
            "frontier": [d.to_doc() for d in self.frontier],
            "queue": [d.to_doc() for d in self.queue],
            "history": list(self.history),
            "judgments": [j.to_doc() for j in self.store.judgments()],
            "open_questions": [q.to_doc() for q in self._pending.values()],
            "pending_seeds": {
                qid: [j.to_doc() for j in seeds]
                for qid, seeds in sorted(self._pending_seeds.items())
            },
            "locations": [
                loc.to_doc()
                for _, loc in sorted(
                    self._locations.items(), key=lambda kv: kv[0].sort_token()
                )
            ],
            "anchors": [
                {
                    "level": level_doc(level),
                    "distances": [level_doc(d) for d in ds],
                }
                for level, ds in sorted(self._anchors.items())
            ],
            "tried": [[k, v] for k, v in sorted(self._tried.items())],
            "candidate": None if self._candidate is None else self._candidate.to_doc(),
            "last_result": None
            if self._last_result is None
            else self._last_result.to_doc(),
            "question_counter": self._qcounter,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "ElicitationSession":
        spec = VariableSpec.from_doc(doc["variable"])
        config = SessionConfig.from_doc(doc["config"])
        session = cls.__new__(cls)
        session.id = doc["id"]
        session.spec = spec
        session.config = config
        session.store = SimilarityStore.empty().with_judgments(
            Judgment.from_doc(j) for j in doc.get("judgments", ())
        )
        session.proposal = Distribution.from_doc(doc["proposal"])
        session.frontier = [Distribution.from_doc(d) for d in doc.get("frontier", ())]
        session.queue = [Distribution.from_doc(d) for d in doc.get("queue", ())]
        session.history = list(doc.get("history", ()))
        session.status = doc.get("status", AWAITING_CANDIDATE)
        session.version = doc.get("version", 0)
        session._pending = {}
        session._pending_seeds = {}
        session._asked = set()
        for qdoc in doc.get("open_questions", ()):
            q = Question.from_doc(qdoc)
            session._pending[q.id] = q
            session._asked.add((q.lhs, q.rhs))
        for qid, seeds in doc.get("pending_seeds", {}).items():
            session._pending_seeds[qid] = tuple(
                Judgment.from_doc(j) for j in seeds
            )
        session._locations = {}
        for ldoc in doc.get("locations", ()):
            loc = _Location.from_doc(ldoc)
            session._locations[loc.term] = loc
        session._anchors = {
            level_key(parse_level_doc(a["level"])): [
                level_key(parse_level_doc(d)) for d in a["distances"]
            ]
            for a in doc.get("anchors", ())
        }
        session._families = {}
        session._tried = {k: v for k, v in doc.get("tried", ())}
        cand = doc.get("candidate")
        session._candidate = None if cand is None else Distribution.from_doc(cand)
        last = doc.get("last_result")
        session._last_result = (
            None
            if last is None
            else ProposalResult(
                status=last["status"],
                relation=last.get("relation"),
                verdict=last.get("verdict"),
                open_questions=last.get("open_questions", 0),
                message=last.get("message", ""),
            )
        )
        session._qcounter = doc.get("question_counter", 0)
        session._bootstrap = False
        return session


def start_session(
    spec: VariableSpec,
    proposal: Distribution | None = None,
    config: SessionConfig | None = None,
    session_id: str | None = None,
) -> ElicitationSession:
    return ElicitationSession(
        spec=spec, config=config, proposal=proposal, session_id=session_id
    )


# ---------------------------------------------------------------------------
# Synthetic answerers
# ---------------------------------------------------------------------------


@dataclass
class SyntheticAgent:
    """Deterministic answerer backed by a latent distribution.

    Felt confidence in an event is its latent probability, discounted by the
    ambiguity ``shrink`` for anything that is not a pure reference event. A
    term's similarity score is the negated gap between its two arguments'
    confidences, quantized to ``resolution``-wide bands; comparisons use the
    band indices, so the induced order is a weak order and the agent can
    never contradict itself.
    """

    latent: Distribution
    resolution: Fraction = Fraction(1, 1000)
    shrink: Fraction = Fraction(0)
    label_confidence: dict = field(default_factory=dict)
    questions_answered: int = 0

    def confidence(self, ref: EventRef) -> Fraction:
        if ref.kind == "reference":
            return level_key(ref.payload[1])
        if ref.kind == "weighted":
            masses = {o: level_key(m) for o, m in zip(self.latent.support, self.latent.masses)}
            raw = sum(
                (w * masses.get(o, Fraction(0)) for o, w in ref.payload),
                Fraction(0),
            )
        elif ref.kind == "intervals":
            raw = level_key(self.latent.interval_mass(ref.payload))
        else:
            raw = level_key(self.label_confidence.get(ref.payload[0], Fraction(1, 2)))
        return raw * (1 - level_key(self.shrink))

    def band(self, term: SimilarityTerm) -> int:
        a, b = term.refs()
        gap = abs(self.confidence(a) - self.confidence(b))
        return int(gap / level_key(self.resolution))

    def judge(self, lhs: SimilarityTerm, rhs: SimilarityTerm) -> Relation:
        bl, br = self.band(lhs), self.band(rhs)
        if bl == br:
            return Relation.EQUAL
        return Relation.GREATER if bl < br else Relation.LESS

    def answer(self, question: Question) -> Relation:
        self.questions_answered += 1
        return self.judge(question.lhs, question.rhs)


def answer_all(
    session: ElicitationSession, agent: SyntheticAgent, batch: int = 64
) -> int:
    """Drain the session's open questions through the agent."""
    total = 0
    while True:
        qs = session.next_questions(batch)
        if not qs:
            return total
        session.submit_answers([(q.id, agent.answer(q)) for q in qs], source="agent")
        total += len(qs)


# ---------------------------------------------------------------------------
# Candidate generation and the automated loop
# ---------------------------------------------------------------------------


def transfer_step(
    pmf: Distribution, donor: int, receiver: int, step: Fraction
) -> Distribution | None:
    """Move ``step`` mass between two support positions, if possible."""
    masses = [level_key(m) for m in pmf.masses]
    if donor == receiver or masses[donor] < step:
        return None
    masses[donor] -= step
    masses[receiver] += step
    return finite_pmf(pmf.variable, pmf.support, tuple(masses))


def pmf_neighbors(
    pmf: Distribution, step: Fraction = Fraction(1, 100), first: tuple | None = None
) -> Iterator[tuple[tuple[int, int], Distribution]]:
    """All single-transfer neighbours, optionally trying one direction first."""
    m = len(pmf.support)
    pairs = [(i, j) for i in range(m) for j in range(m) if i != j]
    if first in pairs:
        pairs.remove(first)
        pairs.insert(0, first)
    for i, j in pairs:
        neighbor = transfer_step(pmf, i, j, step)
        if neighbor is not None:
            yield (i, j), neighbor


def pmf_total_variation(a: Distribution, b: Distribution) -> Fraction:
    ma = dict(zip(a.support, (level_key(x) for x in a.masses)))
    mb = dict(zip(b.support, (level_key(x) for x in b.masses)))
    keys = set(ma) | set(mb)
    return sum(
        (abs(ma.get(k, Fraction(0)) - mb.get(k, Fraction(0))) for k in keys),
        Fraction(0),
    ) / 2


@dataclass(frozen=True)
class AgentRunReport:
    session_id: str
    accepted: int
    proposals: int
    questions: int
    converged: bool
    final: Distribution
    frontier_size: int

    def to_doc(self) -> dict:
        return {
            "session_id": self.session_id,
            "accepted": self.accepted,
            "proposals": self.proposals,
            "questions": self.questions,
            "converged": self.converged,
            "final": self.final.to_doc(),
            "frontier_size": self.frontier_size,
        }


def _propose_and_drain(
    session: ElicitationSession, agent: SyntheticAgent, cand: Distribution
) -> ProposalResult:
    result = session.propose_candidate(cand)
    while result.status == NEEDS_ANSWERS:
        answered = answer_all(session, agent)
        polled = session.poll_candidate()
        if polled is None or (polled.status == NEEDS_ANSWERS and answered == 0):
            raise DomainError("candidate evaluation stalled without open questions")
        result = polled
    return result


def run_agent_session(
    agent: SyntheticAgent,
    spec: VariableSpec,
    start: Distribution | None = None,
    config: SessionConfig | None = None,
    step: Fraction = Fraction(1, 100),
    max_proposals: int = 2000,
) -> tuple[ElicitationSession, AgentRunReport]:
    """Hill-climb over single-transfer pmf steps until nothing is accepted.

    First-improvement search with direction momentum: the transfer that was
    accepted last is retried first, which makes straight descents cost one
    proposal per step instead of a full neighbourhood sweep.
    """
    session = start_session(spec, start, config)
    answer_all(session, agent)
    accepted = 0
    proposals = 0
    last_dir: tuple | None = None
    improved = True
    while improved and proposals < max_proposals:
        improved = False
        for direction, cand in pmf_neighbors(session.proposal, step, last_dir):
            if session.seen(cand):
                continue
            result = _propose_and_drain(session, agent, cand)
            proposals += 1
            if result.status == ACCEPTED:
                accepted += 1
                last_dir = direction
                improved = True
                break
            if proposals >= max_proposals:
                break
    session.declare_converged()
    report = AgentRunReport(
        session_id=session.id,
        accepted=accepted,
        proposals=proposals,
        questions=agent.questions_answered,
        converged=session.status == CONVERGED,
        final=session.proposal,
        frontier_size=len(session.frontier),
    )
    return session, report


# ---------------------------------------------------------------------------
# Single-event probability assignment (the argmax reading)
# ---------------------------------------------------------------------------


def elicit_event_probability(
    agent: SyntheticAgent,
    event: EventRef,
    grid: Sequence[Num],
    refset: str = "R",
    method: str = DIRECT,
    store: SimilarityStore | None = None,
) -> tuple[SimilarityStore, ArgmaxResult]:
    """Locate an event's analogical probability on a resolution grid.

    Asks the agent to order the terms S(event, R(g)) for adjacent grid
    levels; transitivity then yields the full dominance structure needed by
    the argmax rule. With an ambiguity-discounting agent the chosen levels
    for an event and its complement sum to less than one.
    """
    store = store or SimilarityStore.empty()
    levels = [level_key(g) for g in grid]
    judgments = []
    for g1, g2 in zip(levels, levels[1:]):
        t1 = SimilarityTerm.of(event, EventRef.reference(g1, refset))
        t2 = SimilarityTerm.of(event, EventRef.reference(g2, refset))
        judgments.append(
            Judgment(
                lhs=t1,
                rhs=t2,
                relation=agent.judge(t1, t2),
                source="agent",
                method=method,
            )
        )
    store = store.with_judgments(judgments)
    result = argmax_similarity(store, event, levels, refset=refset, method=method)
    return store, result
