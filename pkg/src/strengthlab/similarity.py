"""Similarity judgments over event pairs and their derived partial order.

Similarity here is an ordinal attribute of *pairs of events*: a term stands
for "how similar is confidence in event A to confidence in event B". Terms
are never given numeric values; all information lives in recorded judgments
(Greater / Less / Equal) and whatever follows from them by transitivity.

Two terms are only comparable when they share an event argument, unless a
judgment is explicitly flagged ``extended``. Evaluations can be qualified by
the reasoning method that produced them: the store's nodes are
``(term, method)`` pairs, except that terms built purely from reference
events are method-free physical facts and act as anchors shared by every
method layer.

The store is a persistent value: ``with_judgment(s)`` return new versions and
queries on any version are pure. Internally versions share one append-only
log; extending the newest version appends in place, extending an older
version forks a rebuilt index.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    ConflictError,
    DomainError,
    SharedArgumentError,
    UnknownTermError,
)
from .levels import Num, level_doc, level_key, parse_level_doc

DIRECT = "direct"

#: Method slot used for terms built purely from reference events.
_PHYS = ""


class Relation(str, Enum):
    """A recorded comparison between two similarity terms."""

    GREATER = "gt"
    LESS = "lt"
    EQUAL = "eq"

    def flipped(self) -> "Relation":
        if self is Relation.GREATER:
            return Relation.LESS
        if self is Relation.LESS:
            return Relation.GREATER
        return Relation.EQUAL


class Order(str, Enum):
    """Result of querying the derived order between two terms."""

    GREATER = "greater"
    LESS = "less"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


# ---------------------------------------------------------------------------
# Event references and terms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EventRef:
    """Hashable reference to an event usable inside a similarity term.

    Kinds:

    - ``reference``: the standard event of some resolution, payload
      ``(refset_name, level)``.
    - ``intervals``: an event of a continuous variable, payload is a tuple of
      ``(lo, hi)`` interval endpoints in the variable's own scale.
    - ``weighted``: an event of a discrete variable built from per-outcome
      counting weights, payload is a tuple of ``(outcome, weight)`` pairs
      with positive weights; weight 1 counts the outcome outright, a
      fractional weight counts it with that auxiliary wheel probability.
    - ``label``: an opaque named event of a variable.
    """

    kind: str
    variable: str = ""
    payload: tuple = ()

    @staticmethod
    def reference(level: Num, refset: str = "R") -> "EventRef":
        return EventRef("reference", "", (refset, level_key(level)))

    @staticmethod
    def interval_event(variable: str, intervals: Iterable[Sequence[float]]) -> "EventRef":
        items = sorted((float(lo), float(hi)) for lo, hi in intervals)
        cleaned = tuple((lo + 0.0, hi + 0.0) for lo, hi in items if hi > lo)
        return EventRef("intervals", variable, cleaned)

    @staticmethod
    def weighted_event(variable: str, weights: Iterable[Sequence]) -> "EventRef":
        pairs = []
        for outcome, w in weights:
            wk = level_key(w)
            if wk < 0 or wk > 1:
                raise DomainError(f"event weight {w!r} outside [0, 1]")
            if wk > 0:
                pairs.append((outcome, wk))
        pairs.sort(key=lambda p: repr(p[0]))
        return EventRef("weighted", variable, tuple(pairs))

    @staticmethod
    def labeled_event(variable: str, label: str) -> "EventRef":
        return EventRef("label", variable, (label,))

    @property
    def is_reference(self) -> bool:
        return self.kind == "reference"

    def sort_token(self) -> tuple:
        return (self.kind, self.variable, repr(self.payload))

    def to_doc(self) -> dict:
        if self.kind == "reference":
            refset, level = self.payload
            return {"kind": "reference", "refset": refset, "level": level_doc(level)}
        if self.kind == "intervals":
            return {
                "kind": "intervals",
                "variable": self.variable,
                "intervals": [[lo, hi] for lo, hi in self.payload],
            }
        if self.kind == "weighted":
            return {
                "kind": "weighted",
                "variable": self.variable,
                "weights": [[o, level_doc(w)] for o, w in self.payload],
            }
        return {"kind": "label", "variable": self.variable, "label": self.payload[0]}

    @staticmethod
    def from_doc(doc: dict) -> "EventRef":
        kind = doc.get("kind")
        if kind == "reference":
            return EventRef.reference(
                parse_level_doc(doc["level"]), doc.get("refset", "R")
            )
        if kind == "intervals":
            return EventRef.interval_event(doc["variable"], doc["intervals"])
        if kind == "weighted":
            return EventRef.weighted_event(
                doc["variable"],
                [(o, parse_level_doc(w)) for o, w in doc["weights"]],
            )
        if kind == "label":
            return EventRef.labeled_event(doc["variable"], doc["label"])
        raise DomainError(f"unknown event reference kind {kind!r}")


@dataclass(frozen=True)
class SimilarityTerm:
    """An unordered pair of event references."""

    a: EventRef
    b: EventRef

    @staticmethod
    def of(x: EventRef, y: EventRef) -> "SimilarityTerm":
        if y.sort_token() < x.sort_token():
            x, y = y, x
        return SimilarityTerm(x, y)

    def refs(self) -> tuple[EventRef, EventRef]:
        return (self.a, self.b)

    def sort_token(self) -> tuple:
        return (self.a.sort_token(), self.b.sort_token())

    @property
    def reference_only(self) -> bool:
        return self.a.is_reference and self.b.is_reference

    def shares_argument(self, other: "SimilarityTerm") -> bool:
        mine = {self.a, self.b}
        return other.a in mine or other.b in mine

    def to_doc(self) -> dict:
        return {"a": self.a.to_doc(), "b": self.b.to_doc()}

    @staticmethod
    def from_doc(doc: dict) -> "SimilarityTerm":
        return SimilarityTerm.of(EventRef.from_doc(doc["a"]), EventRef.from_doc(doc["b"]))


def term(x: EventRef, y: EventRef) -> SimilarityTerm:
    return SimilarityTerm.of(x, y)


@dataclass(frozen=True)
class Judgment:
    """One recorded comparison between two similarity terms."""

    lhs: SimilarityTerm
    rhs: SimilarityTerm
    relation: Relation
    source: str = "human"
    method: str = DIRECT
    extended: bool = False
    timestamp: float = 0.0

    def to_doc(self) -> dict:
        doc = {
            "lhs": self.lhs.to_doc(),
            "rhs": self.rhs.to_doc(),
            "rel": self.relation.value,
            "source": self.source,
            "method": self.method,
            "timestamp": self.timestamp,
        }
        if self.extended:
            doc["extended"] = True
        return doc

    @staticmethod
    def from_doc(doc: dict) -> "Judgment":
        return Judgment(
            lhs=SimilarityTerm.from_doc(doc["lhs"]),
            rhs=SimilarityTerm.from_doc(doc["rhs"]),
            relation=Relation(doc["rel"]),
            source=doc.get("source", "human"),
            method=doc.get("method", DIRECT),
            extended=bool(doc.get("extended", False)),
            timestamp=float(doc.get("timestamp", 0.0)),
        )


def _node_key(t: SimilarityTerm, method: str) -> tuple[SimilarityTerm, str]:
    return (t, _PHYS if t.reference_only else method)


# ---------------------------------------------------------------------------
# Shared log and incremental condensation index
# ---------------------------------------------------------------------------


class _Log:
    """Append-only judgment log plus an index of its derived order.

    The index holds a union-find over evaluation nodes (Equal classes) and
    the strict-edge adjacency between class roots. ``applied`` counts how
    many judgments have been folded into the index; the facade advances it
    lazily so old snapshots never observe newer judgments.
    """

    __slots__ = (
        "judgments",
        "node_ids",
        "node_keys",
        "down_edges",
        "parent",
        "size",
        "succ",
        "pred",
        "applied",
    )

    def __init__(self):
        self.judgments: list[Judgment] = []
        self.node_ids: dict[tuple, int] = {}
        self.node_keys: list[tuple] = []
        # node-level adjacency used for witness extraction:
        # node -> list of (other_node, judgment_index, strict)
        self.down_edges: list[list[tuple[int, int, bool]]] = []
        self.parent: list[int] = []
        self.size: list[int] = []
        self.succ: list[set[int] | None] = []
        self.pred: list[set[int] | None] = []
        self.applied = 0

    # -- structure ---------------------------------------------------------

    def copy_upto(self, n: int) -> "_Log":
        new = _Log()
        new.judgments = self.judgments[:n]
        for j in new.judgments:
            new._apply(j, validate=False)
        return new

    def intern(self, key: tuple) -> int:
        nid = self.node_ids.get(key)
        if nid is None:
            nid = len(self.node_keys)
            self.node_ids[key] = nid
            self.node_keys.append(key)
            self.down_edges.append([])
            self.parent.append(nid)
            self.size.append(1)
            self.succ.append(set())
            self.pred.append(set())
        return nid

    def find(self, nid: int) -> int:
        root = nid
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[nid] != root:
            self.parent[nid], nid = root, self.parent[nid]
        return root

    def _reaches_down(self, src: int, dst: int) -> bool:
        if src == dst:
            return True
        seen = {src}
        queue = deque((src,))
        while queue:
            cur = queue.popleft()
            for nxt in self.succ[cur]:
                if nxt == dst:
                    return True
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return False

    def _merge(self, a: int, b: int) -> None:
        if a == b:
            return
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        for w in self.succ[b]:
            self.pred[w].discard(b)
            if w != a:
                self.pred[w].add(a)
                self.succ[a].add(w)
        for w in self.pred[b]:
            self.succ[w].discard(b)
            if w != a:
                self.succ[w].add(a)
                self.pred[a].add(w)
        self.succ[a].discard(a)
        self.pred[a].discard(a)
        self.succ[b] = None
        self.pred[b] = None

    def _judgment_nodes(self, j: Judgment) -> tuple[int, int]:
        return (
            self.intern(_node_key(j.lhs, j.method)),
            self.intern(_node_key(j.rhs, j.method)),
        )

    # -- validation and application -----------------------------------------

    def check(self, j: Judgment) -> None:
        """Raise if ``j`` cannot be appended. Strictly read-only."""
        if not j.extended and not j.lhs.shares_argument(j.rhs):
            raise SharedArgumentError(
                "terms share no event argument; flag the judgment extended "
                "to record a cross-pair comparison",
                detail={"lhs": j.lhs.to_doc(), "rhs": j.rhs.to_doc()},
            )
        hi_key = _node_key(j.lhs, j.method)
        lo_key = _node_key(j.rhs, j.method)
        if j.relation is Relation.LESS:
            hi_key, lo_key = lo_key, hi_key
        if j.relation is not Relation.EQUAL and hi_key == lo_key:
            raise ConflictError(
                "a term cannot be strictly greater than itself", cycle=(j,)
            )
        hi = self.node_ids.get(hi_key)
        lo = self.node_ids.get(lo_key)
        if hi is None or lo is None:
            return  # a fresh node cannot participate in a cycle
        ca, cb = self.find(hi), self.find(lo)
        if j.relation is Relation.EQUAL:
            if ca == cb:
                return
            if self._reaches_down(ca, cb) or self._reaches_down(cb, ca):
                cycle = self._witness(hi, lo, require_strict=True)
                if cycle is None:
                    cycle = self._witness(lo, hi, require_strict=True)
                raise ConflictError(
                    "equality contradicts a derived strict ordering",
                    cycle=tuple(cycle or ()) + (j,),
                )
            return
        if ca == cb:
            cycle = self._witness(lo, hi, require_strict=False)
            raise ConflictError(
                "strict ordering contradicts derived equality",
                cycle=tuple(cycle or ()) + (j,),
            )
        if self._reaches_down(cb, ca):
            cycle = self._witness(lo, hi, require_strict=True)
            raise ConflictError(
                "judgment closes an ordering cycle",
                cycle=tuple(cycle or ()) + (j,),
            )

    def _fold(self, j: Judgment, jidx: int) -> None:
        hi, lo = self._judgment_nodes(j)
        if j.relation is Relation.LESS:
            hi, lo = lo, hi
        if j.relation is Relation.EQUAL:
            self.down_edges[hi].append((lo, jidx, False))
            self.down_edges[lo].append((hi, jidx, False))
            self._merge(self.find(hi), self.find(lo))
        else:
            self.down_edges[hi].append((lo, jidx, True))
            ca, cb = self.find(hi), self.find(lo)
            self.succ[ca].add(cb)
            self.pred[cb].add(ca)
        self.applied += 1

    def _apply(self, j: Judgment, validate: bool = True) -> None:
        """Fold ``judgments[self.applied]`` (which must be ``j``) into the index."""
        if validate:
            self.check(j)
        self._fold(j, self.applied)

    def append(self, j: Judgment) -> None:
        """Validate a new judgment, then add it to the log and the index."""
        self.check(j)
        self.judgments.append(j)
        self._fold(j, len(self.judgments) - 1)

    # -- witness extraction --------------------------------------------------

    def _witness(
        self, src: int, dst: int, require_strict: bool
    ) -> list[Judgment] | None:
        """Judgments forming a downhill path src -> dst at the node level."""
        limit = self.applied
        start = (src, False)
        seen = {start}
        back: dict[tuple[int, bool], tuple[tuple[int, bool], int]] = {}
        queue = deque((start,))
        goal = None
        while queue:
            cur = queue.popleft()
            node, strict_seen = cur
            if node == dst and (strict_seen or not require_strict):
                goal = cur
                break
            for nxt, jidx, strict in self.down_edges[node]:
                if jidx >= limit:
                    continue
                state = (nxt, strict_seen or strict)
                if state not in seen:
                    seen.add(state)
                    back[state] = (cur, jidx)
                    queue.append(state)
        if goal is None:
            return None
        path: list[Judgment] = []
        cur = goal
        while cur != start:
            cur, jidx = back[cur]
            path.append(self.judgments[jidx])
        path.reverse()
        return path


# ---------------------------------------------------------------------------
# Persistent facade
# ---------------------------------------------------------------------------


class SimilarityStore:
    """Persistent, append-only collection of similarity judgments."""

    __slots__ = ("_log", "_n")

    def __init__(self, _log: _Log | None = None, _n: int = 0):
        self._log = _log if _log is not None else _Log()
        self._n = _n

    @staticmethod
    def empty() -> "SimilarityStore":
        return SimilarityStore()

    def __len__(self) -> int:
        return self._n

    def judgments(self) -> tuple[Judgment, ...]:
        return tuple(self._log.judgments[: self._n])

    # -- version bookkeeping -------------------------------------------------

    def _index(self) -> _Log:
        log = self._log
        if log.applied > self._n or len(log.judgments) > self._n:
            # An older snapshot whose shared log moved on: rebuild privately.
            log = log.copy_upto(self._n)
            self._log = log
        while log.applied < self._n:
            log._apply(log.judgments[log.applied], validate=False)
        return log

    def _at_tip(self) -> bool:
        return len(self._log.judgments) == self._n == self._log.applied

    # -- writes ---------------------------------------------------------------

    def with_judgment(self, j: Judgment) -> "SimilarityStore":
        if self._at_tip():
            self._log.append(j)
            return SimilarityStore(self._log, self._n + 1)
        return self.with_judgments([j])

    def with_judgments(self, js: Iterable[Judgment]) -> "SimilarityStore":
        js = list(js)
        if not js:
            return self
        if self._at_tip():
            # Extend the shared log in place; a conflict partway through
            # discards the partial extension by rebuilding this snapshot's
            # prefix, so the failed batch changes nothing observable.
            log = self._log
            try:
                for j in js:
                    log.append(j)
            except Exception:
                self._log = log.copy_upto(self._n)
                raise
            return SimilarityStore(log, self._n + len(js))
        log = self._index().copy_upto(self._n)
        for j in js:
            log.append(j)
        return SimilarityStore(log, self._n + len(js))

    # -- queries ---------------------------------------------------------------

    def knows_term(self, t: SimilarityTerm, method: str = DIRECT) -> bool:
        return _node_key(t, method) in self._index().node_ids

    def methods_recorded(self, t: SimilarityTerm) -> tuple[str, ...]:
        log = self._index()
        out = {
            m for (tt, m) in log.node_ids if tt == t
        }
        return tuple(sorted(out))

    def query_between(
        self,
        lhs: SimilarityTerm,
        rhs: SimilarityTerm,
        lhs_method: str = DIRECT,
        rhs_method: str = DIRECT,
    ) -> Order:
        """Derived order between two method-qualified evaluations."""
        ka = _node_key(lhs, lhs_method)
        kb = _node_key(rhs, rhs_method)
        if ka == kb:
            return Order.EQUAL
        log = self._index()
        ia = log.node_ids.get(ka)
        ib = log.node_ids.get(kb)
        if ia is None or ib is None:
            missing = lhs.to_doc() if ia is None else rhs.to_doc()
            raise UnknownTermError(
                "term was never mentioned by any judgment", detail=missing
            )
        ca, cb = log.find(ia), log.find(ib)
        if ca == cb:
            return Order.EQUAL
        if log._reaches_down(ca, cb):
            return Order.GREATER
        if log._reaches_down(cb, ca):
            return Order.LESS
        return Order.INCOMPARABLE

    def query(
        self, lhs: SimilarityTerm, rhs: SimilarityTerm, method: str = DIRECT
    ) -> Order:
        return self.query_between(lhs, rhs, method, method)

    def query_opt(
        self,
        lhs: SimilarityTerm,
        rhs: SimilarityTerm,
        lhs_method: str = DIRECT,
        rhs_method: str = DIRECT,
    ) -> Order:
        """Like :meth:`query_between` but unknown terms read as Incomparable."""
        try:
            return self.query_between(lhs, rhs, lhs_method, rhs_method)
        except UnknownTermError:
            return Order.INCOMPARABLE

    def explain(
        self,
        lhs: SimilarityTerm,
        rhs: SimilarityTerm,
        lhs_method: str = DIRECT,
        rhs_method: str = DIRECT,
    ) -> tuple[Judgment, ...]:
        """Judgments forming one derivation of the order between two terms."""
        rel = self.query_between(lhs, rhs, lhs_method, rhs_method)
        log = self._index()
        ia = log.node_ids[_node_key(lhs, lhs_method)]
        ib = log.node_ids[_node_key(rhs, rhs_method)]
        if rel is Order.GREATER:
            path = log._witness(ia, ib, require_strict=True)
        elif rel is Order.LESS:
            path = log._witness(ib, ia, require_strict=True)
        elif rel is Order.EQUAL:
            path = log._witness(ia, ib, require_strict=False)
        else:
            path = None
        return tuple(path or ())


def record_judgment(store: SimilarityStore, j: Judgment) -> SimilarityStore:
    """Functional alias for :meth:`SimilarityStore.with_judgment`."""
    return store.with_judgment(j)


def query_order(
    store: SimilarityStore,
    lhs: SimilarityTerm,
    rhs: SimilarityTerm,
    method: str = DIRECT,
) -> Order:
    return store.query(lhs, rhs, method)


# ---------------------------------------------------------------------------
# Analogical probability assignment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ArgmaxResult:
    """Outcome of maximizing similarity to the reference ladder."""

    maximizers: tuple[Fraction, ...]
    imprecise: bool
    weak_analogy: bool
    informed: bool

    def to_doc(self) -> dict:
        return {
            "maximizers": [level_doc(m) for m in self.maximizers],
            "imprecise": self.imprecise,
            "weak_analogy": self.weak_analogy,
            "informed": self.informed,
        }


def argmax_similarity(
    store: SimilarityStore,
    event: EventRef,
    grid: Sequence[Num],
    refset: str = "R",
    method: str = DIRECT,
    offsets: tuple[int, int] = (1, 1),
) -> ArgmaxResult:
    """Grid resolutions whose reference event is most similar to ``event``.

    Returns every grid point not derivably dominated by another. With more
    than one survivor the assignment is imprecise. The weak-analogy flag is
    set when a surviving point's term is derivably below the self-similarity
    of its own reference event, or below the similarity between that
    reference event and a neighbour ``offsets`` grid steps away.
    """
    levels = [level_key(x) for x in grid]
    if len(set(levels)) != len(levels):
        raise DomainError("grid contains duplicate resolutions")
    terms = {
        lam: SimilarityTerm.of(event, EventRef.reference(lam, refset))
        for lam in levels
    }

    def order(a: Fraction, b: Fraction) -> Order:
        return store.query_opt(terms[a], terms[b], method, method)

    informed = False
    dominated = set()
    for x, y in itertools.combinations(levels, 2):
        rel = order(x, y)
        if rel is not Order.INCOMPARABLE:
            informed = True
        if rel is Order.GREATER:
            dominated.add(y)
        elif rel is Order.LESS:
            dominated.add(x)
    maximizers = tuple(lam for lam in levels if lam not in dominated)

    weak = False
    sorted_levels = sorted(levels)
    for lam in maximizers:
        ref = EventRef.reference(lam, refset)
        peers = [SimilarityTerm.of(ref, ref)]
        idx = sorted_levels.index(lam)
        below, above = offsets
        if idx - below >= 0:
            peers.append(
                SimilarityTerm.of(ref, EventRef.reference(sorted_levels[idx - below], refset))
            )
        if idx + above < len(sorted_levels):
            peers.append(
                SimilarityTerm.of(ref, EventRef.reference(sorted_levels[idx + above], refset))
            )
        for peer in peers:
            if store.query_opt(terms[lam], peer, method, method) is Order.LESS:
                weak = True
                break
        if weak:
            break

    return ArgmaxResult(
        maximizers=maximizers,
        imprecise=len(maximizers) > 1,
        weak_analogy=weak,
        informed=informed,
    )
