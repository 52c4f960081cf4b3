"""Document-in, document-out operations shared by the HTTP API and the CLI.

Every verdict reachable over HTTP goes through exactly one of these
functions, and the CLI calls the same functions, so both faces of the
service serialize identical canonical JSON for identical requests.
"""

from __future__ import annotations

from ..distributions import Distribution
from ..errors import DomainError
from ..events import DiscreteExperiment, Event, WheelExperiment, physical_probability, run_trials
from ..fiducial import FiducialModel, coverage_check, demo_report
from ..levels import DEFAULT_GRID, level_doc, level_key
from ..methods import DEFAULT_METHODS, ensure_known_methods
from ..similarity import DIRECT, Judgment, SimilarityStore
from ..strength import (
    ContinuousProbeConfig,
    DiscreteProbeConfig,
    build_probes,
    external_strength,
    family_builder,
    internal_strength,
    sensitivity_scan,
)


def _discrete_config(doc: dict | None) -> DiscreteProbeConfig | None:
    if doc is None:
        return None
    return DiscreteProbeConfig(
        exhaustive_limit=int(doc.get("exhaustive_limit", 12)),
        completions=doc.get("completions", "all"),
        max_probes=doc.get("max_probes"),
        sample_subsets=int(doc.get("sample_subsets", 64)),
        seed=int(doc.get("seed", 0)),
    )


def _continuous_config(doc: dict | None) -> ContinuousProbeConfig | None:
    if doc is None:
        return None
    return ContinuousProbeConfig(
        tails=bool(doc.get("tails", True)),
        centered=bool(doc.get("centered", True)),
        two_tail=bool(doc.get("two_tail", True)),
        window_step=float(doc.get("window_step", 0.25)),
    )


def _require(doc: dict, key: str):
    if key not in doc:
        raise DomainError(f"request is missing the {key!r} field")
    return doc[key]


def _load_store(doc: dict) -> SimilarityStore:
    judgments = [Judgment.from_doc(j) for j in doc.get("judgments", ())]
    return SimilarityStore.empty().with_judgments(judgments)


def _method_list(value) -> tuple[str, ...] | None:
    if value is None:
        return None
    if isinstance(value, str):
        value = [value]
    return tuple(str(m) for m in value)


def comparison_verdict(doc: dict) -> dict:
    """Run one strength comparison described entirely by a document."""
    kind = doc.get("kind", "internal")
    level = level_key(_require(doc, "level"))
    left = Distribution.from_doc(_require(doc, "left"))
    right = Distribution.from_doc(_require(doc, "right"))
    store = _load_store(doc)
    refset = doc.get("refset", "R")
    discrete = _discrete_config(doc.get("discrete_probes"))
    continuous = _continuous_config(doc.get("continuous_probes"))
    lf = build_probes(left, level, discrete, continuous, refset)
    rf = build_probes(right, level, discrete, continuous, refset)
    registry = tuple(doc.get("known_methods", DEFAULT_METHODS))
    if kind == "internal":
        method = doc.get("method", DIRECT)
        ensure_known_methods((method,), registry)
        verdict = internal_strength(lf, rf, store, method)
    elif kind == "external":
        methods_left = _method_list(doc.get("methods_left"))
        methods_right = _method_list(doc.get("methods_right"))
        ensure_known_methods(methods_left, registry)
        ensure_known_methods(methods_right, registry)
        verdict = external_strength(lf, rf, store, methods_left, methods_right)
    else:
        raise DomainError(f"unknown comparison kind {kind!r}")
    return verdict.to_doc()


def sensitivity_report(doc: dict) -> dict:
    """Replay a comparison over a resolution grid and report verdict flips."""
    mode = doc.get("kind", doc.get("mode", "internal"))
    if mode not in ("internal", "external"):
        raise DomainError(f"unknown comparison kind {mode!r}")
    left = Distribution.from_doc(_require(doc, "left"))
    right = Distribution.from_doc(_require(doc, "right"))
    store = _load_store(doc)
    refset = doc.get("refset", "R")
    discrete = _discrete_config(doc.get("discrete_probes"))
    continuous = _continuous_config(doc.get("continuous_probes"))
    grid = [level_key(x) for x in doc.get("grid", DEFAULT_GRID)]
    if not grid:
        raise DomainError("the sensitivity grid must not be empty")
    registry = tuple(doc.get("known_methods", DEFAULT_METHODS))
    method = doc.get("method", DIRECT)
    methods_left = _method_list(doc.get("methods_left"))
    methods_right = _method_list(doc.get("methods_right"))
    if mode == "internal":
        ensure_known_methods((method,), registry)
    else:
        ensure_known_methods(methods_left, registry)
        ensure_known_methods(methods_right, registry)
    result = sensitivity_scan(
        family_builder(left, discrete, continuous, refset),
        family_builder(right, discrete, continuous, refset),
        store,
        grid,
        mode=mode,
        method=method,
        methods_left=methods_left,
        methods_right=methods_right,
    )
    out = result.to_doc()
    out["kind"] = mode
    out["grid"] = [level_doc(x) for x in grid]
    return out


def _parse_experiment(doc: dict):
    if doc.get("wheel"):
        return WheelExperiment()
    k = doc.get("urn")
    if k is None:
        raise DomainError("experiment must name an urn size or the wheel")
    return DiscreteExperiment(int(k))


def trials_report(doc: dict) -> dict:
    """Simulate an event's frequency and report it next to the exact value."""
    experiment = _parse_experiment(doc)
    event = Event.from_doc(_require(doc, "event"))
    n = int(doc.get("trials", 1000))
    seed = int(doc.get("seed", 0))
    record = run_trials(experiment, event, n, seed)
    exact = physical_probability(experiment, event)
    out = record.to_doc()
    out["event"] = event.to_doc()
    out["exact"] = level_doc(exact)
    out["error"] = record.freq - float(exact)
    return out


def fiducial_demo_report(doc: dict) -> dict:
    """Numbers for the known-variance mean-inference demonstration."""
    if "sigma" in doc and "variance" in doc:
        raise DomainError("give sigma or variance, not both")
    if "sigma" in doc:
        variance = float(doc["sigma"]) ** 2
    elif "variance" in doc:
        variance = float(doc["variance"])
    else:
        raise DomainError("give the data noise as sigma or variance")
    model = FiducialModel(n=int(_require(doc, "n")), variance=variance)
    xbar = float(_require(doc, "xbar"))
    level = float(doc.get("level", 0.95))
    ladder = doc.get("ladder")
    if ladder is not None:
        ladder = tuple(float(t) for t in ladder)
    out = demo_report(model, xbar, level, ladder)
    coverage = doc.get("coverage")
    if coverage:
        out["coverage"] = coverage_check(
            model,
            mu_true=float(coverage.get("mu_true", xbar)),
            level=level,
            replications=int(coverage.get("replications", 10000)),
            seed=int(coverage.get("seed", 0)),
        )
    return out
