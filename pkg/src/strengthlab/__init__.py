"""Graded probability assessments via similarity to reference events.

The package separates three layers that are usually blurred together:

- exact physical probability for canonical chance setups (urns, a unit
  wheel), where additivity is a theorem, not an assumption;
- recorded similarity judgments between event pairs, kept as a partial
  order that tolerates incomparability and is checked for consistency;
- derived statements about how strongly a distribution's event claims
  resemble reference events, including comparisons across reasoning
  methods, sensitivity to the working resolution, and an interactive
  elicitation loop that improves a candidate distribution by asking only
  order questions.

A small HTTP/JSON service and a CLI expose the same operations with
canonical, byte-reproducible output.
"""

from .distributions import (
    FINITE_PMF,
    FULLY_ADDITIVE,
    IMPROPER_FLAT,
    NORMAL,
    PIECEWISE_CDF,
    SEMI_ADDITIVE,
    UNIFORM,
    Distribution,
    JointDistribution,
    condition,
    evaluate,
    finite_pmf,
    improper_flat,
    marginal_consistency,
    marginalize,
    normal,
    piecewise_cdf,
    uniform,
)
from .elicitation import (
    AgentRunReport,
    ElicitationSession,
    Question,
    SessionConfig,
    SyntheticAgent,
    VariableSpec,
    answer_all,
    elicit_event_probability,
    pmf_total_variation,
    run_agent_session,
    start_session,
)
from .errors import (
    ConflictError,
    DomainError,
    StaleVersionError,
    StrengthLabError,
    UnknownSessionError,
)
from .events import (
    DiscreteExperiment,
    Event,
    ReferenceSet,
    TrialRecord,
    WheelExperiment,
    event_algebra,
    physical_probability,
    reference_event,
    run_trials,
)
from .fiducial import (
    FiducialModel,
    LedgerEntry,
    LedgerFixture,
    bayes_posterior,
    build_ledger_fixture,
    central_interval,
    coverage_check,
    fiducial_distribution,
    improper_limit_check,
    simulate_dga,
    swap_method_tags,
)
from .jsoncodec import canonical_bytes, canonical_dumps, canonical_loads
from .levels import DEFAULT_GRID, level_doc, level_float, level_key
from .methods import BAYESIAN, DEFAULT_METHODS, DIRECT, FIDUCIAL, ensure_known_methods
from .similarity import (
    EventRef,
    Judgment,
    Order,
    Relation,
    SimilarityStore,
    SimilarityTerm,
    argmax_similarity,
    record_judgment,
)
from .strength import (
    ContinuousProbeConfig,
    DiscreteProbeConfig,
    ProbeFamily,
    StrengthVerdict,
    best_reasoning_method,
    build_probes,
    choose_best_derivation,
    compare_representativeness,
    external_strength,
    family_builder,
    internal_strength,
    sensitivity_scan,
    validate_probe_weights,
)

__version__ = "0.1.0"
