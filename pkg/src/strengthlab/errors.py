"""Exception taxonomy shared by the library, CLI and HTTP gateway.

Every domain error carries a stable ``code`` string so the two transport
layers can map failures uniformly (HTTP status + body, CLI exit code 1).
"""

from __future__ import annotations


class StrengthLabError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "domain-error"

    def __init__(self, message: str, detail: object = None):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def to_doc(self) -> dict:
        doc = {"code": self.code, "message": self.message}
        if self.detail is not None:
            doc["detail"] = self.detail
        return doc


class KindMismatchError(StrengthLabError):
    """Event and experiment (or two events) have incompatible kinds."""

    code = "kind-mismatch"


class OutcomeRangeError(StrengthLabError):
    """A discrete outcome index lies outside 1..k."""

    code = "outcome-range"


class ResolutionError(StrengthLabError):
    """A reference resolution is outside the experiment's admissible grid."""

    code = "resolution-out-of-grid"


class DomainError(StrengthLabError):
    """A numeric argument is outside the domain of the requested operation."""

    code = "out-of-domain"


class DistributionFormError(StrengthLabError):
    """Distribution parameters do not describe a valid distribution."""

    code = "invalid-distribution"


class UnsupportedFormError(StrengthLabError):
    """The operation is undefined for this distribution form."""

    code = "unsupported-form"


class SemiAdditiveRefusal(StrengthLabError):
    """Marginalization refused because the joint is only semi-additive."""

    code = "semi-additive-refusal"


class UnauthorizedConditioning(StrengthLabError):
    """Conditioning requires an explicit authorization flag."""

    code = "unauthorized-conditioning"


class ZeroMassConditioning(StrengthLabError):
    """Conditioning event has zero mass."""

    code = "zero-mass-conditioning"


class SharedArgumentError(StrengthLabError):
    """Two similarity terms share no event argument and the judgment is not
    flagged as an extended comparison."""

    code = "shared-argument"


class UnknownTermError(StrengthLabError):
    """A queried similarity term was never mentioned by any judgment."""

    code = "unknown-term"


class ConflictError(StrengthLabError):
    """A judgment contradicts the derived closure of the store.

    ``cycle`` lists the judgments forming the contradiction; the final entry
    is always the offending judgment, and removing it leaves a consistent
    store.
    """

    code = "judgment-conflict"

    def __init__(self, message: str, cycle: tuple = ()):
        super().__init__(message, detail=None)
        self.cycle = tuple(cycle)

    def to_doc(self) -> dict:
        doc = {"code": self.code, "message": self.message}
        if self.cycle:
            doc["cycle"] = [j.to_doc() for j in self.cycle]
        return doc


class LevelMismatchError(StrengthLabError):
    """Two probe families built at different resolutions were compared."""

    code = "level-mismatch"


class UnknownMethodError(StrengthLabError):
    """A method tag is not registered with the session."""

    code = "unknown-method"


class UnknownQuestionError(StrengthLabError):
    """An answer references a question id that is not open."""

    code = "unknown-question"


class UnknownSessionError(StrengthLabError):
    """No stored session has the requested id."""

    code = "unknown-session"


class StaleVersionError(StrengthLabError):
    """A mutation carried a version token that is no longer current."""

    code = "stale-version"
