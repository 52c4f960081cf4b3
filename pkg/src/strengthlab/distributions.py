"""Distribution objects with explicit additivity discipline.

Forms: finite pmf, normal, uniform, piecewise-linear cdf, and a tag-only
improper flat pseudo-distribution. Every distribution is attached to a named
variable and carries an additivity mode. A fully additive distribution
behaves classically. A semi-additive one records that only the explicitly
assigned masses are endorsed; consequences that require additivity across
the board (marginalizing a joint, in particular) are refused unless the
caller overrides.

Finite pmf masses may be exact rationals; they survive JSON round trips as
numerator/denominator strings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from scipy.special import ndtr, ndtri

from .errors import (
    DistributionFormError,
    DomainError,
    SemiAdditiveRefusal,
    UnauthorizedConditioning,
    UnsupportedFormError,
    ZeroMassConditioning,
)
from .levels import Num, level_doc, level_key, parse_level_doc

FULLY_ADDITIVE = "fully-additive"
SEMI_ADDITIVE = "semi-additive"

FINITE_PMF = "finite-pmf"
NORMAL = "normal"
UNIFORM = "uniform"
PIECEWISE_CDF = "piecewise-cdf"
IMPROPER_FLAT = "improper-flat"

_MASS_TOL = 1e-12


@dataclass(frozen=True)
class Distribution:
    """One-dimensional distribution over a named variable."""

    variable: str
    form: str
    support: tuple = ()
    masses: tuple = ()
    mean: float | None = None
    var: float | None = None
    lo: float | None = None
    hi: float | None = None
    knots_x: tuple = ()
    knots_p: tuple = ()
    mode: str = FULLY_ADDITIVE
    method: str | None = None
    note: str | None = None

    # -- basic properties ----------------------------------------------------

    @property
    def is_discrete(self) -> bool:
        return self.form == FINITE_PMF

    @property
    def is_proper(self) -> bool:
        return self.form != IMPROPER_FLAT

    def support_bounds(self) -> tuple[float, float]:
        if self.form == NORMAL:
            return (-math.inf, math.inf)
        if self.form == UNIFORM:
            return (self.lo, self.hi)
        if self.form == PIECEWISE_CDF:
            return (self.knots_x[0], self.knots_x[-1])
        if self.form == FINITE_PMF:
            vals = sorted(self.support)
            return (vals[0], vals[-1])
        raise UnsupportedFormError(
            "an improper flat tag has no support bounds", detail=self.variable
        )

    # -- evaluation ------------------------------------------------------------

    def _require_proper(self) -> None:
        if not self.is_proper:
            raise UnsupportedFormError(
                "improper flat pseudo-distribution cannot be evaluated; it is "
                "only a tag for limit checks",
                detail=self.variable,
            )

    def mass(self, x) -> Num:
        """Point mass (finite pmf) or density (continuous forms)."""
        self._require_proper()
        if self.form == FINITE_PMF:
            for v, m in zip(self.support, self.masses):
                if v == x:
                    return m
            return 0
        if self.form == NORMAL:
            z = (x - self.mean) ** 2 / (2 * self.var)
            return math.exp(-z) / math.sqrt(2 * math.pi * self.var)
        if self.form == UNIFORM:
            return 1.0 / (self.hi - self.lo) if self.lo <= x < self.hi else 0.0
        xs = np.asarray(self.knots_x)
        idx = int(np.searchsorted(xs, x, side="right"))
        if idx <= 0 or idx >= len(xs):
            return 0.0
        dx = self.knots_x[idx] - self.knots_x[idx - 1]
        dp = self.knots_p[idx] - self.knots_p[idx - 1]
        return dp / dx if dx > 0 else math.inf

    def cdf(self, x) -> float:
        self._require_proper()
        if self.form == FINITE_PMF:
            total = Fraction(0)
            for v, m in zip(self.support, self.masses):
                if v <= x:
                    total = total + m
            return total
        if self.form == NORMAL:
            return float(ndtr((x - self.mean) / math.sqrt(self.var)))
        if self.form == UNIFORM:
            if x <= self.lo:
                return 0.0
            if x >= self.hi:
                return 1.0
            return (x - self.lo) / (self.hi - self.lo)
        # Outside the knot span the cdf is flat 0 / 1; any leftover knot-edge
        # probability is treated as an atom at the boundary knot.
        if x < self.knots_x[0]:
            return 0.0
        if x > self.knots_x[-1]:
            return 1.0
        return float(np.interp(x, self.knots_x, self.knots_p))

    def quantile(self, u: float):
        """Generalized inverse cdf: least x with cdf(x) >= u."""
        self._require_proper()
        uf = float(u)
        if not 0 <= uf <= 1:
            raise DomainError(f"quantile argument {u!r} outside [0, 1]")
        if self.form == FINITE_PMF:
            total = Fraction(0)
            ordered = sorted(zip(self.support, self.masses), key=lambda p: p[0])
            uk = level_key(u)
            for v, m in ordered:
                total = total + m
                if total >= uk:
                    return v
            return ordered[-1][0]
        if self.form == NORMAL:
            return self.mean + math.sqrt(self.var) * float(ndtri(uf))
        if self.form == UNIFORM:
            return self.lo + uf * (self.hi - self.lo)
        return float(np.interp(uf, self.knots_p, self.knots_x))

    def interval_mass(self, intervals: Iterable[Sequence[float]]) -> float:
        """Probability of a union of disjoint intervals (continuous forms)."""
        self._require_proper()
        total = 0.0
        for lo, hi in intervals:
            total += self.cdf(hi) - self.cdf(lo)
        return total

    # -- conversions -------------------------------------------------------------

    def to_piecewise(
        self, knots: int = 512, q_lo: float = 0.001, q_hi: float = 0.999
    ) -> "Distribution":
        """Piecewise-linear cdf approximation on a quantile-spanned grid.

        The approximation's cdf runs exactly from 0 to 1 over the traced
        span: tail mass beyond the clipping quantiles is folded into the
        outermost segments rather than left as endpoint atoms, so the result
        is a proper continuous distribution in its own right.
        """
        self._require_proper()
        if self.form == FINITE_PMF:
            raise UnsupportedFormError("finite pmf has no continuous cdf to trace")
        if self.form == PIECEWISE_CDF:
            return self
        if knots < 3:
            raise DomainError("need at least three knots")
        ps = np.linspace(0.0, 1.0, knots)
        xs = [self.quantile(float(min(max(p, q_lo), q_hi))) for p in ps]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise DomainError(
                "clipping quantiles are too wide for the knot count; "
                "knot positions collided"
            )
        return piecewise_cdf(self.variable, xs, [float(p) for p in ps], mode=self.mode)

    # -- interchange ----------------------------------------------------------------

    def to_doc(self) -> dict:
        doc: dict = {"variable": self.variable, "form": self.form, "mode": self.mode}
        if self.form == FINITE_PMF:
            doc["support"] = list(self.support)
            doc["masses"] = [level_doc(m) for m in self.masses]
        elif self.form == NORMAL:
            doc["mean"] = float(self.mean)
            doc["var"] = float(self.var)
        elif self.form == UNIFORM:
            doc["lo"] = float(self.lo)
            doc["hi"] = float(self.hi)
        elif self.form == PIECEWISE_CDF:
            doc["x"] = [float(v) for v in self.knots_x]
            doc["p"] = [float(v) for v in self.knots_p]
        if self.method:
            doc["method"] = self.method
        if self.note:
            doc["note"] = self.note
        return doc

    @staticmethod
    def from_doc(doc: dict) -> "Distribution":
        form = doc.get("form")
        variable = doc.get("variable", "x")
        mode = doc.get("mode", FULLY_ADDITIVE)
        method = doc.get("method")
        note = doc.get("note")
        if form == FINITE_PMF:
            masses = [parse_level_doc(m) for m in doc["masses"]]
            return finite_pmf(
                variable, doc["support"], masses, mode=mode, method=method, note=note
            )
        if form == NORMAL:
            return normal(variable, doc["mean"], doc["var"], mode=mode, method=method, note=note)
        if form == UNIFORM:
            return uniform(variable, doc["lo"], doc["hi"], mode=mode, method=method, note=note)
        if form == PIECEWISE_CDF:
            return piecewise_cdf(variable, doc["x"], doc["p"], mode=mode, method=method, note=note)
        if form == IMPROPER_FLAT:
            return improper_flat(variable, method=method, note=note)
        raise DistributionFormError(f"unknown distribution form {form!r}")

    def canonical_key(self) -> str:
        """Deterministic identity string for deduplication and caching.

        Exact and floating masses that denote the same number map to the
        same key, and the key survives JSON round trips of session files.
        """

        def num(x):
            return None if x is None else float(x)

        return repr(
            (
                self.variable,
                self.form,
                self.support,
                tuple(str(level_key(m)) for m in self.masses),
                num(self.mean),
                num(self.var),
                num(self.lo),
                num(self.hi),
                tuple(num(x) for x in self.knots_x),
                tuple(num(p) for p in self.knots_p),
                self.mode,
            )
        )


# -- constructors ---------------------------------------------------------------


def finite_pmf(
    variable: str,
    support: Sequence,
    masses: Sequence[Num],
    mode: str = FULLY_ADDITIVE,
    method: str | None = None,
    note: str | None = None,
) -> Distribution:
    if len(support) != len(masses) or not support:
        raise DistributionFormError("support and masses must align and be nonempty")
    if len(set(support)) != len(support):
        raise DistributionFormError("support values must be distinct")
    vals = tuple(masses)
    for m in vals:
        if m < 0:
            raise DistributionFormError(f"negative mass {m!r}")
    total = sum(vals)
    if abs(float(total) - 1.0) > _MASS_TOL:
        raise DistributionFormError(f"masses sum to {float(total)!r}, not 1")
    _check_mode(mode)
    return Distribution(
        variable=variable,
        form=FINITE_PMF,
        support=tuple(support),
        masses=vals,
        mode=mode,
        method=method,
        note=note,
    )


def normal(
    variable: str,
    mean: float,
    var: float,
    mode: str = FULLY_ADDITIVE,
    method: str | None = None,
    note: str | None = None,
) -> Distribution:
    if not var > 0:
        raise DistributionFormError(f"normal variance must be positive, got {var!r}")
    _check_mode(mode)
    return Distribution(
        variable=variable,
        form=NORMAL,
        mean=float(mean),
        var=float(var),
        mode=mode,
        method=method,
        note=note,
    )


def uniform(
    variable: str,
    lo: float,
    hi: float,
    mode: str = FULLY_ADDITIVE,
    method: str | None = None,
    note: str | None = None,
) -> Distribution:
    if not hi > lo:
        raise DistributionFormError("uniform needs hi > lo")
    _check_mode(mode)
    return Distribution(
        variable=variable,
        form=UNIFORM,
        lo=float(lo),
        hi=float(hi),
        mode=mode,
        method=method,
        note=note,
    )


def piecewise_cdf(
    variable: str,
    x: Sequence[float],
    p: Sequence[float],
    mode: str = FULLY_ADDITIVE,
    method: str | None = None,
    note: str | None = None,
) -> Distribution:
    xs = tuple(float(v) for v in x)
    ps = tuple(float(v) for v in p)
    if len(xs) != len(ps) or len(xs) < 2:
        raise DistributionFormError("piecewise cdf needs aligned knots, at least two")
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise DistributionFormError("knot positions must be strictly increasing")
    if any(b < a - 1e-15 for a, b in zip(ps, ps[1:])):
        raise DistributionFormError("cdf values must be nondecreasing")
    if ps[0] < 0 or ps[-1] > 1 + 1e-12:
        raise DistributionFormError("cdf values must lie in [0, 1]")
    _check_mode(mode)
    return Distribution(
        variable=variable,
        form=PIECEWISE_CDF,
        knots_x=xs,
        knots_p=ps,
        mode=mode,
        method=method,
        note=note,
    )


def improper_flat(
    variable: str, method: str | None = None, note: str | None = None
) -> Distribution:
    """A flat pseudo-distribution usable only as a tag in limit arguments."""
    return Distribution(
        variable=variable,
        form=IMPROPER_FLAT,
        mode=FULLY_ADDITIVE,
        method=method,
        note=note,
    )


def _check_mode(mode: str) -> None:
    if mode not in (FULLY_ADDITIVE, SEMI_ADDITIVE):
        raise DistributionFormError(f"unknown additivity mode {mode!r}")


def evaluate(dist: Distribution, kind: str, argument: float):
    """Functional evaluation entry point used by the CLI and gateway."""
    if kind in ("mass", "density"):
        return dist.mass(argument)
    if kind == "cdf":
        return dist.cdf(argument)
    if kind == "quantile":
        return dist.quantile(argument)
    raise DomainError(f"unknown evaluation kind {kind!r}")


# ---------------------------------------------------------------------------
# Joint distributions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JointDistribution:
    """A two-variable joint: finite table or bivariate normal."""

    variables: tuple[str, str]
    form: str  # "table" | "binormal"
    row_support: tuple = ()
    col_support: tuple = ()
    table: tuple = ()  # tuple of row tuples of masses
    means: tuple = ()
    cov: tuple = ()  # ((v11, v12), (v12, v22))
    mode: str = FULLY_ADDITIVE

    @staticmethod
    def from_table(
        variables: Sequence[str],
        row_support: Sequence,
        col_support: Sequence,
        table: Sequence[Sequence[Num]],
        mode: str = FULLY_ADDITIVE,
    ) -> "JointDistribution":
        _check_mode(mode)
        rows = tuple(tuple(r) for r in table)
        if len(rows) != len(row_support) or any(
            len(r) != len(col_support) for r in rows
        ):
            raise DistributionFormError("table shape does not match supports")
        total = sum(sum(r) for r in rows)
        if any(m < 0 for r in rows for m in r):
            raise DistributionFormError("table masses must be nonnegative")
        if abs(float(total) - 1.0) > _MASS_TOL:
            raise DistributionFormError(f"table masses sum to {float(total)!r}")
        return JointDistribution(
            variables=tuple(variables),
            form="table",
            row_support=tuple(row_support),
            col_support=tuple(col_support),
            table=rows,
            mode=mode,
        )

    @staticmethod
    def binormal(
        variables: Sequence[str],
        means: Sequence[float],
        cov: Sequence[Sequence[float]],
        mode: str = FULLY_ADDITIVE,
    ) -> "JointDistribution":
        _check_mode(mode)
        (v11, v12), (v21, v22) = cov
        if abs(v12 - v21) > 1e-12:
            raise DistributionFormError("covariance matrix must be symmetric")
        if v11 <= 0 or v22 <= 0 or v11 * v22 - v12 * v12 <= 0:
            raise DistributionFormError("covariance matrix must be positive definite")
        return JointDistribution(
            variables=tuple(variables),
            form="binormal",
            means=(float(means[0]), float(means[1])),
            cov=((float(v11), float(v12)), (float(v12), float(v22))),
            mode=mode,
        )

    def axis_of(self, variable: str) -> int:
        try:
            return self.variables.index(variable)
        except ValueError:
            raise DomainError(
                f"variable {variable!r} is not part of this joint"
            ) from None

    def to_doc(self) -> dict:
        doc: dict = {"variables": list(self.variables), "form": self.form, "mode": self.mode}
        if self.form == "table":
            doc["row_support"] = list(self.row_support)
            doc["col_support"] = list(self.col_support)
            doc["table"] = [[level_doc(m) for m in row] for row in self.table]
        else:
            doc["means"] = list(self.means)
            doc["cov"] = [list(r) for r in self.cov]
        return doc

    @staticmethod
    def from_doc(doc: dict) -> "JointDistribution":
        if doc.get("form") == "table":
            return JointDistribution.from_table(
                doc["variables"],
                doc["row_support"],
                doc["col_support"],
                [[parse_level_doc(m) for m in row] for row in doc["table"]],
                mode=doc.get("mode", FULLY_ADDITIVE),
            )
        if doc.get("form") == "binormal":
            return JointDistribution.binormal(
                doc["variables"],
                doc["means"],
                doc["cov"],
                mode=doc.get("mode", FULLY_ADDITIVE),
            )
        raise DistributionFormError(f"unknown joint form {doc.get('form')!r}")


def marginalize(
    joint: JointDistribution, keep: str, override: bool = False
) -> Distribution:
    """Sum or integrate out the other variable.

    Under semi-additive mode this is refused: aggregating unendorsed masses
    manufactures additivity the assigner never claimed. Pass ``override=True``
    to compute the classical marginal anyway.
    """
    if joint.mode == SEMI_ADDITIVE and not override:
        raise SemiAdditiveRefusal(
            "joint is semi-additive; derived marginals are not endorsed "
            "(pass override=True to force the classical computation)",
            detail={"variable": keep},
        )
    axis = joint.axis_of(keep)
    if joint.form == "table":
        if axis == 0:
            support = joint.row_support
            masses = [sum(row) for row in joint.table]
        else:
            support = joint.col_support
            masses = [sum(col) for col in zip(*joint.table)]
        return finite_pmf(keep, support, masses)
    mean = joint.means[axis]
    var = joint.cov[axis][axis]
    return normal(keep, mean, var)


def condition(
    joint: JointDistribution,
    on: str,
    value,
    authorized: bool = False,
) -> Distribution:
    """Distribution of the other variable given ``on == value``.

    Conditioning silently reweights every assignment, so it must be
    explicitly authorized by the caller.
    """
    if not authorized:
        raise UnauthorizedConditioning(
            "conditioning must be explicitly authorized (authorized=True)",
            detail={"on": on},
        )
    axis = joint.axis_of(on)
    keep = joint.variables[1 - axis]
    if joint.form == "table":
        obs_support = joint.row_support if axis == 0 else joint.col_support
        if value not in obs_support:
            raise DomainError(f"value {value!r} not in the support of {on!r}")
        idx = obs_support.index(value)
        if axis == 0:
            slice_masses = list(joint.table[idx])
            support = joint.col_support
        else:
            slice_masses = [row[idx] for row in joint.table]
            support = joint.row_support
        total = sum(slice_masses)
        if total == 0:
            raise ZeroMassConditioning(
                f"conditioning event {on}={value!r} has zero mass"
            )
        return finite_pmf(keep, support, [m / total for m in slice_masses])
    mu1 = joint.means[1 - axis]
    mu2 = joint.means[axis]
    v11 = joint.cov[1 - axis][1 - axis]
    v22 = joint.cov[axis][axis]
    v12 = joint.cov[0][1]
    mean = mu1 + v12 / v22 * (float(value) - mu2)
    var = v11 - v12 * v12 / v22
    return normal(keep, mean, var)


def marginal_consistency(
    joint: JointDistribution, keep: str, direct: Distribution
) -> dict:
    """Report how a directly assigned marginal compares with the derived one.

    No arbitration: both objects stay valid, the report only quantifies the
    disagreement so a user can decide which assignment to revise.
    """
    derived = marginalize(joint, keep, override=True)
    report: dict = {
        "variable": keep,
        "joint_mode": joint.mode,
        "direct_form": direct.form,
        "derived_form": derived.form,
    }
    if derived.form == FINITE_PMF and direct.form == FINITE_PMF:
        keys = sorted(set(derived.support) | set(direct.support), key=repr)
        gaps = []
        worst = 0.0
        for v in keys:
            a = float(direct.mass(v))
            b = float(derived.mass(v))
            if abs(a - b) > 1e-12:
                gaps.append({"outcome": v, "direct": a, "derived": b})
            worst = max(worst, abs(a - b))
        report["max_mass_gap"] = worst
        report["disagreements"] = gaps
        report["consistent"] = worst <= 1e-9
    else:
        lo = min(derived.quantile(0.001), direct.quantile(0.001))
        hi = max(derived.quantile(0.999), direct.quantile(0.999))
        xs = np.linspace(lo, hi, 513)
        worst = max(abs(derived.cdf(x) - direct.cdf(x)) for x in xs)
        report["max_cdf_gap"] = float(worst)
        report["consistent"] = worst <= 1e-9
    return report
