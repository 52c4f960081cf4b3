"""Two routes to a distribution for an unknown normal mean.

With n draws of known noise, the pivot mu = xbar - sigma/sqrt(n) * gamma
turns the sampling distribution into a distribution for mu directly; a
flat-prior posterior reaches the same normal as a limit of ever-wider
proper priors. The two derivations agree numerically, yet they are not
equally well supported: replaying the recorded judgment ledger through
the strength engine ranks the pivot-based derivation higher.
"""

from strengthlab.distributions import normal
from strengthlab.fiducial import (
    BAYESIAN,
    FIDUCIAL,
    POSTERIOR_LIMIT,
    FiducialModel,
    bayes_posterior,
    build_ledger_fixture,
    central_interval,
    coverage_check,
    fiducial_distribution,
    improper_limit_check,
)
from strengthlab.strength import best_reasoning_method


def main() -> None:
    model = FiducialModel(n=25, variance=4.0)
    fid = fiducial_distribution(model, xbar=10.0)
    print("pivot distribution for mu: normal(mean=%.4f, var=%.4f)" % (fid.mean, fid.var))
    lo, hi = central_interval(fid, 0.95)
    print("95%% central interval: (%.4f, %.4f)" % (lo, hi))

    # Widening a proper normal prior drives the posterior to the same law.
    print("\nposterior distance from the pivot law as the prior widens")
    ladder = improper_limit_check(model, xbar=10.0)
    for row in ladder["rows"]:
        print(
            "  prior var %10.0f -> posterior mean %.6f, max CDF gap %.2e"
            % (row["prior_var"], row["posterior_mean"], row["max_cdf_gap"])
        )
    print("gaps decreasing:", ladder["decreasing"])

    wide = normal("mu", 0.0, 1e6 * model.variance)
    post = bayes_posterior(wide, model, xbar=10.0)
    print("widest-prior posterior: normal(%.6f, %.6f)" % (post.mean, post.var))

    rep = coverage_check(model, mu_true=10.0, level=0.95, replications=10_000, seed=0)
    print("\ninterval coverage over %d replications: %.4f" % (rep["replications"], rep["coverage"]))

    # The recorded ledger, replayed through the generic engine. Nothing in
    # the engine knows which derivation "should" win.
    ledger = build_ledger_fixture()
    lam = ledger.grid[len(ledger.grid) // 2]
    family = ledger.family(POSTERIOR_LIMIT, lam)
    verdict = best_reasoning_method(family, ledger.store, FIDUCIAL, BAYESIAN)
    print("\npivot derivation vs flat-prior derivation on the same conclusion")
    print("  verdict:", verdict.relation)


if __name__ == "__main__":
    main()
