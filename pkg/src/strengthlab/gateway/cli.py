"""Command-line face of the library.

Verdicts printed with ``--json`` are canonical JSON, byte-identical to what
the HTTP endpoints return for the same request. Exit codes: 0 success,
2 usage error (argparse), 1 domain error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from ..distributions import Distribution
from ..elicitation import (
    SessionConfig,
    SyntheticAgent,
    VariableSpec,
    pmf_total_variation,
    run_agent_session,
)
from ..errors import DomainError, StrengthLabError
from ..events import Event
from ..jsoncodec import canonical_dumps, canonical_loads
from ..levels import level_key
from ..similarity import DIRECT
from . import ops
from .storage import SessionStore

log = logging.getLogger("strengthlab")

_ADDR_ENV = "STRENGTHLAB_ADDR"
_STORE_ENV = "STRENGTHLAB_STORE"
_LOG_ENV = "STRENGTHLAB_LOG"


def _read_doc(path: str):
    if path == "-":
        return json.load(sys.stdin)
    return canonical_loads(Path(path).read_bytes())


def _default_store() -> str:
    return os.environ.get(_STORE_ENV, "./sessions")


def _emit(args, doc: dict, human: str) -> None:
    if args.json:
        print(canonical_dumps(doc))
    else:
        print(human)


# -- simulate -------------------------------------------------------------------


def _fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"{what} {text!r} is not a number") from exc


def _parse_event(args) -> dict:
    spec = args.event
    try:
        if args.wheel:
            intervals = []
            for part in spec.split(";"):
                lo, _, hi = part.partition(",")
                if not hi:
                    raise DomainError(
                        f"interval {part!r} must be 'lo,hi'; separate intervals with ';'"
                    )
                intervals.append([Fraction(lo.strip()), Fraction(hi.strip())])
            return Event.continuous(intervals).to_doc()
        outcomes = [
            int(tok) for tok in spec.replace(";", ",").split(",") if tok.strip()
        ]
        return Event.discrete(args.urn, outcomes).to_doc()
    except ValueError as exc:
        raise DomainError(f"malformed event spec {spec!r}: {exc}") from exc


def _cmd_simulate(args) -> int:
    doc = {
        "event": _parse_event(args),
        "trials": args.trials,
        "seed": args.seed,
    }
    if args.wheel:
        doc["wheel"] = True
    else:
        doc["urn"] = args.urn
    out = ops.trials_report(doc)
    _emit(
        args,
        out,
        f"frequency {out['freq']:.6f} over {out['n']} trials "
        f"(exact {out['exact']}, error {out['error']:+.3g})",
    )
    return 0


# -- compare -----------------------------------------------------------------------


def _comparison_doc(args) -> dict:
    judgments = []
    if args.judgments:
        jdoc = _read_doc(args.judgments)
        judgments = jdoc["judgments"] if isinstance(jdoc, dict) else jdoc
    doc = {
        "left": _read_doc(args.left),
        "right": _read_doc(args.right),
        "judgments": judgments,
        "refset": args.refset,
    }
    if args.method:
        doc["method"] = args.method
    if args.methods_left:
        doc["methods_left"] = args.methods_left.split(",")
    if args.methods_right:
        doc["methods_right"] = args.methods_right.split(",")
    return doc


def _cmd_compare(args) -> int:
    doc = _comparison_doc(args)
    kind = "external" if args.external else "internal"
    if args.sensitivity:
        doc["kind"] = kind
        if args.grid:
            doc["grid"] = [str(level_key(tok)) for tok in args.grid.split(",")]
        out = ops.sensitivity_report(doc)
        flips = out["flips"]
        human = (
            f"stable: every level agrees ({out['rows'][0]['relation']})"
            if out["stable"]
            else f"{len(flips)} flip(s): "
            + "; ".join(f"{f['from']}->{f['to']} at {f['to_level']}" for f in flips)
        )
        _emit(args, out, human)
        return 0
    if args.level is None:
        raise DomainError("compare needs --lambda unless --sensitivity is given")
    doc["kind"] = kind
    doc["level"] = str(level_key(args.level))
    out = ops.comparison_verdict(doc)
    cov = out["coverage"]
    _emit(
        args,
        out,
        f"{out['relation']} at level {out['level']} ({out['kind']}; "
        f"coverage {cov['derivable']}/{cov['required']} via {cov['mode']})",
    )
    return 0


# -- elicit-agent ----------------------------------------------------------------------


def _cmd_elicit_agent(args) -> int:
    latent = Distribution.from_doc(_read_doc(args.latent))
    if not latent.is_discrete:
        raise DomainError("the agent hill climb needs a finite-pmf latent")
    spec = VariableSpec(
        name=latent.variable, kind="discrete", outcomes=tuple(latent.support)
    )
    if args.start == "uniform":
        start = None
    else:
        start = Distribution.from_doc(_read_doc(args.start))
    config = None
    if args.levels:
        config = SessionConfig(
            method=DIRECT,
            levels=tuple(level_key(tok) for tok in args.levels.split(",")),
        )
    agent = SyntheticAgent(
        latent=latent,
        resolution=_fraction(args.resolution, "resolution"),
        shrink=_fraction(args.shrink, "shrink"),
    )
    session, report = run_agent_session(
        agent, spec, start=start, config=config, step=_fraction(args.step, "step")
    )
    tv = pmf_total_variation(report.final, latent)
    out = report.to_doc()
    out["tv_to_latent"] = float(tv)
    out["tv_tol"] = args.tv_tol
    out["within_tol"] = float(tv) <= args.tv_tol
    if args.store:
        SessionStore(args.store).create(session)
        out["stored"] = args.store
    verdict = "within" if out["within_tol"] else "OUTSIDE"
    _emit(
        args,
        out,
        f"converged after {report.proposals} proposals "
        f"({report.accepted} accepted, {report.questions} questions); "
        f"TV to latent {float(tv):.4f} {verdict} tolerance {args.tv_tol}",
    )
    return 0


# -- fiducial-demo ---------------------------------------------------------------------


def _cmd_fiducial_demo(args) -> int:
    doc = {"n": args.n, "xbar": args.xbar, "level": args.level}
    if args.sigma is not None:
        doc["sigma"] = args.sigma
    if args.variance is not None:
        doc["variance"] = args.variance
    out = ops.fiducial_demo_report(doc)
    if args.json:
        print(canonical_dumps(out))
        return 0
    lo, hi = out["interval"]
    fid = out["fiducial"]
    print(
        f"post-data distribution: normal(mean={fid['mean']:g}, var={fid['var']:g})"
    )
    print(f"central {args.level:g} interval: ({lo:.4f}, {hi:.4f})")
    ladder = out["ladder_report"]
    for row in ladder["rows"]:
        print(
            f"  prior var {row['prior_var']:>12g} -> max cdf gap "
            f"{row['max_cdf_gap']:.3g}"
        )
    trend = "shrinks toward it" if ladder["decreasing"] else "DOES NOT shrink"
    print(
        f"the diffuse-prior posterior {trend}; final gap {ladder['final_gap']:.3g}"
    )
    return 0


# -- export / import ----------------------------------------------------------------------


def _cmd_export(args) -> int:
    raw = SessionStore(args.store).export_bytes(args.session_id)
    if args.out and args.out != "-":
        Path(args.out).write_bytes(raw)
    else:
        sys.stdout.buffer.write(raw)
        sys.stdout.buffer.write(b"\n")
    return 0


def _cmd_import(args) -> int:
    raw = sys.stdin.buffer.read() if args.file == "-" else Path(args.file).read_bytes()
    header = SessionStore(args.store).import_bytes(raw)
    _emit(args, header, f"imported session {header['id']} at version {header['version']}")
    return 0


# -- serve ------------------------------------------------------------------------------


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    host, _, port = args.addr.rpartition(":")
    if not host:
        raise DomainError(f"--addr must be host:port, got {args.addr!r}")
    app = create_app(SessionStore(args.store), cors_origin=args.cors)
    uvicorn.run(
        app,
        host=host,
        port=int(port),
        log_level=os.environ.get(_LOG_ENV, "warning").lower(),
    )
    return 0


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strengthlab",
        description="similarity-graded probability workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run seeded trials of an experiment")
    kind = sim.add_mutually_exclusive_group(required=True)
    kind.add_argument("--urn", type=int, help="urn size k")
    kind.add_argument("--wheel", action="store_true", help="unit wheel spin")
    sim.add_argument(
        "--event",
        required=True,
        help="urn outcomes '1,2,3' or wheel intervals 'lo,hi[;lo,hi...]'",
    )
    sim.add_argument("-n", "--trials", type=int, default=1000)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--json", action="store_true")
    sim.set_defaults(fn=_cmd_simulate)

    cmp_ = sub.add_parser("compare", help="strength comparison from files")
    mode = cmp_.add_mutually_exclusive_group(required=True)
    mode.add_argument("--internal", action="store_true")
    mode.add_argument("--external", action="store_true")
    cmp_.add_argument("left", help="left distribution document")
    cmp_.add_argument("right", help="right distribution document")
    cmp_.add_argument("--judgments", help="judgment list document")
    cmp_.add_argument("--lambda", dest="level", help="resolution level")
    cmp_.add_argument("--method", help="layer for internal comparisons")
    cmp_.add_argument("--methods-left", help="comma list for external comparisons")
    cmp_.add_argument("--methods-right", help="comma list for external comparisons")
    cmp_.add_argument("--refset", default="R")
    cmp_.add_argument(
        "--sensitivity",
        action="store_true",
        help="replay over a level grid instead of one level",
    )
    cmp_.add_argument("--grid", help="comma list of levels for --sensitivity")
    cmp_.add_argument("--json", action="store_true")
    cmp_.set_defaults(fn=_cmd_compare)

    eag = sub.add_parser(
        "elicit-agent", help="run an elicitation session against a synthetic agent"
    )
    eag.add_argument("--latent", required=True, help="latent pmf document")
    eag.add_argument("--start", default="uniform", help="'uniform' or a pmf document")
    eag.add_argument("--tv-tol", type=float, default=0.02)
    eag.add_argument("--step", default="1/100", help="transfer step as a fraction")
    eag.add_argument("--resolution", default="1/1000", help="agent discrimination band")
    eag.add_argument("--shrink", default="0", help="agent ambiguity discount")
    eag.add_argument("--levels", help="comma list of session levels")
    eag.add_argument("--store", help="persist the finished session here")
    eag.add_argument("--json", action="store_true")
    eag.set_defaults(fn=_cmd_elicit_agent)

    fid = sub.add_parser("fiducial-demo", help="known-variance mean inference numbers")
    fid.add_argument("--n", type=int, required=True)
    fid.add_argument("--sigma", type=float)
    fid.add_argument("--variance", type=float)
    fid.add_argument("--xbar", type=float, required=True)
    fid.add_argument("--level", type=float, default=0.95)
    fid.add_argument("--json", action="store_true")
    fid.set_defaults(fn=_cmd_fiducial_demo)

    exp = sub.add_parser("export", help="write a session file's canonical bytes")
    exp.add_argument("session_id")
    exp.add_argument("--store", default=_default_store())
    exp.add_argument("--out", help="output file, '-' or absent for stdout")
    exp.add_argument("--json", action="store_true")
    exp.set_defaults(fn=_cmd_export)

    imp = sub.add_parser("import", help="install an exported session file")
    imp.add_argument("file", help="input file or '-' for stdin")
    imp.add_argument("--store", default=_default_store())
    imp.add_argument("--json", action="store_true")
    imp.set_defaults(fn=_cmd_import)

    srv = sub.add_parser("serve", help="run the HTTP service")
    srv.add_argument(
        "--addr", default=os.environ.get(_ADDR_ENV, "127.0.0.1:8000")
    )
    srv.add_argument("--store", default=_default_store())
    srv.add_argument("--cors", help="allowed CORS origin(s), comma separated")
    srv.add_argument("--json", action="store_true")
    srv.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get(_LOG_ENV, "WARNING").upper())
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except StrengthLabError as exc:
        if getattr(args, "json", False):
            print(canonical_dumps(exc.to_doc()), file=sys.stderr)
        else:
            print(f"error [{exc.code}]: {exc.message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
