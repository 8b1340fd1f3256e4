"""Command-line front end: evaluate divergences, run probe suites and print witnesses."""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from .analysis.convexity import modulus_buckets, modulus_estimate, modulus_scaling_check
from .analysis.levelsets import levelset_probe
from .analysis.reports import ProbeReport, format_number, render_reports
from .analysis.sampling import Sampler
from .analysis.suites import SUITE_NAMES, run_suite
from .analysis.witnesses import hct_negq_levelset_witness, sc_failure_witness, uc_failure_witness
from .config import ENTROPY_NAMES, REPORT_FORMATS, WITNESS_KINDS, RunConfig, resolve_config
from .entropies import PairDomainSpec
from .errors import BregkitError, ConfigError
from .sets import BallSet

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

UC_KINDS = {
    "bgs-uc": "bgs",
    "burg-uc": "burg",
    "iterlog-uc": "iterlog",
    "hct-half-uc": "hct_half",
}


def _vector_text(v) -> str:
    return "[" + ", ".join(format_number(c) for c in np.asarray(v, dtype=float)) + "]"


def parse_sweep(text: str) -> np.ndarray:
    """``s1:s2:N`` (N linear points), ``s1:s2:log`` (one per decade) or ``s1:s2:logN``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"sweep must look like s1:s2:steps, got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ValueError(f"sweep bounds must be numbers, got {text!r}") from exc
    if not (math.isfinite(start) and math.isfinite(stop) and start < stop):
        raise ValueError(f"sweep needs finite s1 < s2, got {text!r}")
    steps = parts[2].strip().lower()
    if steps.startswith("log"):
        if start <= 0:
            raise ValueError("logarithmic sweeps need s1 > 0")
        count = int(steps[3:]) if steps[3:] else int(round(math.log10(stop / start))) + 1
        if count < 2:
            raise ValueError(f"sweep needs at least two points, got {text!r}")
        return np.geomspace(start, stop, count)
    try:
        count = int(steps)
    except ValueError as exc:
        raise ValueError(f"sweep steps must be an integer, 'log' or 'logN', got {steps!r}") from exc
    if count < 2:
        raise ValueError(f"sweep needs at least two points, got {text!r}")
    return np.linspace(start, stop, count)


def _emit(text: str, config: RunConfig) -> None:
    if config.out:
        Path(config.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _exit_code(reports: Sequence[ProbeReport]) -> int:
    return EXIT_OK if all(report.passed for report in reports) else EXIT_VIOLATION


# ---------------------------------------------------------------------- #
# Commands
# ---------------------------------------------------------------------- #
def cmd_eval(config: RunConfig) -> int:
    """Print the closed-form and generic divergence and their difference."""
    if config.x is None or config.y is None:
        raise ConfigError("eval needs both --x and --y", "x" if config.x is None else "y")
    spec = config.build_entropy()
    closed = spec.divergence_closed(config.x, config.y)
    generic = spec.divergence_generic(config.x, config.y)
    difference = 0.0 if closed == generic else abs(closed - generic)
    print(f"closed: {format_number(closed)}")
    print(f"generic: {format_number(generic)}")
    print(f"difference: {format_number(difference)}")
    return EXIT_OK


def cmd_check(config: RunConfig) -> int:
    """Run the selected suite; exit 1 if any probe reports a violation."""
    specs = config.build_entropies()
    reports = run_suite(config.suite, specs, config.settings())
    _emit(render_reports(reports, config.format), config)
    failures = [report.probe for report in reports if not report.passed]
    if failures:
        logger.warning(f"{len(failures)} of {len(reports)} probes failed: {', '.join(failures[:10])}")
    if config.out:
        print(f"{len(reports) - len(failures)}/{len(reports)} probes passed; report written to {config.out}")
    return _exit_code(reports)


def cmd_witness(config: RunConfig) -> int:
    """Print a witness pair, or a CSV of its divergence along a sweep of ``s``."""
    kind = config.kind or "bgs-uc"
    if kind == "hct-negq":
        if config.sweep:
            raise ConfigError("hct-negq takes no sweep", "sweep")
        if config.gamma is None or config.x is None:
            raise ConfigError("hct-negq needs --gamma and --x", "gamma" if config.gamma is None else "x")
        q = -1.0 if config.q is None else config.q
        t0 = hct_negq_levelset_witness(q, config.x, config.gamma)
        print(f"t0: {format_number(t0)}")
        return EXIT_OK

    values: List[float]
    if config.sweep:
        try:
            values = list(parse_sweep(config.sweep))
        except ValueError as exc:
            raise ConfigError(str(exc), "sweep") from exc
    elif config.s is not None:
        values = [config.s]
    else:
        raise ConfigError(f"{kind} needs --s or --sweep", "s")

    if kind == "hct-sc":
        q = 3.0 if config.q is None else config.q
        witnesses = [sc_failure_witness(q, s) for s in values]
        if config.sweep:
            rows = ["s,ratio"] + [f"{format_number(s)},{format_number(w.ratio)}" for s, w in zip(values, witnesses)]
            _emit("\n".join(rows), config)
            return EXIT_OK
        w = witnesses[0]
        print(f"x: {_vector_text(w.x)}")
        print(f"y: {_vector_text(w.y)}")
        print(f"ratio: {format_number(w.ratio)}")
        print(f"ratio_expected: {format_number(w.ratio_expected)}")
        return EXIT_OK

    uc = [uc_failure_witness(UC_KINDS[kind], s, config.dim) for s in values]
    if config.sweep:
        rows = ["s,B"] + [
            f"{format_number(w.s)},{format_number(w.spec.divergence_closed(w.x, w.y))}" for w in uc
        ]
        _emit("\n".join(rows), config)
        return EXIT_OK
    w = uc[0]
    print(f"x: {_vector_text(w.x)}")
    print(f"y: {_vector_text(w.y)}")
    print(f"B: {format_number(w.spec.divergence_closed(w.x, w.y))}")
    print(f"B_expected: {format_number(w.b_expected)}")
    print(f"distance: {format_number(w.distance)}")
    return EXIT_OK


def cmd_modulus(config: RunConfig) -> int:
    """Print the estimated modulus table as CSV, then the scaling verdict."""
    spec = config.build_entropy()
    floor = config.eps_floor or 0.0
    radius = config.radius
    if radius is None:
        radius = float(spec.norm.evaluate(spec.zone().anchor(floor))) + spec.probe_radius
    region = BallSet(spec.zone(), radius, spec.norm, floor=floor)
    pair = PairDomainSpec(region, region)
    edges = modulus_buckets(0.01 * radius, 2.0 * radius)
    sampler = Sampler(config.seed, max(config.samples, 1_000))
    table = modulus_estimate(spec, pair, edges, sampler)
    report = modulus_scaling_check(table, slack=config.settings().tolerance("modulus"))
    verdict = (
        f"# scaling: {'pass' if report.passed else 'fail'}, {report.violations} violations "
        f"in {report.samples} bucket pairs, worst margin {format_number(report.worst_margin)}"
    )
    _emit(table.to_csv() + verdict + "\n", config)
    return _exit_code([report])


def cmd_levelset(config: RunConfig) -> int:
    if config.x is None or config.gamma is None:
        raise ConfigError("levelset needs --x and --gamma", "x" if config.x is None else "gamma")
    spec = config.build_entropy()
    report = levelset_probe(
        spec,
        config.x,
        config.gamma,
        Sampler(config.seed, config.samples),
        eps_floor=config.eps_floor,
        tolerance=config.settings().tolerance("levelset"),
    )
    _emit(render_reports([report], config.format), config)
    return _exit_code([report])


COMMANDS = {
    "eval": cmd_eval,
    "check": cmd_check,
    "witness": cmd_witness,
    "modulus": cmd_modulus,
    "levelset": cmd_levelset,
}


# ---------------------------------------------------------------------- #
# Argument parsing
# ---------------------------------------------------------------------- #
def _tolerance_pair(text: str):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return name.strip(), float(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"tolerance {name!r} needs a number, got {value!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override its values.")
    common.add_argument("--entropy", help=f"One of: {', '.join(ENTROPY_NAMES)}.")
    common.add_argument("--q", type=float, help="HCT index q.")
    common.add_argument("--beta", type=float, help="Beta / AlphaBeta parameter beta.")
    common.add_argument("--alpha", type=float, help="AlphaBeta parameter alpha.")
    common.add_argument("--p", type=float, help="L2Lp exponent p.")
    common.add_argument("--dim", type=int, help="Dimension n.")
    common.add_argument("--norm", help="Ambient norm, lp:P or mixed:K.")
    common.add_argument("--pairs", type=int, help="Coordinate pairs of the l2-type entropy.")
    common.add_argument("--n-split", dest="n_split", type=int, help="l1 pairs of the l2-type entropy.")
    common.add_argument("--seed", type=int, help="Sampler seed (default: $BREGKIT_SEED or 42).")
    common.add_argument("--samples", type=int, help="Samples per probe.")
    common.add_argument("--eps-floor", dest="eps_floor", type=float, help="Coordinate floor for certificates and gauges.")
    common.add_argument("--format", choices=REPORT_FORMATS, help="Report format.")
    common.add_argument("--out", help="Write the report here instead of stdout.")
    common.add_argument("-v", "--verbose", action="store_true", default=None, help="Log probe progress to stderr.")

    parser = argparse.ArgumentParser(prog="bregkit", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True)

    eval_parser = commands.add_parser("eval", parents=[common], help="Evaluate B(x, y) both ways.")
    eval_parser.add_argument("--x", help="Comma-separated point x.")
    eval_parser.add_argument("--y", help="Comma-separated point y.")

    check = commands.add_parser("check", parents=[common], help="Run a probe suite.")
    check.add_argument("--suite", choices=SUITE_NAMES, help="Suite to run (default: all).")
    check.add_argument("--mu-factor", dest="mu_factor", type=float, help="Multiply documented mu before checking.")
    check.add_argument(
        "--tolerance",
        dest="tolerances",
        action="append",
        type=_tolerance_pair,
        metavar="NAME=VALUE",
        help="Override one probe tolerance; repeatable.",
    )

    witness = commands.add_parser("witness", parents=[common], help="Print a failure witness.")
    witness.add_argument("--kind", choices=WITNESS_KINDS, help="Witness family (default: bgs-uc).")
    witness.add_argument("--s", type=float, help="Witness parameter (eps or y1 for hct-sc).")
    witness.add_argument("--sweep", help="s1:s2:N, s1:s2:log or s1:s2:logN.")
    witness.add_argument("--gamma", type=float, help="Level for hct-negq.")
    witness.add_argument("--x", help="Point x for hct-negq.")

    modulus = commands.add_parser("modulus", parents=[common], help="Estimate the modulus of uniform convexity.")
    modulus.add_argument("--radius", type=float, help="Radius M of the ball the pairs are drawn from.")

    levelset = commands.add_parser("levelset", parents=[common], help="Probe the diameter of a level set.")
    levelset.add_argument("--x", help="Comma-separated centre x.")
    levelset.add_argument("--gamma", type=float, help="Level gamma.")
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    values = dict(vars(args))
    values.pop("command", None)
    values.pop("config", None)
    if values.get("tolerances"):
        values["tolerances"] = dict(values["tolerances"])
    return values


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = resolve_config(args.config, _overrides(args))
        return COMMANDS[args.command](config)
    except ConfigError as exc:
        print(f"bregkit: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BregkitError as exc:
        print(f"bregkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"bregkit: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
