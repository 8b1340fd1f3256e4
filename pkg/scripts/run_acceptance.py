#!/usr/bin/env python3
"""Run every probe suite over the acceptance catalog and write a markdown report."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from bregkit.analysis import ProbeReport, SuiteSettings, render_markdown, run_suite  # noqa: E402
from bregkit.analysis.suites import ALL_EXCLUDES, ENTROPY_SUITES  # noqa: E402
from bregkit.config import ACCEPTANCE_DIMS, acceptance_catalog, default_seed  # noqa: E402

logger = logging.getLogger("run_acceptance")


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--output",
        default=str(ROOT / "reports" / "acceptance_report.md"),
        help="Path to write the markdown report.",
    )
    parser.add_argument("--seed", type=int, default=None, help="Sampler seed (default: $BREGKIT_SEED or 42).")
    parser.add_argument("--samples", type=int, default=10_000, help="Samples per probe.")
    parser.add_argument(
        "--dims",
        default=",".join(str(d) for d in ACCEPTANCE_DIMS),
        help="Comma-separated dimensions of the catalog.",
    )
    parser.add_argument(
        "--with-modulus",
        action="store_true",
        help="Also run the modulus suite (slow, diagnostic only).",
    )
    parser.add_argument("--verbose", action="store_true", help="Log every probe.")
    return parser.parse_args()


def ensure_parent(path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)


def run_all(settings: SuiteSettings, with_modulus: bool) -> Dict[str, List[ProbeReport]]:
    specs = acceptance_catalog(settings.dims, settings.seed)
    names = [name for name in ENTROPY_SUITES if with_modulus or name not in ALL_EXCLUDES]
    results: Dict[str, List[ProbeReport]] = {}
    for name in names + ["witness"]:
        started = time.perf_counter()
        results[name] = run_suite(name, specs, settings)
        failed = sum(not report.passed for report in results[name])
        logger.info(
            f"{name}: {len(results[name])} probes, {failed} failed, "
            f"{time.perf_counter() - started:.1f}s"
        )
    return results


def corrupted_mu_control(settings: SuiteSettings) -> List[ProbeReport]:
    """Doubling every documented mu must make some strong-convexity probe fail."""
    corrupted = SuiteSettings(
        seed=settings.seed,
        samples=settings.samples,
        tolerances=settings.tolerances,
        mu_factor=2.0,
        dims=settings.dims,
    )
    return run_suite("strong_convexity", acceptance_catalog(settings.dims, settings.seed), corrupted)


def build_report(
    args: argparse.Namespace,
    settings: SuiteSettings,
    results: Dict[str, List[ProbeReport]],
    control: List[ProbeReport],
) -> str:
    timestamp = datetime.now(timezone.utc).strftime("%Y-%m-%d %H:%M:%SZ")
    total = sum(len(reports) for reports in results.values())
    failed = sum(not report.passed for reports in results.values() for report in reports)
    control_failed = sum(not report.passed for report in control)

    lines: List[str] = []
    lines.append("# Acceptance Report")
    lines.append("")
    lines.append(f"- Generated: {timestamp}")
    lines.append(f"- Seed: {settings.seed}")
    lines.append(f"- Samples per probe: {settings.samples}")
    lines.append(f"- Dimensions: {', '.join(str(d) for d in settings.dims)}")
    lines.append(f"- Probes: {total}, failed: {failed}")
    lines.append(
        f"- Corrupted-mu control (mu x 2): {control_failed} of {len(control)} probes failed "
        f"({'detected' if control_failed else 'NOT detected'})"
    )
    lines.append("")
    lines.append("## Summary")
    lines.append("")
    lines.append("| suite | probes | failed |")
    lines.append("|---|---:|---:|")
    for name, reports in results.items():
        lines.append(f"| {name} | {len(reports)} | {sum(not r.passed for r in reports)} |")
    for name, reports in results.items():
        lines.append("")
        lines.append(f"## {name}")
        lines.append("")
        lines.append(render_markdown(reports).rstrip())
    return "\n".join(lines) + "\n"


def main() -> None:
    args = parse_args()
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    logger.setLevel(logging.INFO)
    settings = SuiteSettings(
        seed=default_seed() if args.seed is None else args.seed,
        samples=args.samples,
        dims=tuple(int(d) for d in args.dims.split(",")),
    )
    results = run_all(settings, args.with_modulus)
    control = corrupted_mu_control(settings)

    output = Path(args.output)
    ensure_parent(output)
    output.write_text(build_report(args, settings, results, control), encoding="utf-8")
    print(f"Report written to {output}")

    failed = any(not report.passed for reports in results.values() for report in reports)
    detected = any(not report.passed for report in control)
    sys.exit(0 if not failed and detected else 1)


if __name__ == "__main__":
    main()
