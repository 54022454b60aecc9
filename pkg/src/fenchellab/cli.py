"""Command-line entry point for reproducible verification runs.

Each subcommand wires one pipeline from :mod:`fenchellab.suite` (or all of
them) into a run that writes ``report.json`` plus one CSV per plot-ready
quantity into the output directory and prints one line per check.

Exit codes: 0 when every check passes, 1 when at least one check fails,
2 for usage or configuration errors (unknown command, malformed JSON
config, bad flag values).

Config file (JSON object, all keys optional; explicit flags win)::

    {
      "command": "full-suite",
      "seed": 42,
      "tol": 1e-6,
      "out": "fenchellab-out",
      "no_timestamp": true,
      "profile": "t^2",
      "points": 20
    }
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .report import VerificationReport
from .suite import (
    FAMILY_PROFILES,
    SuiteResult,
    run_conjugate,
    run_duality,
    run_embedding,
    run_family_check,
    run_fourier,
    run_full_suite,
    run_seminorm,
)

__all__ = ["RunConfig", "UsageError", "run", "main"]

COMMANDS = ("conjugate", "duality", "family-check", "seminorm", "embedding",
            "fourier-verify", "full-suite")

# Headline tolerance each pipeline applies when no override is given; the
# report embeds the effective values so reruns can detect drift.
DEFAULT_TOLERANCES = {
    "conjugate": 1e-10,
    "duality": 1e-6,
    "family-check": 1e-8,
    "seminorm": 1e-8,
    "embedding": 1e-6,
    "fourier-verify": 1e-6,
}

_DUALITY_ALIASES = {"t^2": "t^2", "t2": "t^2", "t^4": "t^4", "t4": "t^4",
                    "cosh": "cosh"}
_FAMILY_ALIASES = {"t^2": "t^2", "t2": "t^2",
                   "exp(t)-1": "exp(t)-1", "exp": "exp(t)-1"}

_CONFIG_KEYS = ("command", "seed", "tol", "out", "no_timestamp", "profile",
                "points")


class UsageError(ValueError):
    """Invalid command line or configuration; maps to exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    """A fully resolved verification run."""

    command: str
    seed: int = 0
    tol: float | None = None
    out: str = "fenchellab-out"
    no_timestamp: bool = False
    profile: str | None = None
    points: int = 20

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}; "
                             f"expected one of {', '.join(COMMANDS)}")
        if self.tol is not None and not self.tol > 0:
            raise UsageError("tolerance override must be positive")
        if self.points < 1:
            raise UsageError("points must be a positive integer")
        if self.profile is not None:
            if self.command == "duality":
                table = _DUALITY_ALIASES
            elif self.command == "family-check":
                table = _FAMILY_ALIASES
            else:
                raise UsageError(f"--profile does not apply to {self.command}")
            if self.profile not in table:
                raise UsageError(f"unknown profile {self.profile!r} for "
                                 f"{self.command}; expected one of "
                                 f"{', '.join(sorted(set(table)))}")
            object.__setattr__(self, "profile", table[self.profile])


def _execute(config: RunConfig) -> SuiteResult:
    seed, tol = config.seed, config.tol
    if config.command == "conjugate":
        return run_conjugate(seed, tol)
    if config.command == "duality":
        if config.profile is not None:
            return run_duality(seed, tol, points=config.points,
                               profiles=(config.profile,), dims=(1,))
        return run_duality(seed, tol, points=config.points)
    if config.command == "family-check":
        if config.profile is not None:
            return run_family_check(config.profile, seed, tol)
        out = SuiteResult()
        for profile in FAMILY_PROFILES:
            out.merge(run_family_check(profile, seed, tol))
        return out
    if config.command == "seminorm":
        return run_seminorm(seed, tol)
    if config.command == "embedding":
        return run_embedding(seed, tol)
    if config.command == "fourier-verify":
        return run_fourier(seed, tol)
    return run_full_suite(seed, tol)


def _effective_tolerances(config: RunConfig) -> dict:
    if config.command == "full-suite":
        defaults = dict(DEFAULT_TOLERANCES)
    else:
        defaults = {config.command: DEFAULT_TOLERANCES[config.command]}
    if config.tol is not None:
        defaults = {key: config.tol for key in defaults}
    return defaults


def run(config: RunConfig) -> tuple[VerificationReport, SuiteResult]:
    """Execute the configured pipeline and write the report artifacts."""
    result = _execute(config)
    report = result.to_report(config.command, config.seed,
                              _effective_tolerances(config),
                              with_timestamp=not config.no_timestamp)
    out_dir = Path(config.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    report.write(out_dir / "report.json")
    for quantity in sorted(result.plots):
        result.plots[quantity].to_csv(out_dir / f"{quantity}.csv")
    return report, result


def _load_config_file(path: str) -> dict:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    unknown = sorted(set(data) - set(_CONFIG_KEYS))
    if unknown:
        raise UsageError(f"unknown config keys {', '.join(unknown)}; "
                         f"expected a subset of {', '.join(_CONFIG_KEYS)}")
    return data


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fenchellab",
        description="Numerical verification runs for the conjugate/seminorm "
                    "toolkit; writes report.json plus plot CSVs.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    helps = {
        "conjugate": "grid conjugate oracles and involutivity",
        "duality": "log-substituted conjugate duality identities",
        "family-check": "weight family classes, conditions, lattice lemmas",
        "seminorm": "seminorm values, Taylor extension, lattice bounds",
        "embedding": "seminorm embedding chain and moment equivalence",
        "fourier-verify": "transform plumbing and transform seminorm bounds",
        "full-suite": "every pipeline, merged deterministically",
    }
    for command in COMMANDS:
        p = sub.add_parser(command, help=helps[command])
        p.add_argument("--config", metavar="PATH",
                       help="JSON config file; explicit flags override it")
        p.add_argument("--seed", type=int, metavar="INT",
                       help="seed for randomized sweeps (default 0)")
        p.add_argument("--tol", type=float, metavar="FLOAT",
                       help="override the headline check tolerance")
        p.add_argument("--out", metavar="DIR",
                       help="output directory (default fenchellab-out)")
        p.add_argument("--no-timestamp", action="store_true", default=None,
                       help="omit the timestamp for byte-identical reports")
        if command == "duality":
            p.add_argument("--profile", metavar="NAME",
                           help="restrict to one weight profile "
                                "(t^2, t^4, cosh); implies n=1 only")
            p.add_argument("--points", type=int, metavar="INT",
                           help="random evaluation points per profile "
                                "(default 20)")
        if command == "family-check":
            p.add_argument("--profile", metavar="NAME",
                           help="check one family (t^2, exp(t)-1); "
                                "default checks both")
    return parser


def _resolve(args: argparse.Namespace) -> RunConfig:
    merged: dict = {}
    config_path = getattr(args, "config", None)
    if config_path:
        merged.update(_load_config_file(config_path))
    if args.command is not None:
        merged["command"] = args.command
    for key in ("seed", "tol", "out", "profile", "points"):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if getattr(args, "no_timestamp", None):
        merged["no_timestamp"] = True
    if "command" not in merged:
        raise UsageError("no command given (on the command line or in the "
                         "config file)")
    try:
        return RunConfig(**merged)
    except TypeError as exc:
        raise UsageError(f"invalid configuration: {exc}") from exc


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None and getattr(args, "config", None) is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        config = _resolve(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report, _ = run(config)
    for line in report.lines():
        print(line)
    print(f"report written to {Path(config.out) / 'report.json'}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
