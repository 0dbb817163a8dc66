"""Command-line entry point.

    postselect run <scenario> [--tolerance X] [--sigma S] [--delta D | --deltas D12,D13,D23]
                   [--scan lo,hi,n] [--t-list t1,t2,...] [--format json|csv]
                   [--out PATH] [--config FILE]

Exit codes: 0 all expectations pass, 1 an expectation failed, 2 usage error,
3 computation error. The report is written in every case except 2.
"""
from __future__ import annotations

import argparse
import configparser
import os
import sys
from dataclasses import dataclass, field

from .report import emit
from .scenarios import SCENARIOS, Params, PointerParams, run_scenarios

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3

CONFIG_KEYS = {"tolerance", "sigma", "delta", "deltas", "scan", "t_list", "format", "out"}
SEEDLESS_ENV = "POSTSELECT_SEEDLESS"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    scenario: str
    tolerance: float = 1e-9
    pointer: PointerParams = field(default_factory=PointerParams)
    t_list: tuple[float, ...] = (0.01, 0.1, 1.0, 10.0)
    format: str = "json"
    out: str | None = None

    def __post_init__(self):
        if self.scenario not in SCENARIOS + ("all",):
            raise UsageError(f"unknown scenario {self.scenario!r}")
        if not self.tolerance > 0:
            raise UsageError(f"tolerance must be positive, got {self.tolerance}")
        if self.format not in ("json", "csv"):
            raise UsageError(f"unknown format {self.format!r}")
        if not self.pointer.sigma > 0:
            raise UsageError(f"sigma must be positive, got {self.pointer.sigma}")
        lo, hi, n = self.pointer.scan
        if not (0 < lo <= hi <= 0.5) or n < 1 or (n > 1 and lo == hi):
            raise UsageError("scan must be lo,hi,n with 0 < lo < hi <= 0.5 and n >= 1")
        if any(t < 0 for t in self.t_list):
            raise UsageError("filter times must be non-negative")

    @property
    def scenarios(self) -> tuple[str, ...]:
        return SCENARIOS if self.scenario == "all" else (self.scenario,)


def _floats(text: str, n: int | None = None, what: str = "value") -> tuple[float, ...]:
    try:
        vals = tuple(float(x) for x in str(text).split(",") if x.strip())
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r}") from None
    if n is not None and len(vals) != n:
        raise UsageError(f"{what} needs {n} comma-separated numbers, got {text!r}")
    return vals


def _scan(text: str) -> tuple[float, float, int]:
    lo, hi, n = _floats(text, 3, "scan")
    if n != int(n):
        raise UsageError(f"scan point count must be an integer, got {n}")
    return lo, hi, int(n)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="postselect", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a scenario and emit its report")
    run.add_argument("scenario", choices=SCENARIOS + ("all",))
    run.add_argument("--tolerance", type=float)
    run.add_argument("--sigma", type=float)
    grp = run.add_mutually_exclusive_group()
    grp.add_argument("--delta", type=float, help="equal pair kick for all three pairs")
    grp.add_argument("--deltas", help="D12,D13,D23")
    run.add_argument("--scan", help="lo,hi,n (log-spaced delta/sigma ratios)")
    run.add_argument("--t-list", dest="t_list", help="t1,t2,... filter strengths")
    run.add_argument("--format", choices=("json", "csv"))
    run.add_argument("--out")
    run.add_argument("--config")
    return parser


def _read_config(path: str, scenario: str) -> dict[str, str]:
    cp = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc.strerror}") from None
    except configparser.Error as exc:
        raise UsageError(f"malformed config file {path!r}: {exc}") from None
    allowed = {"defaults", "all", *SCENARIOS}
    values: dict[str, str] = {}
    for section in cp.sections():
        if section not in allowed:
            raise UsageError(f"unknown config section [{section}]")
        unknown = set(cp[section]) - CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config keys in [{section}]: {sorted(unknown)}")
    for section in ("defaults", scenario):
        if cp.has_section(section):
            values.update(cp[section])
    return values


def parse_config(argv: list[str] | None = None) -> RunConfig:
    """Defaults, overridden by the config file, overridden by flags."""
    args = build_parser().parse_args(argv)
    merged: dict[str, object] = {}
    if args.config:
        merged.update(_read_config(args.config, args.scenario))
        if "delta" in merged and "deltas" in merged:
            raise UsageError("config sets both delta and deltas")
    for key in CONFIG_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            if key in ("delta", "deltas"):
                merged.pop("delta", None)
                merged.pop("deltas", None)
            merged[key] = v

    pointer = PointerParams()
    cfg: dict[str, object] = {"scenario": args.scenario}
    try:
        if "tolerance" in merged:
            cfg["tolerance"] = float(merged["tolerance"])
        if "sigma" in merged:
            pointer.sigma = float(merged["sigma"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if "delta" in merged:
        (d,) = _floats(merged["delta"], 1, "delta")
        pointer.deltas = (d, d, d)
    if "deltas" in merged:
        pointer.deltas = _floats(merged["deltas"], 3, "deltas")
    if "scan" in merged:
        pointer.scan = _scan(merged["scan"])
    if "t_list" in merged:
        cfg["t_list"] = _floats(merged["t_list"], None, "t-list")
    if "format" in merged:
        cfg["format"] = str(merged["format"])
    if "out" in merged:
        cfg["out"] = str(merged["out"])
    return RunConfig(pointer=pointer, **cfg)


def _assert_deterministic(config: RunConfig) -> None:
    # nothing in the package draws random numbers; the flag only records that
    if os.environ.get(SEEDLESS_ENV) not in (None, "", "0", "1"):
        raise UsageError(f"{SEEDLESS_ENV} must be 0 or 1")


def run(config: RunConfig):
    params = Params(pointer=config.pointer, t_list=config.t_list)
    return run_scenarios(config.scenarios, params, config.tolerance)


def main(argv: list[str] | None = None) -> int:
    try:
        config = parse_config(argv)
        _assert_deterministic(config)
    except UsageError as exc:
        print(f"postselect: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # argparse
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE

    try:
        reports = run(config)
    except Exception as exc:
        print(f"postselect: computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE

    try:
        if config.out:
            emit(reports, config.format, config.out)
        else:
            emit(reports, config.format, sys.stdout)
    except OSError as exc:
        print(f"postselect: cannot write report: {exc}", file=sys.stderr)
        return EXIT_USAGE

    failed = [(r.scenario, e.name) for r in reports for e in r.failures()]
    for scen, name in failed:
        print(f"postselect: FAIL {scen}:{name}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
