"""Command-line runner: ``monopath --scenario ni-gap --alpha e --trunc 5``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import ConfigError
from .scenarios import FORMATS, config_from_values, list_scenarios, parse_config_text, run_scenario


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monopath",
                                description="Run an exact certification scenario and emit a report.")
    p.add_argument("--scenario", help="scenario name (see --list)")
    p.add_argument("--alpha", help="multiplier sequence: 'e' or 'p1,p2,...;tail'")
    p.add_argument("--trunc", help="truncation index N (>= 2)")
    p.add_argument("--seed", help="seed for randomized scenarios")
    p.add_argument("--tol", help="tolerance for float paths, as p/q or a decimal")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--config", help="flat 'key = value' config file; flags override it")
    p.add_argument("--list", action="store_true", help="list scenarios and exit")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.list:
        for info in list_scenarios():
            print(f"{info.name:24s} {info.anchor}")
        return 0
    try:
        values = parse_config_text(Path(args.config).read_text(encoding="utf-8")) if args.config else {}
        for key in ("scenario", "alpha", "trunc", "seed", "tol", "format", "out"):
            flag = getattr(args, key)
            if flag is not None:
                values[key] = flag
        cfg = config_from_values(values)
    except (ConfigError, OSError) as exc:
        print(f"monopath: {exc}", file=sys.stderr)
        return 2
    report = run_scenario(cfg)
    if cfg.out is None:
        sys.stdout.write(report.render(cfg.format))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
