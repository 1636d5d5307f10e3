"""Command line entry point: ``bandlab run|sweep|validate <config>``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .experiments import config_to_text, run, validate_config

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _read(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None
    cfg, errors = validate_config(text)
    if errors:
        for e in errors:
            print(f"error: {e}", file=sys.stderr)
        return None
    return cfg


def _summary(man) -> None:
    for obs in man.observables:
        est = obs.estimate
        print(f"{obs.name}: {est.real:.6g}{est.imag:+.6g}j +- {obs.stderr:.3g} (z = {obs.zscore:.2f})")
    for c in man.checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"[{status}] {c.name}: {c.value:.6g} {c.relation} {c.threshold:g}")
    print("verdict:", "PASS" if man.passed else "FAIL")


def _execute(args, sweep: bool) -> int:
    cfg = _read(args.config)
    if cfg is None:
        return EXIT_USAGE
    if sweep and cfg.experiment != "crossover-sweep":
        print("error: sweep needs experiment = crossover-sweep", file=sys.stderr)
        return EXIT_USAGE
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    man = run(cfg, out=args.out, threads=args.threads)
    _summary(man)
    return EXIT_PASS if man.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bandlab", description="Band matrix spectral statistics experiments")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_text in (("run", "run an experiment"), ("sweep", "run a crossover sweep")):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("config", help="JSON config file")
        sp.add_argument("--out", default=None, help="output directory (overrides $BANDLAB_OUT and the config)")
        sp.add_argument("--threads", type=int, default=1, help="worker threads for sampling")
    sp = sub.add_parser("validate", help="check a config and print it with defaults filled in")
    sp.add_argument("config", help="JSON config file")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    if args.command == "validate":
        cfg = _read(args.config)
        if cfg is None:
            return EXIT_USAGE
        sys.stdout.write(config_to_text(cfg))
        return EXIT_PASS
    return _execute(args, sweep=args.command == "sweep")


if __name__ == "__main__":
    sys.exit(main())
