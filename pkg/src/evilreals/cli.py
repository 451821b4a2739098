"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 certification / internal-consistency
failure, 3 time limit reached (a partial report is still written).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .digits import CertificationError
from .evilgf import ConditioningError
from .experiments import (
    DEFAULT_WIDTH,
    EXPERIMENTS,
    ResourceCapExceeded,
    cmd_experiment,
    cmd_moments,
    cmd_primes,
    cmd_prob,
    cmd_scan,
)
from .report import FORMATS
from .scan import ScanError

EXIT_OK, EXIT_USAGE, EXIT_CERT, EXIT_PARTIAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--base", type=int, default=10, help="digit base b (default 10)")
    p.add_argument("--target", type=int, default=666, help="target partial sum n (default 666)")
    p.add_argument("--format", choices=FORMATS, default="table")
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="evilreals", description="Evil real numbers: exact probabilities, moments and digit scans.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("prob", help="exact probability that some partial sum equals the target")
    _common(p)
    p.add_argument("--digits", type=int, default=91, help="width of the decimal renderings")

    p = sub.add_parser("moments", help="exact moments of the evil location")
    _common(p)
    p.add_argument("--imax", type=int, default=16)
    p.add_argument("--digits", type=int, default=DEFAULT_WIDTH)

    p = sub.add_parser("scan", help="scan one constant")
    p.add_argument("constant", nargs="+", help="e.g. golden-1, 'sqrt 2', 7*pi, 'rational 1/3', 'file digits.txt'")
    _common(p)
    p.add_argument("--mode", choices=("generalized", "fractional_only"), default="generalized")
    p.add_argument("--precision-scale", type=int, default=1)

    p = sub.add_parser("experiment", help="run a named experiment")
    p.add_argument("id", choices=EXPERIMENTS)
    _common(p)
    p.add_argument("--mode", choices=("generalized", "fractional_only"), default="generalized")
    p.add_argument("--count", type=int, help="number of primes (primes-pi) or x values (pi-sqrt)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="Monte Carlo seed")
    p.add_argument("--trials", type=int, default=1_000_000, help="Monte Carlo trials")
    p.add_argument("--precision-scale", type=int, default=1)
    p.add_argument("--time-limit", type=float, help="seconds before stopping with a partial report")

    p = sub.add_parser("primes", help="list the first primes")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--format", choices=FORMATS, default="table")
    p.add_argument("--out", type=Path)
    return parser


def _run(args):
    if args.command == "prob":
        return cmd_prob(args.base, args.target, args.digits)
    if args.command == "moments":
        return cmd_moments(args.base, args.target, args.imax, args.digits)
    if args.command == "scan":
        return cmd_scan(" ".join(args.constant), args.base, args.target, args.mode, args.precision_scale)
    if args.command == "primes":
        return cmd_primes(args.count)
    kw = {"b": args.base, "n": args.target}
    if args.id in ("primes-pi", "pi-sqrt"):
        kw.update(mode=args.mode, workers=args.workers, precision_scale=args.precision_scale,
                  time_limit=args.time_limit)
        if args.count is not None:
            kw["count"] = args.count
    elif args.id == "golden":
        kw["precision_scale"] = args.precision_scale
    else:
        kw.update(trials=args.trials, seed=args.seed)
    return cmd_experiment(args.id, **kw)


def _emit(report, args) -> None:
    text = report.render(args.format)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = _run(args)
    except ResourceCapExceeded as exc:
        _emit(exc.report, args)
        print(f"evilreals: {exc}; partial report written", file=sys.stderr)
        return EXIT_PARTIAL
    except (CertificationError, ScanError) as exc:
        print(f"evilreals: certification failure: {exc}", file=sys.stderr)
        return EXIT_CERT
    except (ValueError, ConditioningError, OSError) as exc:
        print(f"evilreals: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
