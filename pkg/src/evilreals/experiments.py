"""Named experiments and the report-producing commands behind the CLI."""

from __future__ import annotations

import re
import time
from fractions import Fraction
from typing import Callable, Optional

from . import __version__
from .digits import ConstantDescriptor, TextDigitStream
from .evilgf import conditional_moments, hit_probability
from .exact import round_significant, sqrt_decimal, truncated_decimal
from .primes import first_primes
from .report import Report, exact_field
from .scan import ScanMode, monte_carlo_scan, scan, scan_batch, scan_constant

DEFAULT_WIDTH = 40
EXPERIMENTS = ("primes-pi", "pi-sqrt", "golden", "normality-mc")


class ResourceCapExceeded(RuntimeError):
    """A batch hit its time limit; ``report`` holds the rows finished so far."""

    def __init__(self, report: Report, checkpoint: int):
        super().__init__(f"time limit reached after {checkpoint} members")
        self.report = report
        self.checkpoint = checkpoint


_SPEC_PATTERNS: list[tuple[re.Pattern, Callable]] = [
    (re.compile(r"pi"), lambda m: ConstantDescriptor("pi")),
    (re.compile(r"e"), lambda m: ConstantDescriptor("e")),
    (re.compile(r"golden"), lambda m: ConstantDescriptor("golden")),
    (re.compile(r"golden-1"), lambda m: ConstantDescriptor("golden_minus_one")),
    (re.compile(r"champernowne"), lambda m: ConstantDescriptor("champernowne")),
    (re.compile(r"sqrt\s*(\d+)"), lambda m: ConstantDescriptor.sqrt(int(m[1]))),
    (re.compile(r"rational\s*(\d+)\s*/\s*(\d+)"), lambda m: ConstantDescriptor.rational(int(m[1]), int(m[2]))),
    (re.compile(r"rational\s*(\d+)"), lambda m: ConstantDescriptor.rational(int(m[1]))),
    (re.compile(r"pi\s*\*\s*sqrt\s*(\d+)"), lambda m: ConstantDescriptor.pi_times_sqrt(int(m[1]))),
    (re.compile(r"(\d+)\s*\*\s*pi"), lambda m: ConstantDescriptor.times_pi(int(m[1]))),
]


def parse_constant(spec: str):
    """Parse a constant spec such as ``golden-1``, ``sqrt 2`` or ``7*pi``.

    Returns a :class:`ConstantDescriptor`, or the path string for ``file <path>``.
    """
    text = spec.strip()
    m = re.fullmatch(r"file\s+(.+)", text)
    if m:
        return m[1].strip()
    for pattern, build in _SPEC_PATTERNS:
        m = pattern.fullmatch(text)
        if m:
            return build(m)
    raise ValueError(f"cannot parse constant spec {spec!r}")


def _base_params(b: int, n: int) -> None:
    if b < 2:
        raise ValueError("--base must be >= 2")
    if n < 0:
        raise ValueError("--target must be >= 0")


def cmd_prob(b: int, n: int, digits: int = 91) -> Report:
    """a_b(n) exactly, with its reciprocal (the 'one in every ...' figure)."""
    _base_params(b, n)
    if digits < 3:
        raise ValueError("--digits must be >= 3")
    t0 = time.perf_counter()
    a = hit_probability(b, n)
    rows = [{"quantity": "probability", "value": exact_field(a, digits)}]
    if a:
        rows.append({"quantity": "reciprocal", "value": exact_field(1 / a, digits)})
    return Report(
        "prob",
        {"base": b, "target": n, "digits": digits},
        ["quantity", "value"],
        rows,
        meta=_meta(t0),
    )


def _gaussian_target(i: int) -> int:
    if i % 2:
        return 0
    out = 1
    for k in range(i - 1, 0, -2):
        out *= k
    return out


def cmd_moments(b: int, n: int, imax: int = 16, digits: int = DEFAULT_WIDTH) -> Report:
    _base_params(b, n)
    if imax < 2:
        raise ValueError("--imax must be >= 2")
    t0 = time.perf_counter()
    rep = conditional_moments(b, n, imax)
    rows = []
    for i in range(imax + 1):
        target = _gaussian_target(i)
        rows.append(
            {
                "i": i,
                "raw": exact_field(rep.raw[i], digits),
                "central": exact_field(rep.central[i], digits),
                "scaled": str(rep.scaled[i]),
                "gaussian": target,
            }
        )
    aggregates = {
        "probability": exact_field(rep.probability, digits),
        "mean": exact_field(rep.mean, digits),
        "mean_10_significant": round_significant(rep.mean, 10),
        "variance": exact_field(rep.variance, digits),
    }
    return Report(
        "moments",
        {"base": b, "target": n, "imax": imax},
        ["i", "raw", "central", "scaled", "gaussian"],
        rows,
        aggregates,
        _meta(t0),
    )


def _scan_row(label: str, mode: ScanMode, result) -> dict:
    return {
        "constant": label,
        "mode": mode.value,
        "verdict": result.verdict,
        "location": result.location,
        "digits_consumed": result.digits_consumed,
        "final_sum": result.final_sum,
    }


SCAN_COLUMNS = ["constant", "mode", "verdict", "location", "digits_consumed", "final_sum"]


def cmd_scan(spec: str, b: int = 10, n: int = 666, mode: str = "generalized", precision_scale: int = 1) -> Report:
    _base_params(b, n)
    mode = ScanMode(mode)
    t0 = time.perf_counter()
    const = parse_constant(spec)
    if isinstance(const, str):
        stream = TextDigitStream.from_file(const, b)
        label = f"file {const}"
        result = scan(stream, n, mode)
    else:
        label = const.label
        result = scan_constant(const, n, b, mode, precision_scale)
    return Report(
        "scan",
        {"constant": spec, "base": b, "target": n, "mode": mode.value},
        SCAN_COLUMNS,
        [_scan_row(label, mode, result)],
        meta=_meta(t0),
    )


def _batch_aggregates(batch, total: int) -> dict:
    out = {
        "members": len(batch.results),
        "evil": batch.evil_count,
        "evil_fraction": exact_field(batch.evil_fraction, 14),
    }
    mean = batch.mean_location
    if mean is not None:
        out["mean_location"] = exact_field(mean, 20)
        out["mean_location_10_significant"] = round_significant(mean, 10)
        out["mean_location_10_places"] = truncated_decimal(mean, 10)
    if len(batch.results) < total:
        out["checkpoint"] = len(batch.results)
    return out


def _run_batch(experiment, params, keys, members, key_name, b, n, mode, workers, precision_scale, time_limit):
    deadline = time.monotonic() + time_limit if time_limit else None
    t0 = time.perf_counter()
    batch = scan_batch(
        members, n, b, mode, workers=workers, precision_scale=precision_scale, deadline=deadline
    )
    rows = [
        {key_name: k, "verdict": r.verdict, "location": r.location}
        for k, r in zip(keys, batch.results)
    ]
    report = Report(
        experiment,
        params,
        [key_name, "verdict", "location"],
        rows,
        _batch_aggregates(batch, len(members)),
        _meta(t0),
    )
    if not batch.complete:
        raise ResourceCapExceeded(report, len(batch.results))
    return report


def experiment_primes_pi(
    count: int = 100_000,
    b: int = 10,
    n: int = 666,
    mode: str = "generalized",
    workers: int = 1,
    precision_scale: int = 1,
    time_limit: Optional[float] = None,
) -> Report:
    """Which of the first ``count`` primes p make p*pi evil."""
    _base_params(b, n)
    if count < 1:
        raise ValueError("--count must be >= 1")
    mode = ScanMode(mode)
    primes = first_primes(count)
    members = [ConstantDescriptor.times_pi(p) for p in primes]
    params = {"base": b, "target": n, "mode": mode.value, "count": count, "last_prime": primes[-1]}
    return _run_batch(
        "primes-pi", params, primes, members, "prime", b, n, mode, workers, precision_scale, time_limit
    )


def experiment_pi_sqrt(
    count: int = 10_000,
    b: int = 10,
    n: int = 666,
    mode: str = "generalized",
    workers: int = 1,
    precision_scale: int = 1,
    time_limit: Optional[float] = None,
) -> Report:
    """pi*sqrt(x) for x = 1..count."""
    _base_params(b, n)
    if count < 1:
        raise ValueError("--count must be >= 1")
    mode = ScanMode(mode)
    xs = list(range(1, count + 1))
    members = [ConstantDescriptor.pi_times_sqrt(x) for x in xs]
    params = {"base": b, "target": n, "mode": mode.value, "count": count}
    return _run_batch(
        "pi-sqrt", params, xs, members, "x", b, n, mode, workers, precision_scale, time_limit
    )


def experiment_golden(b: int = 10, n: int = 666, precision_scale: int = 1) -> Report:
    """phi-1 and phi under both definitions."""
    _base_params(b, n)
    t0 = time.perf_counter()
    rows = []
    cases = [
        (ConstantDescriptor("golden_minus_one"), ScanMode.GENERALIZED),
        (ConstantDescriptor("golden"), ScanMode.GENERALIZED),
        (ConstantDescriptor("golden"), ScanMode.FRACTIONAL_ONLY),
    ]
    for const, mode in cases:
        rows.append(_scan_row(const.label, mode, scan_constant(const, n, b, mode, precision_scale)))
    return Report("golden", {"base": b, "target": n}, SCAN_COLUMNS, rows, meta=_meta(t0))


def _z_score(observed: Fraction, expected: Fraction, variance: Fraction) -> str:
    """(observed - expected) / sqrt(variance), rendered exactly to 6 places."""
    diff = observed - expected
    mag = sqrt_decimal(diff * diff / variance, 6)
    return ("-" if diff < 0 else "") + mag


def experiment_normality_mc(
    b: int = 10, n: int = 666, trials: int = 1_000_000, seed: int = 0
) -> Report:
    """Monte Carlo hit fraction and mean location against the exact values."""
    _base_params(b, n)
    if trials < 1:
        raise ValueError("--trials must be >= 1")
    t0 = time.perf_counter()
    mc = monte_carlo_scan(b, n, trials, seed)
    mom = conditional_moments(b, n, 2)
    p = mom.probability
    rows = [
        {
            "quantity": "evil_fraction",
            "monte_carlo": exact_field(mc.evil_fraction, 20),
            "exact": exact_field(p, 20),
            "z": _z_score(mc.evil_fraction, p, p * (1 - p) / trials),
        }
    ]
    if mc.evil_count:
        rows.append(
            {
                "quantity": "mean_location",
                "monte_carlo": exact_field(mc.mean_location, 20),
                "exact": exact_field(mom.mean, 20),
                "z": _z_score(mc.mean_location, mom.mean, mom.variance / mc.evil_count),
            }
        )
    aggregates = {"trials": trials, "evil": mc.evil_count, "seed": seed}
    return Report(
        "normality-mc",
        {"base": b, "target": n, "trials": trials, "seed": seed},
        ["quantity", "monte_carlo", "exact", "z"],
        rows,
        aggregates,
        _meta(t0),
    )


def cmd_experiment(experiment_id: str, **overrides) -> Report:
    runners = {
        "primes-pi": experiment_primes_pi,
        "pi-sqrt": experiment_pi_sqrt,
        "golden": experiment_golden,
        "normality-mc": experiment_normality_mc,
    }
    if experiment_id not in runners:
        raise ValueError(f"unknown experiment {experiment_id!r}; choose from {', '.join(EXPERIMENTS)}")
    return runners[experiment_id](**overrides)


def cmd_primes(count: int) -> Report:
    t0 = time.perf_counter()
    ps = first_primes(count)
    rows = [{"index": i + 1, "prime": p} for i, p in enumerate(ps)]
    return Report("primes", {"count": count}, ["index", "prime"], rows, meta=_meta(t0))


def _meta(t0: float) -> dict:
    return {"tool": "evilreals", "version": __version__, "seconds": round(time.perf_counter() - t0, 3)}
