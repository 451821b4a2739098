"""Deciding whether a digit expansion is n-evil, and where."""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .digits import ConstantDescriptor, DigitStream, initial_precision


class ScanMode(str, enum.Enum):
    GENERALIZED = "generalized"
    FRACTIONAL_ONLY = "fractional_only"


@dataclass(frozen=True)
class ScanResult:
    evil: bool
    location: Optional[int]
    digits_consumed: int
    final_sum: int

    @property
    def verdict(self) -> str:
        return "evil" if self.evil else "not_evil"


class ScanError(RuntimeError):
    """A batch member failed; ``index`` and ``member`` identify it."""

    def __init__(self, index: int, member, cause: BaseException):
        super().__init__(f"member {index} ({member}): {cause}")
        self.index = index
        self.member = member
        self.cause = cause


def scan_digits(digits: Iterable[int], n: int) -> ScanResult:
    """Walk partial sums until they reach n; evil iff one of them equals n."""
    if n < 0:
        raise ValueError("target must be >= 0")
    if n == 0:
        return ScanResult(True, 0, 0, 0)
    total = 0
    consumed = 0
    last_nonzero = 0
    for d in digits:
        consumed += 1
        if d:
            last_nonzero = consumed
            total += d
            if total >= n:
                return ScanResult(total == n, consumed if total == n else None, consumed, total)
    # terminating expansion that never reached n
    return ScanResult(False, None, last_nonzero, total)


def scan(stream, n: int, mode: ScanMode | str = ScanMode.GENERALIZED) -> ScanResult:
    mode = ScanMode(mode)
    if mode is ScanMode.GENERALIZED:
        return scan_digits(iter(stream), n)
    return scan_digits(stream.fraction_digits(), n)


def open_stream(c: ConstantDescriptor, b: int, n: int, precision_scale: int = 1) -> DigitStream:
    probe = DigitStream(c, b, initial_precision=16)
    H = initial_precision(b, n, len(probe.integer_digits))
    return DigitStream(c, b, initial_precision=H, precision_scale=precision_scale)


def scan_constant(
    c: ConstantDescriptor,
    n: int,
    b: int = 10,
    mode: ScanMode | str = ScanMode.GENERALIZED,
    precision_scale: int = 1,
) -> ScanResult:
    return scan(open_stream(c, b, n, precision_scale), n, mode)


@dataclass
class BatchResult:
    members: list[ConstantDescriptor]
    results: list[ScanResult]
    complete: bool = True

    @property
    def evil_count(self) -> int:
        return sum(r.evil for r in self.results)

    @property
    def evil_fraction(self) -> Fraction:
        return Fraction(self.evil_count, len(self.results))

    @property
    def mean_location(self) -> Optional[Fraction]:
        locs = [r.location for r in self.results if r.evil]
        if not locs:
            return None
        return Fraction(sum(locs), len(locs))


def _scan_chunk(args) -> list:
    start, members, n, b, mode, precision_scale = args
    out = []
    for offset, c in enumerate(members):
        try:
            out.append(scan_constant(c, n, b, mode, precision_scale))
        except Exception as exc:  # reported with the member's identity
            return out + [(start + offset, c, exc)]
    return out


def scan_batch(
    members: Sequence[ConstantDescriptor],
    n: int,
    b: int = 10,
    mode: ScanMode | str = ScanMode.GENERALIZED,
    *,
    workers: int = 1,
    precision_scale: int = 1,
    chunk_size: int = 500,
    deadline: Optional[float] = None,
) -> BatchResult:
    """Scan every member; results come back in input order whatever ``workers`` is.

    With a ``deadline`` (a ``time.monotonic()`` value) the batch stops at the
    first chunk boundary past it and the result is marked incomplete.
    """
    members = list(members)
    if not members:
        raise ValueError("empty batch")
    mode = ScanMode(mode)
    jobs = [
        (i, members[i : i + chunk_size], n, b, mode, precision_scale)
        for i in range(0, len(members), chunk_size)
    ]
    if workers <= 1 or len(jobs) == 1:
        results, complete = _merge(map(_scan_chunk, jobs), deadline)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        try:
            results, complete = _merge(pool.map(_scan_chunk, jobs), deadline)
        finally:
            pool.shutdown(wait=True, cancel_futures=True)
    return BatchResult(members[: len(results)], results, complete)


def _merge(chunks, deadline: Optional[float]) -> tuple[list[ScanResult], bool]:
    results: list[ScanResult] = []
    for chunk in chunks:
        for item in chunk:
            if isinstance(item, tuple):
                index, member, exc = item
                raise ScanError(index, member.label, exc) from exc
            results.append(item)
        if deadline is not None and time.monotonic() > deadline:
            return results, False
    return results, True


# --------------------------------------------------------------------------
# Monte Carlo


@dataclass
class MonteCarloResult:
    b: int
    n: int
    trials: int
    seed: int
    evil_count: int
    histogram: dict[int, int]

    @property
    def evil_fraction(self) -> Fraction:
        return Fraction(self.evil_count, self.trials)

    @property
    def mean_location(self) -> Optional[Fraction]:
        if not self.evil_count:
            return None
        return Fraction(sum(k * c for k, c in self.histogram.items()), self.evil_count)


def monte_carlo_scan(b: int, n: int, trials: int, seed: int, block: int = 100_000) -> MonteCarloResult:
    """Simulate random digit strings (first digit 1..b-1, then 0..b-1)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if b < 2:
        raise ValueError("base must be >= 2")
    rng = np.random.Generator(np.random.PCG64(seed))
    # long enough that an undecided row is astronomically rare; extended if not
    width = int(2 * n / (b - 1) * 1.5) + 64
    hist: dict[int, int] = {}
    evil = 0
    done = 0
    if n == 0:
        return MonteCarloResult(b, n, trials, seed, trials, {0: trials})
    while done < trials:
        m = min(block, trials - done)
        first = rng.integers(1, b, size=(m, 1), dtype=np.int64)
        rest = rng.integers(0, b, size=(m, width - 1), dtype=np.int64)
        sums = np.cumsum(np.concatenate([first, rest], axis=1), axis=1)
        while True:
            undecided = sums[:, -1] < n
            if not undecided.any():
                break
            more = rng.integers(0, b, size=(m, width), dtype=np.int64)
            sums = np.concatenate([sums, sums[:, -1:] + np.cumsum(more, axis=1)], axis=1)
        idx = np.argmax(sums >= n, axis=1)
        hit = sums[np.arange(m), idx] == n
        evil += int(hit.sum())
        locs, counts = np.unique(idx[hit] + 1, return_counts=True)
        for k, c in zip(locs.tolist(), counts.tolist()):
            hist[k] = hist.get(k, 0) + c
        done += m
    return MonteCarloResult(b, n, trials, seed, evil, dict(sorted(hist.items())))
