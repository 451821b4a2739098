"""Prime generation for the p*pi experiment."""

from __future__ import annotations

import math

MAX_COUNT = 10**7


def primes_upto(limit: int) -> list[int]:
    """All primes <= limit (sieve of Eratosthenes)."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return [i for i, f in enumerate(flags) if f]


def nth_prime_upper_bound(count: int) -> int:
    # Rosser-Schoenfeld: p_k < k (ln k + ln ln k) for k >= 6
    if count < 6:
        return 13
    return int(count * (math.log(count) + math.log(math.log(count)))) + 1


def first_primes(count: int) -> list[int]:
    if count < 0 or count > MAX_COUNT:
        raise ValueError(f"count must be in 0..{MAX_COUNT}")
    if count == 0:
        return []
    primes = primes_upto(nth_prime_upper_bound(count))
    return primes[:count]


def prime_count(limit: int) -> int:
    return len(primes_upto(limit))
