"""Generating functions for digit partial-sum hitting, and the moments of the hit location.

A random base-b real is modelled as a digit string whose first digit is
uniform on 1..b-1 and whose other digits are uniform on 0..b-1.  ``h_b(x)``
counts, by target ``n``, the probability that some partial sum equals ``n``;
``H_b(x, t)`` additionally marks the (first) location ``k`` with ``t**k``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache

from .exact import (
    BivariateRationalFunction,
    BivPoly,
    ExactArithmeticError,
    Polynomial,
    RationalFunction,
    biv_diff_t,
    biv_eval_t,
    biv_series,
    biv_t_times,
    series_coeffs,
    sqrt_decimal,
    taylor_at,
    truncated_decimal,
)

SCALED_PLACES = 50


class ConditioningError(ValueError):
    """Conditioning on a probability-zero event."""


def _check_base(b: int) -> None:
    if not isinstance(b, int) or b < 2:
        raise ValueError(f"base must be an integer >= 2, got {b!r}")


def _check_target(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"target must be an integer >= 0, got {n!r}")


def _geometric_block(b: int, lo: int) -> Polynomial:
    """x**lo + x**(lo+1) + ... + x**(b-1)."""
    return Polynomial([0] * lo + [1] * (b - lo))


@lru_cache(maxsize=None)
def build_h(b: int) -> RationalFunction:
    """h_b(x) = sum_n a_b(n) x**n, reduced."""
    _check_base(b)
    x = Polynomial.x()
    one_minus_x = Polynomial((1, -1))
    first = RationalFunction(x * (1 - x ** (b - 1)), one_minus_x * (b - 1))
    tail = RationalFunction(
        (x ** (b - 1) - 1) ** 2 * x**2,
        (x**b - x * b + (b - 1)) * (b - 1) * one_minus_x,
    )
    return RationalFunction(1) + first + tail


@lru_cache(maxsize=None)
def build_H(b: int) -> BivariateRationalFunction:
    """H_b(x, t) = sum_{n,k} A_b(n, k) x**n t**k."""
    _check_base(b)
    x = Polynomial.x()
    t = BivPoly.t()
    one_minus_x = BivPoly((Polynomial((1, -1)),))
    first_digit = BivariateRationalFunction(
        BivPoly((x * (1 - x ** (b - 1)),)) * t, [(one_minus_x * (b - 1), 1)]
    )
    # t x**b - b x + b - t
    hit_den = BivPoly((Polynomial((b, -b)), x**b - 1))
    rest = BivariateRationalFunction(
        BivPoly((((1 - x ** (b - 1)) ** 2) * x**2,)) * t * t,
        [(hit_den, 1), (one_minus_x * (b - 1), 1)],
    )
    return BivariateRationalFunction(BivPoly((1,))) + first_digit + rest


def hit_probability(b: int, n: int) -> Fraction:
    """a_b(n) = [x**n] h_b(x)."""
    _check_base(b)
    _check_target(n)
    return series_coeffs(build_h(b), n)[n]


def hit_probabilities(b: int, nmax: int) -> list[Fraction]:
    _check_base(b)
    return series_coeffs(build_h(b), nmax)


def hit_probabilities_recurrence(b: int, nmax: int) -> list[Fraction]:
    """a_b(0..nmax) from u(n) = (u(n-1) + ... + u(n-b+1)) / (b-1), u(0) = 1.

    Zero digits never move a partial sum, so only the nonzero digits matter,
    and those are uniform on 1..b-1 whether or not they come first.
    """
    _check_base(b)
    _check_target(nmax)
    u = [Fraction(1)]
    window = Fraction(1)  # sum of the last b-1 values
    for m in range(1, nmax + 1):
        u.append(window / (b - 1))
        window += u[m]
        if m - (b - 1) >= 0:
            window -= u[m - (b - 1)]
    return u


def hit_probability_recurrence(b: int, n: int) -> Fraction:
    return hit_probabilities_recurrence(b, n)[n]


def first_hit_distribution(b: int, n: int, kmax: int) -> list[Fraction]:
    """A_b(n, k) for k = 0..kmax, read off the bivariate expansion of H_b."""
    _check_base(b)
    _check_target(n)
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    coeffs = biv_series(build_H(b), n, kmax)
    return coeffs[n]


def first_hit_tail_bound(b: int, n: int, interior: int) -> Fraction:
    """Upper bound on P(partial sum still below n after ``interior`` free digits).

    Hoeffding for a sum of ``interior`` digits uniform on 0..b-1; the returned
    rational is rounded upwards.
    """
    _check_base(b)
    if interior <= 0:
        return Fraction(1)
    gap = Fraction(interior * (b - 1), 2) - n
    if gap <= 0:
        return Fraction(1)
    z = 2 * gap * gap / (interior * (b - 1) ** 2)
    with localcontext() as ctx:
        ctx.prec = 40
        val = (-Decimal(z.numerator) / Decimal(z.denominator)).exp()
    bound = Fraction(val) * (1 + Fraction(1, 10**30))
    return min(bound, Fraction(1))


def enumerate_first_hits(b: int, length: int, nmax: int):
    """Brute-force oracle over all digit strings of the given length.

    Returns (hits, undecided) where hits[n][k] is the exact probability that
    the first partial sum equal to n occurs at k <= length, and undecided[n]
    is the mass of strings whose full sum is still below n.
    """
    _check_base(b)
    hits = [[Fraction(0)] * (length + 1) for _ in range(nmax + 1)]
    undecided = [Fraction(0)] * (nmax + 1)
    hits[0][0] = Fraction(1)
    if length == 0:
        for m in range(1, nmax + 1):
            undecided[m] = Fraction(1)
        return hits, undecided
    weight = Fraction(1, (b - 1) * b ** (length - 1))
    hit_counts = [[0] * (length + 1) for _ in range(nmax + 1)]
    under_counts = [0] * (nmax + 1)
    for first in range(1, b):
        for rest in itertools.product(range(b), repeat=length - 1):
            s = first
            seen = [False] * (nmax + 1)
            if s <= nmax:
                hit_counts[s][1] += 1
                seen[s] = True
            for k, d in enumerate(rest, start=2):
                if d:
                    s += d
                    if s <= nmax and not seen[s]:
                        hit_counts[s][k] += 1
                        seen[s] = True
            for m in range(s + 1, nmax + 1):
                under_counts[m] += 1
    for m in range(1, nmax + 1):
        for k in range(length + 1):
            hits[m][k] = hit_counts[m][k] * weight
        undecided[m] = under_counts[m] * weight
    return hits, undecided


# --------------------------------------------------------------------------
# moments


@lru_cache(maxsize=None)
def _t_d_dt_powers(b: int, i: int) -> BivariateRationalFunction:
    if i == 0:
        return build_H(b)
    return biv_t_times(biv_diff_t(_t_d_dt_powers(b, i - 1)))


@lru_cache(maxsize=None)
def raw_moment_series(b: int, i: int) -> RationalFunction:
    """M_i(x) = ((t d/dt)**i H_b)(x, 1); [x**n] M_i = E[K**i; hit n]."""
    _check_base(b)
    if i < 0:
        raise ValueError("moment index must be >= 0")
    m = biv_eval_t(_t_d_dt_powers(b, i), 1)
    order = m.pole_order(1)
    if order != i + 1:
        raise ExactArithmeticError(
            f"moment series {i} for base {b}: pole order {order} at x=1, expected {i + 1}"
        )
    return m


@dataclass
class MomentReport:
    b: int
    n: int
    imax: int
    probability: Fraction
    raw: list[Fraction]
    central: list[Fraction]
    scaled: list[Decimal] = field(default_factory=list)

    @property
    def mean(self) -> Fraction:
        return self.raw[1]

    @property
    def variance(self) -> Fraction:
        return self.central[2]


def central_from_raw(raw: list[Fraction]) -> list[Fraction]:
    mu = raw[1]
    out = []
    for i in range(len(raw)):
        out.append(
            sum(math.comb(i, j) * raw[j] * (-mu) ** (i - j) for j in range(i + 1))
        )
    return out


def scaled_moment(central_i: Fraction, variance: Fraction, i: int, places: int = SCALED_PLACES) -> Decimal:
    """central_i / variance**(i/2) as a truncated decimal with ``places`` digits."""
    if variance <= 0:
        raise ConditioningError("scaled moments need a positive variance")
    if i % 2 == 0:
        return Decimal(truncated_decimal(central_i / variance ** (i // 2), places))
    square = central_i * central_i / variance**i
    mag = sqrt_decimal(square, places)
    return Decimal(("-" if central_i < 0 else "") + mag)


def conditional_moments(b: int, n: int, imax: int, places: int = SCALED_PLACES) -> MomentReport:
    """Exact moments of the hit location, conditional on hitting n."""
    _check_base(b)
    _check_target(n)
    if imax < 2:
        raise ValueError("imax must be >= 2")
    a = hit_probability(b, n)
    if a == 0:
        raise ConditioningError(f"a_{b}({n}) = 0; nothing to condition on")
    raw = [Fraction(1)]
    for i in range(1, imax + 1):
        raw.append(series_coeffs(raw_moment_series(b, i), n)[n] / a)
    central = central_from_raw(raw)
    var = central[2]
    scaled = []
    for i in range(imax + 1):
        if var == 0:
            scaled.append(Decimal(1) if i == 0 else Decimal(0))
        else:
            scaled.append(scaled_moment(central[i], var, i, places))
    return MomentReport(b, n, imax, a, raw, central, scaled)


# --------------------------------------------------------------------------
# asymptotics


@dataclass(frozen=True)
class AsymptoticPolynomial:
    """Polynomial in n (coefficients low to high) approximating a moment up to O(alpha**n)."""

    b: int
    i: int
    centered: bool
    coeffs: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, n) -> Fraction:
        return Polynomial(self.coeffs)(n)


def _binomial_in_n(j: int) -> Polynomial:
    """binomial(n + j - 1, j - 1) as a polynomial in n."""
    out = Polynomial.const(1)
    for r in range(1, j):
        out = out * Polynomial((Fraction(r, r), Fraction(1, r)))
    return out


@lru_cache(maxsize=None)
def singular_part_in_n(b: int, i: int) -> Polynomial:
    """Polynomial part of [x**n] M_i(x) coming from the pole at x = 1."""
    m = raw_moment_series(b, i)
    exp = taylor_at(m, 1, 0)
    total = Polynomial()
    # c (x-1)**(-j) = c (-1)**j (1-x)**(-j), and [x**n](1-x)**(-j) = C(n+j-1, j-1)
    for idx, c in enumerate(exp.principal):
        j = idx + 1
        if c:
            total = total + _binomial_in_n(j) * (c * (-1) ** j)
    return total


def asymptotic_moment(b: int, i: int, centered: bool = True) -> AsymptoticPolynomial:
    """Polynomial in n for E[K**i] (or E[(K-mu)**i]) given a hit, up to O(alpha**n)."""
    _check_base(b)
    if i < 0:
        raise ValueError("moment index must be >= 0")
    base = singular_part_in_n(b, 0)
    if base.degree != 0:
        raise ExactArithmeticError("h_b should have a simple pole at x = 1")
    inv = 1 / base[0]
    raw = [singular_part_in_n(b, k) * inv for k in range(i + 1)]
    if not centered:
        poly = raw[i]
    else:
        neg_mu = -raw[1]
        poly = Polynomial()
        for j in range(i + 1):
            poly = poly + raw[j] * neg_mu ** (i - j) * math.comb(i, j)
    return AsymptoticPolynomial(b, i, centered, poly.coeffs)
