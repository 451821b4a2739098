"""Exact algebra over the rationals.

Rationals are :class:`fractions.Fraction`. On top of them this module provides
dense univariate polynomials, reduced rational functions, bivariate (x, t)
rational functions with a factored denominator, Maclaurin/Laurent expansion,
and exact decimal rendering. Nothing in here touches binary floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]
BigRational = Fraction


_SMALL_D0 = 1000


class ExactArithmeticError(ArithmeticError):
    """Raised for undefined exact operations (division by zero and friends)."""


# --------------------------------------------------------------------------
# rationals


def rat_add(a: Number, b: Number) -> Fraction:
    return Fraction(a) + Fraction(b)


def rat_mul(a: Number, b: Number) -> Fraction:
    return Fraction(a) * Fraction(b)


def rat_div(a: Number, b: Number) -> Fraction:
    if b == 0:
        raise ExactArithmeticError(f"division of {a} by zero")
    return Fraction(a) / Fraction(b)


# --------------------------------------------------------------------------
# univariate polynomials


def _strip(coeffs: Iterable[Number]) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class Polynomial:
    """Dense polynomial; ``coeffs[i]`` is the coefficient of ``x**i``.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        self.coeffs = _strip(coeffs)

    @classmethod
    def x(cls) -> Polynomial:
        return cls((0, 1))

    @classmethod
    def const(cls, c: Number) -> Polynomial:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> Polynomial:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Polynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*x^{i}")
        return "Polynomial(" + " + ".join(terms) + ")"

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __add__(self, other) -> Polynomial:
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __sub__(self, other) -> Polynomial:
        return self + (-_as_poly(other))

    def __rsub__(self, other) -> Polynomial:
        return _as_poly(other) - self

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self.coeffs)
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        result = Polynomial.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other) -> tuple[Polynomial, Polynomial]:
        other = _as_poly(other)
        if other.is_zero():
            raise ExactArithmeticError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading()
        if len(rem) - 1 < dq:
            return Polynomial(), Polynomial(rem)
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lead
            quot[k] = c
            if c:
                for j, oj in enumerate(other.coeffs):
                    rem[k + j] -= c * oj
        return Polynomial(quot), Polynomial(rem[:dq])

    def __floordiv__(self, other) -> Polynomial:
        return divmod(self, other)[0]

    def __mod__(self, other) -> Polynomial:
        return divmod(self, other)[1]

    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> Polynomial:
        if self.is_zero():
            return self
        return self * (1 / self.leading())

    def shift(self, c: Number) -> Polynomial:
        """Return p(c + y) as a polynomial in y (Taylor shift)."""
        c = Fraction(c)
        out = list(self.coeffs)
        n = len(out)
        # repeated synthetic division by (y - c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                out[j] += c * out[j + 1]
        return Polynomial(out)

    def content_primitive(self) -> tuple[Fraction, Polynomial]:
        """Split into (rational content, primitive integer polynomial)."""
        if self.is_zero():
            return Fraction(0), self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), Polynomial(v // g for v in ints)

    def integer_coeffs(self) -> tuple[list[int], int]:
        """Return (ints, d) with self == Polynomial(ints) / d, d > 0."""
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return [int(c * den) for c in self.coeffs], den


def _as_poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p
    if isinstance(p, (int, Fraction)):
        return Polynomial.const(p)
    raise TypeError(f"cannot treat {type(p).__name__} as a polynomial")


def poly_arith(p: Polynomial, q: Polynomial, op: str):
    """Dispatch ``add``, ``sub``, ``mul`` or ``divmod`` on two polynomials."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "divmod":
        return divmod(p, q)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd over Q (gcd(0, 0) is 0)."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


# --------------------------------------------------------------------------
# univariate rational functions


class RationalFunction:
    """Reduced quotient num/den with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, *, reduce: bool = True):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ExactArithmeticError("rational function with zero denominator")
        if reduce:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lead = den.leading()
        self.num = num * (1 / lead)
        self.den = den * (1 / lead)

    @classmethod
    def from_factors(
        cls, num: Polynomial, factors: Sequence[tuple[Polynomial, int]]
    ) -> RationalFunction:
        """Build num / prod(f**m) and reduce it using the factor list.

        Any common factor of num and the product divides one of the listed
        factors, so gcds against the (small) factors suffice; this avoids a
        Euclid run on the full high-degree denominator.
        """
        work = [[f, m] for f, m in factors if m > 0 and f.degree > 0]
        scale = Fraction(1)
        for f, m in factors:
            if f.is_zero():
                raise ExactArithmeticError("rational function with zero denominator")
            if f.degree <= 0 and m > 0:
                scale *= f.leading() ** m
        num = num * (1 / scale)
        changed = True
        while changed and not num.is_zero():
            changed = False
            for item in list(work):
                f, m = item
                g = poly_gcd(num, f)
                if g.degree > 0:
                    num = num // g
                    rest = f // g
                    item[1] = m - 1
                    if rest.degree > 0:
                        work.append([rest, 1])
                    else:
                        num = num * (1 / rest.leading())
                    changed = True
            work = [item for item in work if item[1] > 0]
        if num.is_zero():
            return cls(Polynomial(), 1, reduce=False)
        den = Polynomial.const(1)
        for f, m in work:
            den = den * f**m
        return cls(num, den, reduce=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r} / {self.den!r})"

    def __call__(self, x: Number) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ExactArithmeticError(f"pole at x={x}")
        return self.num(x) / d

    def __add__(self, other) -> RationalFunction:
        other = _as_ratfun(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other) -> RationalFunction:
        return self + (-_as_ratfun(other))

    def __mul__(self, other) -> RationalFunction:
        other = _as_ratfun(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        other = _as_ratfun(other)
        if other.num.is_zero():
            raise ExactArithmeticError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def pole_order(self, c: Number) -> int:
        """Multiplicity of x = c as a root of the (reduced) denominator."""
        order = 0
        d = self.den
        root = Polynomial((-Fraction(c), 1))
        while True:
            q, r = divmod(d, root)
            if not r.is_zero():
                return order
            order += 1
            d = q


def _as_ratfun(f) -> RationalFunction:
    if isinstance(f, RationalFunction):
        return f
    return RationalFunction(_as_poly(f), 1, reduce=False)


def series_coeffs(f: RationalFunction, upto: int) -> list[Fraction]:
    """Maclaurin coefficients c_0..c_upto of f, via the denominator recurrence."""
    if f.den[0] == 0:
        raise ExactArithmeticError("Maclaurin expansion undefined: den(0) == 0")
    if upto < 0:
        return []
    num, nd = f.num.integer_coeffs()
    den, dd = f.den.integer_coeffs()
    # f = (num / nd) / (den / dd); expand num/den, rescale by dd/nd at the end
    scale = Fraction(dd, nd)
    d0 = den[0]
    terms = [(j, den[j]) for j in range(1, len(den)) if den[j]]
    if abs(d0) > _SMALL_D0:
        # big d0: d0**(n+1) scaling dwarfs the true denominators, let Fraction reduce
        c: list[Fraction] = []
        for n in range(upto + 1):
            acc = Fraction(num[n]) if n < len(num) else Fraction(0)
            for j, dj in terms:
                if j > n:
                    break
                acc -= dj * c[n - j]
            c.append(acc / d0)
        return [v * scale for v in c]
    # small d0: C_n = c_n d0**(n+1) is integral and
    # C_n = num_n d0**n - sum_j den_j C_{n-j} d0**(j-1)
    dpow = [1]
    for _ in range(len(den) + 1):
        dpow.append(dpow[-1] * d0)
    big = [0] * (upto + 1)
    out = []
    d0pow_n = 1
    for n in range(upto + 1):
        acc = num[n] * d0pow_n if n < len(num) else 0
        for j, dj in terms:
            if j > n:
                break
            acc -= dj * big[n - j] * dpow[j - 1]
        big[n] = acc
        d0pow_n *= d0
        out.append(Fraction(acc, d0pow_n) * scale)
    return out


def series_coeff(f: RationalFunction, n: int) -> Fraction:
    return series_coeffs(f, n)[n]


@dataclass(frozen=True)
class SeriesExpansion:
    """Laurent expansion around ``center``: sum_k coeff_k (x - center)**k.

    ``principal[j]`` is the coefficient of (x - center)**(-(j+1));
    ``regular[k]`` the coefficient of (x - center)**k, k = 0..order.
    """

    center: Fraction
    principal: tuple[Fraction, ...]
    regular: tuple[Fraction, ...]

    @property
    def pole_order(self) -> int:
        return len(self.principal)

    def coefficient(self, k: int) -> Fraction:
        if k < 0:
            j = -k - 1
            return self.principal[j] if j < len(self.principal) else Fraction(0)
        return self.regular[k]


def taylor_at(f: RationalFunction, center: Number, order: int) -> SeriesExpansion:
    """Laurent expansion of f at ``center`` up to (x - center)**order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    c = Fraction(center)
    num = f.num.shift(c)
    den = f.den.shift(c)
    m = 0
    while den[m] == 0:
        m += 1
    den = Polynomial(den.coeffs[m:])
    coeffs = series_coeffs(RationalFunction(num, den, reduce=False), m + order)
    principal = tuple(reversed(coeffs[:m]))
    return SeriesExpansion(c, principal, tuple(coeffs[m:]))


# --------------------------------------------------------------------------
# bivariate polynomials in (x, t): tuple of x-polynomials, index = power of t


class BivPoly:
    __slots__ = ("tc",)

    def __init__(self, tcoeffs: Iterable = ()):
        out = [_as_poly(p) for p in tcoeffs]
        while out and out[-1].is_zero():
            out.pop()
        self.tc: tuple[Polynomial, ...] = tuple(out)

    @classmethod
    def from_dict(cls, terms: dict[tuple[int, int], Number]) -> BivPoly:
        """Build from {(x_power, t_power): coefficient}."""
        if not terms:
            return cls()
        tdeg = max(j for _, j in terms)
        rows: list[dict[int, Number]] = [dict() for _ in range(tdeg + 1)]
        for (i, j), c in terms.items():
            rows[j][i] = rows[j].get(i, 0) + c
        polys = []
        for row in rows:
            xdeg = max(row) if row else -1
            polys.append(Polynomial(row.get(i, 0) for i in range(xdeg + 1)))
        return cls(polys)

    @classmethod
    def t(cls) -> BivPoly:
        return cls((0, 1))

    @property
    def t_degree(self) -> int:
        return len(self.tc) - 1

    def is_zero(self) -> bool:
        return not self.tc

    def depends_on_t(self) -> bool:
        return len(self.tc) > 1

    def coeff(self, i: int, j: int) -> Fraction:
        return self.tc[j][i] if j < len(self.tc) else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivPoly):
            return NotImplemented
        return self.tc == other.tc

    def __hash__(self) -> int:
        return hash(self.tc)

    def __repr__(self) -> str:
        return f"BivPoly({list(self.tc)!r})"

    def __neg__(self) -> BivPoly:
        return BivPoly(-p for p in self.tc)

    def __add__(self, other) -> BivPoly:
        other = _as_biv(other)
        a, b = self.tc, other.tc
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, p in enumerate(b):
            out[j] = out[j] + p
        return BivPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> BivPoly:
        return self + (-_as_biv(other))

    def __rsub__(self, other) -> BivPoly:
        return _as_biv(other) - self

    def __mul__(self, other) -> BivPoly:
        if isinstance(other, (int, Fraction, Polynomial)):
            return BivPoly(p * other for p in self.tc)
        other = _as_biv(other)
        if self.is_zero() or other.is_zero():
            return BivPoly()
        out = [Polynomial()] * (len(self.tc) + len(other.tc) - 1)
        for i, p in enumerate(self.tc):
            if p.is_zero():
                continue
            for j, q in enumerate(other.tc):
                if not q.is_zero():
                    out[i + j] = out[i + j] + p * q
        return BivPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> BivPoly:
        result = BivPoly((1,))
        for _ in range(k):
            result = result * self
        return result

    def diff_t(self) -> BivPoly:
        return BivPoly(p * j for j, p in enumerate(self.tc) if j)

    def eval_t(self, t0: Number) -> Polynomial:
        acc = Polynomial()
        for p in reversed(self.tc):
            acc = acc * t0 + p
        return acc

    def normalized(self) -> tuple[Fraction, BivPoly]:
        """Split into (content, primitive integer part with positive lead)."""
        if self.is_zero():
            return Fraction(0), self
        den = 1
        for p in self.tc:
            for c in p.coeffs:
                den = den * c.denominator // math.gcd(den, c.denominator)
        g = 0
        for p in self.tc:
            for c in p.coeffs:
                g = math.gcd(g, int(c * den))
        content = Fraction(g, den)
        if self.tc[-1].leading() < 0:
            content = -content
        return content, BivPoly(p * (1 / content) for p in self.tc)


def _as_biv(p) -> BivPoly:
    if isinstance(p, BivPoly):
        return p
    return BivPoly((_as_poly(p),))


class BivariateRationalFunction:
    """num / prod(f**m) over Q(x, t).

    The denominator is kept as a list of primitive integer factors with
    positive leading coefficient; all rational content lives in ``num``.
    Keeping the factorisation lets t-derivatives raise multiplicities by one
    instead of squaring the denominator.
    """

    __slots__ = ("num", "factors")

    def __init__(self, num, factors: Sequence[tuple[BivPoly, int]] = ()):
        num = _as_biv(num)
        merged: dict[BivPoly, int] = {}
        for f, m in factors:
            f = _as_biv(f)
            if f.is_zero():
                raise ExactArithmeticError("bivariate rational function with zero denominator")
            content, prim = f.normalized()
            num = num * (1 / content**m)
            if prim == BivPoly((1,)) or m == 0:
                continue
            merged[prim] = merged.get(prim, 0) + m
        self.num = num
        self.factors: tuple[tuple[BivPoly, int], ...] = tuple(merged.items())

    @classmethod
    def from_parts(cls, num, den) -> BivariateRationalFunction:
        return cls(num, [(den, 1)])

    @property
    def den(self) -> BivPoly:
        out = BivPoly((1,))
        for f, m in self.factors:
            out = out * f**m
        return out

    def __repr__(self) -> str:
        return f"BivariateRationalFunction({self.num!r} / {list(self.factors)!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariateRationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __add__(self, other) -> BivariateRationalFunction:
        other = _as_brf(other)
        mine, theirs = dict(self.factors), dict(other.factors)
        common = {f: max(mine.get(f, 0), theirs.get(f, 0)) for f in {*mine, *theirs}}
        num = BivPoly()
        for part, fac in ((self.num, mine), (other.num, theirs)):
            term = part
            for f, m in common.items():
                extra = m - fac.get(f, 0)
                if extra:
                    term = term * f**extra
            num = num + term
        return BivariateRationalFunction(num, list(common.items()))

    __radd__ = __add__

    def __mul__(self, other) -> BivariateRationalFunction:
        other = _as_brf(other)
        return BivariateRationalFunction(
            self.num * other.num, list(self.factors) + list(other.factors)
        )

    __rmul__ = __mul__


def _as_brf(f) -> BivariateRationalFunction:
    if isinstance(f, BivariateRationalFunction):
        return f
    return BivariateRationalFunction(_as_biv(f))


def biv_diff_t(f: BivariateRationalFunction) -> BivariateRationalFunction:
    """Exact partial derivative in t.

    For N / prod f_j**m_j only t-dependent factors gain one multiplicity:
    d/dt = (N_t prod f_j - N sum_j m_j f_j' prod_{l != j} f_l) / prod f_j**(m_j+1).
    """
    live = [(g, m) for g, m in f.factors if g.depends_on_t()]
    prod_all = BivPoly((1,))
    for g, _ in live:
        prod_all = prod_all * g
    num = f.num.diff_t() * prod_all
    for j, (g, m) in enumerate(live):
        others = BivPoly((1,))
        for l, (h, _) in enumerate(live):
            if l != j:
                others = others * h
        num = num - f.num * g.diff_t() * others * m
    factors = [(g, m + 1) if g.depends_on_t() else (g, m) for g, m in f.factors]
    return BivariateRationalFunction(num, factors)


def biv_t_times(f: BivariateRationalFunction) -> BivariateRationalFunction:
    """Multiply by t; with :func:`biv_diff_t` this realises t d/dt."""
    return BivariateRationalFunction(f.num * BivPoly.t(), f.factors)


def biv_eval_t(f: BivariateRationalFunction, t0: Number) -> RationalFunction:
    """Substitute t = t0, returning a reduced rational function of x."""
    factors = []
    for g, m in f.factors:
        gx = g.eval_t(t0)
        if gx.is_zero():
            raise ExactArithmeticError(f"denominator vanishes identically at t={t0}")
        factors.append((gx, m))
    return RationalFunction.from_factors(f.num.eval_t(t0), factors)


def biv_series(f: BivariateRationalFunction, xdeg: int, tdeg: int) -> list[list[Fraction]]:
    """Coefficients c[i][j] of x**i t**j in the expansion of f at (0, 0)."""
    den = f.den
    num_terms: dict[tuple[int, int], Fraction] = {}
    for j, p in enumerate(f.num.tc):
        for i, c in enumerate(p.coeffs):
            if c and i <= xdeg and j <= tdeg:
                num_terms[(i, j)] = c
    den_terms = [
        (i, j, c) for j, p in enumerate(den.tc) for i, c in enumerate(p.coeffs) if c
    ]
    d00 = den.coeff(0, 0)
    if d00 == 0:
        raise ExactArithmeticError("bivariate expansion undefined: den(0, 0) == 0")
    # integer scaling as in series_coeffs, with total degree i + j
    nden = 1
    for c in num_terms.values():
        nden = nden * c.denominator // math.gcd(nden, c.denominator)
    dden = 1
    for _, _, c in den_terms:
        dden = dden * c.denominator // math.gcd(dden, c.denominator)
    num_int = {k: int(c * nden) for k, c in num_terms.items()}
    den_int = [(i, j, int(c * dden)) for i, j, c in den_terms if (i, j) != (0, 0)]
    d0 = int(d00 * dden)
    maxdeg = xdeg + tdeg + 2
    dpow = [1]
    for _ in range(maxdeg + 1):
        dpow.append(dpow[-1] * d0)
    big = [[0] * (tdeg + 1) for _ in range(xdeg + 1)]
    out = [[Fraction(0)] * (tdeg + 1) for _ in range(xdeg + 1)]
    for i in range(xdeg + 1):
        row = big[i]
        for j in range(tdeg + 1):
            acc = num_int.get((i, j), 0) * dpow[i + j]
            for p, q, c in den_int:
                if p <= i and q <= j:
                    acc -= c * big[i - p][j - q] * dpow[p + q - 1]
            row[j] = acc
            out[i][j] = Fraction(acc * dden, dpow[i + j + 1] * nden)
    return out


# --------------------------------------------------------------------------
# decimal rendering


def truncated_decimal(q: Number, places: int) -> str:
    """Decimal string of q with exactly ``places`` fractional digits, truncated."""
    q = Fraction(q)
    sign = "-" if q < 0 else ""
    q = abs(q)
    ip, rem = divmod(q.numerator, q.denominator)
    if places <= 0:
        return f"{sign}{ip}"
    frac = rem * 10**places // q.denominator
    return f"{sign}{ip}.{frac:0{places}d}"


def decimal_of_width(q: Number, width: int) -> str:
    """Truncated decimal rendering that is exactly ``width`` characters long."""
    q = Fraction(q)
    head = truncated_decimal(q, 0)
    places = width - len(head) - 1
    if places < 1:
        raise ValueError(f"width {width} too small for {head}")
    return truncated_decimal(q, places)


def round_significant(q: Number, sig: int) -> str:
    """Round |q| half-up to ``sig`` significant digits (exact)."""
    q = Fraction(q)
    if q == 0:
        return "0"
    sign = "-" if q < 0 else ""
    q = abs(q)
    e = len(str(q.numerator // q.denominator)) if q >= 1 else 0
    if q < 1:
        while q * 10 ** (-e + 1) < 1:
            e -= 1
    places = sig - e
    scaled = q * Fraction(10) ** places
    digits = int(scaled + Fraction(1, 2))
    if len(str(digits)) > sig:  # carry rolled over, e.g. 9.99 -> 10.0
        places -= 1
        digits = int(q * Fraction(10) ** places + Fraction(1, 2))
    if places <= 0:
        return f"{sign}{digits * 10 ** (-places)}"
    s = str(digits).rjust(places + 1, "0")
    return f"{sign}{s[:-places]}.{s[-places:]}"


def sqrt_decimal(q: Number, places: int) -> str:
    """Truncated decimal of sqrt(q) for q >= 0."""
    q = Fraction(q)
    if q < 0:
        raise ExactArithmeticError("square root of a negative rational")
    scaled = q.numerator * 10 ** (2 * places) // q.denominator
    root = math.isqrt(scaled)
    ip, frac = divmod(root, 10**places)
    if places <= 0:
        return str(ip)
    return f"{ip}.{frac:0{places}d}"
