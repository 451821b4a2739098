"""Certified base-b digit expansions of computable constants.

Every constant is evaluated as an integer interval ``[lo, hi]`` containing
``value * b**S``. Digits are only emitted once the interval pins them down,
so asking for more precision can never change a digit already handed out.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator

MAX_ESCALATIONS = 8
GUARD_DIGITS = 16


class CertificationError(RuntimeError):
    """Digits could not be certified (or two independent evaluations disagree)."""


class StreamExhausted(CertificationError):
    """A finite, user-supplied expansion ran out before a decision was reached."""


KINDS = {
    "rational": 2,
    "sqrt": 1,
    "golden_minus_one": 0,
    "golden": 0,
    "pi": 0,
    "e": 0,
    "champernowne": 0,
    "pi_times_sqrt": 1,
    "rational_times_pi": 2,
}


@dataclass(frozen=True)
class ConstantDescriptor:
    kind: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unsupported constant kind {self.kind!r}")
        if len(self.params) != KINDS[self.kind]:
            raise ValueError(f"{self.kind} takes {KINDS[self.kind]} integer parameter(s)")
        if self.kind == "rational":
            p, q = self.params
            if q < 1 or p < 0:
                raise ValueError("rational(p, q) needs p >= 0 and q >= 1")
        elif self.kind == "sqrt" and self.params[0] < 0:
            raise ValueError("sqrt(m) needs m >= 0")
        elif self.kind == "pi_times_sqrt" and self.params[0] < 1:
            raise ValueError("pi_times_sqrt(x) needs x >= 1")
        elif self.kind == "rational_times_pi":
            p, q = self.params
            if p < 1 or q < 1:
                raise ValueError("rational_times_pi(p, q) needs p >= 1 and q >= 1")

    @classmethod
    def rational(cls, p: int, q: int = 1) -> ConstantDescriptor:
        return cls("rational", (p, q))

    @classmethod
    def sqrt(cls, m: int) -> ConstantDescriptor:
        return cls("sqrt", (m,))

    @classmethod
    def pi_times_sqrt(cls, x: int) -> ConstantDescriptor:
        return cls("pi_times_sqrt", (x,))

    @classmethod
    def times_pi(cls, p: int, q: int = 1) -> ConstantDescriptor:
        return cls("rational_times_pi", (p, q))

    @property
    def label(self) -> str:
        k, ps = self.kind, self.params
        if k == "rational":
            return f"{ps[0]}/{ps[1]}"
        if k == "sqrt":
            return f"sqrt({ps[0]})"
        if k == "pi_times_sqrt":
            return f"pi*sqrt({ps[0]})"
        if k == "rational_times_pi":
            return f"{ps[0]}*pi" if ps[1] == 1 else f"{ps[0]}/{ps[1]}*pi"
        return {"golden_minus_one": "golden-1"}.get(k, k)

    @property
    def exact_floor(self) -> bool:
        """True when floor(value * b**S) is computed exactly (no interval slack)."""
        return self.kind in ("rational", "sqrt", "golden", "golden_minus_one", "champernowne")


@dataclass(frozen=True)
class FixedPointValue:
    """``mantissa / base**scale`` approximates the value within ``error_bound`` ulp."""

    mantissa: int
    scale: int
    base: int
    error_bound: Fraction

    def as_fraction(self) -> Fraction:
        return Fraction(self.mantissa, self.base**self.scale)


# --------------------------------------------------------------------------
# integer kernels


def integer_sqrt(n: int) -> int:
    """floor(sqrt(n)) by integer Newton iteration."""
    if n < 0:
        raise ValueError("integer_sqrt of a negative number")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + 1) // 2)  # >= sqrt(n)
    while True:
        y = (x + n // x) // 2
        if y >= x:
            break
        x = y
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


def to_base_digits(n: int, b: int) -> list[int]:
    """Base-b digits of n >= 0, most significant first ([] for 0)."""
    if n < 0:
        raise ValueError("negative")
    if n == 0:
        return []
    if b == 10:
        return [ord(ch) - 48 for ch in str(n)]
    if b in (2, 8, 16):
        spec = {2: "b", 8: "o", 16: "x"}[b]
        return [int(ch, 16) for ch in format(n, spec)]
    # peel chunks of k digits at a time
    k = max(1, 60 // max(1, b.bit_length()))
    chunk = b**k
    parts = []
    while n:
        n, r = divmod(n, chunk)
        parts.append(r)
    out: list[int] = []
    for idx, r in enumerate(reversed(parts)):
        ds = []
        for _ in range(k):
            r, d = divmod(r, b)
            ds.append(d)
        ds.reverse()
        out.extend(ds)
    i = 0
    while out[i] == 0:
        i += 1
    return out[i:]


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _arctan_inv(x: int, unity: int) -> tuple[int, int]:
    """(v, err) with |arctan(1/x) * unity - v| <= err."""
    total = 0
    power = unity // x
    x2 = x * x
    k = 0
    while power:
        term = power // (2 * k + 1)
        total += -term if k & 1 else term
        power //= x2
        k += 1
    # each term is off by < 2.2, the neglected tail by < 1.2
    return total, 3 * k + 2


def _pi_machin(unity: int) -> tuple[int, int]:
    a5, e5 = _arctan_inv(5, unity)
    a239, e239 = _arctan_inv(239, unity)
    return 4 * (4 * a5 - a239), 16 * e5 + 4 * e239


def _pi_hutton(unity: int) -> tuple[int, int]:
    a3, e3 = _arctan_inv(3, unity)
    a7, e7 = _arctan_inv(7, unity)
    return 4 * (2 * a3 + a7), 8 * e3 + 4 * e7


def _pi_guard(b: int, scale: int) -> int:
    return 2 * math.ceil(math.log(max(scale, 2), b)) + 8


# per base: (certified scale, working scale, lo, hi); replaced wholesale, never mutated
_PI_CACHE: dict[int, tuple[int, int, int, int]] = {}


def _pi_interval(b: int, scale: int) -> tuple[int, int]:
    cached = _PI_CACHE.get(b)
    if cached is None or cached[0] < scale:
        want = max(scale, 2 * cached[0] if cached else 0)
        work = want + _pi_guard(b, want)
        unity = b**work
        m, em = _pi_machin(unity)
        h, eh = _pi_hutton(unity)
        # the two series must agree to 2 ulp at the certified scale
        if abs(m - h) > em + eh or abs(m - h) > 2 * b ** (work - want):
            raise CertificationError(
                f"pi self-check failed in base {b} at scale {work}: |machin - hutton| = {abs(m - h)}"
            )
        lo, hi = max(m - em, h - eh), min(m + em, h + eh)
        _PI_CACHE[b] = cached = (want, work, lo, hi)
    _, work, lo, hi = cached
    shift = b ** (work - scale)
    return lo // shift, _ceil_div(hi, shift)


def pi_fixed_point(b: int, H: int) -> FixedPointValue:
    if H < 1:
        raise ValueError("H must be >= 1")
    return compute_fixed_point(ConstantDescriptor("pi"), b, H)


def _e_interval(unity: int) -> tuple[int, int]:
    total = 0
    term = unity
    k = 0
    while term:
        total += term
        k += 1
        term //= k
    return total, total + 2 * k + 4


def champernowne_digit(b: int, index: int) -> int:
    """The index-th (1-based) digit of 0.1 2 ... (b-1) 10 11 ... in base b."""
    if index < 1:
        raise ValueError("index is 1-based")
    width = 1
    count = b - 1  # numbers with `width` digits
    first = 1
    i = index - 1
    while i >= width * count:
        i -= width * count
        width += 1
        count *= b
        first *= b
    number = first + i // width
    return to_base_digits(number, b)[i % width]


def champernowne_digits(b: int, count: int) -> list[int]:
    if count < 1:
        raise ValueError("count must be >= 1")
    out: list[int] = []
    k = 1
    while len(out) < count:
        out.extend(to_base_digits(k, b))
        k += 1
    return out[:count]


def _interval(c: ConstantDescriptor, b: int, S: int) -> tuple[int, int]:
    """Integers lo <= value * b**S <= hi; for exact-floor kinds lo is the floor."""
    k, ps = c.kind, c.params
    unity = b**S
    if k == "rational":
        p, q = ps
        lo, r = divmod(p * unity, q)
        return lo, lo if r == 0 else lo + 1
    if k == "sqrt":
        n = ps[0] * unity * unity
        s = integer_sqrt(n)
        return s, s if s * s == n else s + 1
    if k in ("golden", "golden_minus_one"):
        s = integer_sqrt(5 * unity * unity)
        top = unity + s if k == "golden" else s - unity
        return top // 2, top // 2 + 1
    if k == "champernowne":
        lo = 0
        for i in range(1, S + 1):
            lo = lo * b + champernowne_digit(b, i)
        return lo, lo + 1
    if k == "pi":
        return _pi_interval(b, S)
    if k == "e":
        return _e_interval(unity)
    if k == "pi_times_sqrt":
        pl, ph = _pi_interval(b, S)
        n = ps[0] * unity * unity
        s = integer_sqrt(n)
        sh = s if s * s == n else s + 1
        return (pl * s) // unity, _ceil_div(ph * sh, unity)
    if k == "rational_times_pi":
        p, q = ps
        pl, ph = _pi_interval(b, S)
        return (p * pl) // q, _ceil_div(p * ph, q)
    raise ValueError(f"unsupported constant kind {k!r}")


def _guard(c: ConstantDescriptor, b: int, H: int) -> int:
    g = 2 * math.ceil(math.log(max(H, 2), b)) + GUARD_DIGITS
    if c.kind in ("pi_times_sqrt", "rational_times_pi"):
        g += len(to_base_digits(max(c.params), b))
    return g


def compute_fixed_point(c: ConstantDescriptor, b: int, H: int) -> FixedPointValue:
    """Value at scale H with error below one unit in the last place."""
    if H < 1:
        raise ValueError("H must be >= 1")
    if b < 2:
        raise ValueError("base must be >= 2")
    if c.kind == "rational":
        p, q = c.params
        m, r = divmod(p * b**H, q)
        return FixedPointValue(m, H, b, Fraction(r, q))
    if c.exact_floor:
        lo, hi = _interval(c, b, H)
        return FixedPointValue(lo, H, b, Fraction(hi - lo))
    g = _guard(c, b, H)
    for _ in range(MAX_ESCALATIONS + 1):
        lo, hi = _interval(c, b, H + g)
        shift = b**g
        m = lo // shift
        if m == hi // shift:
            return FixedPointValue(m, H, b, Fraction(hi, shift) - m)
        g *= 2
    raise CertificationError(f"{c.label}: could not certify floor at scale {H}")


def digits(c: ConstantDescriptor, b: int, count: int) -> list[int]:
    """First ``count`` digits of the point-free expansion (leading zeros skipped)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    out = []
    for d in DigitStream(c, b, initial_precision=count + 8):
        out.append(d)
        if len(out) == count:
            break
    out.extend([0] * (count - len(out)))  # terminating expansion
    return out


# --------------------------------------------------------------------------
# streams


def initial_precision(b: int, n: int, integer_digits: int = 0) -> int:
    """Fractional digits to start with when scanning for target n."""
    return math.ceil(2 * n / (b - 1)) + integer_digits + 96


class DigitStream:
    """Pull interface over the certified digits of a constant.

    ``integer_digits`` holds the integer part (no leading zeros); fractional
    digits are 1-based. Iterating yields the integer digits followed by the
    fraction, skipping leading zeros, and stops after the last nonzero digit
    of a terminating expansion.
    """

    def __init__(
        self,
        const: ConstantDescriptor,
        base: int = 10,
        *,
        initial_precision: int = 128,
        precision_scale: int = 1,
        max_escalations: int = MAX_ESCALATIONS,
    ):
        if base < 2:
            raise ValueError("base must be >= 2")
        self.const = const
        self.base = base
        self.max_escalations = max_escalations
        self._scale = max(1, initial_precision * precision_scale)
        self._escalations = 0
        self.integer_digits: list[int] = []
        self._frac: list[int] = []
        self._exact = False  # value fully known: digits past _frac are zero
        self._refine(self._scale)

    @property
    def certified_upto(self) -> int:
        return len(self._frac)

    @property
    def precision(self) -> int:
        return self._scale

    def _refine(self, S: int) -> None:
        c, b = self.const, self.base
        if c.kind == "champernowne":
            start = len(self._frac) + 1
            self._frac.extend(champernowne_digit(b, i) for i in range(start, S + 1))
            return
        if c.exact_floor:
            lo, hi = _interval(c, b, S)
            self._accept(lo, lo if lo == hi else lo + 1, S, exact_floor=True)
            return
        g = _guard(c, b, S)
        lo, hi = _interval(c, b, S + g)
        self._accept(lo, hi, S + g, exact_floor=False)

    def _accept(self, lo: int, hi: int, S: int, *, exact_floor: bool) -> None:
        b = self.base
        unity = b**S
        ip_lo, f_lo = divmod(lo, unity)
        ip_hi, f_hi = divmod(hi, unity)
        if exact_floor:
            ip_hi, f_hi = ip_lo, f_lo
        elif ip_lo != ip_hi:
            return  # integer part not settled yet; caller escalates
        ints = to_base_digits(ip_lo, b)
        if self._frac and ints != self.integer_digits:
            raise CertificationError(f"{self.const.label}: integer part changed under refinement")
        self.integer_digits = ints
        dl = to_base_digits(f_lo, b)
        dl = [0] * (S - len(dl)) + dl
        if exact_floor:
            certified = dl
        else:
            dh = to_base_digits(f_hi, b)
            dh = [0] * (S - len(dh)) + dh
            n = 0
            while n < S and dl[n] == dh[n]:
                n += 1
            certified = dl[:n]
        old = self._frac
        if certified[: len(old)] != old[: len(certified)]:
            raise CertificationError(f"{self.const.label}: certified digits changed under refinement")
        if len(certified) > len(old):
            self._frac = certified
        if lo == hi:
            self._exact = True

    def _ensure(self, count: int) -> bool:
        """Make at least ``count`` fractional digits available; False if the expansion ends."""
        while len(self._frac) < count:
            if self._exact:
                return False
            if self._escalations >= self.max_escalations and self.const.kind != "champernowne":
                raise CertificationError(
                    f"{self.const.label}: digit {count} not certified after "
                    f"{self._escalations} escalations (precision {self._scale})"
                )
            self._escalations += 1
            self._scale = max(2 * self._scale, count + 8)
            self._refine(self._scale)
        return True

    def fraction_digit(self, i: int) -> int:
        """The i-th digit after the point (1-based)."""
        if not self._ensure(i):
            return 0
        return self._frac[i - 1]

    def _last_nonzero(self) -> int:
        for i in range(len(self._frac), 0, -1):
            if self._frac[i - 1]:
                return i
        return 0

    def fraction_digits(self) -> Iterator[int]:
        """Digits after the point; ends after the last nonzero digit of a terminating expansion."""
        i = 1
        while True:
            if not self._ensure(i):
                return
            if self._exact and i > self._last_nonzero():
                return
            yield self._frac[i - 1]
            i += 1

    def __iter__(self) -> Iterator[int]:
        yield from self.integer_digits
        it = self.fraction_digits()
        if not self.integer_digits:
            for d in it:
                if d:
                    yield d
                    break
        yield from it

    def take(self, count: int) -> list[int]:
        out = []
        for d in self:
            if len(out) == count:
                break
            out.append(d)
        return out


class TextDigitStream:
    """Finite digit expansion read from text: digits, an optional point, whitespace ignored."""

    def __init__(self, text: str, base: int = 10, label: str = "text"):
        cleaned = re.sub(r"\s+", "", text)
        if cleaned.count(".") > 1:
            raise ValueError("more than one point in digit text")
        head, _, tail = cleaned.partition(".")
        vals = []
        for part in (head, tail):
            try:
                ds = [int(ch, 36) for ch in part]
            except ValueError as exc:
                raise ValueError(f"invalid digit in {label}: {exc}") from None
            if any(d >= base for d in ds):
                raise ValueError(f"{label}: digit out of range for base {base}")
            vals.append(ds)
        ints, frac = vals
        while ints and ints[0] == 0:
            ints = ints[1:]
        self.base = base
        self.label = label
        self.integer_digits = ints
        self._frac = frac

    @classmethod
    def from_file(cls, path, base: int = 10) -> TextDigitStream:
        path = Path(path)
        return cls(path.read_text(), base, label=str(path))

    @property
    def certified_upto(self) -> int:
        return len(self._frac)

    def fraction_digits(self) -> Iterator[int]:
        yield from self._frac
        raise StreamExhausted(f"{self.label}: ran out after {len(self._frac)} fractional digits")

    def __iter__(self) -> Iterator[int]:
        yield from self.integer_digits
        it = self.fraction_digits()
        if not self.integer_digits:
            for d in it:
                if d:
                    yield d
                    break
        yield from it
