from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evilreals.digits import (
    CertificationError,
    ConstantDescriptor,
    DigitStream,
    StreamExhausted,
    TextDigitStream,
    _pi_hutton,
    _pi_machin,
    champernowne_digit,
    champernowne_digits,
    compute_fixed_point,
    digits,
    integer_sqrt,
    pi_fixed_point,
    to_base_digits,
)

PI_50 = "314159265358979323846264338327950288419716939937510"

DESCRIPTORS = [
    ConstantDescriptor("pi"),
    ConstantDescriptor("e"),
    ConstantDescriptor("golden"),
    ConstantDescriptor("golden_minus_one"),
    ConstantDescriptor("champernowne"),
    ConstantDescriptor.sqrt(2),
    ConstantDescriptor.rational(22, 7),
    ConstantDescriptor.times_pi(1299709),
    ConstantDescriptor.pi_times_sqrt(9973),
]


def test_fixed_point_examples():
    v = compute_fixed_point(ConstantDescriptor.rational(1, 3), 10, 5)
    assert v.mantissa == 33333 and v.error_bound == F(1, 3)
    assert compute_fixed_point(ConstantDescriptor.sqrt(5), 10, 10).mantissa == 22360679774
    p = compute_fixed_point(ConstantDescriptor("pi"), 10, 50)
    assert str(p.mantissa) == PI_50
    assert p.error_bound < 1


def test_pi_fixed_point_examples():
    v = pi_fixed_point(10, 12)
    assert str(v.mantissa).startswith("3141592653589")
    assert v.error_bound < 1
    # 11.0010010000 in binary
    assert format(pi_fixed_point(2, 10).mantissa, "b") == "110010010000"
    with pytest.raises(ValueError):
        pi_fixed_point(10, 0)


@pytest.mark.parametrize("b", [2, 3, 10, 16])
def test_pi_series_agree(b):
    for H in (20, 200, 1000):
        unity = b**H
        (m, em), (h, eh) = _pi_machin(unity), _pi_hutton(unity)
        assert abs(m - h) <= 2 + em + eh


def test_integer_sqrt_examples():
    assert integer_sqrt(0) == 0
    assert integer_sqrt(5 * 10**20) == 22360679774
    assert integer_sqrt(144) == 12
    with pytest.raises(ValueError):
        integer_sqrt(-1)


@given(st.integers(0, 10**80))
def test_integer_sqrt_property(n):
    s = integer_sqrt(n)
    assert s * s <= n < (s + 1) * (s + 1)


@given(st.integers(0, 10**30), st.integers(2, 40))
def test_to_base_digits_roundtrip(n, b):
    ds = to_base_digits(n, b)
    assert all(0 <= d < b for d in ds)
    assert (not ds) or ds[0] != 0
    acc = 0
    for d in ds:
        acc = acc * b + d
    assert acc == n


def test_digits_examples():
    assert digits(ConstantDescriptor("golden_minus_one"), 10, 10) == [6, 1, 8, 0, 3, 3, 9, 8, 8, 7]
    assert digits(ConstantDescriptor.rational(1), 10, 5) == [1, 0, 0, 0, 0]
    assert digits(ConstantDescriptor.times_pi(2), 10, 3) == [6, 2, 8]
    assert digits(ConstantDescriptor("e"), 10, 10) == [2, 7, 1, 8, 2, 8, 1, 8, 2, 8]


def test_champernowne():
    assert champernowne_digits(10, 16) == [1, 2, 3, 4, 5, 6, 7, 8, 9, 1, 0, 1, 1, 1, 2, 1]
    assert champernowne_digits(2, 8) == [1, 1, 0, 1, 1, 1, 0, 0]
    naive = champernowne_digits(10, 100_000)
    assert all(champernowne_digit(10, i + 1) == d for i, d in enumerate(naive))
    naive3 = champernowne_digits(3, 5000)
    assert [champernowne_digit(3, i + 1) for i in range(5000)] == naive3
    # far out, without building the prefix: 10**12 has 13 digits
    assert champernowne_digit(10, 10**13) in range(10)


@pytest.mark.parametrize("const", DESCRIPTORS, ids=lambda c: c.label)
def test_escalation_stability(const):
    for b in (10, 7):
        lo = DigitStream(const, b, initial_precision=1000).take(2000)
        hi = DigitStream(const, b, initial_precision=2000).take(2000)
        assert lo == hi
        assert len(lo) == 2000 or const.kind == "rational"


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 10**4), st.integers(2, 16))
def test_rational_round_trip(p, q, b):
    c = ConstantDescriptor.rational(p, q)
    s = DigitStream(c, b, initial_precision=40)
    ints = s.integer_digits
    value = 0
    for d in ints:
        value = value * b + d
    frac = [s.fraction_digit(i) for i in range(1, 41)]
    approx = F(value) + sum(F(d, b**i) for i, d in enumerate(frac, start=1))
    assert 0 <= F(p, q) - approx < F(1, b**40)


@given(st.integers(0, 10**6), st.integers(1, 60), st.integers(2, 16))
def test_sqrt_identity(m, H, b):
    v = compute_fixed_point(ConstantDescriptor.sqrt(m), b, H)
    gap = m * b ** (2 * H) - v.mantissa**2
    assert 0 <= gap < 2 * v.mantissa + 1


@pytest.mark.parametrize("p", [2, 3, 97, 1299709])
def test_product_bounds(p):
    c = ConstantDescriptor.times_pi(p)
    v = compute_fixed_point(c, 10, 300)
    pi = compute_fixed_point(ConstantDescriptor("pi"), 10, 320)
    approx = p * pi.as_fraction()
    assert abs(v.as_fraction() - approx) < F(2, 10**300)


def test_terminating_expansion_stops():
    s = DigitStream(ConstantDescriptor.rational(1, 8), 10)
    assert list(s) == [1, 2, 5]
    assert list(DigitStream(ConstantDescriptor.rational(3), 10)) == [3]
    assert list(DigitStream(ConstantDescriptor.rational(0), 10)) == []


def test_leading_zeros_skipped():
    s = DigitStream(ConstantDescriptor.rational(1, 300), 10)
    assert s.take(4) == [3, 3, 3, 3]
    assert [s.fraction_digit(i) for i in (1, 2, 3)] == [0, 0, 3]


def test_bad_descriptors():
    with pytest.raises(ValueError):
        ConstantDescriptor("tau")
    with pytest.raises(ValueError):
        ConstantDescriptor.rational(1, 0)
    with pytest.raises(ValueError):
        ConstantDescriptor.pi_times_sqrt(0)


def test_escalation_cap(monkeypatch):
    # an interval that never narrows can never certify a digit
    monkeypatch.setattr("evilreals.digits._interval", lambda c, b, S: (0, b**S))
    s = DigitStream(ConstantDescriptor("pi"), 10, initial_precision=10, max_escalations=3)
    with pytest.raises(CertificationError):
        s.fraction_digit(1)


def test_text_stream(tmp_path):
    path = tmp_path / "d.txt"
    path.write_text("003.14\n15 92\n")
    s = TextDigitStream.from_file(path, 10)
    it = iter(s)
    assert [next(it) for _ in range(7)] == [3, 1, 4, 1, 5, 9, 2]
    with pytest.raises(StreamExhausted):
        next(it)
    with pytest.raises(ValueError):
        TextDigitStream("12a", 10)
    with pytest.raises(ValueError):
        TextDigitStream("1.2.3", 10)
