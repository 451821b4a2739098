from fractions import Fraction as F
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evilreals.evilgf import (
    ConditioningError,
    asymptotic_moment,
    build_H,
    build_h,
    conditional_moments,
    enumerate_first_hits,
    first_hit_distribution,
    first_hit_tail_bound,
    hit_probabilities,
    hit_probabilities_recurrence,
    hit_probability,
    hit_probability_recurrence,
    raw_moment_series,
    scaled_moment,
)
from evilreals.exact import (
    Polynomial,
    RationalFunction,
    biv_series,
    round_significant,
    series_coeffs,
    truncated_decimal,
)

X = Polynomial.x()
ONE_MINUS_X = Polynomial((1, -1))


def test_build_h_base_2_all_ones():
    assert series_coeffs(build_h(2), 40) == [1] * 41


def test_build_h_base_10_closed_form():
    den = Polynomial([-9] + [1] * 9)  # x^9 + ... + x - 9
    alt = series_coeffs(RationalFunction(-9, den), 200)
    assert series_coeffs(build_h(10), 200)[1:] == alt[1:]


def test_build_h_base_3_coefficients():
    assert series_coeffs(build_h(3), 4) == [1, F(1, 2), F(3, 4), F(5, 8), F(11, 16)]


def test_build_H_first_digit_term():
    for b in (3, 10):
        coeffs = biv_series(build_H(b), 12, 1)
        first = series_coeffs(RationalFunction(X * (1 - X ** (b - 1)), ONE_MINUS_X * (b - 1)), 12)
        assert [row[1] for row in coeffs] == first


def test_bad_base_rejected():
    with pytest.raises(ValueError):
        build_h(1)
    with pytest.raises(ValueError):
        hit_probability(10, -1)


def test_hit_probability_examples():
    assert hit_probability(3, 4) == F(11, 16)
    assert hit_probability_recurrence(10, 2) == F(10, 81)
    assert hit_probability_recurrence(2, 7) == 1
    assert all(hit_probability(2, n) == 1 for n in range(20))


def test_probability_string_and_oracle():
    a = hit_probability(10, 666)
    assert truncated_decimal(a, 89) == (
        "0.19999999999999999999999999999999999999999999999999999999999999978337773162864760552794625"
    )
    assert a == hit_probability_recurrence(10, 666)
    assert abs(a - F(1, 5)) < F(1, 10**61)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 12), st.integers(0, 120))
def test_oracle_property(b, n):
    assert hit_probability(b, n) == hit_probability_recurrence(b, n)


def test_limit_is_two_over_b():
    for b in (3, 7, 10):
        a = hit_probabilities(b, 300)
        assert abs(a[300] - F(2, b)) < F(1, 10**10)
        assert abs(a[300] - F(2, b)) <= abs(a[150] - F(2, b))


def test_first_hit_n0():
    assert first_hit_distribution(7, 0, 5) == [1, 0, 0, 0, 0, 0]


def test_first_hit_n1_base10_against_brute_force():
    dist = first_hit_distribution(10, 1, 6)
    hits, _ = enumerate_first_hits(10, 6, 1)
    assert dist == hits[1]
    # the first digit either is 1 or already overshoots
    assert dist[1] == F(1, 9) and all(d == 0 for d in dist[2:])


def test_first_hit_partial_sums_bounded():
    a = hit_probability(10, 60)
    dist = first_hit_distribution(10, 60, 60)
    total = F(0)
    for d in dist:
        assert d >= 0
        total += d
        assert total <= a


def test_first_hit_tail_bound_covers_deficit():
    b, n, K = 10, 30, 40
    a = hit_probability(b, n)
    deficit = a - sum(first_hit_distribution(b, n, K))
    # the hit at location <= K fails only if K-1 digits after the first sum below n
    assert 0 <= deficit <= first_hit_tail_bound(b, n, K - 1)
    assert first_hit_tail_bound(b, n, 2) == 1


def test_brute_force_bracket_small():
    hits, undecided = enumerate_first_hits(3, 8, 4)
    a = hit_probability(3, 4)
    assert sum(hits[4]) <= a <= sum(hits[4]) + undecided[4]
    hits2, und2 = enumerate_first_hits(2, 5, 3)
    assert sum(hits2[3]) + und2[3] == 1


def test_moment_consistency_with_distribution():
    b, n = 5, 12
    rep = conditional_moments(b, n, 2)
    dist = first_hit_distribution(b, n, 90)
    partial = sum(k * d for k, d in enumerate(dist)) / rep.probability
    assert 0 <= rep.mean - partial < F(1, 10**6)


@pytest.mark.parametrize("b", [3, 10])
@pytest.mark.parametrize("i", [1, 2, 3, 4, 5])
def test_pole_order(b, i):
    assert raw_moment_series(b, i).pole_order(1) == i + 1


def test_raw_moment_zero_is_h():
    assert raw_moment_series(10, 0) == build_h(10)


def test_conditional_moments_small():
    rep = conditional_moments(3, 4, 4)
    assert rep.central[0] == 1 and rep.central[1] == 0
    assert rep.scaled[2] == 1
    with pytest.raises(ValueError):
        conditional_moments(3, 4, 1)


def test_conditioning_on_null_event():
    # a_b(n) > 0 for every b >= 2, n >= 0, so check the guard directly
    with pytest.raises(ConditioningError):
        scaled_moment(F(1), F(0), 3)


def test_moments_at_666(moments_10_666):
    rep = moments_10_666
    assert round_significant(rep.mean, 10) == "148.1851852"
    assert rep.central[1] == 0
    approx = F(22, 243) * 666 + F(62, 729)
    assert abs(rep.variance - approx) < F(1, 10**30)
    assert str(rep.scaled[2]).startswith("1.000")


def test_asymptotic_mean_formula():
    for b in (3, 5, 10, 16):
        p = asymptotic_moment(b, 1, centered=False)
        assert p.coeffs == (F(b - 5, 3 * (b - 1)), F(2, b - 1))
    assert asymptotic_moment(10, 1, centered=False).coeffs == (F(5, 27), F(2, 9))


def test_asymptotic_variance_base_3():
    assert asymptotic_moment(3, 2).coeffs == (F(-11, 18), F(2, 3))


def test_asymptotic_fourth_leading_base_10():
    assert asymptotic_moment(10, 4).coeffs[-1] == F(4 * 121, 3 * 6561)


def test_asymptotic_error_decay():
    p = asymptotic_moment(10, 1, centered=False)
    errs = []
    for n in (100, 150):
        rep = conditional_moments(10, n, 2)
        errs.append(abs(rep.mean - p(n)))
    assert errs[0] > 0 and errs[1] * 10 < errs[0]


def test_gaussian_limit_of_leading_terms():
    # central moment i grows like n**(i/2) for even i with ratio (i-1)!!, and
    # strictly slower for odd i, so scaled moments tend to the normal ones
    var = asymptotic_moment(10, 2)
    assert var.degree == 1
    for i in range(3, 17):
        p = asymptotic_moment(10, i)
        if i % 2 == 0:
            assert p.degree == i // 2
            assert p.coeffs[-1] == prod(range(i - 1, 0, -2)) * var.coeffs[-1] ** (i // 2)
        else:
            assert 2 * p.degree < i
