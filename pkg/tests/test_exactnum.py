import random
from fractions import Fraction
from math import gcd

import pytest

from radnorm.exactnum import (
    binomial,
    factorial,
    format_rational,
    parse_rational,
    pochhammer,
    rational_pow,
)


def test_factorial_base_cases():
    assert factorial(0) == 1
    assert factorial(5) == 120


def test_factorial_20_against_iterated_multiplication():
    expected = 1
    for i in range(1, 21):
        expected *= i
    assert factorial(20) == expected == 2432902008176640000


def test_factorial_rejects_negative():
    with pytest.raises(ValueError):
        factorial(-1)


def test_pochhammer_order_zero_is_one_for_every_argument():
    assert pochhammer(Fraction(7, 3), 0) == 1
    assert pochhammer(0, 0) == 1
    assert pochhammer(-5, 0) == 1


def test_pochhammer_small_values():
    assert pochhammer(3, 2) == 6
    assert pochhammer(Fraction(1, 2), 2) == Fraction(-1, 4)


def test_pochhammer_rejects_negative_order():
    with pytest.raises(ValueError):
        pochhammer(Fraction(1), -1)


def test_pochhammer_recurrences_on_random_rationals():
    rng = random.Random(7)
    for _ in range(200):
        nu = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        k = rng.randint(1, 8)
        assert pochhammer(nu, k) == nu * pochhammer(nu - 1, k - 1)
        assert pochhammer(nu, k) == pochhammer(nu, k - 1) * (nu - k + 1)


def test_binomial_small_values():
    assert binomial(1, 1) == 1
    assert binomial(Fraction(-1, 2), 2) == Fraction(3, 8)
    assert binomial(5, 2) == 10


def test_binomial_matches_pascal_recurrence_for_integers():
    rows = [[1]]
    for n in range(1, 13):
        prev = rows[-1] + [0]
        rows.append([1] + [prev[k - 1] + prev[k] for k in range(1, n + 1)])
    for n in range(13):
        for k in range(n + 1):
            assert binomial(n, k) == rows[n][k]


def test_binomial_vanishes_exactly_on_short_nonnegative_integers():
    for nu in range(8):
        for k in range(10):
            assert (binomial(nu, k) == 0) == (nu < k)
    # never zero for negative or non-integer rational arguments
    rng = random.Random(11)
    for _ in range(100):
        nu = Fraction(rng.randint(-30, 30), rng.choice([2, 3, 4, 5, 7]))
        if nu.denominator == 1 and nu >= 0:
            continue
        assert binomial(nu, rng.randint(0, 9)) != 0
    for nu in range(-6, 0):
        assert binomial(nu, 4) != 0


def test_results_are_stored_reduced():
    rng = random.Random(3)
    for _ in range(100):
        nu = Fraction(rng.randint(-20, 20), rng.randint(1, 12))
        value = binomial(nu, rng.randint(0, 7))
        assert value.denominator > 0
        assert gcd(abs(value.numerator), value.denominator) == 1


def test_parse_format_round_trip():
    for text in ["-3/2", "7", "0", "+5/3", "4/6", "-10/4"]:
        value = parse_rational(text)
        assert parse_rational(format_rational(value)) == value
    assert parse_rational("4/6") == Fraction(2, 3)  # normalized on read
    assert format_rational(Fraction(-3, 2)) == "-3/2"
    assert format_rational(Fraction(7)) == "7"


@pytest.mark.parametrize("bad", ["1/0", "0/0", "1.5", "", "3/-4", "a", "1 /2", "1/2/3", "/3"])
def test_parse_rejects_malformed_input(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_division_by_zero_is_an_error():
    with pytest.raises(ZeroDivisionError):
        Fraction(1) / Fraction(0)


def test_rational_pow_exact_cases():
    assert rational_pow(Fraction(25), Fraction(1, 2)) == 5
    assert rational_pow(Fraction(8, 27), Fraction(-2, 3)) == Fraction(9, 4)
    assert rational_pow(Fraction(5), 3) == 125
    assert rational_pow(Fraction(5, 2), -2) == Fraction(4, 25)
    assert rational_pow(Fraction(-2), 3) == -8
    assert rational_pow(Fraction(0), Fraction(1, 2)) == 0


def test_rational_pow_rejects_irrational_results():
    with pytest.raises(ValueError):
        rational_pow(Fraction(2), Fraction(1, 2))
    with pytest.raises(ValueError):
        rational_pow(Fraction(-4), Fraction(1, 2))
    with pytest.raises(ZeroDivisionError):
        rational_pow(Fraction(0), Fraction(-1, 2))


def test_rational_pow_round_trips_random_powers():
    rng = random.Random(5)
    for _ in range(100):
        base = Fraction(rng.randint(1, 30), rng.randint(1, 30))
        q = rng.randint(1, 4)
        p = rng.randint(-3, 3)
        assert rational_pow(base ** q, Fraction(p, q)) == base ** p
