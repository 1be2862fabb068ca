"""Exact rational scalars and the combinatorial primitives built on them.

Every scalar in this package is a `fractions.Fraction` (re-exported as
`Rational`): always stored reduced with a positive denominator, arithmetic
is exact, and division by zero raises instead of producing a value.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Rational",
    "parse_rational",
    "format_rational",
    "factorial",
    "pochhammer",
    "binomial",
    "rational_pow",
]

Rational = Fraction

# Wire format: optional sign on the numerator, "/q" omitted when q == 1.
_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(text: str) -> Rational:
    """Parse "p/q" (or a bare integer "p") into a reduced Rational.

    The denominator, when present, must be an unsigned nonzero integer.
    Decimals, whitespace and signs on the denominator are rejected with
    ValueError; non-reduced input is accepted and normalized.
    """
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational in p/q form: {text!r}")
    num, sep, den = text.partition("/")
    if sep:
        if int(den) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(num))


def format_rational(value) -> str:
    """Render a value in the wire format "p/q" ("p" when the denominator is 1)."""
    return str(Fraction(value))


def factorial(k: int) -> int:
    """k! as an exact integer; k must be a nonnegative integer."""
    return math.factorial(k)


@lru_cache(maxsize=None)
def pochhammer(nu, k: int) -> Rational:
    """Falling factorial (nu)_k = nu (nu-1) ... (nu-k+1), with (nu)_0 = 1.

    Memoized per (nu, k); the function is pure, so caching is unobservable.
    """
    if k < 0:
        raise ValueError("pochhammer order must be nonnegative")
    nu = Fraction(nu)
    result = Fraction(1)
    for j in range(k):
        result *= nu - j
    return result


def binomial(nu, k: int) -> Rational:
    """Generalized binomial coefficient (nu)_k / k! for rational nu."""
    return pochhammer(Fraction(nu), k) / factorial(k)


def _int_nth_root(value: int, degree: int) -> int | None:
    """Exact degree-th root of a nonnegative integer, or None if not perfect."""
    if value < 0:
        return None
    if value in (0, 1) or degree == 1:
        return value
    # Start above the true root, then Newton-descend to the floor root.
    root = 1 << -(-value.bit_length() // degree)
    while True:
        better = ((degree - 1) * root + value // root ** (degree - 1)) // degree
        if better >= root:
            break
        root = better
    return root if root ** degree == value else None


def rational_pow(base, exponent) -> Rational:
    """base ** exponent exactly, where the exponent may be a Rational.

    Raises ValueError when the true value is irrational (non-perfect root)
    or complex (negative base, fractional exponent), and ZeroDivisionError
    for a zero base with a negative exponent.
    """
    base = Fraction(base)
    exponent = Fraction(exponent)
    if exponent.denominator == 1:
        return base ** exponent.numerator
    if base < 0:
        raise ValueError(f"{base} ** {exponent} is not real")
    num = _int_nth_root(base.numerator, exponent.denominator)
    den = _int_nth_root(base.denominator, exponent.denominator)
    if num is None or den is None:
        raise ValueError(f"{base} ** {exponent} is not rational")
    return Fraction(num, den) ** exponent.numerator
