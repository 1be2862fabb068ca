"""Derivative-norm constants of radial power and logarithmic functions.

For u = |x|^s on R^n, the squared Euclidean norm of the full k-th order
derivative tensor (all n^k mixed partials) times |x|^(2(k-s)) is constant
on R^n minus the origin; for u = log|x| the same holds with weight |x|^(2k).
This module computes those constants exactly, three independent ways:

* ``gamma_closed`` / ``ell_closed`` -- the closed double-sum formulas,
* ``gamma_recursive`` / ``ell_recursive`` -- dimension recursion through a
  Taylor composition at the origin (``taylor_compose_norm_sq``),
* product formulas for special parameter values (``gamma_even``,
  ``gamma_special``, ``ell2_special``).

The standalone combinatorial facts the derivations rest on are exposed too
(``half_identity_check``, ``phi_deriv_at_zero``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .exactnum import Rational, binomial, factorial, format_rational, pochhammer

__all__ = [
    "NormKind",
    "ConstantQuery",
    "ConstantValue",
    "METHODS",
    "gamma_closed",
    "ell_closed",
    "gamma_1d",
    "ell_1d",
    "gamma_even",
    "gamma_special",
    "ell2_special",
    "gamma_recursive",
    "ell_recursive",
    "taylor_compose_norm_sq",
    "half_identity_check",
    "phi_deriv_at_zero",
    "power_coeffs",
    "log_coeffs",
    "evaluate_query",
]

METHODS = ("closed", "recursive", "special", "oracle")


@dataclass(frozen=True)
class NormKind:
    """Which function family is queried: |x|^s (power) or log|x|."""

    variant: str
    s: Rational | None = None

    def __post_init__(self):
        if self.variant == "power":
            if self.s is None:
                raise ValueError("power kind requires an exponent s")
            object.__setattr__(self, "s", Fraction(self.s))
        elif self.variant == "logarithm":
            if self.s is not None:
                raise ValueError("logarithm kind takes no exponent")
        else:
            raise ValueError(f"unknown kind {self.variant!r}")

    @classmethod
    def power(cls, s) -> "NormKind":
        return cls("power", Fraction(s))

    @classmethod
    def logarithm(cls) -> "NormKind":
        return cls("logarithm")

    @property
    def is_power(self) -> bool:
        return self.variant == "power"

    def __str__(self) -> str:
        if self.is_power:
            return f"power(s={format_rational(self.s)})"
        return "logarithm"


@dataclass(frozen=True)
class ConstantQuery:
    """A (dimension, derivative order, kind) triple identifying one constant."""

    dimension: int
    order: int
    kind: NormKind

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if self.order < 0:
            raise ValueError("derivative order must be >= 0")
        if not self.kind.is_power and self.order < 1:
            raise ValueError("logarithm constants are defined for order >= 1 only")


@dataclass(frozen=True)
class ConstantValue:
    """A computed constant together with the method that produced it."""

    query: ConstantQuery
    value: Rational
    method: str

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.value < 0:
            raise ValueError("a squared norm cannot be negative")
        if not self.query.kind.is_power and self.value == 0:
            raise ValueError("logarithm constants are strictly positive")


def _ceil_half(k: int) -> int:
    return (k + 1) // 2


def power_coeffs(s) -> Callable[[int], Rational]:
    """Taylor coefficients of (1+t)^(s/2): n -> C(s/2, n)."""
    s = Fraction(s)
    return lambda n: binomial(s / 2, n)


def log_coeffs() -> Callable[[int], Rational]:
    """Taylor coefficients of (1/2)log(1+t): n -> (-1)^(n-1) / (2n) for n >= 1."""
    return lambda n: Fraction((-1) ** (n - 1), 2 * n)


def gamma_closed(n: int, s, k: int) -> Rational:
    """Power-family constant for dimension n, exponent s, order k (closed form).

    Evaluates the double sum

        k! * sum_l (k-2l)! l! ((n-3)/2 + l)_l
           * ( sum_p 2^(2p-k+l) C(s/2,p) C(p,k-p) C(k-p,l) )^2

    with l in [0, floor(k/2)] and p in [ceil(k/2), k-l], exactly as written.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    s = Fraction(s)
    total = Fraction(0)
    for l in range(k // 2 + 1):
        inner = Fraction(0)
        for p in range(_ceil_half(k), k - l + 1):
            inner += (
                Fraction(2) ** (2 * p - k + l)
                * binomial(s / 2, p)
                * binomial(p, k - p)
                * binomial(k - p, l)
            )
        total += (
            factorial(k - 2 * l)
            * factorial(l)
            * pochhammer(Fraction(n - 3, 2) + l, l)
            * inner ** 2
        )
    return factorial(k) * total


def ell_closed(n: int, k: int) -> Rational:
    """Logarithm-family constant for dimension n, order k >= 1 (closed form).

    Same double sum as ``gamma_closed`` with (-1)^p / (2p) in place of
    C(s/2, p); strictly positive.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if k < 1:
        raise ValueError("logarithm constant is undefined at order 0")
    total = Fraction(0)
    for l in range(k // 2 + 1):
        inner = Fraction(0)
        for p in range(_ceil_half(k), k - l + 1):
            inner += (
                Fraction(2) ** (2 * p - k + l)
                * Fraction((-1) ** p, 2 * p)
                * binomial(p, k - p)
                * binomial(k - p, l)
            )
        total += (
            factorial(k - 2 * l)
            * factorial(l)
            * pochhammer(Fraction(n - 3, 2) + l, l)
            * inner ** 2
        )
    return factorial(k) * total


def gamma_1d(s, k: int) -> Rational:
    """One-dimensional power constant: ( k! sum_p 2^(2p-k) C(s/2,p) C(p,k-p) )^2.

    Equals ((s)_k)^2.
    """
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    s = Fraction(s)
    inner = Fraction(0)
    for p in range(_ceil_half(k), k + 1):
        inner += Fraction(2) ** (2 * p - k) * binomial(s / 2, p) * binomial(p, k - p)
    return (factorial(k) * inner) ** 2


def ell_1d(k: int) -> Rational:
    """One-dimensional logarithm constant; equals ((k-1)!)^2 for k >= 1."""
    if k < 1:
        raise ValueError("logarithm constant is undefined at order 0")
    inner = Fraction(0)
    for p in range(_ceil_half(k), k + 1):
        inner += Fraction(2) ** (2 * p - k) * Fraction((-1) ** p, 2 * p) * binomial(p, k - p)
    return (factorial(k) * inner) ** 2


def gamma_even(n: int, m: int) -> Rational:
    """Constant for the even power s = 2m at order k = 2m: 2^(2m) m! (2m)! (n/2+m-1)_m."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if m < 0:
        raise ValueError("m must be >= 0")
    return (
        Fraction(2) ** (2 * m)
        * factorial(m)
        * factorial(2 * m)
        * pochhammer(Fraction(n, 2) + m - 1, m)
    )


@lru_cache(maxsize=None)
def _gamma_even_deep(n: int, m: int) -> Rational:
    # Even-order self-recursion down to dimension 1; exists solely to let the
    # dimension recursion be tested against itself instead of gamma_even.
    if n == 1:
        return Fraction(factorial(2 * m)) ** 2
    total = Fraction(0)
    for l in range(m + 1):
        total += (
            Fraction(factorial(2 * (m - l)), factorial(2 * l))
            * binomial(m, l) ** 2
            * _gamma_even_deep(n - 1, l)
        )
    return factorial(2 * m) * total


def gamma_special(n: int, k: int) -> Rational:
    """Power constant at the fundamental-solution exponent s = -(n-2).

    Product form 2^k (n/2 + k - 2)_k (n + k - 3)_k.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    return (
        Fraction(2) ** k
        * pochhammer(Fraction(n, 2) + k - 2, k)
        * pochhammer(Fraction(n + k - 3), k)
    )


def ell2_special(k: int) -> Rational:
    """Two-dimensional logarithm constant: 2^(k-1) ((k-1)!)^2 for k >= 1."""
    if k < 1:
        raise ValueError("logarithm constant is undefined at order 0")
    return Fraction(2) ** (k - 1) * factorial(k - 1) ** 2


def _compose_at_origin(n, k, coeffs, even_constant) -> Rational:
    total = Fraction(0)
    for l in range(k // 2 + 1):
        inner = Fraction(0)
        for p in range(_ceil_half(k), k - l + 1):
            inner += (
                Fraction(2) ** (2 * p - k)
                * Fraction(coeffs(p))
                * binomial(p, k - p)
                * binomial(k - p, l)
            )
        total += (
            Fraction(factorial(k - 2 * l), factorial(2 * l))
            * inner ** 2
            * even_constant(n - 1, l)
        )
    return factorial(k) * total


def taylor_compose_norm_sq(n: int, k: int, coeffs: Callable[[int], Rational]) -> Rational:
    """Squared k-th derivative-tensor norm at the origin of f(rho) on R^n, n >= 2.

    Here rho(x) = |x + e_n|^2 - 1 and f(t) = sum_p coeffs(p) t^p is an
    analytic profile; only coeffs(p) for ceil(k/2) <= p <= k are consumed.
    With coeffs from ``power_coeffs(s)`` this reproduces the power constant,
    with ``log_coeffs()`` the logarithm constant.
    """
    if n < 2:
        raise ValueError("dimension must be >= 2; the scalar case folds into gamma_1d/ell_1d")
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    return _compose_at_origin(n, k, coeffs, gamma_even)


def gamma_recursive(n: int, s, k: int, deep: bool = False) -> Rational:
    """Power constant by dimension recursion; agrees exactly with gamma_closed.

    The inner even-order constants come from the product form ``gamma_even``;
    ``deep=True`` instead recurses them down to dimension 1 (self-consistency
    mode, slower).
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if n == 1:
        return gamma_1d(s, k)
    even = _gamma_even_deep if deep else gamma_even
    return _compose_at_origin(n, k, power_coeffs(s), even)


def ell_recursive(n: int, k: int, deep: bool = False) -> Rational:
    """Logarithm constant by dimension recursion; agrees exactly with ell_closed."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if k < 1:
        raise ValueError("logarithm constant is undefined at order 0")
    if n == 1:
        return ell_1d(k)
    even = _gamma_even_deep if deep else gamma_even
    return _compose_at_origin(n, k, log_coeffs(), even)


def half_identity_check(nu, m: int) -> bool:
    """Check sum_l (2l)!/(4^l l!) (nu+m-l)_(m-l) C(m,l) == (nu+m+1/2)_m.

    Both sides are evaluated independently (summation vs. falling factorial);
    a correct implementation returns True for every rational nu and m >= 0.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    nu = Fraction(nu)
    lhs = Fraction(0)
    for l in range(m + 1):
        lhs += (
            Fraction(factorial(2 * l), 2 ** (2 * l) * factorial(l))
            * pochhammer(nu + m - l, m - l)
            * binomial(m, l)
        )
    rhs = pochhammer(nu + m + Fraction(1, 2), m)
    return lhs == rhs


def phi_deriv_at_zero(m: int, k: int) -> Rational:
    """k-th derivative of (t^2 + 2t)^m at t = 0.

    Nonzero only for m <= k <= 2m, where it equals 2^(2m-k) k! C(m, k-m).
    """
    if m < 0 or k < 0:
        raise ValueError("m and k must be >= 0")
    if not m <= k <= 2 * m:
        return Fraction(0)
    return Fraction(2) ** (2 * m - k) * factorial(k) * binomial(m, k - m)


def evaluate_query(query: ConstantQuery, method: str = "closed") -> ConstantValue:
    """Compute one constant by the named non-oracle method.

    ``special`` requires s = -(n-2) for the power family, or n = 2 for the
    logarithm family, and raises ValueError otherwise.
    """
    n, k, kind = query.dimension, query.order, query.kind
    if method == "closed":
        value = gamma_closed(n, kind.s, k) if kind.is_power else ell_closed(n, k)
    elif method == "recursive":
        value = gamma_recursive(n, kind.s, k) if kind.is_power else ell_recursive(n, k)
    elif method == "special":
        if kind.is_power:
            if kind.s != Fraction(-(n - 2)):
                raise ValueError("special power form requires s = -(n-2)")
            value = gamma_special(n, k)
        else:
            if n != 2:
                raise ValueError("special logarithm form requires dimension 2")
            value = ell2_special(k)
    else:
        raise ValueError(f"method {method!r} is not computed here")
    return ConstantValue(query, value, method)
