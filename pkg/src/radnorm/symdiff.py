"""Brute-force symbolic oracle for derivatives of radial powers and log|x|.

Functions are finite sums of terms

    coeff * x^beta * r^(b + j),    r = |x|,

where the rational base exponent ``b`` is shared by the whole sum (b = s for
derivatives of |x|^s, b = 0 for derivatives of log|x|), ``beta`` is a vector
of nonnegative integer exponents and ``j`` is an even integer offset.  The
class is closed under partial differentiation:

    d/dx_i [x^beta r^t] = beta_i x^(beta - e_i) r^t + t x^(beta + e_i) r^(t-2).

Since every differentiation step keeps ``j`` even, dividing the common r^b
factor out symbolically leaves only integer powers of r^2, so evaluation at
a rational point is exact.

Log handling: log r itself is not of the form above, so logarithm-kind
computations seed at derivative order 1 with the n gradient components
x_i * r^(-2) and differentiate k-1 more times.

Terms are kept in canonical sorted-merged form.  Two sums represent the same
function when they agree modulo the relation r^2 = sum x_i^2; the check
``functions_equal`` clears negative powers of r^2 and substitutes that
relation to reach a genuinely canonical polynomial form.
"""

from __future__ import annotations

import random
import time
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import comb
from typing import Iterable, Mapping, Sequence

from .constants import (
    ConstantQuery,
    NormKind,
    ell_closed,
    ell_recursive,
    gamma_closed,
    gamma_recursive,
    gamma_special,
)
from .exactnum import Rational, factorial, format_rational, rational_pow

__all__ = [
    "MAX_DIMENSION",
    "MAX_ORDER",
    "CapacityError",
    "Term",
    "TermSum",
    "SamplePoint",
    "VerifyReport",
    "seed",
    "seed_order",
    "differentiate",
    "laplacian",
    "derivative",
    "grad_norm_sq",
    "grad_norm_sq_symbolic",
    "tilde_norm_sq",
    "verify_constancy",
    "dimension_split_check",
    "laplacian_recursion_check",
    "functions_equal",
    "is_zero_function",
    "random_rational",
    "default_sample_points",
]

# Exhaustive-enumeration caps; larger requests raise CapacityError.
MAX_DIMENSION = 6
MAX_ORDER = 10


class CapacityError(Exception):
    """A request exceeds the exhaustive-enumeration scale this oracle supports."""


@dataclass(frozen=True)
class Term:
    """One summand coeff * x^monomial * r^(base + radial_offset)."""

    coeff: Rational
    monomial: tuple[int, ...]
    radial_offset: int


@dataclass(frozen=True)
class TermSum:
    """A canonical finite sum of Terms sharing one radial base exponent."""

    n_vars: int
    radial_base: Rational
    terms: tuple[Term, ...]

    @classmethod
    def build(
        cls,
        n_vars: int,
        radial_base,
        entries: Mapping[tuple[tuple[int, ...], int], Rational] | Iterable,
    ) -> "TermSum":
        """Merge, drop zero coefficients, and sort into canonical order."""
        if n_vars < 1:
            raise ValueError("n_vars must be >= 1")
        merged: dict[tuple[tuple[int, ...], int], Fraction] = defaultdict(Fraction)
        items = entries.items() if isinstance(entries, Mapping) else entries
        for (monomial, offset), coeff in items:
            monomial = tuple(int(e) for e in monomial)
            if len(monomial) != n_vars or any(e < 0 for e in monomial):
                raise ValueError(f"bad monomial {monomial} for n_vars={n_vars}")
            merged[(monomial, int(offset))] += Fraction(coeff)
        terms = tuple(
            Term(coeff, monomial, offset)
            for (monomial, offset), coeff in sorted(merged.items())
            if coeff != 0
        )
        return cls(n_vars, Fraction(radial_base), terms)

    @classmethod
    def zero(cls, n_vars: int, radial_base) -> "TermSum":
        return cls.build(n_vars, radial_base, {})

    @classmethod
    def single(cls, n_vars: int, radial_base, monomial: tuple[int, ...], offset: int, coeff) -> "TermSum":
        return cls.build(n_vars, radial_base, {(tuple(monomial), offset): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "TermSum") -> "TermSum":
        if self.n_vars != other.n_vars or self.radial_base != other.radial_base:
            raise ValueError("cannot add sums with different dimension or radial base")
        entries = [((t.monomial, t.radial_offset), t.coeff) for t in self.terms + other.terms]
        return TermSum.build(self.n_vars, self.radial_base, entries)

    def scale(self, factor) -> "TermSum":
        entries = [((t.monomial, t.radial_offset), t.coeff * Fraction(factor)) for t in self.terms]
        return TermSum.build(self.n_vars, self.radial_base, entries)

    def multiply(self, other: "TermSum") -> "TermSum":
        """Product of two sums; the radial bases add."""
        if self.n_vars != other.n_vars:
            raise ValueError("dimension mismatch")
        entries: dict[tuple[tuple[int, ...], int], Fraction] = defaultdict(Fraction)
        for a in self.terms:
            for b in other.terms:
                monomial = tuple(x + y for x, y in zip(a.monomial, b.monomial))
                entries[(monomial, a.radial_offset + b.radial_offset)] += a.coeff * b.coeff
        return TermSum.build(self.n_vars, self.radial_base + other.radial_base, entries)

    def differentiate(self, axis: int) -> "TermSum":
        """Exact partial derivative along 1-based axis; stays in the class."""
        if not 1 <= axis <= self.n_vars:
            raise ValueError(f"axis {axis} out of range 1..{self.n_vars}")
        a = axis - 1
        entries: dict[tuple[tuple[int, ...], int], Fraction] = defaultdict(Fraction)
        for t in self.terms:
            e = t.monomial[a]
            if e:
                down = t.monomial[:a] + (e - 1,) + t.monomial[a + 1:]
                entries[(down, t.radial_offset)] += t.coeff * e
            exponent = self.radial_base + t.radial_offset
            if exponent:
                up = t.monomial[:a] + (e + 1,) + t.monomial[a + 1:]
                entries[(up, t.radial_offset - 2)] += t.coeff * exponent
        return TermSum.build(self.n_vars, self.radial_base, entries)

    def laplacian(self) -> "TermSum":
        """Sum of the n second partials."""
        result = TermSum.zero(self.n_vars, self.radial_base)
        for axis in range(1, self.n_vars + 1):
            result = result + self.differentiate(axis).differentiate(axis)
        return result

    def evaluate_reduced(self, point: "SamplePoint") -> Rational:
        """Value at the point divided by the common r^radial_base factor.

        Only integer powers of the rational r^2 are formed, so the result is
        always an exact Rational.
        """
        if len(point.coords) != self.n_vars:
            raise ValueError("point dimension mismatch")
        r_sq = point.r_sq
        total = Fraction(0)
        for t in self.terms:
            if t.radial_offset % 2:
                raise ValueError("odd radial offset cannot be evaluated exactly")
            value = t.coeff
            for x, e in zip(point.coords, t.monomial):
                if e:
                    value *= x ** e
            total += value * r_sq ** (t.radial_offset // 2)
        return total


@dataclass(frozen=True)
class SamplePoint:
    """A rational point of R^n, never the origin."""

    coords: tuple[Rational, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        if not coords:
            raise ValueError("a sample point needs at least one coordinate")
        if all(c == 0 for c in coords):
            raise ValueError("the origin is outside the domain")
        object.__setattr__(self, "coords", coords)

    @property
    def r_sq(self) -> Rational:
        return sum(c * c for c in self.coords)

    def text(self) -> str:
        return ",".join(format_rational(c) for c in self.coords)

    def __str__(self) -> str:
        return f"({self.text()})"


@dataclass
class VerifyReport:
    """Outcome of one constancy check: oracle values per point vs. formulas."""

    query: ConstantQuery
    method_values: dict[str, Rational]
    point_values: list[tuple[SamplePoint, Rational]]
    verdict: str = "exact-match"
    detail: str | None = None
    elapsed_ms: float = 0.0

    @property
    def exact_match(self) -> bool:
        return self.verdict == "exact-match"


def _check_scale(n: int, k: int) -> None:
    if n > MAX_DIMENSION or k > MAX_ORDER:
        raise CapacityError(
            f"n={n}, k={k} exceeds the desk-scale caps "
            f"(n <= {MAX_DIMENSION}, k <= {MAX_ORDER})"
        )


def seed_order(kind: NormKind) -> int:
    """Derivative order already carried by the seed components (0 or 1)."""
    return 0 if kind.is_power else 1


def seed(n: int, kind: NormKind) -> tuple[TermSum, ...]:
    """Symbolic starting point for the family on R^n.

    Power kind: the single sum {1 * r^s}.  Logarithm kind: the n gradient
    components {x_i * r^(-2)}, i.e. the order-1 derivatives, since log r
    itself lies outside the term class.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if kind.is_power:
        return (TermSum.single(n, kind.s, (0,) * n, 0, 1),)
    components = []
    for i in range(n):
        monomial = tuple(1 if j == i else 0 for j in range(n))
        components.append(TermSum.single(n, 0, monomial, -2, 1))
    return tuple(components)


def differentiate(u: TermSum, axis: int) -> TermSum:
    """Partial derivative of a TermSum along the 1-based axis."""
    return u.differentiate(axis)


def laplacian(u: TermSum) -> TermSum:
    """Laplacian of a TermSum (dimension taken from the sum itself)."""
    return u.laplacian()


@lru_cache(maxsize=None)
def _derivative_cached(n: int, kind: NormKind, axes: tuple[int, ...]) -> TermSum:
    # Mixed partials of these smooth functions commute, so the sorted
    # multiset of axes is a sound cache key.
    if kind.is_power:
        u = seed(n, kind)[0]
        rest = axes
    else:
        u = seed(n, kind)[axes[-1] - 1]
        rest = axes[:-1]
    for axis in rest:
        u = u.differentiate(axis)
    return u


def derivative(n: int, kind: NormKind, axes: Sequence[int]) -> TermSum:
    """The mixed partial D_axes of |x|^s or log|x| on R^n, as a TermSum.

    ``axes`` is the full tuple of 1-based differentiation indices; for the
    logarithm kind it must be nonempty.
    """
    axes = tuple(int(a) for a in axes)
    if any(not 1 <= a <= n for a in axes):
        raise ValueError(f"axes {axes} out of range 1..{n}")
    if not kind.is_power and not axes:
        raise ValueError("the logarithm function itself is outside the term class")
    return _derivative_cached(n, kind, tuple(sorted(axes)))


def _multiset_weight(k: int, combo: tuple[int, ...]) -> int:
    weight = factorial(k)
    for axis in set(combo):
        weight //= factorial(combo.count(axis))
    return weight


def _validate_norm_args(n: int, kind: NormKind, k: int, point: SamplePoint | None) -> None:
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if k < 0:
        raise ValueError("derivative order must be >= 0")
    if not kind.is_power and k < 1:
        raise ValueError("logarithm norms need order >= 1")
    if point is not None and len(point.coords) != n:
        raise ValueError("point dimension mismatch")
    _check_scale(n, k)


def _reduced_squares(n: int, kind: NormKind, k: int, point: SamplePoint) -> dict[tuple[int, ...], Rational]:
    """Squared reduced value of D_axes at the point, per sorted axis multiset."""
    return {
        combo: derivative(n, kind, combo).evaluate_reduced(point) ** 2
        for combo in combinations_with_replacement(range(1, n + 1), k)
    }


def grad_norm_sq(
    n: int,
    kind: NormKind,
    k: int,
    point: SamplePoint,
    weighted: bool | None = None,
    rescaled: bool = False,
) -> Rational:
    """Sum of squares of all n^k mixed k-th partials, evaluated at the point.

    ``weighted=True`` enumerates only nondecreasing index tuples with the
    multinomial weight k!/prod(multiplicities!); ``weighted=False`` walks all
    n^k ordered tuples.  Both return the identical Rational; the default
    (None) picks the weighted route for k >= 5 for cost.

    By default the raw value is returned; for the power family with
    fractional s that raw value is r^(2s) times a rational and may be
    irrational at a given point, in which case ValueError is raised.  With
    ``rescaled=True`` the value times r^(2(k-s)) (power) or r^(2k)
    (logarithm) is returned instead, which is always an exact Rational and
    is the point-independent constant.
    """
    _validate_norm_args(n, kind, k, point)
    if weighted is None:
        weighted = k >= 5
    squares = _reduced_squares(n, kind, k, point)
    if weighted:
        reduced = sum(_multiset_weight(k, combo) * sq for combo, sq in squares.items())
    else:
        reduced = Fraction(0)
        for tup in product(range(1, n + 1), repeat=k):
            reduced += squares[tuple(sorted(tup))]
    r_sq = point.r_sq
    if rescaled:
        return r_sq ** k * reduced
    base = kind.s if kind.is_power else Fraction(0)
    return rational_pow(r_sq, base) * reduced


def tilde_norm_sq(
    n: int,
    kind: NormKind,
    k: int,
    point: SamplePoint,
    rescaled: bool = False,
) -> Rational:
    """Unweighted sum of squares over nondecreasing index tuples only.

    Unlike ``grad_norm_sq`` this is *not* constant after rescaling, except
    for n = 1 or the power family with s in {0, 2}.  ``rescaled`` has the
    same meaning and exactness caveat as in ``grad_norm_sq``.
    """
    _validate_norm_args(n, kind, k, point)
    if k < 1:
        raise ValueError("tilde norm needs order >= 1")
    reduced = sum(_reduced_squares(n, kind, k, point).values())
    r_sq = point.r_sq
    if rescaled:
        return r_sq ** k * reduced
    base = kind.s if kind.is_power else Fraction(0)
    return rational_pow(r_sq, base) * reduced


def grad_norm_sq_symbolic(n: int, kind: NormKind, k: int) -> TermSum:
    """The full squared-norm sum_i (D_i u)^2 as a single TermSum.

    Built from the multiset enumeration with multinomial weights; the radial
    base of the result is 2s (power) or 0 (logarithm).
    """
    _validate_norm_args(n, kind, k, None)
    total: TermSum | None = None
    for combo in combinations_with_replacement(range(1, n + 1), k):
        u = derivative(n, kind, combo)
        square = u.multiply(u).scale(_multiset_weight(k, combo))
        total = square if total is None else total + square
    assert total is not None
    return total


def _proportional(p: SamplePoint, q: SamplePoint) -> bool:
    a, b = p.coords, q.coords
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(i + 1, len(a)))


def verify_constancy(
    n: int,
    kind: NormKind,
    k: int,
    points: Sequence[SamplePoint],
) -> VerifyReport:
    """Check that the rescaled oracle value is the same at every point and
    agrees exactly with the closed-form and recursive constants.

    For n >= 2 at least two non-proportional points are required (points on
    one ray only re-test homogeneity); for n = 1 one point suffices since
    every pair is proportional there.
    """
    if k < 1:
        raise ValueError("constancy checks need order >= 1")
    if not points:
        raise ValueError("at least one sample point is required")
    if n >= 2:
        if len(points) < 2:
            raise ValueError("need at least two sample points")
        if all(_proportional(p, q) for p in points for q in points):
            raise ValueError("sample points must not all be proportional")
    _validate_norm_args(n, kind, k, points[0])

    start = time.perf_counter()
    point_values = [(p, grad_norm_sq(n, kind, k, p, rescaled=True)) for p in points]
    if kind.is_power:
        methods = {
            "closed": gamma_closed(n, kind.s, k),
            "recursive": gamma_recursive(n, kind.s, k),
        }
    else:
        methods = {
            "closed": ell_closed(n, k),
            "recursive": ell_recursive(n, k),
        }
    elapsed_ms = (time.perf_counter() - start) * 1000.0

    report = VerifyReport(
        query=ConstantQuery(n, k, kind),
        method_values=methods,
        point_values=point_values,
        elapsed_ms=elapsed_ms,
    )
    distinct = {value for _, value in point_values}
    if len(distinct) > 1:
        report.verdict = "mismatch"
        report.detail = "rescaled oracle values differ across points: " + ", ".join(
            f"{p}={format_rational(v)}" for p, v in point_values
        )
    else:
        oracle = next(iter(distinct))
        wrong = {m: v for m, v in methods.items() if v != oracle}
        if wrong:
            report.verdict = "mismatch"
            report.detail = (
                f"oracle value {format_rational(oracle)} disagrees with "
                + ", ".join(f"{m}={format_rational(v)}" for m, v in wrong.items())
            )
    return report


def dimension_split_check(n: int, kind: NormKind, k: int, point: SamplePoint) -> bool:
    """Check the last-axis splitting of the squared norm at one point:

        sum_{i in I_n^k} (D_i u)^2
            = sum_j C(k,j) * sum_{i' in I_(n-1)^j} (D_i' D_n^(k-j) u)^2.

    Both sides are evaluated exactly (reduced by the common r factor); a
    correct implementation always returns True.
    """
    if n < 2:
        raise ValueError("splitting needs dimension >= 2")
    if k < 1:
        raise ValueError("splitting checks need order >= 1")
    _validate_norm_args(n, kind, k, point)

    cache: dict[tuple[int, ...], Rational] = {}

    def value_sq(axes: tuple[int, ...]) -> Rational:
        key = tuple(sorted(axes))
        if key not in cache:
            cache[key] = derivative(n, kind, key).evaluate_reduced(point) ** 2
        return cache[key]

    lhs = Fraction(0)
    for tup in product(range(1, n + 1), repeat=k):
        lhs += value_sq(tup)
    rhs = Fraction(0)
    for j in range(k + 1):
        inner = Fraction(0)
        for tup in product(range(1, n), repeat=j):
            inner += value_sq(tup + (n,) * (k - j))
        rhs += comb(k, j) * inner
    return lhs == rhs


def laplacian_recursion_check(n: int, k: int) -> bool:
    """Check the one-step recursion for the fundamental-solution exponent.

    With u = r^(2-n) (so that the Laplacian of u vanishes), the Laplacian of
    the squared (k-1)-th derivative norm of u must equal twice the squared
    k-th derivative norm, i.e. as functions

        Delta [ sum (D_i u)^2, |i| = k-1 ] = 2 * gamma * r^(2(2-n-k))

    where gamma is the order-k constant at s = -(n-2).  Verified as an exact
    symbolic identity.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if k < 1:
        raise ValueError("the recursion starts at order 1")
    _check_scale(n, k)
    kind = NormKind.power(Fraction(2 - n))
    norm_sq = grad_norm_sq_symbolic(n, kind, k - 1)
    lhs = norm_sq.laplacian()
    expected = TermSum.single(
        n, norm_sq.radial_base, (0,) * n, -2 * k, 2 * gamma_special(n, k)
    )
    return functions_equal(lhs, expected)


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    if parts == 1:
        return ((total,),)
    out = []
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            out.append((head,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _sum_sq_pow(n_vars: int, e: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """(x_1^2 + ... + x_n^2)^e expanded: pairs (alpha, multinomial coefficient)."""
    out = []
    for alpha in _compositions(e, n_vars):
        coeff = factorial(e)
        for a in alpha:
            coeff //= factorial(a)
        out.append((alpha, coeff))
    return tuple(out)


def _radial_monomials(u: TermSum, shift: int) -> dict[tuple[int, ...], Fraction]:
    """Expand u * r^(2*shift - radial_base) as a polynomial in x alone,
    substituting r^2 = sum x_i^2."""
    poly: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
    for t in u.terms:
        if t.radial_offset % 2:
            raise ValueError("odd radial offset has no polynomial form")
        e = t.radial_offset // 2 + shift
        if e < 0:
            raise ValueError("shift too small to clear negative radial powers")
        for alpha, mult in _sum_sq_pow(u.n_vars, e):
            beta = tuple(b + 2 * a for b, a in zip(t.monomial, alpha))
            poly[beta] += t.coeff * mult
    return {beta: c for beta, c in poly.items() if c != 0}


def _min_half_offset(u: TermSum) -> int:
    return min((t.radial_offset // 2 for t in u.terms), default=0)


def is_zero_function(u: TermSum) -> bool:
    """Whether u vanishes identically (modulo r^2 = sum x_i^2)."""
    if u.is_zero():
        return True
    return not _radial_monomials(u, -_min_half_offset(u))


def functions_equal(a: TermSum, b: TermSum) -> bool:
    """Whether two sums represent the same function on R^n minus the origin.

    Clears negative powers of r^2 and substitutes r^2 = sum x_i^2, reducing
    both sides to canonical polynomials.  Radial bases differing by an even
    integer are reconciled; otherwise the scales are incompatible and only
    the zero function lives in both.
    """
    if a.n_vars != b.n_vars:
        raise ValueError("dimension mismatch")
    delta = a.radial_base - b.radial_base
    if delta.denominator != 1 or delta.numerator % 2:
        return is_zero_function(a) and is_zero_function(b)
    half = delta.numerator // 2
    low = min(_min_half_offset(a) + half, _min_half_offset(b))
    shift = max(0, -low)
    return _radial_monomials(a, shift + half) == _radial_monomials(b, shift)


def random_rational(
    rng: random.Random,
    max_numerator: int = 7,
    max_denominator: int = 7,
    nonzero: bool = False,
) -> Rational:
    """A small random Fraction with |numerator| and denominator bounded."""
    while True:
        value = Fraction(
            rng.randint(-max_numerator, max_numerator),
            rng.randint(1, max_denominator),
        )
        if value or not nonzero:
            return value


def default_sample_points(n: int, seed: int = 0, extra: int = 2) -> list[SamplePoint]:
    """Deterministic sample points: a fixed set plus seeded random rationals.

    The fixed set is e_1, (1,...,1), (1,2,...,n) and, for n >= 2, (3,4,0,...);
    duplicates collapse (all four coincide at n = 1).  ``extra`` further
    points have coordinates p/q with |p| <= 7, q <= 7.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    fixed = [
        tuple(Fraction(1 if i == 0 else 0) for i in range(n)),
        tuple(Fraction(1) for _ in range(n)),
        tuple(Fraction(i + 1) for i in range(n)),
    ]
    if n >= 2:
        fixed.append(tuple(Fraction(v) for v in [3, 4] + [0] * (n - 2)))
    points: list[SamplePoint] = []
    seen: set[tuple[Fraction, ...]] = set()
    for coords in fixed:
        if coords not in seen:
            seen.add(coords)
            points.append(SamplePoint(coords))
    rng = random.Random(seed)
    attempts = 0
    while extra > 0:
        attempts += 1
        if attempts > 1000:
            raise RuntimeError("could not draw enough distinct sample points")
        coords = tuple(random_rational(rng) for _ in range(n))
        if all(c == 0 for c in coords) or coords in seen:
            continue
        seen.add(coords)
        points.append(SamplePoint(coords))
        extra -= 1
    return points
