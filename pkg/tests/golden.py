"""Golden polynomial formulas for the low-order constants, used by several
test modules.  gamma polynomials take (s, n); ell polynomials take n."""

from fractions import Fraction


def _g1(s, n):
    return s ** 2


def _g2(s, n):
    return s ** 2 * (s ** 2 - 2 * s + n)


def _g3(s, n):
    return s ** 2 * (s - 2) ** 2 * (s ** 2 - 2 * s + 3 * n - 2)


def _g4(s, n):
    return (
        s ** 2
        * (s - 2) ** 2
        * (
            s ** 4
            - 8 * s ** 3
            + (16 + 6 * n) * s ** 2
            + (12 - 36 * n) * s
            + 3 * n ** 2
            + 54 * n
            - 48
        )
    )


GAMMA_POLYS = {1: _g1, 2: _g2, 3: _g3, 4: _g4}

ELL_POLYS = {
    1: lambda n: Fraction(1),
    2: lambda n: Fraction(n),
    3: lambda n: Fraction(4 * (3 * n - 2)),
    4: lambda n: Fraction(12 * (n ** 2 + 18 * n - 16)),
    5: lambda n: Fraction(192 * (5 * n ** 2 + 30 * n - 32)),
    6: lambda n: Fraction(960 * (n ** 3 + 78 * n ** 2 + 224 * n - 288)),
    7: lambda n: Fraction(34560 * (7 * n ** 3 + 196 * n ** 2 + 308 * n - 496)),
    8: lambda n: Fraction(
        241920 * (n ** 4 + 204 * n ** 3 + 3052 * n ** 2 + 2736 * n - 5888)
    ),
}

# The eight-value rational exponent set used by the cross-method grids.
S_VALUES = [
    Fraction(-3),
    Fraction(-3, 2),
    Fraction(-1),
    Fraction(1, 2),
    Fraction(1),
    Fraction(2),
    Fraction(5, 2),
    Fraction(4),
]
