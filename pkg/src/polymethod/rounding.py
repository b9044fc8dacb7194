"""Outward-rounded rational powers.

``pow_up(x, p)`` returns a rational ``>= x**p`` and ``pow_down`` one
``<= x**p``, both within a relative error of ``2**-64``.  Used wherever an
irrational bound must be compared exactly against an integer count.
"""

from __future__ import annotations

from fractions import Fraction

SLACK_BITS = 64


def iroot(a: int, b: int) -> int:
    """``floor(a ** (1/b))`` for integers ``a >= 0``, ``b >= 1``."""
    if a < 0 or b < 1:
        raise ValueError("iroot needs a >= 0 and b >= 1")
    if a < 2 or b == 1:
        return a
    x = 1 << ((a.bit_length() + b - 1) // b)  # initial guess >= true root
    while True:
        y = ((b - 1) * x + a // x ** (b - 1)) // b
        if y >= x:
            break
        x = y
    while x ** b > a:
        x -= 1
    while (x + 1) ** b <= a:
        x += 1
    return x


def _root_bounds(r: Fraction, b: int) -> tuple[Fraction, Fraction]:
    """Rational bracket ``lo <= r**(1/b) <= hi`` for ``r > 0``."""
    num, den = r.numerator, r.denominator
    shift = SLACK_BITS + 8 + den.bit_length()
    radicand = num * den ** (b - 1) << (shift * b)
    base = iroot(radicand, b)
    scale = den << shift
    lo = Fraction(base, scale)
    hi = lo if base ** b == radicand else Fraction(base + 1, scale)
    return lo, hi


def _pow_bounds(x, p) -> tuple[Fraction, Fraction]:
    x, p = Fraction(x), Fraction(p)
    if x < 0:
        raise ValueError("negative base")
    if x == 0:
        if p <= 0:
            raise ValueError("0 to a non-positive power")
        return Fraction(0), Fraction(0)
    a, b = p.numerator, p.denominator
    r = x ** a
    lo, hi = _root_bounds(r, b)
    return lo, hi


def pow_up(x, p) -> Fraction:
    return _pow_bounds(x, p)[1]


def pow_down(x, p) -> Fraction:
    return _pow_bounds(x, p)[0]
