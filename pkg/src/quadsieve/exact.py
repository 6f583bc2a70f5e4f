"""Exact rational and integer arithmetic used by every other module.

Rationals are ``fractions.Fraction`` values: arbitrary precision, always in
lowest terms, denominator positive.  Everything here stays in integer
arithmetic; no floating point enters until a caller decides to round.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction

__all__ = [
    "Rational",
    "reduce_fraction",
    "phase_mod1",
    "totients",
    "totient_sum",
    "factorize",
    "format_rational",
    "parse_rational",
]


def reduce_fraction(num: int, den: int) -> Fraction:
    """Lowest-terms fraction num/den with positive denominator.

    Raises ZeroDivisionError when den == 0.
    """
    return Fraction(num, den)


def phase_mod1(x: Fraction, y: int) -> Fraction:
    """Fractional part of x*y, computed exactly; result lies in [0, 1).

    x*y minus the result is an exact integer, so e(x*y) can be evaluated
    from the result with no precision loss however large y is.  This is
    the only safe route to a unit-circle phase when y is huge: rounding
    x*y to a float first loses the fractional part entirely once x*y
    exceeds 2**53.
    """
    if not isinstance(x, Fraction):
        x = Fraction(x)
    return Fraction((x.numerator * y) % x.denominator, x.denominator)


def totients(limit: int) -> list[int]:
    """Euler phi(q) for q = 0..limit by the standard sieve."""
    if limit < 0:
        raise ValueError("limit must be >= 0")
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:  # p is prime
            for multiple in range(p, limit + 1, p):
                phi[multiple] -= phi[multiple] // p
    return phi


def totient_sum(limit: int) -> int:
    """Sum of Euler phi(q) over 1 <= q <= limit."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    return sum(totients(limit)[1:])


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as ascending (prime, exponent) pairs."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: list[tuple[int, int]] = []
    exp = 0
    while n % 2 == 0:
        n //= 2
        exp += 1
    if exp:
        out.append((2, exp))
    d = 3
    while d * d <= n:
        if n % d == 0:
            exp = 0
            while n % d == 0:
                n //= d
                exp += 1
            out.append((d, exp))
        d += 2
    if n > 1:
        out.append((n, 1))
    return out


def format_rational(value: Fraction) -> str:
    """Render a rational as "num/den", always with the denominator."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str | int) -> Fraction:
    """Parse "num/den" or a bare integer string into a Fraction.

    Floats are rejected: this package never guesses an exact value from a
    rounded one.
    """
    if isinstance(text, float):
        raise TypeError("refusing to build an exact rational from a float")
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(text.strip())
