"""Lattice point counting on circles and pair-sum profiles.

r2(n) counts integer solutions of x**2 + y**2 = n.  Three independent
routes are provided on purpose: a per-n product over prime factors, a
divisor-character sieve for a whole range, and a brute-force box scan.
Checks elsewhere compare them against each other rather than trusting one.

The circle tools work with the family (c1*X - c2)**2 + (c1*Y - m*c2)**2 = c3
for a rational slope m = p/q, and certify the coefficient bounds

    |c1| <= 4*q*(1+|m|)*H,   |c2| <= 2*q*H**2,   c3 <= 36*q**2*(1+|m|)**2*H**4

whenever the circle passes through at least three integer points of the box
|x|, |y| <= H and gcd(c1, c2) = 1.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exact import factorize
from .reporting import BoundReport

__all__ = [
    "ScanLimitExceeded",
    "DEFAULT_SCAN_LIMIT",
    "r2",
    "r2_upto",
    "r2_bruteforce",
    "r2_bruteforce_upto",
    "sup_r2",
    "sup_r2_witness",
    "CirclePointProblem",
    "circle_points",
    "check_circle_coeff_bounds",
    "normalize_common_factor",
    "quadratic_level_count",
    "pair_sum_counts",
    "AdditiveProfile",
    "additive_profile",
    "diameter_bound",
]

DEFAULT_SCAN_LIMIT = 3_000_000


class ScanLimitExceeded(ValueError):
    """An exhaustive scan was requested beyond the configured ceiling.

    Raised instead of silently approximating: every number this package
    reports is either exact or carries an explicit error budget.
    """


def r2(n: int) -> int:
    """Solutions of x**2 + y**2 = n, via the product over prime factors.

    Multiplicative rule: 4 * prod(e+1) over primes p = 1 mod 4 with
    exponent e, zero if any prime p = 3 mod 4 has odd exponent; powers
    of 2 are inert.  r2(0) = 1 counts the origin.
    """
    if n < 0:
        raise ValueError("r2 needs n >= 0")
    if n == 0:
        return 1
    total = 4
    for p, e in factorize(n):
        if p == 2:
            continue
        if p % 4 == 1:
            total *= e + 1
        elif e % 2 == 1:
            return 0
    return total


def r2_upto(bound: int) -> np.ndarray:
    """Array of r2(n) for n = 0..bound by the divisor-character sieve.

    Uses r2(n) = 4 * (d_1(n) - d_3(n)), the difference between counts of
    divisors congruent to 1 and 3 mod 4.
    """
    if bound < 0:
        raise ValueError("bound must be >= 0")
    counts = np.zeros(bound + 1, dtype=np.int64)
    for d in range(1, bound + 1, 4):
        counts[d::d] += 1
    for d in range(3, bound + 1, 4):
        counts[d::d] -= 1
    counts *= 4
    counts[0] = 1
    return counts


def r2_bruteforce(n: int) -> int:
    """r2(n) by scanning x and testing n - x**2 for squareness."""
    if n < 0:
        raise ValueError("r2 needs n >= 0")
    if n == 0:
        return 1
    count = 0
    for x in range(-math.isqrt(n), math.isqrt(n) + 1):
        rest = n - x * x
        s = math.isqrt(rest)
        if s * s == rest:
            count += 1 if s == 0 else 2
    return count


def r2_bruteforce_upto(bound: int) -> np.ndarray:
    """Array of r2(n) for n = 0..bound by scanning the whole lattice box."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    radius = math.isqrt(bound)
    xs = np.arange(-radius, radius + 1, dtype=np.int64)
    norms = (xs[:, None] ** 2 + xs[None, :] ** 2).ravel()
    return np.bincount(norms[norms <= bound], minlength=bound + 1)


# Grow-only cache for sup_r2: values array and its running maximum.
_R2_LOCK = threading.Lock()
_R2_CACHE: dict = {"bound": -1, "values": None, "prefix_max": None}


def _r2_arrays(bound: int):
    with _R2_LOCK:
        if bound > _R2_CACHE["bound"]:
            size = max(bound, 2 * _R2_CACHE["bound"], 4096)
            values = r2_upto(size)
            _R2_CACHE["bound"] = size
            _R2_CACHE["values"] = values
            _R2_CACHE["prefix_max"] = np.maximum.accumulate(values)
        return _R2_CACHE["values"], _R2_CACHE["prefix_max"]


def sup_r2(bound: int, scan_limit: int = DEFAULT_SCAN_LIMIT) -> int:
    """max of r2(n) over 1 <= n <= bound, by exhaustive sieve.

    Raises ScanLimitExceeded when bound > scan_limit; raise the limit
    explicitly if the scan is genuinely wanted.
    """
    if bound < 1:
        raise ValueError("sup_r2 needs bound >= 1")
    if bound > scan_limit:
        raise ScanLimitExceeded(
            f"sup r2 up to {bound} exceeds the scan limit {scan_limit}; "
            "the exact maximum is not computable at this scale"
        )
    _, prefix_max = _r2_arrays(bound)
    return int(prefix_max[bound])


def sup_r2_witness(bound: int, scan_limit: int = DEFAULT_SCAN_LIMIT) -> tuple[int, int]:
    """(max r2(n), smallest attaining n) over 1 <= n <= bound."""
    top = sup_r2(bound, scan_limit)
    values, _ = _r2_arrays(bound)
    window = values[1 : bound + 1]
    index = int(np.argmax(window == top)) + 1
    return top, index


@dataclass(frozen=True)
class CirclePointProblem:
    """Circle (c1*X - c2)**2 + (c1*Y - m*c2)**2 = c3 inside |x|,|y| <= h."""

    c1: int
    c2: int
    c3: int
    m: Fraction
    h: Fraction

    def __post_init__(self):
        object.__setattr__(self, "m", Fraction(self.m))
        object.__setattr__(self, "h", Fraction(self.h))
        if self.c1 == 0:
            raise ValueError("c1 must be nonzero")
        if self.h < 1:
            raise ValueError("box half-side h must be >= 1")


def circle_points(problem: CirclePointProblem) -> list[tuple[int, int]]:
    """Integer points of the box lying on the circle, sorted.

    c3 < 0 is accepted and yields the empty list (the circle is empty).
    """
    if problem.c3 < 0:
        return []
    p, q = problem.m.numerator, problem.m.denominator
    reach = math.floor(problem.h)
    return _circle_points_raw(problem.c1, problem.c2, problem.c3, p, q, reach)


def _circle_points_raw(c1: int, c2: int, c3: int, p: int, q: int, reach: int):
    # Clear denominators: (q*(c1*x - c2))**2 + (q*c1*y - p*c2)**2 = q*q*c3,
    # so q*c1*y = p*c2 +- isqrt(remainder) must land on an integer y.
    target = q * q * c3
    div = q * c1
    pc2 = p * c2
    points = []
    for x in range(-reach, reach + 1):
        u = q * (c1 * x - c2)
        rest = target - u * u
        if rest < 0:
            continue
        s = math.isqrt(rest)
        if s * s != rest:
            continue
        candidates = (pc2,) if s == 0 else (pc2 + s, pc2 - s)
        for value in candidates:
            if value % div == 0:
                y = value // div
                if -reach <= y <= reach:
                    points.append((x, y))
    points.sort()
    return points


def check_circle_coeff_bounds(problem: CirclePointProblem) -> BoundReport:
    """Certify the coefficient bounds for a circle with >= 3 box points.

    Preconditions: gcd(c1, c2) = 1 and the circle carries at least three
    integer points of the box.  All comparisons are exact; the report's
    lhs is the worst ratio bound-side/limit and rhs is 1.
    """
    if math.gcd(problem.c1, problem.c2) != 1:
        raise ValueError("c1 and c2 must be coprime")
    points = circle_points(problem)
    if len(points) < 3:
        raise ValueError(
            "coefficient bounds need at least three integer points in the box"
        )
    q = problem.m.denominator
    growth = 1 + abs(problem.m)
    h = problem.h
    limit_c1 = 4 * q * growth * h
    limit_c2 = 2 * q * h * h
    limit_c3 = 36 * q * q * growth * growth * h**4
    checks = (
        (Fraction(abs(problem.c1)), limit_c1),
        (Fraction(abs(problem.c2)), limit_c2),
        (Fraction(problem.c3), limit_c3),
    )
    worst = max(side / limit for side, limit in checks)
    passed = all(side <= limit for side, limit in checks)
    factors = {
        "point_count": len(points),
        "c1_abs": abs(problem.c1),
        "c1_limit": limit_c1,
        "c2_abs": abs(problem.c2),
        "c2_limit": limit_c2,
        "c3": problem.c3,
        "c3_limit": limit_c3,
    }
    return BoundReport(float(worst), 1.0, factors, 0.0, passed)


def normalize_common_factor(c1: int, c2: int, c3: int):
    """Divide out d = gcd(c1, c2) (or |c1| if c2 = 0) from the circle.

    Returns the reduced (c1, c2, c3) or None when d**2 does not divide c3,
    in which case the original circle has no integer points at all.
    """
    if c1 == 0:
        raise ValueError("c1 must be nonzero")
    d = abs(c1) if c2 == 0 else math.gcd(abs(c1), abs(c2))
    if c3 % (d * d) != 0:
        return None
    return (c1 // d, c2 // d, c3 // (d * d))


def quadratic_level_count(coeffs: Sequence[int], interval, k: int) -> int:
    """Ordered pairs (x, y) of integers in the interval with P(x)+P(y) = k.

    P(t) = a0*t**2 + a1*t + a2 with integer coefficients and a0 != 0;
    the interval must have length >= 1.
    """
    a0, a1, a2 = (int(c) for c in coeffs)
    if a0 == 0:
        raise ValueError("leading coefficient must be nonzero")
    lo, hi = (Fraction(v) for v in interval)
    if hi - lo < 1:
        raise ValueError("interval length must be at least 1")
    xs = range(math.ceil(lo), math.floor(hi) + 1)
    values = [a0 * x * x + a1 * x + a2 for x in xs]
    bag: dict[int, int] = {}
    for v in values:
        bag[v] = bag.get(v, 0) + 1
    return sum(bag.get(k - v, 0) for v in values)


def pair_sum_counts(ys: Iterable[int]) -> dict[int, int]:
    """Counts of ordered pairs by sum: {k: #{(i, j): y_i + y_j = k}}."""
    ys = list(ys)
    counts: dict[int, int] = {}
    for u in ys:
        for v in ys:
            counts[u + v] = counts.get(u + v, 0) + 1
    return counts


@dataclass(frozen=True)
class AdditiveProfile:
    """Pair-sum statistics of a finite integer sequence."""

    counts: Mapping[int, int]
    max_count: int
    diameter: int

    @classmethod
    def from_frequencies(cls, ys: Sequence[int]) -> "AdditiveProfile":
        if not ys:
            raise ValueError("profile needs at least one value")
        counts = pair_sum_counts(ys)
        return cls(counts, max(counts.values()), max(ys) - min(ys))

    def total(self) -> int:
        return sum(self.counts.values())


def additive_profile(q: int, p: int, offset: int, count: int) -> AdditiveProfile:
    """Pair-sum profile of y_i = q*i**2 + p*i for i = offset+1 .. offset+count.

    Requires q >= 1 and gcd(p, q) = 1 (with q = 1 when p = 0), the reduced
    form produced by quadratic amplitude normalization.
    """
    _check_reduced_pair(p, q)
    if count < 1:
        raise ValueError("count must be >= 1")
    ys = [q * i * i + p * i for i in range(offset + 1, offset + count + 1)]
    return AdditiveProfile.from_frequencies(ys)


def diameter_bound(q: int, p: int, offset: int, count: int) -> int:
    """Integer majorant of max y_i - min y_i for the sequence above.

    From |y_i - y_j| = |i - j| * |q*(i+j) + p| with |i - j| < count and
    |i + j| <= 2*(|offset| + count) on the index window.
    """
    _check_reduced_pair(p, q)
    if count < 1:
        raise ValueError("count must be >= 1")
    return count * (2 * q * (abs(offset) + count) + abs(p))


def _check_reduced_pair(p: int, q: int) -> None:
    if q < 1:
        raise ValueError("q must be >= 1")
    if p == 0:
        if q != 1:
            raise ValueError("p = 0 requires q = 1")
    elif math.gcd(abs(p), q) != 1:
        raise ValueError("p and q must be coprime")
