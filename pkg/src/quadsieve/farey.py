"""Farey sequences and certified well-spaced sets of rationals.

F(Q) here is the set of reduced fractions in the open interval (0, 1) with
denominator at most Q, in increasing order.  Consecutive elements a/b < c/d
satisfy bc - ad = 1, so the gap is 1/(bd) >= 1/Q**2: scaling F(Q) by a
positive rational alpha gives a set that is certifiably (alpha/Q**2)-spaced
inside [0, alpha].  "Certified" means the stored delta is an exact lower
bound on every consecutive gap, re-verified at construction.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction

from .exact import format_rational

__all__ = ["FareySequence", "SpacedSet", "farey", "as_spaced_set", "neighbor_count"]


@dataclass(frozen=True)
class FareySequence:
    """Reduced fractions in (0, 1) with denominator <= order, ascending."""

    order: int
    fractions: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.fractions)

    def __iter__(self):
        return iter(self.fractions)

    def to_json(self) -> list[str]:
        return [format_rational(x) for x in self.fractions]


def farey(order: int) -> FareySequence:
    """Build F(order) by the mediant next-term recurrence.

    Raises ValueError for order < 2: F(1) is empty because the endpoints
    0/1 and 1/1 are excluded.
    """
    if order < 2:
        raise ValueError("Farey order must be >= 2; F(1) is empty on (0, 1)")
    terms: list[Fraction] = []
    # Walk from 0/1 using (a/b, c/d) -> (c/d, (kc-a)/(kd-b)), k = (order+b)//d.
    a, b, c, d = 0, 1, 1, order
    while (c, d) != (1, 1):
        terms.append(Fraction(c, d))
        k = (order + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
    return FareySequence(order, tuple(terms))


@dataclass(frozen=True)
class SpacedSet:
    """Finite increasing rationals with a certified minimum-gap delta.

    Invariants, re-checked at construction: at least two points, delta > 0,
    every consecutive gap >= delta, and all points inside
    [-half_width, half_width].
    """

    points: tuple[Fraction, ...]
    delta: Fraction
    half_width: Fraction

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(Fraction(p) for p in self.points))
        object.__setattr__(self, "delta", Fraction(self.delta))
        object.__setattr__(self, "half_width", Fraction(self.half_width))
        if len(self.points) < 2:
            raise ValueError("a spaced set needs at least two points")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        prev = None
        for point in self.points:
            if prev is not None and point - prev < self.delta:
                raise ValueError(
                    f"gap {point - prev} below certified delta {self.delta}"
                )
            prev = point
        if self.points[0] < -self.half_width or self.points[-1] > self.half_width:
            raise ValueError("points leave the enclosing interval")

    @property
    def card(self) -> int:
        return len(self.points)

    def to_dict(self) -> dict:
        return {
            "card": self.card,
            "delta": self.delta,
            "half_width": self.half_width,
            "points": list(self.points),
        }


def as_spaced_set(seq: FareySequence, scale) -> SpacedSet:
    """scale * F(Q) as a certified (scale/Q**2)-spaced subset of [0, scale]."""
    scale = Fraction(scale)
    if scale <= 0:
        raise ValueError("scale must be positive")
    if len(seq.fractions) < 2:
        raise ValueError(
            "Farey order must be >= 3 so the scaled set has at least two points"
        )
    points = tuple(scale * x for x in seq.fractions)
    return SpacedSet(points, scale / seq.order**2, scale)


def neighbor_count(spaced: SpacedSet, radius, x) -> int:
    """Number of set points within distance radius of the member x.

    x itself counts.  Raises ValueError when x is not in the set or when
    radius <= 0.  For any eps > 0 the count is at most 1 + 2*eps/delta
    when radius = eps, which is what makes delta-spaced sets useful.
    """
    radius = Fraction(radius)
    if radius <= 0:
        raise ValueError("radius must be positive")
    x = Fraction(x)
    points = spaced.points
    i = bisect.bisect_left(points, x)
    if i == len(points) or points[i] != x:
        raise ValueError(f"{x} is not a member of the spaced set")
    lo = bisect.bisect_left(points, x - radius)
    hi = bisect.bisect_right(points, x + radius)
    return hi - lo
