"""Trigonometric sums with exactly reduced rational phases and their moments.

f(x) = sum_i a_i * e(x * y_i) is evaluated by first reducing every product
x*y_i modulo 1 in exact rational arithmetic and only then calling floating
trigonometry.  Without that reduction e(x*y) is meaningless in double
precision once x*y passes 2**53; with it, the phase error is one rounding
of a number in [0, 1) regardless of magnitude.

The L2 and L4 moments over one period are computed combinatorially, never
by quadrature: integrating |f|**2 picks out coincident frequencies and
integrating |f*|**4 (f* has amplitudes |a_i|) picks out pair sums, so both
reduce to exact counting.  When the amplitudes are rational the results
are exact rationals.
"""

from __future__ import annotations

import math
import re
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import parse_rational, phase_mod1
from .farey import SpacedSet
from .lattice import pair_sum_counts
from .reporting import BoundReport

__all__ = [
    "exp_sum",
    "sieve_sum",
    "l2_moment",
    "l4_moment_abs",
    "phi_hat",
    "majorisation_check",
    "MomentReport",
    "moment_report",
    "QuadraticAmplitude",
    "quadratic_amplitude",
    "make_amplitudes",
    "amplitude_window_from_json",
    "is_exact_sequence",
]

_TWO_PI = 2.0 * math.pi


def _as_exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(
        f"abscissae must be exact rationals, got {type(x).__name__}; "
        "float phases lose the fractional part for large frequencies"
    )


def is_exact_sequence(values: Iterable) -> bool:
    """True when every value is an int or Fraction (exact-moment mode)."""
    return all(isinstance(v, (int, Fraction)) for v in values)


def _magnitude(value):
    """|value|, exact for int/Fraction amplitudes."""
    if isinstance(value, (int, Fraction)):
        return abs(value)
    return abs(complex(value))


def _abs_sq(value):
    """|value|**2, exact for int/Fraction."""
    if isinstance(value, (int, Fraction)):
        return value * value
    z = complex(value)
    return z.real * z.real + z.imag * z.imag


def exp_sum(a: Sequence, y: Sequence[int], x) -> complex:
    """f(x) = sum_i a_i e(x*y_i) with phases reduced mod 1 exactly first."""
    if len(a) != len(y):
        raise ValueError("amplitude and frequency sequences must align")
    x = _as_exact(x)
    real_parts = []
    imag_parts = []
    for ai, yi in zip(a, y):
        angle = _TWO_PI * float(phase_mod1(x, yi))
        c, s = math.cos(angle), math.sin(angle)
        z = complex(ai)
        real_parts.append(z.real * c - z.imag * s)
        imag_parts.append(z.real * s + z.imag * c)
    return complex(math.fsum(real_parts), math.fsum(imag_parts))


def sieve_sum(points, a: Sequence, y: Sequence[int]) -> float:
    """sum over x of |f(x)|**2, accumulated in fixed order with fsum.

    points may be a SpacedSet or any iterable of rationals; the summation
    order is the iteration order, so reruns are bit-identical.
    """
    xs = points.points if isinstance(points, SpacedSet) else points
    squares = []
    for x in xs:
        fx = exp_sum(a, y, x)
        squares.append(fx.real * fx.real + fx.imag * fx.imag)
    return math.fsum(squares)


def l2_moment(a: Sequence, y: Sequence[int]):
    """Mean of |f|**2 over one period: sum over levels v of |sum_{y_i=v} a_i|**2.

    Exact (int/Fraction result) when all amplitudes are ints or Fractions.
    """
    if len(a) != len(y):
        raise ValueError("amplitude and frequency sequences must align")
    groups: dict[int, list] = {}
    for ai, yi in zip(a, y):
        groups.setdefault(yi, []).append(ai)
    if is_exact_sequence(a):
        total = Fraction(0)
        for v in sorted(groups):
            s = sum(groups[v], Fraction(0))
            total += s * s
        return total
    total_f = 0.0
    for v in sorted(groups):
        s = complex(0.0)
        for ai in groups[v]:
            s += complex(ai)
        total_f += s.real * s.real + s.imag * s.imag
    return total_f


def l4_moment_abs(a: Sequence, y: Sequence[int]):
    """Mean of |f*|**4 over one period, f* having amplitudes |a_i|.

    Equals sum over k of W(k)**2 with W(k) = sum_{y_i+y_j=k} |a_i||a_j|.
    Exact when the amplitudes are ints or Fractions.
    """
    if len(a) != len(y):
        raise ValueError("amplitude and frequency sequences must align")
    mags = [_magnitude(ai) for ai in a]
    weights: dict[int, object] = {}
    for mi, yi in zip(mags, y):
        for mj, yj in zip(mags, y):
            k = yi + yj
            weights[k] = weights.get(k, 0) + mi * mj
    if is_exact_sequence(a):
        return sum((weights[k] * weights[k] for k in sorted(weights)), Fraction(0))
    return math.fsum(float(weights[k]) ** 2 for k in sorted(weights))


def phi_hat(eps: float, t: float) -> float:
    """Fourier transform 2*eps*sin(2*pi*eps*t)/(2*pi*eps*t) of the window.

    The removable singularity at t = 0 takes the value 2*eps.  Whenever
    |eps*t| <= 1/4 the value is sandwiched: 4*eps/pi <= phi_hat <= 2*eps.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    angle = _TWO_PI * eps * t
    if angle == 0.0:
        return 2.0 * eps
    return 2.0 * eps * math.sin(angle) / angle


def majorisation_check(a: Sequence, b: Sequence, y: Sequence[int]) -> BoundReport:
    """Check that replacing amplitudes by pointwise majorants grows the L2 moment.

    Preconditions: |a_i| <= b_i for every i.  Both moments are the exact
    combinatorial values; the verdict is exact in rational mode.
    """
    if not (len(a) == len(b) == len(y)):
        raise ValueError("sequences must align")
    for i, (ai, bi) in enumerate(zip(a, b)):
        if _magnitude(ai) > bi:
            raise ValueError(f"majorant violated at index {i}: |a_i| > b_i")
    lhs = l2_moment(a, y)
    rhs = l2_moment(b, y)
    exact = is_exact_sequence(a) and is_exact_sequence(b)
    budget = 0.0 if exact else 32.0 * sys_eps() * float(rhs)
    factors = {"count": len(y), "exact": exact}
    return BoundReport.from_sides(lhs, rhs, factors, budget)


def sys_eps() -> float:
    """Double-precision machine epsilon."""
    return sys.float_info.epsilon


@dataclass(frozen=True)
class MomentReport:
    """Exactly computed moments plus the pair-count majorant for the L4 norm."""

    l2: object
    l4: object
    pair_count_bound: object

    def to_dict(self) -> dict:
        return {
            "l2": float(self.l2),
            "l4": float(self.l4),
            "pair_count_bound": float(self.pair_count_bound),
        }


def moment_report(a: Sequence, y: Sequence[int]) -> MomentReport:
    """L2 and L4 moments plus the bound max_k #{y_i+y_j=k} * (sum |a_i|**2)**2."""
    norm_sq = sum(_abs_sq(ai) for ai in a)
    bound = max(pair_sum_counts(y).values()) * norm_sq * norm_sq if y else 0
    return MomentReport(l2_moment(a, y), l4_moment_abs(a, y), bound)


def _conjugate(value):
    if isinstance(value, (int, Fraction)):
        return value
    return complex(value).conjugate()


@dataclass(frozen=True)
class QuadraticAmplitude:
    """Amplitudes attached to the quadratic phase c0*i**2 + c1*i + c2.

    After normalization c0 > 0 and c1/c0 = p/q in lowest terms with q >= 1,
    so the phase at index i is alpha*(q*i**2 + p*i) + c2 with alpha = c0/q.
    Indices run over offset+1 .. offset+count.
    """

    c0: Fraction
    c1: Fraction
    c2: Fraction
    p: int
    q: int
    offset: int
    count: int
    amplitudes: tuple

    def __post_init__(self):
        if self.c0 <= 0:
            raise ValueError("normalized leading coefficient must be positive")
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if math.gcd(abs(self.p), self.q) != 1 and self.p != 0:
            raise ValueError("p/q must be in lowest terms")
        if self.p == 0 and self.q != 1:
            raise ValueError("p = 0 requires q = 1")
        if self.c1 * self.q != self.c0 * self.p:
            raise ValueError("p/q must equal c1/c0 exactly")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if len(self.amplitudes) != self.count:
            raise ValueError("amplitude sequence must have count entries")

    @property
    def alpha(self) -> Fraction:
        return self.c0 / self.q

    def indices(self) -> range:
        return range(self.offset + 1, self.offset + self.count + 1)

    def frequencies(self) -> list[int]:
        """y_i = q*i**2 + p*i over the index window, exact integers."""
        return [self.q * i * i + self.p * i for i in self.indices()]

    def norm_sq(self):
        """sum |a_i|**2, exact in rational mode."""
        if is_exact_sequence(self.amplitudes):
            return sum((ai * ai for ai in self.amplitudes), Fraction(0))
        return math.fsum(_abs_sq(ai) for ai in self.amplitudes)

    def to_dict(self) -> dict:
        return {
            "c0": self.c0,
            "c1": self.c1,
            "c2": self.c2,
            "p": self.p,
            "q": self.q,
            "M": self.offset,
            "N": self.count,
        }


def quadratic_amplitude(c0, c1, c2, offset: int, count: int, amplitudes) -> QuadraticAmplitude:
    """Normalize a quadratic phase and attach amplitudes.

    Accepts int, Fraction, or "num/den" strings for the coefficients.
    A negative c0 is normalized by negating the polynomial and conjugating
    the amplitudes, which leaves every |f(x)| unchanged.
    """
    c0, c1, c2 = (_coeff(v) for v in (c0, c1, c2))
    if c0 == 0:
        raise ValueError("leading coefficient must be nonzero")
    amplitudes = tuple(amplitudes)
    if c0 < 0:
        c0, c1, c2 = -c0, -c1, -c2
        amplitudes = tuple(_conjugate(ai) for ai in amplitudes)
    ratio = c1 / c0
    return QuadraticAmplitude(
        c0, c1, c2, ratio.numerator, ratio.denominator, offset, count, amplitudes
    )


def _coeff(value) -> Fraction:
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("coefficients must be exact rationals, not floats")
    return Fraction(value)


_RANDOM_SPEC = re.compile(r"^random\((\d+)\)$")


def make_amplitudes(spec, count: int) -> tuple:
    """Build an amplitude sequence from a generator name or explicit list.

    "ones" gives exact unit amplitudes; "random(seed)" gives complex values
    with real and imaginary parts uniform on [-1, 1], drawn in index order;
    a list may hold numbers or [re, im] pairs.
    """
    if isinstance(spec, str):
        if spec == "ones":
            return tuple([1] * count)
        match = _RANDOM_SPEC.match(spec)
        if match:
            rng = random.Random(int(match.group(1)))
            return tuple(
                complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(count)
            )
        raise ValueError(f"unknown amplitude generator {spec!r}")
    out = []
    for entry in spec:
        if isinstance(entry, (list, tuple)):
            re_part, im_part = entry
            out.append(complex(re_part, im_part))
        elif isinstance(entry, (int, Fraction)):
            out.append(entry)
        else:
            out.append(complex(entry))
    if len(out) != count:
        raise ValueError(f"expected {count} amplitudes, got {len(out)}")
    return tuple(out)


def amplitude_window_from_json(obj: Mapping) -> tuple[int, int, tuple]:
    """Parse {"M": ..., "N": ..., "a": ...} into (offset, count, amplitudes)."""
    try:
        offset = int(obj["M"])
        count = int(obj["N"])
        spec = obj["a"]
    except KeyError as missing:
        raise ValueError(f"amplitude JSON is missing field {missing.args[0]!r}") from None
    return offset, count, make_amplitudes(spec, count)
