"""Explicit large sieve right-hand sides and instance verification.

Three nested inequalities are checked, always as lhs <= rhs + error_budget
with the budget covering float roundoff on both sides:

  1. verify_double_sieve: |sum_{x in X} f(x)| against
     pi * (Card*T + Card/delta)**(1/2) * (P+2)**(1/2) * (mean |f*|**2)**(1/2)
     for a delta-spaced X inside [-P, P] and frequencies bounded by T.
  2. verify_sieve_sum_bound: the large sieve sum sum_{x in X} |f(x)|**2
     against pi * (Card*diam + Card/delta)**(1/2) * (P+2)**(1/2)
     * (max pair count)**(1/2) * norm_sq.
  3. verify_quadratic_farey: the same sum over alpha*F(Q) with quadratic
     integer frequencies, against the closed form
     (Q**2 + Q*sqrt(c0*N*W)) * pi*sqrt(2q/c0 + 1) * sup r2 * norm_sq,
     where W = |M| + 2N + |p/q| + 1 and the sup of r2 runs to 144*N**4.

The verifiers never fail on valid input: each right side is a theorem.
A fail in a report is a defect in the code, not an interesting instance.
"""

from __future__ import annotations

import math
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import parse_rational
from .expsums import (
    QuadraticAmplitude,
    _magnitude,
    exp_sum,
    l2_moment,
    make_amplitudes,
    quadratic_amplitude,
    sieve_sum,
)
from .farey import SpacedSet, as_spaced_set, farey
from .lattice import DEFAULT_SCAN_LIMIT, AdditiveProfile, sup_r2
from .reporting import BoundReport

__all__ = [
    "double_sieve_rhs",
    "verify_double_sieve",
    "sieve_sum_rhs",
    "verify_sieve_sum_bound",
    "SieveInstance",
    "make_sieve_instance",
    "instance_from_spec",
    "quadratic_farey_rhs",
    "verify_quadratic_farey",
    "SharpnessCell",
    "sharpness_probe",
    "sweep_double_sieve",
    "sweep_sieve_sum",
    "sweep_quadratic_farey",
    "max_workers",
]

_EPS = sys.float_info.epsilon


def double_sieve_rhs(spaced: SpacedSet, freq_bound, l2_abs: float) -> float:
    """pi*(Card*T + Card/delta)**(1/2) * (P+2)**(1/2) * l2_abs**(1/2).

    freq_bound is T, a bound on |y_i|; l2_abs is the mean of |f*|**2 with
    absolute amplitudes.  The inner factors are combined exactly before
    the single rounding to float.
    """
    if l2_abs < 0:
        raise ValueError("l2_abs must be nonnegative")
    if freq_bound < 0:
        raise ValueError("freq_bound must be nonnegative")
    card = spaced.card
    inner = card * Fraction(freq_bound) + card / spaced.delta
    width = spaced.half_width + 2
    return math.pi * math.sqrt(float(inner)) * math.sqrt(float(width)) * math.sqrt(l2_abs)


def verify_double_sieve(spaced: SpacedSet, a: Sequence, y: Sequence[int]) -> BoundReport:
    """Check |sum_{x in X} f(x)| against double_sieve_rhs with T = max|y_i|."""
    real_parts = []
    imag_parts = []
    for x in spaced.points:
        fx = exp_sum(a, y, x)
        real_parts.append(fx.real)
        imag_parts.append(fx.imag)
    lhs = abs(complex(math.fsum(real_parts), math.fsum(imag_parts)))
    freq_bound = max((abs(yi) for yi in y), default=0)
    mags = [_magnitude(ai) for ai in a]
    l2_abs = float(l2_moment(mags, y))
    rhs = double_sieve_rhs(spaced, freq_bound, l2_abs)
    sum_abs = math.fsum(float(m) for m in mags)
    budget = 16.0 * _EPS * spaced.card * sum_abs + 16.0 * _EPS * rhs
    factors = {
        "card": spaced.card,
        "freq_bound": freq_bound,
        "delta": spaced.delta,
        "half_width": spaced.half_width,
        "l2_abs": l2_abs,
    }
    return BoundReport.from_sides(lhs, rhs, factors, budget)


def sieve_sum_rhs(spaced: SpacedSet, profile: AdditiveProfile, norm_sq) -> float:
    """pi*(Card*diam + Card/delta)**(1/2)*(P+2)**(1/2)*(max pair count)**(1/2)*norm_sq."""
    card = spaced.card
    inner = card * Fraction(profile.diameter) + card / spaced.delta
    width = spaced.half_width + 2
    return (
        math.pi
        * math.sqrt(float(inner))
        * math.sqrt(float(width))
        * math.sqrt(profile.max_count)
        * float(norm_sq)
    )


def verify_sieve_sum_bound(spaced: SpacedSet, a: Sequence, y: Sequence[int]) -> BoundReport:
    """Check sum |f(x)|**2 against sieve_sum_rhs with brute-force profile."""
    lhs = sieve_sum(spaced, a, y)
    profile = AdditiveProfile.from_frequencies(list(y))
    norm_sq = math.fsum(float(_magnitude(ai)) ** 2 for ai in a)
    rhs = sieve_sum_rhs(spaced, profile, norm_sq)
    sum_abs = math.fsum(float(_magnitude(ai)) for ai in a)
    budget = 32.0 * _EPS * spaced.card * sum_abs * sum_abs + 16.0 * _EPS * rhs
    factors = {
        "card": spaced.card,
        "diameter": profile.diameter,
        "delta": spaced.delta,
        "half_width": spaced.half_width,
        "max_pair_count": profile.max_count,
        "norm_sq": norm_sq,
    }
    return BoundReport.from_sides(lhs, rhs, factors, budget)


@dataclass(frozen=True)
class SieveInstance:
    """A quadratic amplitude paired with the scaled Farey set it runs over."""

    amplitude: QuadraticAmplitude
    order: int
    spaced: SpacedSet
    frequencies: tuple
    profile: AdditiveProfile


def make_sieve_instance(amplitude: QuadraticAmplitude, order: int) -> SieveInstance:
    """Assemble X = alpha*F(order), the frequency window, and its profile.

    Requires order >= 3: F(2) is the singleton {1/2}, below the two-point
    minimum of a spaced set.
    """
    if order < 3:
        raise ValueError("Farey order must be >= 3 so the point set has at least two members")
    spaced = as_spaced_set(farey(order), amplitude.alpha)
    frequencies = tuple(amplitude.frequencies())
    profile = AdditiveProfile.from_frequencies(frequencies)
    return SieveInstance(amplitude, order, spaced, frequencies, profile)


def instance_from_spec(obj) -> SieveInstance:
    """Build an instance from {"c0","c1","c2","p","q","M","N","Q","a"}.

    Coefficients are "num/den" strings or integers; "a" is a generator name
    or explicit list.  Declared p and q, when present, are cross-checked
    against the reduction of c1/c0.
    """
    for field in ("c0", "c1", "c2", "M", "N", "Q", "a"):
        if field not in obj:
            raise ValueError(f"instance spec is missing field {field!r}")
    offset = int(obj["M"])
    count = int(obj["N"])
    order = int(obj["Q"])
    amplitudes = make_amplitudes(obj["a"], count)
    amplitude = quadratic_amplitude(
        _spec_rational(obj, "c0"),
        _spec_rational(obj, "c1"),
        _spec_rational(obj, "c2"),
        offset,
        count,
        amplitudes,
    )
    if "p" in obj and int(obj["p"]) != amplitude.p:
        raise ValueError(f"field 'p' = {obj['p']} does not match c1/c0 = "
                         f"{amplitude.p}/{amplitude.q}")
    if "q" in obj and int(obj["q"]) != amplitude.q:
        raise ValueError(f"field 'q' = {obj['q']} does not match c1/c0 = "
                         f"{amplitude.p}/{amplitude.q}")
    return make_sieve_instance(amplitude, order)


def _spec_rational(obj, field: str) -> Fraction:
    value = obj[field]
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, int):
        return Fraction(value)
    raise ValueError(f"field {field!r} must be an integer or a \"num/den\" string")


def quadratic_farey_rhs(
    amplitude: QuadraticAmplitude, order: int, scan_limit: int = DEFAULT_SCAN_LIMIT
) -> float:
    """(Q**2 + Q*sqrt(c0*N*W)) * pi*sqrt(2q/c0+1) * sup r2(144 N**4) * norm_sq."""
    if order < 3:
        raise ValueError("Farey order must be >= 3 so the point set has at least two members")
    n = amplitude.count
    top = sup_r2(144 * n**4, scan_limit)
    weight = abs(amplitude.offset) + 2 * n + abs(Fraction(amplitude.p, amplitude.q)) + 1
    inner = amplitude.c0 * n * weight
    amplification = math.pi * math.sqrt(float(2 * amplitude.q / amplitude.c0 + 1)) * top
    norm_sq = float(amplitude.norm_sq())
    return (order**2 + order * math.sqrt(float(inner))) * amplification * norm_sq


def verify_quadratic_farey(
    inst: SieveInstance, scan_limit: int = DEFAULT_SCAN_LIMIT
) -> BoundReport:
    """Check the Farey large sieve sum against the closed-form right side.

    The left side is sum over x in F(Q) of |sum_i a_i e(x*P(i))|**2, reduced
    exactly: the constant coefficient c2 contributes a unimodular factor to
    each inner sum, so the phases used are (x*alpha)*y_i with y_i integers.
    The verdict also requires the intermediate spaced-set bound
    (sieve_sum_rhs on the reduced data) to hold; its value is reported in
    factors["cross_rhs"].
    """
    amplitude = inst.amplitude
    lhs = sieve_sum(inst.spaced, amplitude.amplitudes, inst.frequencies)
    rhs = quadratic_farey_rhs(amplitude, inst.order, scan_limit)
    norm_sq = float(amplitude.norm_sq())
    cross_rhs = sieve_sum_rhs(inst.spaced, inst.profile, norm_sq)
    sum_abs = math.fsum(float(_magnitude(ai)) for ai in amplitude.amplitudes)
    lhs_budget = 32.0 * _EPS * inst.spaced.card * sum_abs * sum_abs
    budget = lhs_budget + 16.0 * _EPS * rhs
    main_ok = lhs <= rhs + budget
    cross_ok = lhs <= cross_rhs + lhs_budget + 16.0 * _EPS * cross_rhs
    factors = {
        "order": inst.order,
        "card": inst.spaced.card,
        "delta": inst.spaced.delta,
        "alpha": amplitude.alpha,
        "count": amplitude.count,
        "offset": amplitude.offset,
        "sup_r": sup_r2(144 * amplitude.count**4, scan_limit),
        "weight": abs(amplitude.offset) + 2 * amplitude.count
        + abs(Fraction(amplitude.p, amplitude.q)) + 1,
        "norm_sq": norm_sq,
        "cross_rhs": cross_rhs,
    }
    return BoundReport(float(lhs), float(rhs), factors, float(budget), bool(main_ok and cross_ok))


@dataclass(frozen=True)
class SharpnessCell:
    """One grid cell of the sharpness probe: unit amplitudes, square frequencies."""

    order: int
    count: int
    lhs: float
    ratio: float
    envelope: float

    def to_dict(self) -> dict:
        return {
            "Q": self.order,
            "N": self.count,
            "lhs": self.lhs,
            "ratio": self.ratio,
            "envelope": self.envelope,
        }


def sharpness_probe(
    order_max: int = 20, count_max: int = 12, scan_limit: int = DEFAULT_SCAN_LIMIT
) -> list[SharpnessCell]:
    """Tabulate lhs/((N*Q + Q**2)*norm_sq) for a_i = 1, y_i = i**2 over a grid.

    The ratio probes how close the sieve sum comes to the N*Q + Q**2 shape;
    envelope is the proven right side under the same normalization, so
    ratio <= envelope cellwise.  Deterministic: fixed iteration order,
    exact phases.
    """
    if order_max < 3:
        raise ValueError("order_max must be >= 3")
    if count_max < 1:
        raise ValueError("count_max must be >= 1")
    cells = []
    for order in range(3, order_max + 1):
        points = farey(order).fractions
        for n in range(1, count_max + 1):
            ones = tuple([1] * n)
            frequencies = [i * i for i in range(1, n + 1)]
            lhs = sieve_sum(points, ones, frequencies)
            denom = (n * order + order * order) * n
            amplitude = quadratic_amplitude(1, 0, 0, 0, n, ones)
            rhs = quadratic_farey_rhs(amplitude, order, scan_limit)
            cells.append(SharpnessCell(order, n, lhs, lhs / denom, rhs / denom))
    return cells


def max_workers() -> int:
    """Worker cap for verification sweeps; LSL_THREADS overrides the default."""
    env = os.environ.get("LSL_THREADS")
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise ValueError("LSL_THREADS must be a positive integer") from None
        if value < 1:
            raise ValueError("LSL_THREADS must be a positive integer")
        return value
    return min(8, os.cpu_count() or 1)


def _pmap(fn, items: list) -> list:
    # Parameters are generated sequentially before this point, so any
    # worker count returns results in submission order with the same bytes.
    workers = max_workers()
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _random_spaced(rng: random.Random, card_max: int) -> SpacedSet:
    den = rng.randint(8, 64)
    card = rng.randint(2, max(2, card_max))
    span = 4 * den
    numerators = sorted(rng.sample(range(-span, span + 1), card))
    points = tuple(Fraction(v, den) for v in numerators)
    half_width = max(abs(points[0]), abs(points[-1]))
    return SpacedSet(points, Fraction(1, den), half_width)


def _random_amplitudes(rng: random.Random, count: int) -> list[complex]:
    return [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(count)]


def sweep_double_sieve(
    count: int, seed: int, card_max: int = 50, freq_max: int = 10_000, len_max: int = 30
) -> list[BoundReport]:
    """Randomized instances of the first inequality; every report must pass."""
    rng = random.Random(seed)
    jobs = []
    for _ in range(count):
        spaced = _random_spaced(rng, card_max)
        n = rng.randint(1, len_max)
        y = [rng.randint(-freq_max, freq_max) for _ in range(n)]
        a = _random_amplitudes(rng, n)
        jobs.append((spaced, a, y))
    return _pmap(lambda job: verify_double_sieve(*job), jobs)


def sweep_sieve_sum(
    count: int, seed: int, card_max: int = 50, freq_max: int = 10_000, len_max: int = 30
) -> list[BoundReport]:
    """Randomized instances of the spaced-set sieve sum bound."""
    rng = random.Random(seed)
    jobs = []
    for _ in range(count):
        spaced = _random_spaced(rng, card_max)
        n = rng.randint(1, len_max)
        y = [rng.randint(-freq_max, freq_max) for _ in range(n)]
        a = _random_amplitudes(rng, n)
        jobs.append((spaced, a, y))
    return _pmap(lambda job: verify_sieve_sum_bound(*job), jobs)


def sweep_quadratic_farey(
    count: int,
    seed: int,
    order_max: int = 20,
    count_max: int = 12,
    offset_max: int = 10**6,
    slope_max: int = 5,
) -> list[BoundReport]:
    """Randomized Farey instances: q,|p| <= slope_max, |M| <= offset_max."""
    rng = random.Random(seed)
    jobs = []
    for _ in range(count):
        q = rng.randint(1, slope_max)
        if q == 1:
            p = rng.randint(-slope_max, slope_max)
        else:
            p = rng.choice(
                [v for v in range(-slope_max, slope_max + 1)
                 if v != 0 and math.gcd(abs(v), q) == 1]
            )
        c0 = Fraction(rng.randint(1, 6), rng.randint(1, 6))
        c1 = c0 * Fraction(p, q)
        c2 = Fraction(rng.randint(-10, 10), rng.randint(1, 10))
        offset = rng.randint(-offset_max, offset_max)
        n = rng.randint(1, count_max)
        order = rng.randint(3, order_max)
        amplitude = quadratic_amplitude(c0, c1, c2, offset, n, _random_amplitudes(rng, n))
        jobs.append((amplitude, order))
    return _pmap(lambda job: verify_quadratic_farey(make_sieve_instance(*job)), jobs)
