"""Exact-arithmetic toolkit for explicit large sieve inequalities.

Builds Farey sequences and certified spaced sets, counts lattice points on
circles, evaluates trigonometric sums with exactly reduced rational phases,
and verifies three nested sieve inequalities with explicit constants.
"""

from .exact import (
    Rational,
    factorize,
    format_rational,
    parse_rational,
    phase_mod1,
    reduce_fraction,
    totient_sum,
)
from .farey import FareySequence, SpacedSet, as_spaced_set, farey, neighbor_count
from .lattice import (
    AdditiveProfile,
    CirclePointProblem,
    ScanLimitExceeded,
    additive_profile,
    check_circle_coeff_bounds,
    circle_points,
    diameter_bound,
    normalize_common_factor,
    pair_sum_counts,
    quadratic_level_count,
    r2,
    r2_upto,
    sup_r2,
    sup_r2_witness,
)
from .expsums import (
    MomentReport,
    QuadraticAmplitude,
    amplitude_window_from_json,
    exp_sum,
    l2_moment,
    l4_moment_abs,
    majorisation_check,
    make_amplitudes,
    moment_report,
    phi_hat,
    quadratic_amplitude,
    sieve_sum,
)
from .bounds import (
    SharpnessCell,
    SieveInstance,
    double_sieve_rhs,
    instance_from_spec,
    make_sieve_instance,
    quadratic_farey_rhs,
    sharpness_probe,
    sieve_sum_rhs,
    sweep_double_sieve,
    sweep_quadratic_farey,
    sweep_sieve_sum,
    verify_double_sieve,
    verify_quadratic_farey,
    verify_sieve_sum_bound,
)
from .reporting import BoundReport, json_text

__version__ = "0.1.0"
