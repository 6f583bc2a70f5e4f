"""Acceptance gate: eight end-to-end criteria, one printed line each.

Each criterion is computed once per session and shared between the pass
assertion and the runtime budget assertion.  The printed line goes to the
real terminal so a plain pytest run shows the verdicts.
"""

import pytest

from quadsieve import acceptance

_CACHE: dict[int, acceptance.CriterionResult] = {}


def _result(number: int, capsys) -> acceptance.CriterionResult:
    if number not in _CACHE:
        _CACHE[number] = acceptance.run([number])[0]
    result = _CACHE[number]
    with capsys.disabled():
        print(result.line(), flush=True)
    return result


def test_criterion_1_farey_structure(capsys):
    result = _result(1, capsys)
    assert result.passed, result.detail
    assert result.seconds < 10.0


def test_criterion_2_two_squares_counts(capsys):
    result = _result(2, capsys)
    assert result.passed, result.detail
    assert result.seconds < 60.0


def test_criterion_3_circle_coefficient_bounds(capsys):
    result = _result(3, capsys)
    assert result.passed, result.detail
    assert result.seconds < 30.0


def test_criterion_4_pair_sum_bound(capsys):
    result = _result(4, capsys)
    assert result.passed, result.detail
    assert result.seconds < 300.0


def test_criterion_5_moment_oracles(capsys):
    result = _result(5, capsys)
    assert result.passed, result.detail


def test_criterion_6_inequality_sweeps(capsys):
    result = _result(6, capsys)
    assert result.passed, result.detail
    assert result.seconds < 300.0


def test_criterion_7_large_offset_phases(capsys):
    result = _result(7, capsys)
    assert result.passed, result.detail


def test_criterion_8_sharpness_grid(capsys):
    result = _result(8, capsys)
    assert result.passed, result.detail


def test_runner_covers_all_criteria():
    assert acceptance.criterion_numbers() == [1, 2, 3, 4, 5, 6, 7, 8]
    with pytest.raises(ValueError):
        acceptance.run([42])
