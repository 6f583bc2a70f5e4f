import json
import math
from fractions import Fraction

import pytest

from quadsieve.reporting import BoundReport, json_text


def test_from_sides_decides_on_exact_values():
    # 1/3 <= 1/3 exactly even though the floats are rounded afterwards
    report = BoundReport.from_sides(Fraction(1, 3), Fraction(1, 3), {})
    assert report.passed
    assert report.lhs == report.rhs == pytest.approx(1 / 3)
    failing = BoundReport.from_sides(Fraction(1, 3) + Fraction(1, 10**40), Fraction(1, 3), {})
    assert not failing.passed


def test_from_sides_budget():
    report = BoundReport.from_sides(1.0 + 1e-12, 1.0, {"n": 1}, error_budget=1e-9)
    assert report.passed
    report = BoundReport.from_sides(1.0 + 1e-6, 1.0, {"n": 1}, error_budget=1e-9)
    assert not report.passed


def test_to_dict_layout():
    report = BoundReport.from_sides(1.0, 2.0, {"card": 3}, 0.0)
    shaped = report.to_dict()
    assert list(shaped) == ["lhs", "rhs", "error_budget", "pass", "factors"]
    assert shaped["pass"] is True
    assert shaped["factors"] == {"card": 3}


def test_json_scalars():
    assert json_text(None) == "null"
    assert json_text(True) == "true"
    assert json_text(False) == "false"
    assert json_text(12) == "12"
    assert json_text(0.5) == "0.5"
    assert json_text(1 / 3) == "0.33333333333333331"
    assert json_text(Fraction(-2, 6)) == '"-1/3"'
    assert json_text("a\"b\\c\n") == '"a\\"b\\\\c\\n"'


def test_json_float_roundtrips_exactly():
    values = [0.1, 1e300, -2.5e-17, math.pi, 6438.029919473559]
    for v in values:
        assert float(json.loads(json_text(v))) == v


def test_json_containers_keep_order():
    payload = {"b": [1, 2.0, "x"], "a": {"z": None, "y": Fraction(1, 2)}}
    assert json_text(payload) == '{"b":[1,2,"x"],"a":{"z":null,"y":"1/2"}}'
    parsed = json.loads(json_text(payload))
    assert parsed["a"]["y"] == "1/2"


def test_json_report_embedding():
    report = BoundReport.from_sides(1.0, 2.0, {"delta": Fraction(1, 9)}, 0.0)
    text = json_text({"report": report})
    parsed = json.loads(text)
    assert parsed["report"]["pass"] is True
    assert parsed["report"]["factors"]["delta"] == "1/9"


def test_json_rejects_bad_values():
    with pytest.raises(ValueError):
        json_text(float("nan"))
    with pytest.raises(ValueError):
        json_text(float("inf"))
    with pytest.raises(TypeError):
        json_text({1: "x"})
    with pytest.raises(TypeError):
        json_text(object())


def test_json_is_stable_across_runs():
    payload = {"xs": [Fraction(1, 3), 0.25, -7], "flag": False}
    assert json_text(payload) == json_text(payload)
