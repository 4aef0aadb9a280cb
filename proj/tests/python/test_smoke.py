import math

import pytest

import pointpair as pp


def test_evaluation():
    assert pp.evaluate("ppf", "ball:2", [0.5, 0.0], [-0.5, 0.0]) == pytest.approx(1 / math.sqrt(2), rel=1e-15)
    assert pp.boundary_distance("interval:-1:1", [0.3]) == pytest.approx(0.7)
    assert pp.psi_alpha(4.0, [0.5, 0.0], [0.25, 0.0]) == pytest.approx(0.5)
    assert not pp.contains("ball:2", [1.0, 0.0])
    pts = pp.sample_interior("halfspace:3", 0, 5)
    assert len(pts) == 5 and all(p[2] > 0 for p in pts)


def test_errors_are_value_errors():
    with pytest.raises(pp.PointPairError):
        pp.evaluate("ppf", "ball:2", [1.5, 0.0], [0.0, 0.0])
    with pytest.raises(ValueError):
        pp.evaluate("ppf", "nowhere", [0.0], [0.1])
    with pytest.raises(ValueError):
        pp.c_star(-1.0)


def test_interval_constant():
    e = pp.estimate_quasi_constant("ppf", "interval:-1:1", budget=100000, seed=1)
    assert abs(e["c_hat"] - pp.SQRT5_OVER_2) < 1e-6
    w = e["witness"]
    assert pp.triangle_ratio("ppf", "interval:-1:1", w["x"], w["y"], w["z"]) == e["c_hat"]


def test_violations_and_witnesses():
    v = pp.find_violation("ppf:alpha=13", "rplus", budget=50000, seed=1)
    assert v is not None and v["ratio"] > 1
    assert pp.find_violation("ppf:alpha=12", "rplus", budget=20000) is None
    b = pp.ball_counterexample(4.0)
    assert abs(b["ratio"] - math.sqrt(1.125)) < 1e-12
    assert pp.c_star(4.0) == pytest.approx(pp.SQRT5_OVER_2, abs=1e-12)
    assert pp.classify_1d("rplus") == (True, 1.0)


def test_oracles_and_disk():
    assert abs(pp.h_poly(0.2)) < 1e-15
    assert abs(pp.lemma31_margin(-1 / 3, 0.0, 1 / 3)) < 1e-12
    assert pp.rplus_margin(13.0, 2.1) == pytest.approx(-0.07)
    rows = pp.trace_disk("ppf:alpha=3.5", "punctured:2", [0.5, 0.0], 0.5, rays=8)
    assert len(rows) == 8
    assert abs(rows[0][1][0] - 1.405455) < 1e-6
    csv = pp.trace_disk("ppf:alpha=3.5", "punctured:2", [0.5, 0.0], 0.5, rays=8, format="csv")
    assert csv.splitlines()[0] == "angle,x,y,flag"
