import math

import numpy as np
import pytest

from ballmapper.synthetic import circle_with_bar, gaussian_blobs


def test_circle_with_bar_point_budget_and_axes():
    shape = circle_with_bar(200)
    assert abs(shape.cloud.n_rows - 200) <= 2
    assert shape.cloud.axis_names == ("x", "y")
    assert 0.0 < shape.sampling_gap < shape.top_gap


def test_gap_tips_sit_at_the_gap_edges():
    gap = 0.5
    shape = circle_with_bar(200, gap_halfwidth=gap)
    tip_a, tip_g = shape.gap_tip_rows
    a = shape.cloud.values[tip_a]
    g = shape.cloud.values[tip_g]
    assert a[0] == pytest.approx(-math.sin(gap), abs=1e-9)
    assert g[0] == pytest.approx(math.sin(gap), abs=1e-9)
    assert a[1] == pytest.approx(math.cos(gap), abs=1e-9)
    assert math.dist(a, g) == pytest.approx(shape.top_gap, abs=1e-9)


def test_no_samples_inside_the_gap():
    gap = 0.6
    shape = circle_with_bar(200, gap_halfwidth=gap)
    strokes = shape.cloud.attribute("stroke")
    for row in range(shape.cloud.n_rows):
        if strokes[row] != "circle":
            continue
        x, y = shape.cloud.values[row]
        angle = math.atan2(y, x)
        if abs(angle - math.pi / 2) < gap - 1e-9:
            raise AssertionError(f"circle sample inside the gap at row {row}")


def test_thick_bar_strokes_present():
    shape = circle_with_bar(200, bar_heights=(-0.4, 0.4))
    strokes = shape.cloud.attribute("stroke")
    bar_rows = shape.cloud.values[[s == "bar" for s in strokes]]
    assert set(np.round(bar_rows[:, 1], 6)) == {-0.4, 0.4}


def test_bad_parameters_rejected():
    with pytest.raises(ValueError):
        circle_with_bar(100, gap_halfwidth=2.0)
    with pytest.raises(ValueError):
        circle_with_bar(100, bar_heights=(1.5,))


def test_gaussian_blobs_shape():
    cloud = gaussian_blobs(20, centers=[(0.0, 0.0), (5.0, 5.0)], spread=0.5, seed=1)
    assert cloud.n_rows == 40
    assert cloud.n_axes == 2
