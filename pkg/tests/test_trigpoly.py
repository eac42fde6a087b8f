import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helixgeom.trigpoly import scalar_map, trig_map

terms = st.fixed_dictionaries({
    "c": st.floats(-3, 3),
    "pow": st.lists(st.integers(0, 3), min_size=2, max_size=2),
    "trig": st.lists(st.sampled_from([None, "cos", "sin"]), min_size=2, max_size=2),
    "freq": st.lists(st.floats(-2, 2), min_size=2, max_size=2),
    "phase": st.lists(st.floats(-3, 3), min_size=2, max_size=2),
})


def test_sphere_chart_values():
    m = trig_map([[{"c": 1.0, "trig": ["sin", "cos"]}], [{"c": 1.0, "trig": ["sin", "sin"]}],
                  [{"c": 1.0, "trig": ["cos", None]}]], 2)
    u = np.array([0.7, 0.3])
    np.testing.assert_allclose(m(u), [math.sin(0.7) * math.cos(0.3),
                                      math.sin(0.7) * math.sin(0.3), math.cos(0.7)])
    J = m.gradient_map()(u)
    assert J.shape == (3, 2)
    np.testing.assert_allclose(J[2], [-math.sin(0.7), 0.0])


def test_polynomial_derivative():
    m = scalar_map([{"c": 2.0, "pow": [3]}, {"c": -1.0}], 1)
    assert m.diff(0)(2.0)[0] == pytest.approx(24.0)
    assert m.diff(0).diff(0)(2.0)[0] == pytest.approx(24.0)
    assert m.diff(0).diff(0).diff(0).diff(0)(2.0)[0] == 0.0


def test_wrong_arity():
    with pytest.raises(ValueError):
        scalar_map([{"c": 1.0}], 2)([1.0])


def test_bad_term_rejected():
    with pytest.raises(ValueError):
        scalar_map([{"c": 1.0, "trig": ["tan"]}], 1)


@given(st.lists(terms, min_size=1, max_size=4), st.floats(-2, 2), st.floats(-2, 2),
       st.integers(0, 1))
def test_exact_partial_matches_central_difference(ts, x, y, j):
    m = scalar_map(ts, 2)
    u = np.array([x, y])
    e = np.zeros(2)
    e[j] = 1e-5
    fd = (m(u + e)[0] - m(u - e)[0]) / 2e-5
    assert m.diff(j)(u)[0] == pytest.approx(fd, abs=1e-5 * (1 + abs(fd)))


@given(st.lists(terms, min_size=1, max_size=4), st.floats(-2, 2), st.floats(-2, 2))
def test_mixed_partials_commute(ts, x, y):
    m = scalar_map(ts, 2)
    u = np.array([x, y])
    assert m.diff(0).diff(1)(u)[0] == pytest.approx(m.diff(1).diff(0)(u)[0], abs=1e-9)
