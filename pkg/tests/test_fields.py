import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helixgeom.catalog import FIELDS, cylinder, euclidean, sphere
from helixgeom.fields import (
    ScalarField,
    ambient_consistency,
    directional_derivative_identity,
    eikonal_check,
    eikonal_grid_check,
    gradient,
    parallel_gradient_check,
)
from helixgeom.manifold import ChartCurve, chart_curve_from_ambient, geodesic, metric
from helixgeom.report import Verdict


def line_cc(patch, point, v, domain=(0.0, 6.0)):
    p, v = np.asarray(point, float), np.asarray(v, float)
    v = v / math.sqrt(v @ metric(patch, p) @ v)
    return ChartCurve(lambda s: p + s * v, domain, patch, lambda s: v, lambda s: 0 * v)


def test_example_field_gradient_norm_on_helix(r3, example_field, helix_cc):
    rep = eikonal_check(r3, example_field, helix_cc)
    assert rep.verdict is Verdict.PASS
    assert rep.payload["grad_norm"] == pytest.approx(math.sqrt(5), rel=1e-12)


def test_height_on_cylinder_is_eikonal(cyl, height_field):
    grid = np.array([[a, b] for a in np.linspace(-2, 2, 3) for b in np.linspace(-1, 1, 3)])
    rep = eikonal_grid_check(cyl, height_field, grid)
    assert rep.verdict is Verdict.PASS
    assert rep.payload["grad_norm"] == pytest.approx(1.0)


def test_intrinsic_gradient_is_projection_of_ambient():
    sp = sphere()
    f = FIELDS["paraboloid_height"].factory(sp)
    grid = np.array([[a, b] for a in (0.5, 1.0, 2.0) for b in (-1.0, 0.0, 2.5)])
    assert ambient_consistency(sp, f, grid) <= 1e-12


def test_numeric_partials_agree():
    sp = sphere()
    f = FIELDS["paraboloid_height"].factory(sp)
    numeric = ScalarField(f.value)
    np.testing.assert_allclose(gradient(sp, numeric, [0.9, 0.4]), gradient(sp, f, [0.9, 0.4]),
                               atol=1e-8)


@given(st.floats(0.3, 2.8), st.floats(-3, 3), st.lists(st.floats(-2, 2), min_size=3,
                                                       max_size=3))
def test_gradient_is_tangent_and_represents_differential(u1, u2, a):
    sp = sphere()
    a = np.array(a)
    f = ScalarField.from_ambient(lambda x: float(a @ x), lambda x: a, sp)
    u = np.array([u1, u2])
    g = gradient(sp, f, u)
    J = sp.jacobian(u)
    # <grad f, J e_i> = d_i f
    np.testing.assert_allclose(J.T @ g, f.chart_partials(u), atol=1e-10)
    # grad f lies in the tangent space
    c = np.linalg.lstsq(J, g, rcond=None)[0]
    np.testing.assert_allclose(J @ c, g, atol=1e-10)


def test_distance_field_eikonal_off_origin():
    r3 = euclidean(3)
    f = FIELDS["distance_from_origin"].factory(r3)
    rep = eikonal_check(r3, f, line_cc(r3, [-3, 1, 0], [1, 0, 0]))
    assert rep.verdict is Verdict.PASS     # |grad |x|| = 1 everywhere off the origin


def test_example_field_not_eikonal_on_line(r3, example_field):
    rep = eikonal_check(r3, example_field, line_cc(r3, [0, 0, 0], [1, 0, 0]))
    assert rep.verdict is Verdict.FAIL


def test_linear_field_has_parallel_gradient(cyl, height_field):
    cc = geodesic(cyl, [0, 0], [math.sqrt(0.5), math.sqrt(0.5)], 3.0, 0.01)
    assert parallel_gradient_check(cyl, height_field, cc).verdict is Verdict.PASS


def test_quadratic_field_gradient_not_parallel(r3, example_field, helix_cc):
    assert parallel_gradient_check(r3, example_field, helix_cc).verdict is Verdict.FAIL


@pytest.mark.parametrize("field_name", ["paraboloid_height", "distance_from_origin"])
def test_directional_identity_on_sphere_geodesic(field_name):
    sp = sphere()
    f = FIELDS[field_name].factory(sp)
    cc = geodesic(sp, [1.0, 0.0], [0.6, 0.8 / math.sin(1.0)], 1.0, 0.01)
    rep = directional_derivative_identity(sp, f, cc)
    assert rep.payload["max_residual"] <= 1e-6


@given(st.floats(0.3, 3.0), st.floats(0.3, 3.0))
def test_directional_identity_on_helices(radius, pitch):
    from conftest import helix_curve

    r3 = euclidean(3)
    f = FIELDS["paraboloid_height"].factory(r3)
    cc = chart_curve_from_ambient(helix_curve(radius, pitch), r3)
    assert directional_derivative_identity(r3, f, cc).verdict is Verdict.PASS


def test_ambient_consistency_requires_extension(cyl, height_field):
    with pytest.raises(ValueError):
        ambient_consistency(cyl, height_field, np.zeros((1, 2)))
