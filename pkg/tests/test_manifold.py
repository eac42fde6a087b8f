import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helixgeom.catalog import cylinder, graph_linear, s1_r2, sphere
from helixgeom.errors import (
    DomainExitError,
    IntegratorAccuracyError,
    ParametrizationError,
    SingularPatchError,
)
from helixgeom.manifold import (
    ChartCurve,
    SurfacePatch,
    chart_coordinates,
    christoffel,
    geodesic,
    intrinsic_frenet,
    intrinsic_frenet_residuals,
    metric,
    split,
)

from conftest import helix_curve

# sphere Christoffel symbols at u1 = 0.7, frozen from tests/oracles/derive_values.py
SPHERE_G1_22 = -0.49272486499423009
SPHERE_G2_12 = 1.1872418321266794

angles = st.floats(0.3, math.pi - 0.3)
vectors = st.lists(st.floats(-5, 5), min_size=3, max_size=3).map(np.array)


def test_sphere_metric():
    g = metric(sphere(), [0.7, 0.3])
    np.testing.assert_allclose(g, np.diag([1.0, math.sin(0.7) ** 2]), atol=1e-14)


def test_sphere_christoffel_symbols():
    G = christoffel(sphere(), [0.7, 0.3])
    assert G[0, 1, 1] == pytest.approx(SPHERE_G1_22, abs=1e-12)
    assert G[1, 0, 1] == pytest.approx(SPHERE_G2_12, abs=1e-12)
    assert G[1, 1, 0] == pytest.approx(SPHERE_G2_12, abs=1e-12)
    assert G[0, 0, 0] == pytest.approx(0.0, abs=1e-14)


def test_numeric_patch_christoffel_agrees():
    sp = sphere()
    numeric = SurfacePatch(sp.chart, sp.box)
    np.testing.assert_allclose(christoffel(numeric, [0.7, 0.3]),
                               christoffel(sp, [0.7, 0.3]), atol=1e-6)


def test_graph_split_of_vertical():
    parts = split(graph_linear(), [0.2, -1.0], [0, 0, 1])
    np.testing.assert_allclose(parts.tangential, [0.5, 0, 0.5], atol=1e-14)
    np.testing.assert_allclose(parts.normal, [-0.5, 0, 0.5], atol=1e-14)


@given(angles, st.floats(-3, 3), vectors)
def test_split_is_orthogonal_and_complete(u1, u2, v):
    parts = split(sphere(), [u1, u2], v)
    np.testing.assert_allclose(parts.tangential + parts.normal, v, atol=1e-12)
    assert abs(parts.tangential @ parts.normal) <= 1e-10 * (1 + v @ v)


@given(angles, st.floats(-3, 3), vectors)
def test_chart_coordinates_reproduce_tangential_part(u1, u2, v):
    sp = sphere()
    u = np.array([u1, u2])
    c = chart_coordinates(sp, u, v)
    np.testing.assert_allclose(sp.jacobian(u) @ c, split(sp, u, v).tangential, atol=1e-10)


def test_degenerate_chart_rejected():
    flat = SurfacePatch(lambda u: np.array([u[0], u[0], 0.0]), [(-1, 1), (-1, 1)],
                        jac=lambda u: np.array([[1.0, 0], [1, 0], [0, 0]]))
    with pytest.raises(SingularPatchError):
        metric(flat, [0.0, 0.0])


def test_dimension_check():
    with pytest.raises(ValueError):
        SurfacePatch(lambda u: np.array([u[0]]), [(-1, 1), (-1, 1)])


class TestGeodesic:
    def test_cylinder_closed_form(self):
        w = math.sqrt(2)
        cc = geodesic(cylinder(), [0, 0], [1 / w, 1 / w], 4.0, 1e-3)
        for s in np.linspace(0, 4, 17):
            ref = [math.cos(s / w), math.sin(s / w), s / w]
            np.testing.assert_allclose(cc.patch.point(cc.coords(s)), ref, atol=1e-9)
        assert cc.meta["speed_drift"] < 1e-10

    def test_sphere_great_circle(self):
        cc = geodesic(sphere(), [math.pi / 2, 0.0], [-0.6, 0.8], 1.2, 1e-3)
        x = cc.patch.point(cc.coords(1.2))
        # stays on the plane spanned by the start point and the initial velocity
        p0 = np.array([1.0, 0, 0])
        v0 = np.array([0.0, 0.8, 0.6])
        assert abs(np.cross(p0, v0) @ x) <= 1e-9
        np.testing.assert_allclose(x, math.cos(1.2) * p0 + math.sin(1.2) * v0, atol=1e-9)

    def test_domain_exit(self):
        with pytest.raises(DomainExitError) as exc:
            geodesic(sphere(), [math.pi / 2, 0.0], [-1.0, 0.0], 3.0, 1e-3)
        assert exc.value.s_exit == pytest.approx(1.371, abs=2e-3)

    def test_coarse_step_flagged(self):
        with pytest.raises(IntegratorAccuracyError):
            geodesic(sphere(), [math.pi / 2, 0.0], [-0.6, 0.8], 1.2, 0.8)

    def test_non_unit_velocity(self):
        with pytest.raises(ParametrizationError):
            geodesic(cylinder(), [0, 0], [1, 1], 1.0)

    @given(st.floats(0, 2 * math.pi))
    def test_speed_preserved(self, phi):
        cc = geodesic(sphere(), [1.2, 0.0], [math.cos(phi), math.sin(phi) / math.sin(1.2)],
                      0.8, 0.01)
        assert cc.meta["speed_drift"] <= 1e-6


def _s1r2_helix(radius, pitch):
    w = math.hypot(radius, pitch)
    u = lambda s: np.array([radius * math.cos(s / w), radius * math.sin(s / w), pitch * s / w])
    du = lambda s: np.array([-radius * math.sin(s / w) / w, radius * math.cos(s / w) / w,
                             pitch / w])
    ddu = lambda s: np.array([-radius * math.cos(s / w), -radius * math.sin(s / w), 0.0]) / w**2
    return ChartCurve(u, (0.0, 10.0), s1_r2(), du, ddu)


def test_intrinsic_frenet_on_flat_product():
    fd = intrinsic_frenet(_s1r2_helix(0.5, 1.0), 2.0)
    assert fd.kappa == pytest.approx(0.4, abs=1e-9)
    assert abs(fd.tau) == pytest.approx(0.8, abs=1e-6)
    assert abs(fd.tau / fd.kappa) == pytest.approx(2.0, abs=1e-5)


def test_intrinsic_frenet_residuals():
    assert max(intrinsic_frenet_residuals(_s1r2_helix(0.5, 1.0), 3.0)) <= 1e-6


def test_intrinsic_frenet_needs_three_dimensions():
    cc = geodesic(cylinder(), [0, 0], [0, 1], 1.0)
    with pytest.raises(ValueError):
        intrinsic_frenet(cc, 0.5)


def test_ambient_helix_velocity_on_identity_chart(r3):
    from helixgeom.manifold import chart_curve_from_ambient

    cc = chart_curve_from_ambient(helix_curve(), r3)
    amb = cc.ambient()
    np.testing.assert_allclose(amb.derivs[0](1.0), helix_curve().derivs[0](1.0))
    assert cc.mode == "analytic"
