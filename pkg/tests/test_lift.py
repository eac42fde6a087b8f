import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helixgeom.catalog import FIELDS, euclidean
from helixgeom.lift import lift_curve, lift_helix_equivalence
from helixgeom.manifold import ChartCurve, chart_curve_from_ambient
from helixgeom.report import Verdict

from conftest import helix_curve


def test_lift_point_and_velocity(r3, example_field, helix_cc):
    beta = lift_curve(r3, example_field, helix_cc)
    s = 2.0
    np.testing.assert_allclose(beta(s)[:3], helix_curve()(s))
    assert beta(s)[3] == pytest.approx(1 + s / math.sqrt(2))
    assert beta.height_rate(s) == pytest.approx(1 / math.sqrt(2), abs=1e-9)


def test_lift_angle_for_example(r3, example_field, helix_cc):
    rep = lift_helix_equivalence(r3, example_field, helix_cc)
    assert rep.verdict is Verdict.PASS
    assert rep.payload["cos_theta_lift"] == pytest.approx(1 / math.sqrt(3), abs=1e-8)
    assert rep.payload["cos_theta_predicted"] == pytest.approx(math.sqrt(3) / 3, abs=1e-12)
    assert rep.payload["max_height_rate_residual"] <= 1e-8
    assert rep.payload["max_speed_residual"] <= 1e-8


def test_lift_requires_same_patch(example_field, helix_cc):
    with pytest.raises(ValueError):
        lift_curve(euclidean(3), example_field, helix_cc)


def test_non_helix_lift_not_general_helix(r3):
    f = FIELDS["distance_from_origin"].factory(r3)
    p, v = np.array([-3.0, 1, 0]), np.array([1.0, 0, 0])
    cc = ChartCurve(lambda s: p + s * v, (0.0, 6.0), r3, lambda s: v, lambda s: 0 * v)
    rep = lift_helix_equivalence(r3, f, cc)
    assert rep.verdict is Verdict.PASS
    assert rep.payload["f_eikonal"] == 0.0 and rep.payload["lift_helix"] == 0.0


@given(st.floats(0.3, 3.0), st.floats(0.3, 3.0))
def test_equivalence_and_angle_formula_on_helices(radius, pitch):
    r3 = euclidean(3)
    f = FIELDS["paraboloid_height"].factory(r3)
    cc = chart_curve_from_ambient(helix_curve(radius, pitch), r3)
    rep = lift_helix_equivalence(r3, f, cc)
    assert rep.verdict is Verdict.PASS
    assert rep.payload["lift_helix"] == 1.0
    assert rep.payload["lift_angle_error"] <= 1e-8
