import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from helixgeom.catalog import (
    builtin_scenario,
    cone,
    cylinder,
    euclidean,
    graph_linear,
    s1_r2,
    sphere,
    tilted_plane,
)
from helixgeom.fields import ScalarField
from helixgeom.geom_core import Curve
from helixgeom.manifold import ChartCurve, chart_curve_from_ambient
from helixgeom.scenario import validate

settings.register_profile("ci", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

R2 = math.sqrt(2.0)

# acceptance criterion lines, printed in the terminal summary
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])


def helix_curve(radius=1.0, pitch=1.0, domain=(0.0, 10.0), analytic=True) -> Curve:
    w = math.hypot(radius, pitch)

    def f(s):
        return np.array([radius * math.cos(s / w), radius * math.sin(s / w), pitch * s / w])

    def d1(s):
        return np.array([-radius * math.sin(s / w) / w, radius * math.cos(s / w) / w, pitch / w])

    def d2(s):
        return np.array([-radius * math.cos(s / w), -radius * math.sin(s / w), 0.0]) / w**2

    def d3(s):
        return np.array([radius * math.sin(s / w), -radius * math.cos(s / w), 0.0]) / w**3

    derivs = (d1, d2, d3) if analytic else ()
    return Curve(f, domain, derivs, unit_speed=True, name="helix")


@pytest.fixture
def r3():
    return euclidean(3)


@pytest.fixture
def cyl():
    return cylinder()


@pytest.fixture
def sph():
    return sphere()


@pytest.fixture
def example_field(r3):
    return ScalarField.from_ambient(lambda x: x[0]**2 + x[1]**2 + x[2],
                                    lambda x: np.array([2 * x[0], 2 * x[1], 1.0]), r3)


@pytest.fixture
def helix_cc(r3):
    return chart_curve_from_ambient(helix_curve(), r3)


@pytest.fixture
def height_field(cyl):
    return ScalarField(lambda u: float(u[1]), lambda u: np.array([0.0, 1.0]))


def scenario(name, **overrides):
    doc = builtin_scenario(name)
    doc.update(overrides)
    return validate(doc)


__all__ = ["R2", "helix_curve", "scenario", "ChartCurve", "cone", "graph_linear", "s1_r2",
           "tilted_plane"]
