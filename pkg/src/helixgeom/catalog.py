"""Builtin patches, fields, curves and scenario documents.

Every builtin patch carries exact first and second chart derivatives.
Builtin scenarios are plain dictionaries in the same schema as scenario
files, so ``show`` can print any of them as a starting point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from .fields import ScalarField
from .geom_core import Curve, arclength_reparametrize
from .helix import helix_lines
from .manifold import ChartCurve, SurfacePatch, chart_curve_from_ambient, geodesic, metric
from .trigpoly import TrigMap, scalar_map, trig_map


REQUIRED = "<required>"


@dataclass(frozen=True)
class Builtin:
    factory: Callable[..., Any]
    description: str
    defaults: dict


# ---------------------------------------------------------------- patches

def _linear_patch(A, box, name, offset=None) -> SurfacePatch:
    A = np.asarray(A, dtype=float)
    n, k = A.shape
    b = np.zeros(n) if offset is None else np.asarray(offset, dtype=float)
    zeros = np.zeros((k, k, n))
    return SurfacePatch(lambda u: b + A @ u, box, jac=lambda u: A, hess=lambda u: zeros,
                        name=name)


def _trig_patch(components, box, name) -> SurfacePatch:
    m = trig_map(components, len(box))
    jac = m.gradient_map()                 # (n, k)
    hess = jac.gradient_map()              # (n, k, k)
    return SurfacePatch(m, box, jac=jac, hess=lambda u: np.moveaxis(hess(u), 0, -1),
                        name=name)


def _t(c, pow=None, trig=None, freq=None, phase=None) -> dict:
    term = {"c": c}
    for key, val in (("pow", pow), ("trig", trig), ("freq", freq), ("phase", phase)):
        if val is not None:
            term[key] = val
    return term


def euclidean(n=3, half_width=10.0):
    return _linear_patch(np.eye(n), [(-half_width, half_width)] * n, f"R{n}")


def coordinate_plane(half_width=10.0):
    return _linear_patch([[1, 0], [0, 1], [0, 0]], [(-half_width, half_width)] * 2,
                         "coordinate_plane")


def tilted_plane(angle=math.pi / 6, half_width=10.0):
    c, s = math.cos(angle), math.sin(angle)
    return _linear_patch([[c, 0], [0, 1], [s, 0]], [(-half_width, half_width)] * 2,
                         "tilted_plane")


def graph_linear(slope=1.0, half_width=10.0):
    return _linear_patch([[1, 0], [0, 1], [slope, 0]], [(-half_width, half_width)] * 2,
                         "graph_linear")


def flat3_r4(half_width=10.0):
    return _linear_patch(np.eye(4)[:, :3], [(-half_width, half_width)] * 3, "flat3_r4")


def cylinder(radius=1.0, height=20.0):
    r = float(radius)

    def chart(u):
        return np.array([r * math.cos(u[0]), r * math.sin(u[0]), u[1]])

    def jac(u):
        return np.array([[-r * math.sin(u[0]), 0.0], [r * math.cos(u[0]), 0.0], [0.0, 1.0]])

    def hess(u):
        H = np.zeros((2, 2, 3))
        H[0, 0, 0] = -r * math.cos(u[0])
        H[0, 0, 1] = -r * math.sin(u[0])
        return H

    return SurfacePatch(chart, [(-20.0, 20.0), (-height, height)], jac, hess, "cylinder")


def sphere():
    comps = [[_t(1.0, trig=["sin", "cos"])], [_t(1.0, trig=["sin", "sin"])],
             [_t(1.0, trig=["cos", None])]]
    return _trig_patch(comps, [(0.2, math.pi - 0.2), (-4.0, 4.0)], "sphere")


def helicoid():
    comps = [[_t(1.0, pow=[1, 0], trig=[None, "cos"])],
             [_t(1.0, pow=[1, 0], trig=[None, "sin"])], [_t(1.0, pow=[0, 1])]]
    return _trig_patch(comps, [(0.2, 3.0), (-6.0, 6.0)], "helicoid")


def cone(half_angle=math.pi / 6):
    sb, cb = math.sin(half_angle), math.cos(half_angle)
    comps = [[_t(sb, pow=[1, 0], trig=[None, "cos"])],
             [_t(sb, pow=[1, 0], trig=[None, "sin"])], [_t(cb, pow=[1, 0])]]
    return _trig_patch(comps, [(0.5, 4.0), (-4.0, 4.0)], "cone")


def s1_r2(half_width=10.0):
    comps = [[_t(1.0, trig=["cos", None, None])], [_t(1.0, trig=["sin", None, None])],
             [_t(1.0, pow=[0, 1, 0])], [_t(1.0, pow=[0, 0, 1])]]
    return _trig_patch(comps, [(-half_width, half_width)] * 3, "s1_r2")


def helix_curve(radius=1.0, pitch=1.0, half_width=10.0):
    w = math.hypot(radius, pitch)
    comps = [[_t(radius, trig=["cos"], freq=[1 / w])], [_t(radius, trig=["sin"], freq=[1 / w])],
             [_t(pitch / w, pow=[1])]]
    return _trig_patch(comps, [(-half_width, half_width)], "helix_curve")


PATCHES: dict[str, Builtin] = {
    "euclidean": Builtin(euclidean, "R^n with the identity chart (trivially helix)",
                         {"n": 3, "half_width": 10.0}),
    "coordinate_plane": Builtin(coordinate_plane, "plane (u1, u2, 0) in R^3",
                                {"half_width": 10.0}),
    "tilted_plane": Builtin(tilted_plane, "plane spanned by (cos a, 0, sin a) and (0, 1, 0)",
                            {"angle": math.pi / 6, "half_width": 10.0}),
    "graph_linear": Builtin(graph_linear, "graph of z = slope * u1",
                            {"slope": 1.0, "half_width": 10.0}),
    "flat3_r4": Builtin(flat3_r4, "3-plane (u1, u2, u3, 0) in R^4", {"half_width": 10.0}),
    "cylinder": Builtin(cylinder, "circular cylinder (r cos u1, r sin u1, u2)",
                        {"radius": 1.0, "height": 20.0}),
    "sphere": Builtin(sphere, "unit sphere in polar-angle / azimuth chart", {}),
    "helicoid": Builtin(helicoid, "helicoid (u1 cos u2, u1 sin u2, u2)", {}),
    "cone": Builtin(cone, "circular cone about the z axis with the given half angle",
                    {"half_angle": math.pi / 6}),
    "s1_r2": Builtin(s1_r2, "S^1 x R^2 in R^4: (cos u1, sin u1, u2, u3)", {"half_width": 10.0}),
    "helix_curve": Builtin(helix_curve, "unit-speed circular helix as a 1-dimensional patch",
                           {"radius": 1.0, "pitch": 1.0, "half_width": 10.0}),
}


# ----------------------------------------------------------------- fields

def _field_paraboloid_height(patch):
    if patch.n != 3:
        raise ValueError("field paraboloid_height needs ambient dimension 3")
    return ScalarField.from_ambient(lambda x: x[0]**2 + x[1]**2 + x[2],
                                    lambda x: np.array([2 * x[0], 2 * x[1], 1.0]),
                                    patch, "x^2+y^2+z")


def _field_linear(patch, a, c=0.0):
    a = np.asarray(a, dtype=float)
    if a.size != patch.n:
        raise ValueError(f"ambient_linear: 'a' needs {patch.n} entries")
    return ScalarField.from_ambient(lambda x: float(a @ x) + c, lambda x: a, patch,
                                    "ambient linear")


def _field_chart_coordinate(patch, index=1):
    if not 1 <= index <= patch.k:
        raise ValueError(f"chart_coordinate: index must be in 1..{patch.k}")
    e = np.zeros(patch.k)
    e[index - 1] = 1.0
    return ScalarField(lambda u: float(u[index - 1]), lambda u: e, name=f"u{index}")


def _field_distance(patch):
    return ScalarField.from_ambient(lambda x: float(np.linalg.norm(x)),
                                    lambda x: x / np.linalg.norm(x), patch, "|x|")


def _field_constant(patch, value=1.0):
    zero = np.zeros(patch.k)
    return ScalarField(lambda u: float(value), lambda u: zero, name="constant")


FIELDS: dict[str, Builtin] = {
    "paraboloid_height": Builtin(_field_paraboloid_height, "f = x^2 + y^2 + z on R^3", {}),
    "ambient_linear": Builtin(_field_linear, "f = <a, x> + c restricted to the patch",
                              {"a": REQUIRED, "c": 0.0}),
    "chart_coordinate": Builtin(_field_chart_coordinate, "f = u_index (1-based)", {"index": 1}),
    "distance_from_origin": Builtin(_field_distance, "f = |x| (eikonal away from 0)", {}),
    "constant": Builtin(_field_constant, "f = value", {"value": 1.0}),
}


def coefficient_field(patch: SurfacePatch, terms: list[dict]) -> ScalarField:
    m = scalar_map(terms, patch.k, "field.coefficients")
    g = m.gradient_map()
    return ScalarField(lambda u: float(m(u)[0]), lambda u: g(u)[0], name="coefficients")


# ----------------------------------------------------------------- curves

def _from_trig(m: TrigMap, domain, patch, name, reference=None) -> ChartCurve:
    d1 = m.diff(0)
    d2 = d1.diff(0)
    return ChartCurve(lambda s: m(s), tuple(domain), patch, lambda s: d1(s), lambda s: d2(s),
                      name=name, reference=reference)


def _curve_circular_helix(patch, direction, radius=1.0, pitch=1.0, center=(0, 0, 0),
                          phase=0.0, domain=(0.0, 10.0)):
    if patch.k != 3:
        raise ValueError("circular_helix needs a 3-dimensional patch")
    w = math.hypot(radius, pitch)
    c = [float(x) for x in center]
    comps = [[_t(radius, trig=["cos"], freq=[1 / w], phase=[phase]), _t(c[0])],
             [_t(radius, trig=["sin"], freq=[1 / w], phase=[phase]), _t(c[1])],
             [_t(pitch / w, pow=[1]), _t(c[2])]]
    return _from_trig(trig_map(comps, 1), domain, patch, "circular_helix")


def _curve_line(patch, direction, point, direction_vector, domain=(0.0, 10.0)):
    p = np.asarray(point, dtype=float)
    v = np.asarray(direction_vector, dtype=float)
    if p.size != patch.k or v.size != patch.k:
        raise ValueError(f"line: point and direction_vector need {patch.k} entries")
    v = v / math.sqrt(v @ metric(patch, p) @ v)
    zero = np.zeros(patch.k)
    return ChartCurve(lambda s: p + s * v, tuple(domain), patch, lambda s: v, lambda s: zero,
                      name="line")


def _curve_chart_circle(patch, direction, radius=1.0, center=None, plane=(1, 2),
                        domain=(0.0, 6.0)):
    i, j = (int(x) - 1 for x in plane)
    cen = np.zeros(patch.k) if center is None else np.asarray(center, dtype=float)
    if cen.size != patch.k:
        raise ValueError(f"chart_circle: center needs {patch.k} entries")
    comps = [[_t(float(cen[m]))] for m in range(patch.k)]
    comps[i].append(_t(radius, trig=["cos"], freq=[1 / radius]))
    comps[j].append(_t(radius, trig=["sin"], freq=[1 / radius]))
    return _from_trig(trig_map(comps, 1), domain, patch, "chart_circle")


def _curve_cylinder_geodesic(patch, direction, a=1.0, b=0.0, c=1.0, d=0.0, length=10.0,
                             step=1e-3):
    if patch.name != "cylinder":
        raise ValueError("cylinder_geodesic needs the cylinder patch")
    w = math.hypot(a, c)

    def reference(s):
        return np.array([math.cos(c * s / w + d), math.sin(c * s / w + d), a * s / w + b])

    cc = geodesic(patch, [d, b], [c / w, a / w], length, step, name="cylinder_geodesic")
    return ChartCurve(cc.u, cc.domain, patch, cc.du, cc.ddu, cc.name, reference, cc.meta)


def _curve_geodesic(patch, direction, u0, v0, length=5.0, step=1e-3, normalize=True):
    u0 = np.asarray(u0, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    if normalize:
        v0 = v0 / math.sqrt(v0 @ metric(patch, u0) @ v0)
    return geodesic(patch, u0, v0, length, step)


def _curve_helix_line(patch, direction, u0, length=5.0, step=1e-3):
    if direction is None:
        raise ValueError("helix_line needs the scenario direction")
    return helix_lines(patch, direction, u0, length, step)


CURVES: dict[str, Builtin] = {
    "circular_helix": Builtin(_curve_circular_helix,
                              "unit-speed circular helix in chart coordinates (k = 3)",
                              {"radius": 1.0, "pitch": 1.0, "center": [0, 0, 0], "phase": 0.0,
                               "domain": [0.0, 10.0]}),
    "line": Builtin(_curve_line, "chart line, unit speed in the metric at its base point",
                    {"point": REQUIRED, "direction_vector": REQUIRED, "domain": [0.0, 10.0]}),
    "chart_circle": Builtin(_curve_chart_circle, "circle in two chart coordinates",
                            {"radius": 1.0, "center": None, "plane": [1, 2],
                             "domain": [0.0, 6.0]}),
    "cylinder_geodesic": Builtin(_curve_cylinder_geodesic,
                                    "integrated cylinder geodesic with its closed form",
                                    {"a": 1.0, "b": 0.0, "c": 1.0, "d": 0.0, "length": 10.0,
                                     "step": 1e-3}),
    "geodesic": Builtin(_curve_geodesic, "RK4 geodesic from chart point and velocity",
                        {"u0": REQUIRED, "v0": REQUIRED, "length": 5.0, "step": 1e-3,
                         "normalize": True}),
    "helix_line": Builtin(_curve_helix_line, "integral curve of T* for the scenario direction",
                          {"u0": REQUIRED, "length": 5.0, "step": 1e-3}),
}


def coefficient_curve(patch: SurfacePatch, components: list[list[dict]], domain,
                      reparametrize: bool = False, patch_builtin: str = "") -> ChartCurve:
    if len(components) != patch.k:
        raise ValueError(f"curve coefficients need {patch.k} components, got {len(components)}")
    m = trig_map(components, 1, "curve.coefficients")
    if not reparametrize:
        return _from_trig(m, domain, patch, "coefficients")
    if patch_builtin != "euclidean":
        raise ValueError("curve reparametrization is supported on the euclidean patch only")
    d1, d2 = m.diff(0), m.diff(0).diff(0)
    raw = Curve(lambda t: m(t), tuple(domain), (lambda t: d1(t), lambda t: d2(t)),
                name="coefficients")
    return chart_curve_from_ambient(arclength_reparametrize(raw), patch, "coefficients")


# -------------------------------------------------------------- scenarios

_HELIX_32 = {"builtin": "circular_helix", "params": {"radius": 1.0, "pitch": 1.0,
                                                     "domain": [0.0, 10.0]}}
_R3 = {"builtin": "euclidean", "params": {"n": 3}}
_CYL = {"builtin": "cylinder"}
_U2 = {"builtin": "chart_coordinate", "params": {"index": 2}}
_EQUIV = ["f_eikonal_curve", "linearity", "lift"]


def _sc(name, description, patch, field, curve, checks, ambient_dim=3, **extra) -> dict:
    doc = {"name": name, "description": description, "ambient_dim": ambient_dim,
           "patch": patch, "field": field, "curve": curve, "checks": checks, "samples": 20}
    doc.update(extra)
    return doc


def _family() -> list[dict]:
    s1r2 = {"builtin": "s1_r2"}
    perturbed = {"coefficients": [[_t(1.0, trig=["cos"])], [_t(1.0, trig=["sin"])],
                                  [_t(1.0, pow=[1]), _t(0.2, pow=[2])]],
                 "domain": [0.0, 6.0], "reparametrize": True}
    fast_helix = {"coefficients": [[_t(1.0, trig=["cos"], freq=[2.0])],
                                   [_t(1.0, trig=["sin"], freq=[2.0])], [_t(2.0, pow=[1])]],
                  "domain": [0.0, 3.0], "reparametrize": True}
    return [
        _sc("family_helix_1", "circular helix under x^2+y^2+z", _R3,
            {"builtin": "paraboloid_height"}, _HELIX_32, _EQUIV),
        _sc("family_helix_2", "helix with axis e3 under the linear field 2z+1", _R3,
            {"builtin": "ambient_linear", "params": {"a": [0, 0, 2], "c": 1.0}},
            {"builtin": "circular_helix", "params": {"radius": 2.0, "pitch": 1.0}}, _EQUIV),
        _sc("family_helix_3", "cylinder geodesic (a=1, c=2) under f = u2", _CYL, _U2,
            {"builtin": "cylinder_geodesic", "params": {"a": 1.0, "c": 2.0, "length": 6.0}},
            _EQUIV),
        _sc("family_helix_4", "non-unit-speed helix, arc-length reparametrized", _R3,
            {"builtin": "paraboloid_height"}, fast_helix, _EQUIV),
        _sc("family_helix_5", "helix in S^1 x R^2 under f = u3", s1r2,
            {"builtin": "chart_coordinate", "params": {"index": 3}},
            {"builtin": "circular_helix", "params": {"radius": 0.5, "pitch": 1.0}},
            _EQUIV, ambient_dim=4),
        _sc("family_nonhelix_1", "helix with perturbed (quadratic) pitch under x^2+y^2+z",
            _R3, {"builtin": "paraboloid_height"}, perturbed, _EQUIV),
        _sc("family_nonhelix_2", "chart circle on the cylinder under f = u2", _CYL, _U2,
            {"builtin": "chart_circle", "params": {"radius": 1.0, "domain": [0.0, 6.0]}},
            _EQUIV),
        _sc("family_nonhelix_3", "helix about e3 under a linear field with tilted axis", _R3,
            {"builtin": "ambient_linear",
             "params": {"a": [0.7071067811865476, 0, 0.7071067811865476]}},
            _HELIX_32, _EQUIV),
        _sc("family_nonhelix_4", "circle in the (u1, u3) chart plane of S^1 x R^2, f = u3",
            s1r2, {"builtin": "chart_coordinate", "params": {"index": 3}},
            {"builtin": "chart_circle", "params": {"radius": 2.0, "plane": [1, 3],
                                                   "domain": [0.0, 10.0]}},
            _EQUIV, ambient_dim=4),
        _sc("family_nonhelix_5", "line missing the origin under f = |x|", _R3,
            {"builtin": "distance_from_origin"},
            {"builtin": "line", "params": {"point": [-3, 1, 0], "direction_vector": [1, 0, 0],
                                           "domain": [0.0, 6.0]}}, _EQUIV),
    ]


def _scenarios() -> list[dict]:
    third = 1 / 3
    docs = [
        _sc("example_3_1_gradient_tangent", "ray from the origin: grad |x| equals T (theta = 0)",
            _R3, {"builtin": "distance_from_origin"},
            {"builtin": "line", "params": {"point": [third, 2 * third, 2 * third],
                                           "direction_vector": [1, 2, 2],
                                           "domain": [0.0, 5.0]}},
            ["eikonal", "f_eikonal_curve", "linearity", "lift", "directional_identity"]),
        _sc("example_3_2", "circular helix under f = x^2 + y^2 + z", _R3,
            {"builtin": "paraboloid_height"}, _HELIX_32,
            ["eikonal", "f_eikonal_curve", "linearity", "lift", "directional_identity",
             "general_helix", "lancret", "frenet_ode"], direction=[0, 0, 1]),
        _sc("example_3_3_linear_field", "general helix with axis a under f = <a, x> + c", _R3,
            {"builtin": "ambient_linear", "params": {"a": [0, 0, 2], "c": 1.0}},
            {"builtin": "circular_helix", "params": {"radius": 2.0, "pitch": 1.0}},
            ["eikonal", "general_helix", "f_eikonal_curve", "linearity", "lift",
             "parallel_gradient"], direction=[0, 0, 1]),
        _sc("example_3_4_cylinder", "cylinder geodesic (a = c = 1) under f = u2", _CYL, _U2,
            {"builtin": "cylinder_geodesic", "params": {"a": 1.0, "b": 0.0, "c": 1.0,
                                                           "d": 0.0, "length": 10.0,
                                                           "step": 1e-3}},
            ["geodesic", "reference_curve", "f_eikonal_curve", "linearity",
             "directional_identity", "parallel_gradient", "parallel_normal_chain"],
            direction=[0, 0, 1]),
        _sc("thm_4_1_affine_r3", "affine f = z along the circular helix in R^3", _R3,
            {"builtin": "ambient_linear", "params": {"a": [0, 0, 1], "c": 0.0}}, _HELIX_32,
            ["parallel_gradient", "f_eikonal_curve", "axis_ratio", "frenet_ode"]),
        _sc("lift_3_3", "graph lift of a steeper helix under x^2+y^2+z", _R3,
            {"builtin": "paraboloid_height"},
            {"builtin": "circular_helix", "params": {"radius": 1.0, "pitch": 2.0}},
            ["lift", "f_eikonal_curve", "linearity"]),
        _sc("lemma_5_1_cylinder", "vertical helix line on the cylinder, f = u2, d = e3", _CYL,
            _U2, {"builtin": "helix_line", "params": {"u0": [0.5, -4.0], "length": 8.0,
                                                    "step": 0.01}},
            ["helix_angle", "eikonal_grid", "f_eikonal_submanifold", "f_eikonal_curve",
             "parallel_normal_chain"], direction=[0, 0, 1]),
        _sc("affine_flat_product", "intrinsic helix in S^1 x R^2 with affine f = u3",
            {"builtin": "s1_r2"}, {"builtin": "chart_coordinate", "params": {"index": 3}},
            {"builtin": "circular_helix", "params": {"radius": 0.5, "pitch": 1.0}},
            ["parallel_gradient", "f_eikonal_curve", "axis_ratio", "frenet_ode"],
            ambient_dim=4),
        _sc("cone_helix_lines", "rulings of a cone are helix lines for its axis",
            {"builtin": "cone"}, {"builtin": "distance_from_origin"},
            {"builtin": "helix_line", "params": {"u0": [1.0, 0.3], "length": 2.0, "step": 0.01}},
            ["helix_angle", "direction_split", "eikonal_grid", "f_eikonal_submanifold",
             "f_eikonal_curve", "linearity"], direction=[0, 0, 1]),
        _sc("helix_curve_patch",
            "helix as a 1-dimensional patch, f = arc length: grad f' is normal",
            {"builtin": "helix_curve"}, {"coefficients": [_t(1.0, pow=[1])]},
            {"coefficients": [[_t(1.0, pow=[1])]], "domain": [-5.0, 5.0]},
            ["helix_angle", "f_eikonal_curve", "parallel_gradient", "parallel_normal_chain"],
            direction=[0, 0, 1]),
        _sc("helicoid_system", "helix-direction system along a helicoid line u1 = 1",
            {"builtin": "helicoid"}, {"builtin": "constant"},
            {"coefficients": [[_t(1.0)], [_t(0.7071067811865476, pow=[1])]],
             "domain": [-3.0, 3.0]},
            ["helix_angle", "system_residuals"], direction=[0, 0, 1],
            grid={"box": [[1.0, 1.0], [-2.0, 2.0]], "n": 4}),
        _sc("sphere_geodesic", "meridian geodesic on the sphere from the equator",
            {"builtin": "sphere"}, {"builtin": "constant"},
            {"builtin": "geodesic", "params": {"u0": [1.5707963267948966, 0.0],
                                               "v0": [-1.0, 0.0], "length": 1.2}},
            ["geodesic", "directional_identity"]),
    ]
    return docs + _family()


BUILTIN_SCENARIOS: dict[str, dict] = {d["name"]: d for d in _scenarios()}


def catalog() -> list[tuple[str, str]]:
    """Sorted (name, description) pairs of the builtin scenarios."""
    return sorted((name, doc["description"]) for name, doc in BUILTIN_SCENARIOS.items())


def builtin_scenario(name: str) -> dict:
    import copy

    if name not in BUILTIN_SCENARIOS:
        raise KeyError(f"unknown builtin scenario {name!r}")
    return copy.deepcopy(BUILTIN_SCENARIOS[name])
