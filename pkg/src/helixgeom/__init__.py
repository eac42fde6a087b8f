"""Numerical verification of f-eikonal helix curves and helix submanifolds."""

__version__ = "0.1.0"

from .errors import GeometryError, ScenarioError  # noqa: E402
from .geom_core import Curve, arclength_reparametrize, constancy, differentiate  # noqa: E402
from .frenet import FrenetData, frenet_apparatus, general_helix_test  # noqa: E402
from .manifold import ChartCurve, SurfacePatch, geodesic, intrinsic_frenet, split  # noqa: E402
from .fields import ScalarField, eikonal_check, gradient  # noqa: E402
from .helix import (  # noqa: E402
    axis_and_ratio,
    decompose_direction,
    f_eikonal_curve_test,
    helix_angle,
    helix_lines,
    linearity_equivalence,
    parallel_normal_chain,
    system_residuals,
)
from .lift import lift_curve, lift_helix_equivalence  # noqa: E402
from .report import CheckReport, RunReport, Verdict  # noqa: E402

__all__ = [
    "GeometryError", "ScenarioError", "Curve", "arclength_reparametrize", "constancy",
    "differentiate", "FrenetData", "frenet_apparatus", "general_helix_test", "ChartCurve",
    "SurfacePatch", "geodesic", "intrinsic_frenet", "split", "ScalarField", "eikonal_check",
    "gradient", "axis_and_ratio", "decompose_direction", "f_eikonal_curve_test", "helix_angle",
    "helix_lines", "linearity_equivalence", "parallel_normal_chain", "system_residuals",
    "lift_curve", "lift_helix_equivalence", "CheckReport", "RunReport", "Verdict",
]
