"""Graph lift beta(s) = (alpha(s), f(alpha(s))) of a curve and its general-helix audit."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fields import ScalarField, _curve_samples, gradient
from .frenet import general_helix_test, unit_tangent
from .geom_core import Curve, central_difference, differentiate
from .helix import f_eikonal_curve_test
from .manifold import ChartCurve, SurfacePatch
from .report import CheckReport, Verdict

LIFT_IDENTITY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class LiftedCurve:
    """The curve s -> (alpha(s), f(alpha(s))) in R^(n+1).

    The last velocity component is the numeric derivative of f along the
    chart curve; the first n are the base curve's velocity.
    """

    base: ChartCurve
    field: ScalarField

    def __call__(self, s: float) -> np.ndarray:
        return np.append(self.base.patch.point(self.base.coords(s)),
                         self.field(self.base.coords(s)))

    def height_rate(self, s: float) -> float:
        return float(central_difference(lambda t: self.field(self.base.coords(t)), s, 1))

    def velocity(self, s: float, base_curve: Curve | None = None) -> np.ndarray:
        curve = self.base.ambient() if base_curve is None else base_curve
        return np.append(differentiate(curve, s, 1), self.height_rate(s))

    def as_curve(self) -> Curve:
        base_curve = self.base.ambient()
        return Curve(self, self.base.domain, (lambda s: self.velocity(s, base_curve),),
                     mode="numeric", name=f"lift of {self.base.name}")


def lift_curve(patch: SurfacePatch, field: ScalarField, cc: ChartCurve) -> LiftedCurve:
    if cc.patch is not patch:
        raise ValueError("chart curve does not live on the given patch")
    return LiftedCurve(cc, field)


def lift_helix_equivalence(patch: SurfacePatch, field: ScalarField, cc: ChartCurve,
                           samples: int | Sequence[float] = 20, tol: float | None = None,
                           seed: int | None = None, name: str = "lift") -> CheckReport:
    """Audit "alpha f-eikonal helix <=> lift is a general helix with axis e_(n+1)".

    Also records the height-rate identity <beta', e_(n+1)> = <grad f, T>,
    the speed identity |beta'|^2 = 1 + <grad f, T>^2 and the closed-form lift
    angle <grad f, T> / sqrt(1 + <grad f, T>^2).
    """
    s_values = _curve_samples(cc, samples, seed)
    fe = f_eikonal_curve_test(patch, field, cc, s_values, tol)
    if fe.verdict is Verdict.PREMISE_FAILED:
        return CheckReport(name, Verdict.PREMISE_FAILED, kind="lift_equivalence",
                           tolerance=fe.tolerance, message=fe.message)
    lifted = lift_curve(patch, field, cc)
    beta = lifted.as_curve()
    axis = np.zeros(patch.n + 1)
    axis[-1] = 1.0
    gh = general_helix_test(beta, axis=axis, samples=s_values, tol=fe.tolerance)

    base = cc.ambient()
    dots = np.array([np.dot(gradient(patch, field, cc.coords(s)), unit_tangent(base, s))
                     for s in s_values])
    vel = np.array([beta.derivs[0](s) for s in s_values])
    height_res = np.abs(vel[:, -1] - dots)
    speed = np.abs(np.einsum("ij,ij->i", vel, vel) - (1.0 + dots**2))
    mean_dot = float(dots.mean())
    cos_pred = mean_dot / math.sqrt(1.0 + mean_dot**2)
    cos_lift = gh.payload["cos_phi"]

    helix, lift_helix = fe.passed, gh.passed
    verdict = Verdict.PASS if helix == lift_helix else Verdict.THEOREM_VIOLATION
    flags = list(gh.flags)
    return CheckReport(
        name, verdict, kind="lift_equivalence",
        payload={"f_eikonal": helix, "lift_helix": lift_helix, "cos_theta_lift": cos_lift,
                 "cos_theta_predicted": cos_pred, "lift_angle_error": abs(cos_lift - cos_pred),
                 "max_height_rate_residual": float(height_res.max()),
                 "max_speed_residual": float(speed.max())},
        residuals=gh.residuals, tolerance=fe.tolerance, flags=flags,
        table={"s": s_values, "cos_phi_lift": gh.table["cos_phi"], "grad_dot_t": dots,
               "height_rate": vel[:, -1]},
    )
