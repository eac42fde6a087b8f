"""Scalar fields on patches: intrinsic gradient and the checks built on it."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import solve_triangular

from .geom_core import (
    central_difference,
    constancy,
    default_step,
    default_tol,
    differentiate,
    is_constant,
    sample_params,
)
from .manifold import ChartCurve, SurfacePatch, _checked_jacobian, tangential
from .report import CheckReport, Verdict

IDENTITY_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class ScalarField:
    """A function on a patch given in chart coordinates.

    ``partials(u)`` returns the chart partial derivatives; when omitted they
    are central differences of ``value``.  ``ambient_gradient(x)`` is the
    Euclidean gradient of an extension of the field to all of R^n, if one
    exists.
    """

    value: Callable[[np.ndarray], float]
    partials: Callable[[np.ndarray], np.ndarray] | None = None
    ambient_gradient: Callable[[np.ndarray], np.ndarray] | None = None
    name: str = ""

    @property
    def mode(self) -> str:
        return "analytic" if self.partials is not None else "numeric"

    def __call__(self, u) -> float:
        return float(self.value(np.asarray(u, dtype=float)))

    def chart_partials(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if self.partials is not None:
            return np.asarray(self.partials(u), dtype=float)
        out = np.empty(u.size)
        for i in range(u.size):
            e = np.zeros(u.size)
            e[i] = 1.0
            out[i] = central_difference(lambda t: self.value(u + t * e), 0.0, 1,
                                        default_step(1, u[i]))
        return out

    @classmethod
    def from_ambient(cls, func: Callable[[np.ndarray], float],
                     grad: Callable[[np.ndarray], np.ndarray] | None,
                     patch: SurfacePatch, name: str = "") -> "ScalarField":
        """Restrict an ambient function ``func`` on R^n to ``patch``."""
        def value(u):
            return float(func(patch.point(u)))

        partials = None
        if grad is not None:
            def partials(u):
                return patch.jacobian(u).T @ np.asarray(grad(patch.point(u)), dtype=float)
        return cls(value, partials, grad, name)


def gradient(patch: SurfacePatch, field: ScalarField, u) -> np.ndarray:
    """Intrinsic gradient J g^{-1} df as an ambient (tangent) vector.

    With J = QR the metric is R^T R, so the gradient is Q R^{-T} df.
    """
    J = _checked_jacobian(patch, u)
    q, r = np.linalg.qr(J)
    return q @ solve_triangular(r, field.chart_partials(u), trans="T")


def _curve_samples(cc: ChartCurve, samples, seed) -> np.ndarray:
    if np.ndim(samples) == 0:
        return sample_params(cc.domain, int(samples), seed)
    return np.asarray(samples, dtype=float)


def _modes(patch, field, cc=None):
    modes = [patch.mode, field.mode]
    if cc is not None:
        modes.append(cc.mode)
    return modes


def gradient_along(patch: SurfacePatch, field: ScalarField, cc: ChartCurve,
                   s_values: Sequence[float]) -> np.ndarray:
    return np.array([gradient(patch, field, cc.coords(s)) for s in s_values])


def eikonal_check(patch: SurfacePatch, field: ScalarField, cc: ChartCurve,
                  samples: int | Sequence[float] = 20, tol: float | None = None,
                  seed: int | None = None, name: str = "eikonal") -> CheckReport:
    """Is |grad f| constant along the curve?"""
    tol = default_tol(*_modes(patch, field, cc)) if tol is None else tol
    s_values = _curve_samples(cc, samples, seed)
    norms = np.linalg.norm(gradient_along(patch, field, cc, s_values), axis=1)
    stats = constancy(norms)
    ok = is_constant(stats, tol)
    return CheckReport(name, Verdict.PASS if ok else Verdict.FAIL, kind="eikonal",
                       payload={"grad_norm": stats.mean}, residuals=stats, tolerance=tol,
                       table={"s": s_values, "grad_norm": norms})


def eikonal_grid_check(patch: SurfacePatch, field: ScalarField, grid: np.ndarray,
                       tol: float | None = None, name: str = "eikonal_grid") -> CheckReport:
    """Is |grad f| constant over a grid of chart points (whole-patch scope)?"""
    tol = default_tol(*_modes(patch, field)) if tol is None else tol
    grid = np.atleast_2d(np.asarray(grid, dtype=float))
    norms = np.array([np.linalg.norm(gradient(patch, field, u)) for u in grid])
    stats = constancy(norms)
    ok = is_constant(stats, tol)
    table = {"s": np.arange(len(grid), dtype=float), "grad_norm": norms}
    for i in range(grid.shape[1]):
        table[f"u{i + 1}"] = grid[:, i]
    return CheckReport(name, Verdict.PASS if ok else Verdict.FAIL, kind="eikonal",
                       payload={"grad_norm": stats.mean}, residuals=stats, tolerance=tol,
                       table=table)


def gradient_derivative(patch: SurfacePatch, field: ScalarField, cc: ChartCurve,
                        s: float) -> np.ndarray:
    """Ambient s-derivative of grad f along the curve (central difference)."""
    return central_difference(lambda t: gradient(patch, field, cc.coords(t)), s, 1)


def parallel_gradient_check(patch: SurfacePatch, field: ScalarField, cc: ChartCurve,
                            samples: int | Sequence[float] = 20, tol: float | None = None,
                            seed: int | None = None,
                            name: str = "parallel_gradient") -> CheckReport:
    """Is nabla_T grad f (tangential part of d/ds grad f) zero along the curve?

    Passing is the numerical stand-in for "f is affine" along this curve.
    """
    tol = default_tol(*_modes(patch, field, cc)) if tol is None else tol
    s_values = _curve_samples(cc, samples, seed)
    cov = np.array([
        np.linalg.norm(tangential(patch, cc.coords(s), gradient_derivative(patch, field, cc, s)))
        for s in s_values])
    worst = float(cov.max())
    return CheckReport(name, Verdict.PASS if worst <= tol else Verdict.FAIL,
                       kind="parallel_gradient",
                       payload={"max_covariant_derivative": worst}, tolerance=tol,
                       table={"s": s_values, "covariant_derivative_norm": cov})


def directional_derivative_identity(patch: SurfacePatch, field: ScalarField, cc: ChartCurve,
                                    samples: int | Sequence[float] = 20,
                                    tol: float = IDENTITY_TOL, seed: int | None = None,
                                    name: str = "directional_identity") -> CheckReport:
    """Check d/ds f(alpha(s)) = <grad f, alpha'(s)> at every sample.

    This is an identity; a failure points at discretization, not at the data.
    """
    s_values = _curve_samples(cc, samples, seed)
    curve = cc.ambient()
    lhs = np.array([central_difference(lambda t: field(cc.coords(t)), s, 1) for s in s_values])
    rhs = np.array([np.dot(gradient(patch, field, cc.coords(s)), differentiate(curve, s, 1))
                    for s in s_values])
    resid = np.abs(lhs - rhs)
    worst = float(resid.max())
    return CheckReport(name, Verdict.PASS if worst <= tol else Verdict.FAIL, kind="identity",
                       payload={"max_residual": worst}, tolerance=tol,
                       table={"s": s_values, "d_ds_f": lhs, "grad_dot_t": rhs})


def ambient_consistency(patch: SurfacePatch, field: ScalarField, grid: np.ndarray) -> float:
    """Max distance between the projected ambient gradient and the intrinsic gradient."""
    if field.ambient_gradient is None:
        raise ValueError("field has no ambient extension")
    worst = 0.0
    for u in np.atleast_2d(grid):
        amb = tangential(patch, u, field.ambient_gradient(patch.point(u)))
        worst = max(worst, float(np.linalg.norm(amb - gradient(patch, field, u))))
    return worst
