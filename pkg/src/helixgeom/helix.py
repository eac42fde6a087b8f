"""Helix verdicts: helix submanifolds and their direction split, helix lines,
f-eikonal helix curves, and the theorem-level consistency audits built on them.

Every audit of a biconditional reports THEOREM-VIOLATION when exactly one
side holds; for correct code that means a tolerance or discretization fault.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .errors import DegenerateAngleError, DomainExitError
from .fields import (
    ScalarField,
    _curve_samples,
    eikonal_check,
    eikonal_grid_check,
    gradient,
    gradient_derivative,
    parallel_gradient_check,
)
from .frenet import KAPPA_MIN, general_helix_test, unit_tangent
from .geom_core import (
    MIN_SAMPLES,
    central_difference,
    constancy,
    default_step,
    default_tol,
    is_constant,
)
from .manifold import (
    ChartCurve,
    SurfacePatch,
    chart_coordinates,
    intrinsic_frenet,
    split,
)
from .report import CheckReport, Verdict

DEGENERATE_EPS = 1e-8
RESIDUAL_TOL = 1e-6
LINEARITY_TOL = 1e-6


def _unit_direction(d) -> np.ndarray:
    d = np.asarray(d, dtype=float)
    if abs(np.linalg.norm(d) - 1.0) > 1e-9:
        raise ValueError(f"helix direction must be a unit vector, |d| = {np.linalg.norm(d):.12g}")
    return d


def _angle_flags(cos_theta: float, tol: float) -> list[str]:
    flags = []
    if cos_theta >= 1.0 - tol:
        flags.append("degenerate_angle_zero")
    if cos_theta <= tol:
        flags.append("degenerate_angle_right")
    return flags


def helix_angle(patch: SurfacePatch, d: Sequence[float], grid: np.ndarray,
                tol: float | None = None, name: str = "helix_angle") -> CheckReport:
    """Does the angle between ``d`` and the tangent spaces stay constant over ``grid``?

    The tested quantity is the length of the tangential component of ``d``
    (cos theta).  theta = 0 and theta = pi/2 are flagged, not failed.
    Full-dimensional patches are trivially helix for every direction.
    """
    d = _unit_direction(d)
    tol = default_tol(patch.mode) if tol is None else tol
    grid = np.atleast_2d(np.asarray(grid, dtype=float))
    lengths = np.array([np.linalg.norm(split(patch, u, d).tangential) for u in grid])
    stats = constancy(lengths)
    ok = is_constant(stats, tol)
    cos_t = float(np.clip(stats.mean, 0.0, 1.0))
    trivial = patch.k == patch.n
    flags = _angle_flags(cos_t, tol)
    if trivial:
        flags.append("trivial_full_dimensional")
    table = {"s": np.arange(len(grid), dtype=float), "tangential_length": lengths}
    for i in range(grid.shape[1]):
        table[f"u{i + 1}"] = grid[:, i]
    return CheckReport(name, Verdict.PASS if ok else Verdict.FAIL, kind="helix_submanifold",
                       payload={"theta": math.acos(cos_t), "cos_theta": cos_t, "trivial": trivial},
                       residuals=stats, tolerance=tol, flags=flags, table=table)


@dataclass(frozen=True)
class DirectionSplit:
    """d = cos(theta) T_star + sin(theta) xi at one point."""

    d: np.ndarray
    theta: float
    T_star: np.ndarray
    xi: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return math.cos(self.theta) * self.T_star + math.sin(self.theta) * self.xi


def decompose_direction(patch: SurfacePatch, u, d) -> DirectionSplit:
    """Split ``d`` into unit tangent and unit normal directions at ``u``.

    Raises
    ------
    DegenerateAngleError
        If either component vanishes (theta = 0 or pi/2).
    """
    d = _unit_direction(d)
    parts = split(patch, u, d)
    lt, ln = np.linalg.norm(parts.tangential), np.linalg.norm(parts.normal)
    if lt < DEGENERATE_EPS or ln < DEGENERATE_EPS:
        raise DegenerateAngleError(
            f"direction split degenerate at u={np.asarray(u)}: tangential {lt:.3g}, normal {ln:.3g}")
    theta = math.atan2(ln, lt)
    return DirectionSplit(d, theta, parts.tangential / lt, parts.normal / ln)


def direction_split_check(patch: SurfacePatch, d, points: np.ndarray,
                          name: str = "direction_split") -> CheckReport:
    """Reconstruct ``d`` from its split at every point; report the worst error."""
    points = np.atleast_2d(points)
    splits = [decompose_direction(patch, u, d) for u in points]
    errs = np.array([np.linalg.norm(sp.reconstruct() - sp.d) for sp in splits])
    thetas = np.array([sp.theta for sp in splits])
    worst = float(errs.max())
    return CheckReport(name, Verdict.PASS if worst <= 1e-9 else Verdict.FAIL,
                       kind="axis_decomposition",
                       payload={"theta": float(thetas.mean()), "max_reconstruction_error": worst},
                       tolerance=1e-9,
                       table={"s": np.arange(len(points), dtype=float), "theta": thetas,
                              "reconstruction_error": errs})


def tangent_direction(patch: SurfacePatch, u, d) -> np.ndarray:
    """Unit tangential direction T* of ``d`` at ``u``."""
    tan = split(patch, u, d).tangential
    nt = np.linalg.norm(tan)
    if nt < DEGENERATE_EPS:
        raise DegenerateAngleError(f"tangential component of d vanishes at u={np.asarray(u)}")
    return tan / nt


def helix_lines(patch: SurfacePatch, d, u0, length: float, step: float = 1e-3,
                name: str = "helix_line") -> ChartCurve:
    """Integral curve of the unit field T* through ``u0`` (fixed-step RK4).

    The chart velocity is the exact field ``u' = J^+ T*(u)``; positions
    between RK4 nodes come from a cubic Hermite interpolant.
    """
    d = _unit_direction(d)
    u0 = np.asarray(u0, dtype=float)
    if not patch.contains(u0):
        raise DomainExitError(f"initial point {u0} outside the chart box", 0.0)

    def rhs(u):
        return chart_coordinates(patch, u, tangent_direction(patch, u, d))

    n_steps = max(1, math.ceil(length / step - 1e-9))
    h = length / n_steps
    states = np.empty((n_steps + 1, patch.k))
    rates = np.empty_like(states)
    states[0] = u0
    for i in range(n_steps):
        y = states[i]
        k1 = rhs(y)
        rates[i] = k1
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y_next = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not patch.contains(y_next):
            raise DomainExitError(f"helix line left the chart box at s={(i + 1) * h:.6g}",
                                  (i + 1) * h)
        states[i + 1] = y_next
    rates[-1] = rhs(states[-1])
    s_nodes = np.linspace(0.0, n_steps * h, n_steps + 1)
    spline = CubicHermiteSpline(s_nodes, states, rates, axis=0)

    def u(s):
        return spline(s)

    def du(s):
        return rhs(spline(s))

    def ddu(s):
        y = spline(s)
        v = rhs(y)
        e = default_step(1, float(np.linalg.norm(y)))
        return (rhs(y + e * v) - rhs(y - e * v)) / (2 * e)

    return ChartCurve(u, (0.0, float(s_nodes[-1])), patch, du, ddu, name=name,
                      meta={"step": h, "n_steps": n_steps})


def _grad_and_tangent(patch, field, cc, s_values):
    curve = cc.ambient()
    grads = np.array([gradient(patch, field, cc.coords(s)) for s in s_values])
    tangents = np.array([unit_tangent(curve, s) for s in s_values])
    return grads, tangents


def f_eikonal_curve_test(patch: SurfacePatch, field: ScalarField, cc: ChartCurve,
                         samples: int | Sequence[float] = 20, tol: float | None = None,
                         seed: int | None = None, name: str = "f_eikonal_curve") -> CheckReport:
    """Is the curve an f-eikonal helix curve (constant angle between grad f and T)?

    Returns PREMISE-FAILED when f is not eikonal along the curve.
    """
    tol = default_tol(patch.mode, field.mode, cc.mode) if tol is None else tol
    s_values = _curve_samples(cc, samples, seed)
    premise = eikonal_check(patch, field, cc, s_values, tol)
    if not premise.passed:
        return CheckReport(name, Verdict.PREMISE_FAILED, kind="f_eikonal_curve",
                           payload={"grad_norm": premise.payload["grad_norm"]},
                           residuals=premise.residuals, tolerance=tol,
                           message="f is not eikonal along the curve")
    grads, tangents = _grad_and_tangent(patch, field, cc, s_values)
    dots = np.einsum("ij,ij->i", grads, tangents)
    norms = np.linalg.norm(grads, axis=1)
    dot_stats = constancy(dots)
    ok = is_constant(dot_stats, tol) and premise.passed
    grad_norm = float(norms.mean())
    flags, cos_t, theta = [], None, None
    if grad_norm < DEGENERATE_EPS:
        flags.append("zero_gradient")
    else:
        cos_t = float(np.clip(dot_stats.mean / grad_norm, -1.0, 1.0))
        theta = math.acos(cos_t)
        flags += _angle_flags(abs(cos_t), tol)
    return CheckReport(name, Verdict.PASS if ok else Verdict.FAIL, kind="f_eikonal_curve",
                       payload={"grad_dot_t": dot_stats.mean, "grad_norm": grad_norm,
                                "cos_theta": cos_t, "theta": theta},
                       residuals=dot_stats, tolerance=tol, flags=flags,
                       table={"s": s_values, "grad_dot_t": dots, "grad_norm": norms})


def f_eikonal_submanifold_test(patch: SurfacePatch, field: ScalarField, d, grid: np.ndarray,
                               tol: float | None = None,
                               name: str = "f_eikonal_submanifold") -> CheckReport:
    """Is the angle between grad f and ``d`` constant over the patch grid?

    Premises: the patch is a helix w.r.t. ``d`` and f is eikonal on the grid.
    """
    d = _unit_direction(d)
    tol = default_tol(patch.mode, field.mode) if tol is None else tol
    grid = np.atleast_2d(np.asarray(grid, dtype=float))
    helix = helix_angle(patch, d, grid, tol)
    eik = eikonal_grid_check(patch, field, grid, tol)
    if not (helix.passed and eik.passed):
        which = [n for n, r in (("helix submanifold", helix), ("eikonal", eik)) if not r.passed]
        return CheckReport(name, Verdict.PREMISE_FAILED, kind="f_eikonal_submanifold",
                           tolerance=tol, message="premise failed: " + ", ".join(which))
    grads = np.array([gradient(patch, field, u) for u in grid])
    dots = grads @ d
    stats = constancy(dots)
    ok = is_constant(stats, tol)
    norm = float(np.linalg.norm(grads, axis=1).mean())
    return CheckReport(name, Verdict.PASS if ok else Verdict.FAIL, kind="f_eikonal_submanifold",
                       payload={"grad_dot_d": stats.mean, "grad_norm": norm,
                                "cos_angle": stats.mean / norm if norm > 0 else None},
                       residuals=stats, tolerance=tol, flags=list(helix.flags),
                       table={"s": np.arange(len(grid), dtype=float), "grad_dot_d": dots})


def linearity_equivalence(patch: SurfacePatch, field: ScalarField, cc: ChartCurve,
                          samples: int | Sequence[float] = 20, tol: float | None = None,
                          lin_tol: float = LINEARITY_TOL, seed: int | None = None,
                          name: str = "linearity") -> CheckReport:
    """Audit "f-eikonal helix curve <=> f linear along the curve".

    Side (a) is :func:`f_eikonal_curve_test`; side (b) is a least-squares
    line fit of s -> f(alpha(s)) with max residual at most
    ``lin_tol * (s_max - s_min)``.  PASS when both sides agree.
    """
    s_values = _curve_samples(cc, samples, seed)
    fe = f_eikonal_curve_test(patch, field, cc, s_values, tol)
    if fe.verdict is Verdict.PREMISE_FAILED:
        return CheckReport(name, Verdict.PREMISE_FAILED, kind="linearity", tolerance=fe.tolerance,
                           message=fe.message)
    fvals = np.array([field(cc.coords(s)) for s in s_values])
    slope, intercept = np.polyfit(s_values, fvals, 1)
    resid = float(np.max(np.abs(fvals - (slope * s_values + intercept))))
    span = float(s_values[-1] - s_values[0])
    linear = resid <= lin_tol * span
    helix = fe.passed
    verdict = Verdict.PASS if helix == linear else Verdict.THEOREM_VIOLATION
    return CheckReport(name, verdict, kind="linearity",
                       payload={"helix": helix, "linear": linear, "slope": slope,
                                "intercept": intercept, "fit_residual": resid},
                       residuals=fe.residuals, tolerance=fe.tolerance,
                       table={"s": s_values, "f": fvals})


def axis_and_ratio(patch: SurfacePatch, field: ScalarField, cc: ChartCurve,
                   samples: int | Sequence[float] = 20, tol: float | None = None,
                   seed: int | None = None, kappa_min: float = KAPPA_MIN,
                   name: str = "axis_ratio") -> CheckReport:
    """Axis reconstruction and tau/kappa = cot(theta) on a 3-dimensional patch.

    Premises (PREMISE-FAILED otherwise): grad f parallel along the curve and
    the curve f-eikonal helix.  Needs a defined intrinsic frame at
    ``MIN_SAMPLES`` samples (INCONCLUSIVE otherwise).  The binormal sign is
    fixed at the first usable sample by minimizing the axis residual.
    """
    if patch.k != 3:
        raise ValueError(f"axis/ratio check needs a 3-dimensional patch, got k={patch.k}")
    tol = default_tol(patch.mode, field.mode, cc.mode) if tol is None else tol
    s_values = _curve_samples(cc, samples, seed)
    affine = parallel_gradient_check(patch, field, cc, s_values, tol)
    if not affine.passed:
        return CheckReport(name, Verdict.PREMISE_FAILED, kind="ratio", tolerance=tol,
                           message="grad f is not parallel along the curve (f not affine)")
    fe = f_eikonal_curve_test(patch, field, cc, s_values, tol)
    if not fe.passed:
        return CheckReport(name, Verdict.PREMISE_FAILED, kind="ratio", tolerance=tol,
                           message="curve is not an f-eikonal helix curve")
    curve = cc.ambient()
    frames = [intrinsic_frenet(cc, s, kappa_min, curve=curve) for s in s_values]
    frames = [fd for fd in frames if fd.defined]
    if len(frames) < MIN_SAMPLES:
        return CheckReport(name, Verdict.INCONCLUSIVE, kind="ratio", tolerance=tol,
                           message=f"intrinsic frame defined at {len(frames)} samples only")
    cos_t = fe.payload["cos_theta"]
    if cos_t is None:
        return CheckReport(name, Verdict.INCONCLUSIVE, kind="ratio", tolerance=tol,
                           message="grad f vanishes")
    sin_t = math.sqrt(max(0.0, 1.0 - cos_t**2))
    if sin_t < DEGENERATE_EPS:
        return CheckReport(name, Verdict.INCONCLUSIVE, kind="ratio", tolerance=tol,
                           message="theta = 0: cot(theta) undefined")
    cot_t = cos_t / sin_t
    grads = np.array([gradient(patch, field, cc.coords(fd.s)) for fd in frames])
    norms = np.linalg.norm(grads, axis=1)

    def axis_resid(i, sign):
        fd = frames[i]
        return float(np.linalg.norm(grads[i] - norms[i] * (cos_t * fd.T + sin_t * sign * fd.B)))

    b_sign = 1.0 if axis_resid(0, 1.0) <= axis_resid(0, -1.0) else -1.0
    axis_res = max(axis_resid(i, b_sign) for i in range(len(frames)))
    grad_n = np.array([abs(np.dot(g, fd.N)) for g, fd in zip(grads, frames)])
    ratios = np.array([b_sign * fd.tau / fd.kappa for fd in frames])
    stats = constancy(ratios)
    ratio_err = float(np.max(np.abs(ratios - cot_t)))
    ok = (grad_n.max() <= tol and axis_res <= tol and is_constant(stats, tol)
          and ratio_err <= tol)
    return CheckReport(
        name, Verdict.PASS if ok else Verdict.FAIL, kind="ratio",
        payload={"tau_over_kappa": abs(stats.mean), "cot_theta": abs(cot_t),
                 "ratio_error": ratio_err, "max_grad_dot_n": float(grad_n.max()),
                 "axis_residual": axis_res, "b_sign": b_sign,
                 "orientation_sign": 1.0 if cos_t >= 0 else -1.0},
        residuals=stats, tolerance=tol,
        table={"s": np.array([fd.s for fd in frames]),
               "kappa": np.array([fd.kappa for fd in frames]),
               "tau": np.array([fd.tau for fd in frames]),
               "grad_dot_n": grad_n, "tau_over_kappa": ratios},
    )


def _split_fields(patch, d, cc, s):
    parts = split(patch, cc.coords(s), d)
    return parts.tangential, parts.normal


def system_residuals(patch: SurfacePatch, d, cc: ChartCurve,
                     samples: int | Sequence[float] = 20, tol: float = RESIDUAL_TOL,
                     seed: int | None = None, name: str = "system_residuals") -> CheckReport:
    """Tangential and normal residuals of the helix-direction system along a curve.

    With T*, xi the unit tangent/normal directions of ``d`` and theta the
    (constant) helix angle, the ambient s-derivative of
    cos(theta) T* + sin(theta) xi is split; its tangential part is
    cos(theta) nabla_T T* - sin(theta) A^xi(T), its normal part
    cos(theta) V(T, T*) + sin(theta) nabla^perp_T xi.  Both must vanish.
    """
    d = _unit_direction(d)
    s_values = _curve_samples(cc, samples, seed)
    lengths = np.array([np.linalg.norm(_split_fields(patch, d, cc, s)[0]) for s in s_values])
    angle_tol = default_tol(patch.mode, cc.mode)
    stats = constancy(lengths)
    if not is_constant(stats, angle_tol):
        return CheckReport(name, Verdict.PREMISE_FAILED, kind="system_2_1_2_2",
                           residuals=stats, tolerance=tol,
                           message="angle between d and the tangent spaces varies along the curve")
    cos_t = float(np.clip(stats.mean, 0.0, 1.0))
    sin_t = math.sqrt(1.0 - cos_t**2)
    if cos_t < DEGENERATE_EPS or sin_t < DEGENERATE_EPS:
        raise DegenerateAngleError("helix angle is 0 or pi/2; T* or xi undefined")

    def t_star(s):
        return tangent_direction(patch, cc.coords(s), d)

    def xi(s):
        nor = _split_fields(patch, d, cc, s)[1]
        return nor / np.linalg.norm(nor)

    tan_res, nor_res = [], []
    for s in s_values:
        u = cc.coords(s)
        combo = cos_t * central_difference(t_star, s, 1) + sin_t * central_difference(xi, s, 1)
        parts = split(patch, u, combo)
        tan_res.append(np.linalg.norm(parts.tangential))
        nor_res.append(np.linalg.norm(parts.normal))
    tan_res, nor_res = np.array(tan_res), np.array(nor_res)
    worst_t, worst_n = float(tan_res.max()), float(nor_res.max())
    ok = worst_t <= tol and worst_n <= tol
    return CheckReport(name, Verdict.PASS if ok else Verdict.FAIL, kind="system_2_1_2_2",
                       payload={"theta": math.acos(cos_t), "tangential_residual": worst_t,
                                "normal_residual": worst_n},
                       residuals=stats, tolerance=tol,
                       table={"s": s_values, "tangential_residual": tan_res,
                              "normal_residual": nor_res})


def parallel_normal_chain(patch: SurfacePatch, field: ScalarField, d, cc: ChartCurve,
                          samples: int | Sequence[float] = 20, tol: float = RESIDUAL_TOL,
                          seed: int | None = None,
                          name: str = "parallel_normal_chain") -> CheckReport:
    """Audit the parallel-normal criterion and its general-helix consequence.

    Hypotheses: grad f is the unit tangential direction T* of ``d`` and the
    curve is an f-eikonal helix curve.  Computes
      (a) normal part of (grad f)' vanishes  [(grad f)' in TM],
      (b) normal part of xi' vanishes        [xi parallel normal along T],
      (c) (grad f)' vanishes                 [constant axis],
    plus the general-helix test with axis grad f(alpha(s0)).  PASS needs
    (a) <=> (b), and, when grad f is also parallel (f affine) and (a) holds,
    (c) together with a general-helix verdict.
    """
    d = _unit_direction(d)
    s_values = _curve_samples(cc, samples, seed)
    mode_tol = default_tol(patch.mode, field.mode, cc.mode)
    grads = np.array([gradient(patch, field, cc.coords(s)) for s in s_values])
    norms = np.linalg.norm(grads, axis=1)
    if np.max(np.abs(norms - 1.0)) > mode_tol:
        return CheckReport(name, Verdict.PREMISE_FAILED, kind="parallel_normal", tolerance=tol,
                           message="hypothesis |grad f| = 1 fails")
    mismatch = max(np.linalg.norm(g - tangent_direction(patch, cc.coords(s), d))
                   for g, s in zip(grads, s_values))
    if mismatch > mode_tol:
        return CheckReport(name, Verdict.PREMISE_FAILED, kind="parallel_normal", tolerance=tol,
                           message=f"hypothesis T* = grad f fails (max mismatch {mismatch:.3g})")
    fe = f_eikonal_curve_test(patch, field, cc, s_values)
    if not fe.passed:
        return CheckReport(name, Verdict.PREMISE_FAILED, kind="parallel_normal", tolerance=tol,
                           message="curve is not an f-eikonal helix curve")

    flags = []
    grad_dn, xi_dn, grad_d = [], [], []
    xi_defined = True
    for s in s_values:
        u = cc.coords(s)
        dg = gradient_derivative(patch, field, cc, s)
        grad_dn.append(np.linalg.norm(split(patch, u, dg).normal))
        grad_d.append(np.linalg.norm(dg))
        nor = split(patch, u, d).normal
        if np.linalg.norm(nor) < DEGENERATE_EPS:
            xi_defined = False
            xi_dn.append(0.0)
            continue

        def xi(t):
            nv = split(patch, cc.coords(t), d).normal
            return nv / np.linalg.norm(nv)
        xi_dn.append(np.linalg.norm(split(patch, u, central_difference(xi, s, 1)).normal))
    if not xi_defined:
        flags.append("xi_undefined")
    grad_dn, xi_dn, grad_d = map(np.array, (grad_dn, xi_dn, grad_d))
    a = bool(grad_dn.max() <= tol)
    b = bool(xi_dn.max() <= tol)
    c = bool(grad_d.max() <= tol)
    affine = parallel_gradient_check(patch, field, cc, s_values).passed
    gh = general_helix_test(cc.ambient(), axis=grads[0], samples=s_values)
    helix = gh.passed

    if a != b:
        verdict = Verdict.THEOREM_VIOLATION
    elif affine and a:
        verdict = Verdict.PASS if (c and helix) else Verdict.THEOREM_VIOLATION
    else:
        verdict = Verdict.PASS
        flags.append("conclusion_not_asserted")
    return CheckReport(
        name, verdict, kind="parallel_normal",
        payload={"grad_deriv_normal_max": float(grad_dn.max()),
                 "xi_deriv_normal_max": float(xi_dn.max()),
                 "grad_deriv_max": float(grad_d.max()), "grad_in_tm": a, "xi_parallel": b,
                 "affine": affine, "axis_constant": c, "general_helix": helix,
                 "cos_phi": gh.payload["cos_phi"]},
        tolerance=tol, flags=flags,
        table={"s": s_values, "grad_deriv_normal": grad_dn, "xi_deriv_normal": xi_dn,
               "grad_deriv": grad_d},
    )
