"""Run the checks of a scenario and assemble a :class:`RunReport`."""

from __future__ import annotations

import time
from typing import Callable

import numpy as np

from . import __version__
from .errors import DegenerateAngleError, GeometryError, InconclusiveError
from .fields import (
    IDENTITY_TOL,
    _curve_samples,
    directional_derivative_identity,
    eikonal_check,
    eikonal_grid_check,
    parallel_gradient_check,
)
from .frenet import KAPPA_MIN, frenet_residuals, general_helix_test
from .geom_core import NUMERIC_TOL, differentiate
from .helix import (
    LINEARITY_TOL,
    RESIDUAL_TOL,
    axis_and_ratio,
    direction_split_check,
    f_eikonal_curve_test,
    f_eikonal_submanifold_test,
    helix_angle,
    linearity_equivalence,
    parallel_normal_chain,
    system_residuals,
)
from .lift import lift_helix_equivalence
from .manifold import intrinsic_frenet_residuals, tangential
from .report import CheckReport, RunReport, Verdict
from .scenario import Scenario

REFERENCE_TOL = 1e-6
GEODESIC_DRIFT_TOL = 1e-6


def _samples(sc: Scenario) -> np.ndarray:
    return _curve_samples(sc.curve, sc.samples, sc.seed)


def _check_geodesic(sc: Scenario, s) -> CheckReport:
    curve = sc.curve.ambient()
    kappas = np.array([np.linalg.norm(tangential(sc.patch, sc.curve.coords(t),
                                                 differentiate(curve, t, 2))) for t in s])
    drift = sc.curve.meta.get("speed_drift")
    tol = sc.tol("residual") or RESIDUAL_TOL
    ok = kappas.max() <= tol and (drift is None or drift <= GEODESIC_DRIFT_TOL)
    return CheckReport("geodesic", Verdict.PASS if ok else Verdict.FAIL, kind="geodesic",
                       payload={"speed_drift": drift, "max_geodesic_curvature": kappas.max()},
                       tolerance=tol, table={"s": s, "geodesic_curvature": kappas})


def _check_reference(sc: Scenario, s) -> CheckReport:
    ref = sc.curve.reference
    if ref is None:
        raise InconclusiveError("curve has no closed-form reference")
    lo, hi = sc.curve.domain
    grid = np.linspace(lo, hi, 201)
    errs = np.array([np.linalg.norm(sc.patch.point(sc.curve.coords(t)) - ref(t)) for t in grid])
    tol = sc.tol("reference") or REFERENCE_TOL
    return CheckReport("reference_curve", Verdict.PASS if errs.max() <= tol else Verdict.FAIL,
                       kind="reference_curve", payload={"max_pointwise_error": errs.max()},
                       tolerance=tol, table={"s": grid, "pointwise_error": errs})


def _check_frenet_ode(sc: Scenario, s) -> CheckReport:
    intrinsic = sc.patch.k == 3 and sc.patch.k != sc.patch.n
    rows, used = [], []
    for t in s:
        try:
            if intrinsic:
                rows.append(intrinsic_frenet_residuals(sc.curve, t))
            else:
                rows.append(frenet_residuals(sc.curve.ambient(), t))
            used.append(t)
        except InconclusiveError:
            continue
    if not rows:
        raise InconclusiveError("Frenet frame undefined at every sample")
    res = np.array(rows)
    # third derivatives of numeric-mode curves carry ~1e-4 discretization error
    tol = sc.tol("residual") or (RESIDUAL_TOL if sc.curve.mode == "analytic" else NUMERIC_TOL)
    worst = res.max(axis=0)
    return CheckReport("frenet_ode", Verdict.PASS if worst.max() <= tol else Verdict.FAIL,
                       kind="frenet_ode",
                       payload={"max_residual_T": worst[0], "max_residual_N": worst[1],
                                "max_residual_B": worst[2]},
                       tolerance=tol, flags=["intrinsic"] if intrinsic else [],
                       table={"s": np.array(used), "residual_T": res[:, 0],
                              "residual_N": res[:, 1], "residual_B": res[:, 2]})


def _dispatch(sc: Scenario) -> dict[str, Callable[[np.ndarray], CheckReport]]:
    p, f, c, d = sc.patch, sc.field, sc.curve, sc.direction
    tc = sc.tol("constancy")
    resid = sc.tol("residual") or RESIDUAL_TOL
    kmin = sc.tol("kappa_min") or KAPPA_MIN
    return {
        "eikonal": lambda s: eikonal_check(p, f, c, s, tc),
        "eikonal_grid": lambda s: eikonal_grid_check(p, f, sc.grid, tc),
        "f_eikonal_curve": lambda s: f_eikonal_curve_test(p, f, c, s, tc),
        "linearity": lambda s: linearity_equivalence(
            p, f, c, s, tc, sc.tol("linearity") or LINEARITY_TOL),
        "lift": lambda s: lift_helix_equivalence(p, f, c, s, tc),
        "general_helix": lambda s: general_helix_test(c.ambient(), d, s, tc),
        "lancret": lambda s: general_helix_test(c.ambient(), None, s, tc, name="lancret"),
        "geodesic": lambda s: _check_geodesic(sc, s),
        "reference_curve": lambda s: _check_reference(sc, s),
        "parallel_gradient": lambda s: parallel_gradient_check(p, f, c, s, sc.tol("parallel")),
        "directional_identity": lambda s: directional_derivative_identity(
            p, f, c, s, sc.tol("identity") or IDENTITY_TOL),
        "helix_angle": lambda s: helix_angle(p, d, sc.grid, tc),
        "f_eikonal_submanifold": lambda s: f_eikonal_submanifold_test(p, f, d, sc.grid, tc),
        "direction_split": lambda s: direction_split_check(p, d, sc.grid),
        "axis_ratio": lambda s: axis_and_ratio(p, f, c, s, tc, kappa_min=kmin),
        "system_residuals": lambda s: system_residuals(p, d, c, s, resid),
        "parallel_normal_chain": lambda s: parallel_normal_chain(p, f, d, c, s, resid),
        "frenet_ode": lambda s: _check_frenet_ode(sc, s),
    }


def run_check(sc: Scenario, name: str, s: np.ndarray | None = None) -> CheckReport:
    """Run one named check; runtime errors become INCONCLUSIVE or ERROR reports."""
    s = _samples(sc) if s is None else s
    try:
        report = _dispatch(sc)[name](s)
    except (InconclusiveError, DegenerateAngleError) as exc:
        return CheckReport(name, Verdict.INCONCLUSIVE, message=str(exc))
    except (GeometryError, ValueError, np.linalg.LinAlgError) as exc:
        return CheckReport(name, Verdict.ERROR, message=f"{type(exc).__name__}: {exc}")
    report.name = name
    return report


def run_scenario(sc: Scenario) -> RunReport:
    """Execute the scenario's checks in declared order."""
    start = time.perf_counter()
    s = _samples(sc)
    checks, timing = [], {}
    for name in sc.checks:
        t0 = time.perf_counter()
        checks.append(run_check(sc, name, s))
        timing[name] = time.perf_counter() - t0
    timing["total"] = time.perf_counter() - start
    return RunReport(sc.name, __version__, checks, timing)
