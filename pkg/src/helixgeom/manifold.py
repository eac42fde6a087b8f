"""Parametrized submanifolds of R^n: Gauss splitting, induced metric, geodesics,
and the intrinsic Frenet apparatus of curves drawn on a patch."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .errors import (
    DomainExitError,
    InconclusiveError,
    IntegratorAccuracyError,
    ParametrizationError,
    SingularPatchError,
)
from .frenet import KAPPA_MIN, FrenetData
from .geom_core import Curve, _finite, default_step, differentiate

RANK_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SurfacePatch:
    """A chart ``u in box subset R^k -> R^n``.

    ``jac(u)`` returns the n x k Jacobian and ``hess(u)`` the k x k x n array
    of second partials; either may be omitted and is then obtained by central
    differences.
    """

    chart: Callable[[np.ndarray], np.ndarray]
    box: tuple[tuple[float, float], ...]
    jac: Callable[[np.ndarray], np.ndarray] | None = None
    hess: Callable[[np.ndarray], np.ndarray] | None = None
    name: str = ""
    k: int = field(init=False)
    n: int = field(init=False)

    def __post_init__(self):
        box = tuple((float(lo), float(hi)) for lo, hi in self.box)
        object.__setattr__(self, "box", box)
        k = len(box)
        centre = np.array([0.5 * (lo + hi) for lo, hi in box])
        n = int(np.size(self.chart(centre)))
        if k > n:
            raise ValueError(f"intrinsic dimension {k} exceeds ambient dimension {n}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)

    @property
    def mode(self) -> str:
        return "analytic" if self.jac is not None and self.hess is not None else "numeric"

    @property
    def lower(self) -> np.ndarray:
        return np.array([lo for lo, _ in self.box])

    @property
    def upper(self) -> np.ndarray:
        return np.array([hi for _, hi in self.box])

    def contains(self, u) -> bool:
        return all(lo <= x <= hi for x, (lo, hi) in zip(np.asarray(u, dtype=float), self.box))

    def point(self, u) -> np.ndarray:
        return _finite(self.chart(np.asarray(u, dtype=float)), "chart")

    def jacobian(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if self.jac is not None:
            return _finite(self.jac(u), "chart jacobian").reshape(self.n, self.k)
        cols = []
        for i in range(self.k):
            e = np.zeros(self.k)
            e[i] = 1.0
            cols.append(_partial(lambda t: self.chart(u + t * e), u[i]))
        return np.column_stack(cols)

    def hessian(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if self.hess is not None:
            return _finite(self.hess(u), "chart hessian").reshape(self.k, self.k, self.n)
        k = self.k
        H = np.empty((k, k, self.n))
        if self.jac is not None:
            for i in range(k):
                e = np.zeros(k)
                e[i] = 1.0
                H[i] = _partial(lambda t: self.jac(u + t * e), u[i]).T
            return 0.5 * (H + H.transpose(1, 0, 2))
        f = lambda x: _finite(self.chart(x), "chart")
        f0 = f(u)
        for i in range(k):
            hi = default_step(2, u[i])
            ei = np.zeros(k)
            ei[i] = hi
            H[i, i] = (f(u + ei) - 2 * f0 + f(u - ei)) / hi**2
            for j in range(i + 1, k):
                hj = default_step(2, u[j])
                ej = np.zeros(k)
                ej[j] = hj
                H[i, j] = (f(u + ei + ej) - f(u + ei - ej) - f(u - ei + ej) + f(u - ei - ej)) \
                    / (4 * hi * hj)
                H[j, i] = H[i, j]
        return H


def _partial(g: Callable[[float], np.ndarray], x: float) -> np.ndarray:
    h = default_step(1, x)
    return (np.asarray(g(h), dtype=float) - np.asarray(g(-h), dtype=float)) / (2 * h)


def _checked_jacobian(patch: SurfacePatch, u) -> np.ndarray:
    J = patch.jacobian(u)
    smin = np.linalg.svd(J, compute_uv=False)[-1]
    if smin <= RANK_TOL:
        raise SingularPatchError(
            f"chart Jacobian of {patch.name or 'patch'} is rank deficient at u={np.asarray(u)} "
            f"(smallest singular value {smin:.3g})")
    return J


def tangent_basis(patch: SurfacePatch, u) -> np.ndarray:
    """Orthonormal basis (n x k) of the tangent space at ``u`` via QR of the Jacobian."""
    q, _ = np.linalg.qr(_checked_jacobian(patch, u))
    return q


@dataclass(frozen=True)
class SplitDerivative:
    tangential: np.ndarray
    normal: np.ndarray


def split(patch: SurfacePatch, u, v) -> SplitDerivative:
    """Decompose an ambient vector into tangential and normal parts at ``u``."""
    v = np.asarray(v, dtype=float)
    Q = tangent_basis(patch, u)
    tan = Q @ (Q.T @ v)
    return SplitDerivative(tan, v - tan)


def tangential(patch: SurfacePatch, u, v) -> np.ndarray:
    return split(patch, u, v).tangential


def normal_part(patch: SurfacePatch, u, v) -> np.ndarray:
    return split(patch, u, v).normal


def metric(patch: SurfacePatch, u) -> np.ndarray:
    """Induced metric g_ij = <d_i X, d_j X>."""
    J = _checked_jacobian(patch, u)
    g = J.T @ J
    try:
        np.linalg.cholesky(g)
    except np.linalg.LinAlgError as exc:
        raise SingularPatchError(f"induced metric is not positive definite at u={u}") from exc
    return g


def chart_coordinates(patch: SurfacePatch, u, v) -> np.ndarray:
    """Components c with J c equal to the tangential part of ``v``."""
    J = _checked_jacobian(patch, u)
    return np.linalg.solve(J.T @ J, J.T @ np.asarray(v, dtype=float))


def christoffel(patch: SurfacePatch, u) -> np.ndarray:
    """Christoffel symbols ``G[i, j, l]`` = Gamma^i_{jl} of the induced metric.

    Uses Gamma^i_{jl} = 1/2 g^{im} (d_j g_{ml} + d_l g_{mj} - d_m g_{jl}) with
    the metric partials assembled from the chart's second derivatives.
    """
    J = _checked_jacobian(patch, u)
    H = patch.hessian(u)
    g = metric(patch, u)
    # dg[j, m, l] = d_j g_{ml} = <X_jm, X_l> + <X_m, X_jl>
    HJ = np.einsum("jmn,nl->jml", H, J)
    dg = HJ + HJ.transpose(0, 2, 1)
    lower = 0.5 * (dg.transpose(1, 0, 2) + dg.transpose(1, 2, 0) - dg)  # [m, j, l]
    return np.einsum("im,mjl->ijl", np.linalg.inv(g), lower)


def _geodesic_accel(patch: SurfacePatch, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    # -Gamma(v, v) in the equivalent embedded form g^{-1} J^T H(v, v)
    J = patch.jacobian(u)
    w = np.einsum("jln,j,l->n", patch.hessian(u), v, v)
    return -np.linalg.solve(J.T @ J, J.T @ w)


@dataclass(frozen=True, eq=False)
class ChartCurve:
    """A curve ``s -> u(s)`` in chart coordinates of ``patch``.

    ``du``/``ddu`` are optional analytic chart-velocity and acceleration.
    ``reference`` is an optional closed-form ambient curve used for
    pointwise comparison; ``meta`` carries integrator audits.
    """

    u: Callable[[float], np.ndarray]
    domain: tuple[float, float]
    patch: SurfacePatch
    du: Callable[[float], np.ndarray] | None = None
    ddu: Callable[[float], np.ndarray] | None = None
    name: str = ""
    reference: Callable[[float], np.ndarray] | None = None
    meta: dict = field(default_factory=dict)
    numeric: bool = False

    @property
    def mode(self) -> str:
        analytic = (self.du is not None and self.ddu is not None and not self.numeric
                    and self.patch.mode == "analytic")
        return "analytic" if analytic else "numeric"

    def coords(self, s: float) -> np.ndarray:
        return np.asarray(self.u(s), dtype=float)

    def ambient(self) -> Curve:
        patch, u = self.patch, self.u

        def func(s):
            return patch.point(u(s))

        derivs = []
        if self.du is not None:
            du = self.du

            def d1(s):
                return patch.jacobian(u(s)) @ du(s)
            derivs.append(d1)
            if self.ddu is not None:
                ddu = self.ddu

                def d2(s):
                    us, v = u(s), du(s)
                    return patch.jacobian(us) @ ddu(s) + np.einsum(
                        "ijn,i,j->n", patch.hessian(us), v, v)
                derivs.append(d2)
        return Curve(func, self.domain, tuple(derivs), mode=self.mode, name=self.name)


def chart_curve_from_ambient(curve: Curve, patch: SurfacePatch, name: str = "") -> ChartCurve:
    """Wrap an ambient curve as a chart curve on an identity-chart patch."""
    if patch.k != patch.n:
        raise ValueError("only identity (full-dimensional) charts accept ambient curves")
    derivs = curve.derivs
    return ChartCurve(
        curve.func, curve.domain, patch,
        du=derivs[0] if len(derivs) > 0 else None,
        ddu=derivs[1] if len(derivs) > 1 else None,
        name=name or curve.name, numeric=curve.mode != "analytic",
    )


def geodesic(patch: SurfacePatch, u0: Sequence[float], v0: Sequence[float], length: float,
             step: float = 1e-3, name: str = "geodesic") -> ChartCurve:
    """Integrate the geodesic equation u'' + Gamma(u', u') = 0 with fixed-step RK4.

    The chart trajectory is returned as a cubic Hermite interpolant of the
    RK4 states.  The ambient speed is audited at every step (not
    renormalized) and recorded in ``meta['speed_drift']``.

    Raises
    ------
    ParametrizationError
        If the initial velocity is not unit length in the induced metric.
    DomainExitError
        If the trajectory leaves the chart box.
    IntegratorAccuracyError
        If the speed drifts by more than 1e-4.
    """
    u0 = np.asarray(u0, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    if step <= 0 or length <= 0:
        raise ValueError("geodesic length and step must be positive")
    if not patch.contains(u0):
        raise DomainExitError(f"initial point {u0} outside the chart box", 0.0)
    g0 = metric(patch, u0)
    speed0 = float(v0 @ g0 @ v0)
    if abs(speed0 - 1.0) > 1e-8:
        raise ParametrizationError(f"initial velocity has g(v0, v0) = {speed0:.12g}, expected 1")

    k = patch.k
    n_steps = max(1, math.ceil(length / step - 1e-9))
    h = length / n_steps

    def rhs(y):
        u, v = y[:k], y[k:]
        return np.concatenate([v, _geodesic_accel(patch, u, v)])

    states = np.empty((n_steps + 1, 2 * k))
    rates = np.empty_like(states)
    states[0] = np.concatenate([u0, v0])
    drift = 0.0
    for i in range(n_steps):
        y = states[i]
        k1 = rhs(y)
        rates[i] = k1
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y_next = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        s_next = (i + 1) * h
        if not patch.contains(y_next[:k]):
            raise DomainExitError(f"geodesic left the chart box at s={s_next:.6g}", s_next)
        J = patch.jacobian(y_next[:k])
        drift = max(drift, abs(float(np.linalg.norm(J @ y_next[k:])) - 1.0))
        if drift > 1e-4:
            raise IntegratorAccuracyError(
                f"geodesic speed drift {drift:.3g} exceeds 1e-4 at s={s_next:.6g}; reduce step")
        states[i + 1] = y_next
    rates[-1] = rhs(states[-1])
    s_nodes = np.linspace(0.0, n_steps * h, n_steps + 1)
    spline = CubicHermiteSpline(s_nodes, states, rates, axis=0)

    def u(s):
        return spline(s)[:k]

    def du(s):
        return spline(s)[k:]

    def ddu(s):
        y = spline(s)
        return _geodesic_accel(patch, y[:k], y[k:])

    return ChartCurve(u, (0.0, float(s_nodes[-1])), patch, du, ddu, name=name,
                      meta={"speed_drift": drift, "step": h, "n_steps": n_steps})


def _intrinsic_TN(patch: SurfacePatch, curve: Curve, cc: ChartCurve, s: float):
    d1 = differentiate(curve, s, 1)
    speed = float(np.linalg.norm(d1))
    tol = 1e-6 if curve.mode == "analytic" else 1e-3
    if abs(speed - 1.0) > tol:
        raise ParametrizationError(f"curve is not unit speed at s={s:.6g} (|alpha'|={speed:.9g})")
    T = d1 / speed
    u = cc.coords(s)
    Q = tangent_basis(patch, u)
    acc = Q @ (Q.T @ differentiate(curve, s, 2))
    acc = acc - np.dot(acc, T) * T
    return u, Q, T, acc


def _oriented_binormal(patch: SurfacePatch, u, Q, T, N) -> np.ndarray:
    b = Q @ np.cross(Q.T @ T, Q.T @ N)
    # orientation induced by the chart keeps B (hence tau) continuous in s
    c = [chart_coordinates(patch, u, x) for x in (T, N, b)]
    if np.linalg.det(np.column_stack(c)) < 0:
        b = -b
    return b / np.linalg.norm(b)


def intrinsic_frenet(cc: ChartCurve, s: float, kappa_min: float = KAPPA_MIN,
                     curve: Curve | None = None) -> FrenetData:
    """Frenet data of a unit-speed curve with respect to the patch's Levi-Civita connection.

    nabla_T T is the tangential part of alpha''; B is the tangent vector
    completing (T, N) with the chart orientation; tau = <N', B>.  Only
    3-dimensional patches are supported.
    """
    patch = cc.patch
    if patch.k != 3:
        raise ValueError(f"intrinsic Frenet frame needs a 3-dimensional patch, got k={patch.k}")
    curve = cc.ambient() if curve is None else curve
    u, Q, T, acc = _intrinsic_TN(patch, curve, cc, s)
    kappa = float(np.linalg.norm(acc))
    if kappa < kappa_min:
        return FrenetData(s, T, None, None, kappa, None)
    N = acc / kappa
    B = _oriented_binormal(patch, u, Q, T, N)
    h = default_step(1, s)
    normals = []
    for sign in (1, -1):
        _, _, _, a2 = _intrinsic_TN(patch, curve, cc, s + sign * h)
        k2 = np.linalg.norm(a2)
        if k2 < kappa_min:
            raise InconclusiveError(f"intrinsic frame degenerates near s={s:.6g}")
        normals.append(a2 / k2)
    dN = (normals[0] - normals[1]) / (2 * h)
    tau = float(np.dot(dN, B))
    return FrenetData(s, T, N, B, kappa, tau)


def intrinsic_frenet_residuals(cc: ChartCurve, s: float) -> tuple[float, float, float]:
    """Norms of nabla_T T - kN, nabla_T N + kT - tB, nabla_T B + tN at ``s``."""
    curve = cc.ambient()
    fd = intrinsic_frenet(cc, s, curve=curve)
    if not fd.defined:
        raise InconclusiveError(f"intrinsic frame undefined at s={s:.6g}")
    h = default_step(1, s)
    plus = intrinsic_frenet(cc, s + h, curve=curve)
    minus = intrinsic_frenet(cc, s - h, curve=curve)
    if not (plus.defined and minus.defined):
        raise InconclusiveError(f"intrinsic frame undefined near s={s:.6g}")
    u = cc.coords(s)
    cov = lambda a, b: tangential(cc.patch, u, (a - b) / (2 * h))
    k, t = fd.kappa, fd.tau
    return (float(np.linalg.norm(cov(plus.T, minus.T) - k * fd.N)),
            float(np.linalg.norm(cov(plus.N, minus.N) + k * fd.T - t * fd.B)),
            float(np.linalg.norm(cov(plus.B, minus.B) + t * fd.N)))
