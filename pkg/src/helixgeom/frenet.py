"""Ambient Frenet apparatus of unit-speed curves and the general-helix test."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InconclusiveError, ParametrizationError
from .geom_core import (
    Curve,
    central_difference,
    constancy,
    default_step,
    default_tol,
    differentiate,
    is_constant,
    sample_params,
    MIN_SAMPLES,
)
from .report import CheckReport, Verdict

KAPPA_MIN = 1e-8


@dataclass(frozen=True)
class FrenetData:
    """Frenet frame and curvatures at one parameter value.

    ``N``, ``B`` and ``tau`` are ``None`` when the frame is undefined
    (curvature below ``kappa_min``).
    """

    s: float
    T: np.ndarray
    N: np.ndarray | None
    B: np.ndarray | None
    kappa: float
    tau: float | None

    @property
    def defined(self) -> bool:
        return self.N is not None


def _speed_tol(curve: Curve) -> float:
    return 1e-6 if curve.mode == "analytic" else 1e-3


def _complete_frame(T: np.ndarray, N: np.ndarray) -> np.ndarray:
    # first basis vector orthogonal to T and N, deterministic
    n = T.size
    q, _ = np.linalg.qr(np.column_stack([T, N, np.eye(n)]))
    b = q[:, 2]
    return b / np.linalg.norm(b)


def frenet_apparatus(curve: Curve, s: float, kappa_min: float = KAPPA_MIN) -> FrenetData:
    """Frenet data of a unit-speed curve in R^n at ``s``.

    T = alpha', kappa = |alpha''|, N = alpha''/kappa.  In R^3 the binormal is
    T x N; for n > 3 it is the normalized Gram-Schmidt residual of alpha'''
    against T and N.  Torsion is <alpha''', B> / kappa in both cases.

    Raises
    ------
    ParametrizationError
        If |alpha'(s)| differs from 1 by more than the mode tolerance.
    """
    d1 = differentiate(curve, s, 1)
    speed = float(np.linalg.norm(d1))
    if abs(speed - 1.0) > _speed_tol(curve):
        raise ParametrizationError(
            f"curve is not unit speed at s={s:.6g} (|alpha'|={speed:.9g}); reparametrize first")
    T = d1 / speed
    d2 = differentiate(curve, s, 2)
    v2 = d2 - np.dot(d2, T) * T
    kappa = float(np.linalg.norm(v2))
    if kappa < kappa_min:
        return FrenetData(s, T, None, None, kappa, None)
    N = v2 / kappa
    n = T.size
    if n == 2:
        return FrenetData(s, T, N, None, kappa, 0.0)
    d3 = differentiate(curve, s, 3)
    if n == 3:
        B = np.cross(T, N)
    else:
        v3 = d3 - np.dot(d3, T) * T - np.dot(d3, N) * N
        nv3 = np.linalg.norm(v3)
        B = v3 / nv3 if nv3 > kappa_min else _complete_frame(T, N)
    tau = float(np.dot(d3, B)) / kappa
    return FrenetData(s, T, N, B, kappa, tau)


def frenet_residuals(curve: Curve, s: float) -> tuple[float, float, float]:
    """Norms of T' - kN, N' + kT - tB and B' + tN at ``s``.

    Frame derivatives are central differences of the frame functions.  For
    n > 3 the last two residuals include the fourth Frenet vector's share.
    """
    fd = frenet_apparatus(curve, s)
    if not fd.defined or fd.B is None:
        raise InconclusiveError(f"Frenet frame undefined at s={s:.6g}")
    h = default_step(1, s)
    frames = {}
    for sign in (-1, 1):
        other = frenet_apparatus(curve, s + sign * h)
        if not other.defined:
            raise InconclusiveError(f"Frenet frame undefined near s={s:.6g}")
        frames[sign] = other
    dT = (frames[1].T - frames[-1].T) / (2 * h)
    dN = (frames[1].N - frames[-1].N) / (2 * h)
    dB = (frames[1].B - frames[-1].B) / (2 * h)
    k, t = fd.kappa, fd.tau
    return (float(np.linalg.norm(dT - k * fd.N)),
            float(np.linalg.norm(dN + k * fd.T - t * fd.B)),
            float(np.linalg.norm(dB + t * fd.N)))


def _samples(curve: Curve, samples: int | Sequence[float], seed: int | None) -> np.ndarray:
    if np.ndim(samples) == 0:
        return sample_params(curve.domain, int(samples), seed)
    return np.asarray(samples, dtype=float)


def unit_tangent(curve: Curve, s: float) -> np.ndarray:
    d1 = differentiate(curve, s, 1)
    return d1 / np.linalg.norm(d1)


def general_helix_test(curve: Curve, axis: Sequence[float] | None = None,
                       samples: int | Sequence[float] = 20, tol: float | None = None,
                       seed: int | None = None, name: str = "general_helix") -> CheckReport:
    """Decide whether ``curve`` makes a constant angle with a fixed direction.

    With an ``axis`` the cosine of the angle between the unit tangent and the
    normalized axis is tested for constancy; the tangent is normalized, so
    non-unit-speed curves are accepted in this mode.  Without an axis (R^3
    only) the Lancret ratio tau/kappa is tested instead, skipping samples
    whose frame is undefined.
    """
    tol = default_tol(curve.mode) if tol is None else tol
    s_values = _samples(curve, samples, seed)
    if axis is not None:
        a = np.asarray(axis, dtype=float)
        norm = np.linalg.norm(a)
        if norm == 0:
            raise ValueError("helix axis must be non-zero")
        a = a / norm
        cosines = np.array([np.dot(unit_tangent(curve, s), a) for s in s_values])
        stats = constancy(cosines)
        flags = []
        if abs(stats.mean) <= tol:
            flags.append("degenerate_angle")
        ok = is_constant(stats, tol)
        return CheckReport(
            name, Verdict.PASS if ok else Verdict.FAIL, kind="general_helix",
            payload={"cos_phi": stats.mean,
                     "phi": float(np.arccos(np.clip(stats.mean, -1.0, 1.0)))},
            residuals=stats, tolerance=tol, flags=flags,
            table={"s": s_values, "cos_phi": cosines},
        )

    if curve.dim != 3:
        raise ValueError("axis-free (Lancret) helix test requires a curve in R^3")
    ratios, used = [], []
    for s in s_values:
        fd = frenet_apparatus(curve, s)
        if fd.defined:
            ratios.append(fd.tau / fd.kappa)
            used.append(s)
    if len(ratios) < MIN_SAMPLES:
        if not ratios:
            raise InconclusiveError("Frenet frame undefined at every sample")
        return CheckReport(name, Verdict.INCONCLUSIVE, kind="lancret", tolerance=tol,
                           message=f"only {len(ratios)} samples with a defined frame")
    stats = constancy(ratios)
    ok = is_constant(stats, tol)
    return CheckReport(
        name, Verdict.PASS if ok else Verdict.FAIL, kind="lancret",
        payload={"tau_over_kappa": stats.mean}, residuals=stats, tolerance=tol,
        table={"s": np.array(used), "tau_over_kappa": np.array(ratios)},
    )
