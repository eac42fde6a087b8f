"""Curves in R^n, finite differences, arc-length reparametrization and constancy statistics.

Every "quantity X is constant along the curve" claim checked elsewhere in the
package goes through :func:`constancy` and :func:`is_constant`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import CubicHermiteSpline, PchipInterpolator

from .errors import (
    BoundaryError,
    DegenerateCurveError,
    EvaluationError,
    InsufficientSamplesError,
    ParametrizationError,
)

EPS = np.finfo(float).eps
MIN_SAMPLES = 8

ANALYTIC_TOL = 1e-6
NUMERIC_TOL = 1e-3
REL_FLOOR = 1e-12

VectorFn = Callable[[float], np.ndarray]


def default_tol(*modes: str) -> float:
    """Constancy tolerance for a check whose inputs have the given derivative modes."""
    return ANALYTIC_TOL if all(m == "analytic" for m in modes) else NUMERIC_TOL


def default_step(order: int, s: float = 0.0) -> float:
    # eps**(1/3) for first derivatives; higher orders need a wider stencil to
    # keep roundoff (eps / h**order) below truncation error.
    return EPS ** (1.0 / (order + 2)) * max(1.0, abs(s))


def _finite(value, what: str = "map") -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if not np.isfinite(arr).all():
        raise EvaluationError(f"{what} returned non-finite values")
    return arr


def central_difference(func: Callable[[float], np.ndarray], s: float, order: int,
                       h: float | None = None) -> np.ndarray:
    """Second-order accurate central difference of ``func`` at ``s``.

    Parameters
    ----------
    func : callable
        Scalar- or vector-valued function of one real variable.
    s : float
        Evaluation point.
    order : {1, 2, 3}
        Derivative order.
    h : float, optional
        Step; defaults to :func:`default_step`.
    """
    if h is None:
        h = default_step(order, s)
    # exactly representable step
    h = (s + h) - s
    f = lambda x: _finite(func(x))
    if order == 1:
        return (f(s + h) - f(s - h)) / (2 * h)
    if order == 2:
        return (f(s + h) - 2 * f(s) + f(s - h)) / h**2
    if order == 3:
        return (f(s + 2 * h) - 2 * f(s + h) + 2 * f(s - h) - f(s - 2 * h)) / (2 * h**3)
    raise ValueError(f"unsupported derivative order {order}")


@dataclass(frozen=True)
class Curve:
    """A parametrized curve ``s -> R^n``.

    ``derivs`` holds caller-supplied derivative functions in increasing order
    (first, second, third).  Orders not supplied are obtained by central
    differences of the highest supplied lower order.
    """

    func: VectorFn
    domain: tuple[float, float]
    derivs: tuple[VectorFn, ...] = ()
    unit_speed: bool = False
    mode: str = ""
    name: str = ""

    def __post_init__(self):
        lo, hi = self.domain
        if not hi > lo:
            raise ValueError(f"empty curve domain {self.domain}")
        object.__setattr__(self, "domain", (float(lo), float(hi)))
        object.__setattr__(self, "derivs", tuple(self.derivs))
        if not self.mode:
            object.__setattr__(self, "mode", "analytic" if len(self.derivs) >= 2 else "numeric")

    def __call__(self, s: float) -> np.ndarray:
        return _finite(self.func(s), "curve")

    @property
    def dim(self) -> int:
        lo, hi = self.domain
        return int(np.size(self(0.5 * (lo + hi))))

    @property
    def length_hint(self) -> float:
        lo, hi = self.domain
        return hi - lo


def differentiate(curve: Curve, s: float, order: int, h: float | None = None) -> np.ndarray:
    """Return the ``order``-th derivative of ``curve`` at ``s``.

    Analytic derivatives are used when the curve carries them; otherwise the
    missing orders are central differences of the highest available one.
    Passing ``h`` forces the numeric route even when analytic derivatives
    exist for that order (used for convergence audits).
    """
    if order not in (1, 2, 3):
        raise ValueError(f"order must be 1, 2 or 3, got {order}")
    have = len(curve.derivs)
    if h is None and order <= have:
        return _finite(curve.derivs[order - 1](s), "derivative")
    if h is not None:
        base, m = curve.func, order
    elif have:
        base, m = curve.derivs[have - 1], order - have
    else:
        base, m = curve.func, order
    step = default_step(m, s) if h is None else h
    lo, hi = curve.domain
    margin = 3 * step
    if s - margin < lo or s + margin > hi:
        raise BoundaryError(
            f"s={s!r} is within {margin:.3g} of the domain boundary {curve.domain}")
    return central_difference(base, s, m, step)


def _safe_first_derivative(func: VectorFn, t: float, lo: float, hi: float) -> np.ndarray:
    h = default_step(1, t)
    if t - h >= lo and t + h <= hi:
        return central_difference(func, t, 1, h)
    # one-sided second-order stencil pointing into the domain
    sign = 1.0 if t - h < lo else -1.0
    f0, f1, f2 = (_finite(func(t + sign * k * h)) for k in (0, 1, 2))
    return sign * (-3 * f0 + 4 * f1 - f2) / (2 * h)


def _tangent_fn(curve: Curve) -> VectorFn:
    if curve.derivs:
        return lambda t: _finite(curve.derivs[0](t), "derivative")
    lo, hi = curve.domain
    return lambda t: _safe_first_derivative(curve.func, t, lo, hi)


def arclength_reparametrize(curve: Curve, n_quad: int = 2000, verify: bool = True) -> Curve:
    """Reparametrize ``curve`` by arc length.

    The length table is built by 3-point Gauss-Legendre quadrature on
    ``n_quad`` panels; the inverse map s -> t is a monotone piecewise-cubic
    Hermite interpolant with the exact slopes ``1/|alpha'(t)|`` at the nodes.

    Raises
    ------
    DegenerateCurveError
        If the speed drops below 1e-9 at any quadrature node.
    """
    lo, hi = curve.domain
    tangent = _tangent_fn(curve)
    speed = lambda t: float(np.linalg.norm(tangent(t)))

    edges = np.linspace(lo, hi, n_quad + 1)
    xg, wg = np.polynomial.legendre.leggauss(3)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = mid[:, None] + half[:, None] * xg[None, :]
    node_speed = np.array([[speed(t) for t in row] for row in nodes])
    edge_speed = np.array([speed(t) for t in edges])
    if node_speed.min() < 1e-9 or edge_speed.min() < 1e-9:
        raise DegenerateCurveError("curve speed falls below 1e-9; cannot reparametrize")
    panel_len = half * (node_speed @ wg)
    cum = np.concatenate([[0.0], np.cumsum(panel_len)])
    total = float(cum[-1])

    slopes = 1.0 / edge_speed
    secant = np.diff(edges) / np.diff(cum)
    a, b = slopes[:-1] / secant, slopes[1:] / secant
    if np.all(a**2 + b**2 <= 9.0):
        t_of_s = CubicHermiteSpline(cum, edges, slopes)
    else:
        t_of_s = PchipInterpolator(cum, edges)

    def t_at(s):
        return float(np.clip(t_of_s(s), lo, hi))

    def func(s):
        return curve(t_at(s))

    derivs: list[VectorFn] = []
    if curve.derivs:
        def d1(s):
            v = curve.derivs[0](t_at(s))
            return v / np.linalg.norm(v)
        derivs.append(d1)
        if len(curve.derivs) >= 2:
            def d2(s):
                t = t_at(s)
                v, a2 = curve.derivs[0](t), curve.derivs[1](t)
                sp = np.linalg.norm(v)
                return a2 / sp**2 - v * np.dot(v, a2) / sp**4
            derivs.append(d2)

    out = Curve(func, (0.0, total), tuple(derivs), unit_speed=True, mode="numeric",
                name=curve.name)
    if verify:
        grid = sample_params(out.domain, 32, margin=0.01)
        speeds = [np.linalg.norm(central_difference(out.func, s, 1)) for s in grid]
        stats = constancy(np.array(speeds))
        if abs(stats.mean - 1.0) > 1e-6 or stats.rel_dev > 1e-6:
            raise ParametrizationError(
                f"reparametrized curve is not unit speed (mean {stats.mean:.3g}, "
                f"rel_dev {stats.rel_dev:.3g}); increase n_quad")
    return out


@dataclass(frozen=True)
class ConstancyStats:
    mean: float
    max_abs_dev: float
    rel_dev: float
    n_samples: int

    def to_dict(self) -> dict:
        return {"mean": self.mean, "max_abs_dev": self.max_abs_dev,
                "rel_dev": self.rel_dev, "n_samples": self.n_samples}

    @classmethod
    def from_dict(cls, d: dict) -> "ConstancyStats":
        return cls(float(d["mean"]), float(d["max_abs_dev"]), float(d["rel_dev"]),
                   int(d["n_samples"]))


def constancy(samples: Sequence[float] | np.ndarray, floor: float = REL_FLOOR) -> ConstancyStats:
    """Mean, max absolute deviation and relative deviation of a sample set."""
    x = np.asarray(samples, dtype=float).ravel()
    if x.size < MIN_SAMPLES:
        raise InsufficientSamplesError(f"need at least {MIN_SAMPLES} samples, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise EvaluationError("constancy samples contain non-finite values")
    mean = float(np.mean(x))
    dev = float(np.max(np.abs(x - mean)))
    denom = max(abs(mean), floor)
    rel = dev / denom if denom > 0 else (0.0 if dev == 0 else np.inf)
    return ConstancyStats(mean, dev, float(rel), int(x.size))


def is_constant(stats: ConstancyStats, tol: float) -> bool:
    # absolute fallback keeps near-zero means from inflating rel_dev
    return stats.rel_dev <= tol or stats.max_abs_dev <= tol


def sample_params(domain: tuple[float, float], n: int, seed: int | None = None,
                  margin: float = 0.02) -> np.ndarray:
    """Sample parameters strictly inside ``domain``.

    A fraction ``margin`` of the length is kept clear at both ends so that
    finite-difference stencils stay inside.  With a seed, each point is
    jittered by up to a quarter spacing (deterministic per seed).
    """
    if n < MIN_SAMPLES:
        raise InsufficientSamplesError(f"need at least {MIN_SAMPLES} samples, got {n}")
    lo, hi = domain
    pad = margin * (hi - lo)
    s = np.linspace(lo + pad, hi - pad, n)
    if seed is not None:
        rng = np.random.default_rng(seed)
        spacing = (s[-1] - s[0]) / (n - 1)
        s = s + rng.uniform(-0.25, 0.25, size=n) * spacing
        s = np.sort(np.clip(s, lo + pad, hi - pad))
    return s


def unit(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("cannot normalize the zero vector")
    return v / n
