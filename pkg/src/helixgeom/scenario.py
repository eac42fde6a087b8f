"""Scenario documents: loading, validation and construction of geometric objects.

A scenario is a YAML (or JSON) mapping::

    name: my_case
    ambient_dim: 3
    patch: {builtin: euclidean, params: {n: 3}}      # or {coefficients: [...], box: [...]}
    field: {builtin: paraboloid_height}                  # or {coefficients: [...]}
    curve: {builtin: circular_helix, params: {...}}   # or {coefficients: [...], domain: [...]}
    direction: [0, 0, 1]                              # optional, normalized on load
    checks: [eikonal, f_eikonal_curve]
    tolerances: {constancy: 1.0e-6}
    samples: 20
    seed: 7                                           # optional sample jitter
    derivative_mode: analytic                         # or numeric
    grid: {n: 5}                                      # or {points: [...]}, optional box
"""

from __future__ import annotations

import dataclasses
import inspect
import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from .catalog import (
    CURVES,
    FIELDS,
    PATCHES,
    REQUIRED,
    Builtin,
    coefficient_curve,
    coefficient_field,
    _trig_patch,
)
from .errors import GeometryError, ScenarioError
from .fields import ScalarField
from .geom_core import MIN_SAMPLES
from .manifold import ChartCurve, SurfacePatch

CHECK_NAMES = (
    "eikonal", "eikonal_grid", "f_eikonal_curve", "linearity", "lift", "general_helix",
    "lancret", "geodesic", "reference_curve", "parallel_gradient", "directional_identity",
    "helix_angle", "f_eikonal_submanifold", "direction_split", "axis_ratio",
    "system_residuals", "parallel_normal_chain", "frenet_ode",
)
NEEDS_DIRECTION = {"helix_angle", "f_eikonal_submanifold", "direction_split",
                   "system_residuals", "parallel_normal_chain"}
TOLERANCE_NAMES = ("constancy", "identity", "linearity", "parallel", "residual", "reference",
                   "kappa_min")
TOP_KEYS = {"name", "description", "ambient_dim", "patch", "field", "curve", "direction",
            "checks", "tolerances", "samples", "seed", "derivative_mode", "grid"}


@dataclass
class Scenario:
    """A validated scenario with its geometric objects built."""

    name: str
    doc: dict
    patch: SurfacePatch
    field: ScalarField
    curve: ChartCurve
    checks: list[str]
    direction: np.ndarray | None = None
    grid: np.ndarray | None = None
    tolerances: dict[str, float] = field(default_factory=dict)
    samples: int = 20
    seed: int | None = None

    def tol(self, name: str) -> float | None:
        return self.tolerances.get(name)


def load_document(path: str | Path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioError([f"cannot parse {path}: {exc}"]) from None
    if not isinstance(doc, dict):
        raise ScenarioError([f"{path}: top level must be a mapping"])
    return doc


def _call_builtin(kind: str, registry: dict[str, Builtin], spec: dict, problems: list[str],
                  *args):
    name = spec.get("builtin")
    if name not in registry:
        problems.append(f"{kind}: unknown builtin {name!r} (known: {', '.join(sorted(registry))})")
        return None
    params = spec.get("params") or {}
    if not isinstance(params, dict):
        problems.append(f"{kind}: params must be a mapping")
        return None
    entry = registry[name]
    accepted = set(inspect.signature(entry.factory).parameters) - {"patch", "direction"}
    unknown = set(params) - accepted
    if unknown:
        problems.append(f"{kind} {name}: unknown parameters {sorted(unknown)}")
        return None
    missing = [k for k, v in entry.defaults.items() if v is REQUIRED and k not in params]
    if missing:
        problems.append(f"{kind} {name}: missing required parameters {missing}")
        return None
    try:
        return entry.factory(*args, **params)
    except (ValueError, TypeError, GeometryError) as exc:
        problems.append(f"{kind} {name}: {exc}")
        return None


def _build_patch(spec, problems) -> SurfacePatch | None:
    if not isinstance(spec, dict):
        problems.append("patch: must be a mapping")
        return None
    if "builtin" in spec:
        return _call_builtin("patch", PATCHES, spec, problems)
    if "coefficients" in spec:
        box = spec.get("box")
        if not isinstance(box, list) or not all(isinstance(b, list) and len(b) == 2
                                                 for b in box):
            problems.append("patch: coefficient charts need a box [[lo, hi], ...]")
            return None
        try:
            return _trig_patch(spec["coefficients"], [tuple(b) for b in box], "coefficients")
        except (ValueError, TypeError) as exc:
            problems.append(f"patch coefficients: {exc}")
            return None
    problems.append("patch: needs 'builtin' or 'coefficients'")
    return None


def _build_field(spec, patch, problems) -> ScalarField | None:
    if not isinstance(spec, dict):
        problems.append("field: must be a mapping")
        return None
    if "builtin" in spec:
        return _call_builtin("field", FIELDS, spec, problems, patch)
    if "coefficients" in spec:
        try:
            return coefficient_field(patch, spec["coefficients"])
        except (ValueError, TypeError) as exc:
            problems.append(f"field coefficients: {exc}")
            return None
    problems.append("field: needs 'builtin' or 'coefficients'")
    return None


def _build_curve(spec, patch, patch_builtin, direction, problems) -> ChartCurve | None:
    if not isinstance(spec, dict):
        problems.append("curve: must be a mapping")
        return None
    if "builtin" in spec:
        return _call_builtin("curve", CURVES, spec, problems, patch, direction)
    if "coefficients" in spec:
        domain = spec.get("domain")
        if not (isinstance(domain, list) and len(domain) == 2):
            problems.append("curve: coefficient curves need a domain [lo, hi]")
            return None
        try:
            return coefficient_curve(patch, spec["coefficients"], domain,
                                     bool(spec.get("reparametrize", False)), patch_builtin)
        except (ValueError, TypeError, GeometryError) as exc:
            problems.append(f"curve coefficients: {exc}")
            return None
    problems.append("curve: needs 'builtin' or 'coefficients'")
    return None


def _default_grid_n(k: int) -> int:
    return {1: 12, 2: 5}.get(k, 3)


def build_grid(spec, patch: SurfacePatch, problems: list[str]) -> np.ndarray | None:
    """Tensor grid over (a shrunken copy of) the patch box, or explicit points."""
    spec = spec or {}
    if "points" in spec:
        pts = np.atleast_2d(np.asarray(spec["points"], dtype=float))
        if pts.shape[1] != patch.k:
            problems.append(f"grid: points need {patch.k} coordinates")
            return None
    else:
        n = int(spec.get("n", _default_grid_n(patch.k)))
        box = spec.get("box")
        if box is None:
            # central 80% keeps stencils away from the box edge
            box = [(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo)) for lo, hi in patch.box]
        elif len(box) != patch.k:
            problems.append(f"grid: box needs {patch.k} intervals")
            return None
        axes = [np.linspace(lo, hi, n) for lo, hi in box]
        pts = np.array(list(itertools.product(*axes)), dtype=float)
    if len(pts) < MIN_SAMPLES:
        problems.append(f"grid: needs at least {MIN_SAMPLES} points, has {len(pts)}")
        return None
    return pts


def _strip_derivatives(patch, field_, curve):
    patch = SurfacePatch(patch.chart, patch.box, name=patch.name)
    field_ = ScalarField(field_.value, None, field_.ambient_gradient, field_.name)
    curve = dataclasses.replace(curve, patch=patch, du=None, ddu=None, numeric=True)
    return patch, field_, curve


def validate(doc: dict, tolerance_overrides: dict[str, float] | None = None) -> Scenario:
    """Validate a scenario document and build its objects.

    Raises
    ------
    ScenarioError
        Listing every problem found.
    """
    problems: list[str] = []
    unknown = set(doc) - TOP_KEYS
    if unknown:
        problems.append(f"unknown top-level keys {sorted(unknown)}")
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        problems.append("name: required non-empty string")
    checks = doc.get("checks")
    if not isinstance(checks, list) or not checks:
        problems.append("checks: required non-empty list")
        checks = []
    for c in checks:
        if c not in CHECK_NAMES:
            problems.append(f"checks: unknown check {c!r}")
    tolerances = dict(doc.get("tolerances") or {})
    tolerances.update(tolerance_overrides or {})
    for key, val in tolerances.items():
        if key not in TOLERANCE_NAMES:
            problems.append(f"tolerances: unknown name {key!r} (known: {', '.join(TOLERANCE_NAMES)})")
        elif not isinstance(val, (int, float)) or isinstance(val, bool) or not val > 0:
            problems.append(f"tolerances: {key} must be a positive number")
    samples = doc.get("samples", 20)
    if not isinstance(samples, int) or isinstance(samples, bool) or samples < MIN_SAMPLES:
        problems.append(f"samples: integer >= {MIN_SAMPLES} required")
        samples = 20
    seed = doc.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        problems.append("seed: must be an integer")
        seed = None
    mode = doc.get("derivative_mode", "analytic")
    if mode not in ("analytic", "numeric"):
        problems.append("derivative_mode: must be 'analytic' or 'numeric'")

    patch = _build_patch(doc.get("patch"), problems)
    direction = None
    if doc.get("direction") is not None:
        d = np.asarray(doc["direction"], dtype=float)
        if patch is not None and d.size != patch.n:
            problems.append(f"direction: needs {patch.n} entries")
        elif not np.linalg.norm(d) > 0:
            problems.append("direction: must be non-zero")
        else:
            direction = d / np.linalg.norm(d)
    missing_dir = NEEDS_DIRECTION.intersection(checks)
    if missing_dir and doc.get("direction") is None:
        problems.append(f"direction: required by checks {sorted(missing_dir)}")

    field_ = curve = grid = None
    if patch is not None:
        dim = doc.get("ambient_dim")
        if dim is not None and dim != patch.n:
            problems.append(f"ambient_dim {dim} does not match the patch ({patch.n})")
        if "axis_ratio" in checks and patch.k != 3:
            problems.append("axis_ratio: needs a 3-dimensional patch")
        field_ = _build_field(doc.get("field"), patch, problems)
        patch_spec = doc.get("patch") or {}
        curve = _build_curve(doc.get("curve"), patch, patch_spec.get("builtin", ""),
                             direction, problems)
        grid = build_grid(doc.get("grid"), patch, problems)

    if problems:
        raise ScenarioError(problems)
    if mode == "numeric":
        patch, field_, curve = _strip_derivatives(patch, field_, curve)
    return Scenario(name, doc, patch, field_, curve, list(checks), direction, grid,
                    {k: float(v) for k, v in tolerances.items()}, samples, seed)


def load_scenario(path: str | Path, tolerance_overrides: dict[str, float] | None = None
                  ) -> Scenario:
    return validate(load_document(path), tolerance_overrides)


def parse_tolerance(text: str) -> tuple[str, float]:
    """Parse a ``name=value`` override."""
    name, sep, value = text.partition("=")
    if not sep:
        raise ValueError(f"tolerance override {text!r} must look like name=value")
    v = float(value)
    if not (math.isfinite(v) and v > 0):
        raise ValueError(f"tolerance {name} must be a positive finite number")
    return name.strip(), v
