"""Check verdicts, per-check reports and run reports (JSON + CSV)."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .geom_core import ConstancyStats


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    PREMISE_FAILED = "PREMISE-FAILED"
    INCONCLUSIVE = "INCONCLUSIVE"
    THEOREM_VIOLATION = "THEOREM-VIOLATION"
    ERROR = "ERROR"


# Fixed payload schema per verdict kind.  Keys absent from a computed payload
# are emitted as null.
PAYLOAD_KEYS: dict[str, tuple[str, ...]] = {
    "eikonal": ("grad_norm",),
    "identity": ("max_residual",),
    "parallel_gradient": ("max_covariant_derivative",),
    "general_helix": ("cos_phi", "phi"),
    "lancret": ("tau_over_kappa",),
    "frenet_ode": ("max_residual_T", "max_residual_N", "max_residual_B"),
    "geodesic": ("speed_drift", "max_geodesic_curvature"),
    "reference_curve": ("max_pointwise_error",),
    "helix_submanifold": ("theta", "cos_theta", "trivial"),
    "f_eikonal_submanifold": ("grad_dot_d", "grad_norm", "cos_angle"),
    "f_eikonal_curve": ("grad_dot_t", "grad_norm", "cos_theta", "theta"),
    "linearity": ("helix", "linear", "slope", "intercept", "fit_residual"),
    "axis_decomposition": ("theta", "max_reconstruction_error"),
    "ratio": ("tau_over_kappa", "cot_theta", "ratio_error", "max_grad_dot_n",
              "axis_residual", "b_sign", "orientation_sign"),
    "system_2_1_2_2": ("theta", "tangential_residual", "normal_residual"),
    "parallel_normal": ("grad_deriv_normal_max", "xi_deriv_normal_max", "grad_deriv_max",
                        "grad_in_tm", "xi_parallel", "affine", "axis_constant",
                        "general_helix", "cos_phi"),
    "lift_equivalence": ("f_eikonal", "lift_helix", "cos_theta_lift", "cos_theta_predicted",
                         "lift_angle_error", "max_height_rate_residual", "max_speed_residual"),
}


def _clean(value: Any) -> float | None:
    if value is None:
        return None
    if isinstance(value, (bool, np.bool_)):
        return 1.0 if value else 0.0
    v = float(value)
    return v if np.isfinite(v) else None


@dataclass
class CheckReport:
    """Outcome of one definition/theorem check at one tolerance.

    ``table`` holds per-sample columns (keyed by name, ``s`` first) for CSV
    export; it is not part of the JSON document.
    """

    name: str
    verdict: Verdict
    kind: str = ""
    payload: dict[str, float | None] = field(default_factory=dict)
    residuals: ConstancyStats | None = None
    tolerance: float | None = None
    flags: list[str] = field(default_factory=list)
    message: str = ""
    table: dict[str, np.ndarray] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self.verdict = Verdict(self.verdict)
        payload = {k: _clean(v) for k, v in self.payload.items()}
        if self.kind in PAYLOAD_KEYS:
            keys = PAYLOAD_KEYS[self.kind]
            unknown = set(payload) - set(keys)
            if unknown:
                raise ValueError(f"payload keys {sorted(unknown)} not in schema of {self.kind!r}")
            payload = {k: payload.get(k) for k in keys}
        self.payload = payload

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "verdict": self.verdict.value,
            "payload": dict(self.payload),
            "residuals": self.residuals.to_dict() if self.residuals else None,
            "tolerance": self.tolerance,
            "flags": list(self.flags),
            "message": self.message,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "CheckReport":
        res = d.get("residuals")
        return cls(
            name=d["name"],
            verdict=Verdict(d["verdict"]),
            kind=d.get("kind", ""),
            payload=dict(d.get("payload", {})),
            residuals=ConstancyStats.from_dict(res) if res else None,
            tolerance=d.get("tolerance"),
            flags=list(d.get("flags", [])),
            message=d.get("message", ""),
        )


# Verdict kinds for helix-specific checks share the report type.
HelixVerdict = CheckReport


EXIT_OK = 0
EXIT_FAIL = 2
EXIT_VIOLATION = 3
EXIT_INVALID = 4


@dataclass
class RunReport:
    scenario: str
    version: str
    checks: list[CheckReport]
    timing: dict[str, float] = field(default_factory=dict)

    def exit_code(self) -> int:
        verdicts = {c.verdict for c in self.checks}
        if Verdict.THEOREM_VIOLATION in verdicts:
            return EXIT_VIOLATION
        if verdicts <= {Verdict.PASS}:
            return EXIT_OK
        return EXIT_FAIL

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "version": self.version,
            "checks": [c.to_dict() for c in self.checks],
            "timing": dict(self.timing),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_dict(cls, d: Mapping) -> "RunReport":
        return cls(d["scenario"], d["version"], [CheckReport.from_dict(c) for c in d["checks"]],
                   dict(d.get("timing", {})))

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls.from_dict(json.loads(text))

    def write_json(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_json(), encoding="utf-8", newline="\n")
        return path

    def write_csv(self, directory: str | Path) -> list[Path]:
        """Write one CSV per check that carries a sample table."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        written = []
        for check in self.checks:
            if not check.table:
                continue
            path = directory / f"{self.scenario}__{check.name}.csv"
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(table_to_csv(check.table))
            written.append(path)
        return written


def _fmt(x: float) -> str:
    return repr(float(x))


def table_to_csv(table: Mapping[str, np.ndarray]) -> str:
    """Render a sample table: ``s`` first, remaining columns alphabetically."""
    cols = ["s"] + sorted(k for k in table if k != "s")
    n = len(table["s"])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for i in range(n):
        writer.writerow([_fmt(np.asarray(table[c])[i]) for c in cols])
    return buf.getvalue()
