"""Render per-check sample tables as PNG figures next to the CSV files."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .report import CheckReport, RunReport  # noqa: E402

MAX_PANELS = 4
_STYLE = {
    "font.size": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 120,
    # fixed metadata keeps repeated renders byte-stable
    "svg.hashsalt": "helixgeom",
}


def plot_check(check: CheckReport, path: str | Path, title: str = "") -> Path | None:
    """Plot every quantity column of ``check.table`` against ``s``.

    Returns the written path, or None when the check carries no table.
    """
    table = check.table
    if not table or "s" not in table:
        return None
    cols = sorted(k for k in table if k != "s")[:MAX_PANELS]
    if not cols:
        return None
    s = np.asarray(table["s"], dtype=float)
    with plt.rc_context(_STYLE):
        fig, axes = plt.subplots(len(cols), 1, figsize=(5, 1.6 * len(cols) + 0.6),
                                 sharex=True, squeeze=False)
        for ax, col in zip(axes[:, 0], cols):
            ax.plot(s, np.asarray(table[col], dtype=float), "k.-", lw=0.8, ms=3)
            ax.set_ylabel(col.replace("_", " "))
            ax.ticklabel_format(axis="y", useOffset=False, style="sci", scilimits=(-3, 4))
        axes[-1, 0].set_xlabel("s")
        fig.suptitle(title or f"{check.name}: {check.verdict.value}")
        fig.tight_layout()
        path = Path(path)
        fig.savefig(path, metadata={"Software": None})
        plt.close(fig)
    return path


def plot_report(report: RunReport, directory: str | Path) -> list[Path]:
    """One PNG per check with a table, named like the matching CSV."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for check in report.checks:
        out = plot_check(check, directory / f"{report.scenario}__{check.name}.png",
                         f"{report.scenario} / {check.name}: {check.verdict.value}")
        if out is not None:
            written.append(out)
    return written
