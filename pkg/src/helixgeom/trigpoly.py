"""Polynomial-trigonometric maps given by coefficients.

A term is ``c * prod_i u_i**p_i * g_i(w_i u_i + phi_i)`` with each ``g_i`` one
of 1, cos, sin.  Sums of such terms are closed under differentiation, so a
coefficient-form chart, field or curve comes with exact derivatives.

Scenario form of a term (one list entry per variable)::

    {c: 2.0, pow: [1, 0], trig: [null, cos], freq: [1, 1], phase: [0, 0]}
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_TRIG_CODES = {None: 0, "none": 0, "cos": 1, "sin": 2}


@dataclass(frozen=True, eq=False)
class TrigMap:
    """An array-valued sum of terms; ``out`` maps each term to a flat output slot."""

    coef: np.ndarray
    pows: np.ndarray
    trig: np.ndarray
    freq: np.ndarray
    phase: np.ndarray
    out: np.ndarray
    shape: tuple[int, ...]
    nvars: int

    @property
    def size(self) -> int:
        return int(np.prod(self.shape, dtype=int))

    def __call__(self, u) -> np.ndarray:
        u = np.atleast_1d(np.asarray(u, dtype=float))
        if u.size != self.nvars:
            raise ValueError(f"expected {self.nvars} variables, got {u.size}")
        if self.coef.size == 0:
            return np.zeros(self.shape)
        x = self.freq * u + self.phase
        g = np.where(self.trig == 1, np.cos(x), np.where(self.trig == 2, np.sin(x), 1.0))
        vals = self.coef * np.prod(u**self.pows * g, axis=1)
        return np.bincount(self.out, weights=vals, minlength=self.size).reshape(self.shape)

    def diff(self, j: int) -> "TrigMap":
        """Partial derivative with respect to variable ``j`` (same output shape)."""
        p, t, w = self.pows[:, j], self.trig[:, j], self.freq[:, j]
        # power rule part
        keep = p > 0
        pows_a = self.pows[keep].copy()
        pows_a[:, j] -= 1
        parts = [(self.coef[keep] * p[keep], pows_a, self.trig[keep], self.freq[keep],
                  self.phase[keep], self.out[keep])]
        # trig part: cos' = -sin, sin' = cos
        keep = (t > 0) & (w != 0)
        trig_b = self.trig[keep].copy()
        sign = np.where(trig_b[:, j] == 1, -1.0, 1.0)
        trig_b[:, j] = np.where(trig_b[:, j] == 1, 2, 1)
        parts.append((self.coef[keep] * w[keep] * sign, self.pows[keep], trig_b,
                      self.freq[keep], self.phase[keep], self.out[keep]))
        cols = [np.concatenate(c) for c in zip(*parts)]
        return TrigMap(*cols, shape=self.shape, nvars=self.nvars)

    def gradient_map(self) -> "TrigMap":
        """Map whose value has shape ``shape + (nvars,)``: all first partials."""
        return _stack_last([self.diff(j) for j in range(self.nvars)])


def _stack_last(maps: list[TrigMap]) -> TrigMap:
    k = len(maps)
    base = maps[0]
    cols = [np.concatenate([getattr(m, a) for m in maps])
            for a in ("coef", "pows", "trig", "freq", "phase")]
    out = np.concatenate([m.out * k + j for j, m in enumerate(maps)])
    return TrigMap(*cols, out=out, shape=base.shape + (k,), nvars=base.nvars)


def _parse_term(term: dict, nvars: int, where: str) -> tuple:
    def vec(key, default, cast):
        val = term.get(key)
        if val is None:
            return [default] * nvars
        if not isinstance(val, (list, tuple)) or len(val) != nvars:
            raise ValueError(f"{where}: '{key}' must be a list of {nvars} entries")
        return [default if v is None else cast(v) for v in val]

    if "c" not in term:
        raise ValueError(f"{where}: term needs a coefficient 'c'")
    pows = vec("pow", 0, int)
    if any(p < 0 for p in pows):
        raise ValueError(f"{where}: negative powers are not supported")
    trig_names = term.get("trig") or [None] * nvars
    if len(trig_names) != nvars:
        raise ValueError(f"{where}: 'trig' must be a list of {nvars} entries")
    try:
        trig = [_TRIG_CODES[t] for t in trig_names]
    except KeyError as exc:
        raise ValueError(f"{where}: unknown trig function {exc.args[0]!r}") from None
    return (float(term["c"]), pows, trig, vec("freq", 1.0, float), vec("phase", 0.0, float))


def trig_map(components: list[list[dict]], nvars: int, where: str = "coefficients") -> TrigMap:
    """Build a vector map from one term list per output component."""
    rows = []
    for i, comp in enumerate(components):
        for t, term in enumerate(comp):
            rows.append((i,) + _parse_term(term, nvars, f"{where}[{i}][{t}]"))
    if not rows:
        return TrigMap(np.zeros(0), np.zeros((0, nvars), int), np.zeros((0, nvars), int),
                       np.zeros((0, nvars)), np.zeros((0, nvars)), np.zeros(0, int),
                       (len(components),), nvars)
    out, coef, pows, trig, freq, phase = zip(*rows)
    return TrigMap(np.array(coef), np.array(pows, dtype=int), np.array(trig, dtype=int),
                   np.array(freq), np.array(phase), np.array(out, dtype=int),
                   (len(components),), nvars)


def scalar_map(terms: list[dict], nvars: int, where: str = "coefficients") -> TrigMap:
    return trig_map([terms], nvars, where)
