"""Betti curves, persistence landscapes and silhouettes sampled on a scale grid."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ValidationError
from .persistence import PersistenceDiagram

WEIGHTS = ("constant", "persistence")
KINDS = ("betti", "landscape", "silhouette")


def clamp(pd: PersistenceDiagram, cap: Optional[float] = None) -> PersistenceDiagram:
    """Replace infinite deaths by ``cap`` (default ``pd.cap``).

    This is the one place where essential classes get a finite death; every
    vector summary and the stability checks consume clamped diagrams.
    """
    cap = pd.cap if cap is None else cap
    if not pd.has_infinite:
        return pd
    if not math.isfinite(cap):
        raise ValidationError("cannot clamp a diagram with an infinite cap")
    pts = tuple((b, cap if math.isinf(d) else d) for b, d in pd.points)
    if any(b > cap for b, _ in pts):
        raise ValidationError(f"a point is born after the cap {cap}")
    return PersistenceDiagram(pd.dim, pts, cap)


def _check_grid(grid) -> np.ndarray:
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or g.size == 0:
        raise ValidationError("grid must be a non-empty 1-d sequence")
    if np.any(np.diff(g) <= 0):
        raise ValidationError("grid must be strictly increasing")
    return g


def _finite_points(pd: PersistenceDiagram) -> np.ndarray:
    if pd.has_infinite:
        raise ValidationError("diagram has infinite deaths; clamp it first")
    return pd.as_array()


@dataclass(frozen=True, eq=False)
class StepFunction:
    """Right-continuous piecewise-constant function with compact support.

    ``levels[i]`` is the value on ``[breakpoints[i], breakpoints[i+1])``; the
    function is 0 left of the first breakpoint and ``levels[-1]`` (0 for any
    Betti function) right of the last one.
    """

    breakpoints: np.ndarray
    levels: np.ndarray

    def __post_init__(self):
        bp = np.asarray(self.breakpoints, dtype=float)
        lv = np.asarray(self.levels, dtype=float)
        if bp.shape != lv.shape or bp.ndim != 1:
            raise ValidationError("breakpoints and levels must be 1-d arrays of equal length")
        if np.any(np.diff(bp) <= 0):
            raise ValidationError("breakpoints must be strictly increasing")
        if lv.size and lv[-1] != 0:
            raise ValidationError("step function must vanish right of its last breakpoint")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "levels", lv)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.levels.size == 0:
            vals = np.zeros_like(t)
        else:
            idx = np.searchsorted(self.breakpoints, t, side="right") - 1
            vals = np.where(idx >= 0, self.levels[np.maximum(idx, 0)], 0.0)
        return vals if vals.ndim else float(vals)


@dataclass(frozen=True, eq=False)
class SummaryVector:
    kind: str
    dim: int
    grid: np.ndarray
    values: np.ndarray
    param: Optional[float] = None


def betti_function(pd: PersistenceDiagram, weight: str = "constant") -> StepFunction:
    """Weighted count of alive classes, ``sum_i w(b_i, d_i) * 1[b_i <= t < d_i]``.

    ``weight="constant"`` is w = 1; ``"persistence"`` is w = d - b.
    """
    if weight not in WEIGHTS:
        raise ValidationError(f"weight must be one of {WEIGHTS}, got {weight!r}")
    pts = _finite_points(pd)
    pts = pts[pts[:, 1] > pts[:, 0]]
    if pts.size == 0:
        return StepFunction(np.zeros(0), np.zeros(0))
    w = np.ones(len(pts)) if weight == "constant" else pts[:, 1] - pts[:, 0]
    xs = np.concatenate([pts[:, 0], pts[:, 1]])
    jumps = np.concatenate([w, -w])
    bp, inv = np.unique(xs, return_inverse=True)
    delta = np.zeros(bp.size)
    np.add.at(delta, inv, jumps)
    levels = np.cumsum(delta)
    if weight == "constant":
        levels = np.rint(levels)
    else:
        levels[-1] = 0.0
    return StepFunction(bp, levels)


def evaluate_grid(sf: StepFunction, grid: Sequence[float], dim: int = 0) -> SummaryVector:
    g = _check_grid(grid)
    return SummaryVector("betti", dim, g, np.asarray(sf(g), dtype=float))


def tents(pd: PersistenceDiagram, grid: np.ndarray) -> np.ndarray:
    """Matrix of tent values ``max(0, min(t - b, d - t))``, one row per point."""
    pts = _finite_points(pd)
    if pts.size == 0:
        return np.zeros((0, grid.size))
    b = pts[:, 0:1]
    d = pts[:, 1:2]
    return np.maximum(0.0, np.minimum(grid[None, :] - b, d - grid[None, :]))


def landscape(pd: PersistenceDiagram, k: int, grid: Sequence[float]) -> SummaryVector:
    """k-th landscape: k-th largest tent value at each grid point (0 if fewer than k points)."""
    if k < 1:
        raise ValidationError(f"landscape order must be >= 1, got {k}")
    g = _check_grid(grid)
    f = tents(pd, g)
    if f.shape[0] < k:
        vals = np.zeros(g.size)
    else:
        vals = -np.sort(-f, axis=0)[k - 1]
    return SummaryVector("landscape", pd.dim, g, vals, float(k))


def silhouette(pd: PersistenceDiagram, power: float, grid: Sequence[float]) -> SummaryVector:
    """Tent functions averaged with weights ``(d - b) ** power``."""
    if power < 0:
        raise ValidationError(f"silhouette power must be >= 0, got {power}")
    g = _check_grid(grid)
    pts = _finite_points(pd)
    w = np.abs(pts[:, 1] - pts[:, 0]) ** power if pts.size else np.zeros(0)
    # diagonal points carry no weight even when power == 0
    w = np.where(pts[:, 1] > pts[:, 0], w, 0.0) if pts.size else w
    total = w.sum()
    if total == 0:
        vals = np.zeros(g.size)
    else:
        vals = (w[:, None] * tents(pd, g)).sum(axis=0) / total
    return SummaryVector("silhouette", pd.dim, g, vals, float(power))


def betti_l1_distance(sf1: StepFunction, sf2: StepFunction) -> float:
    """Exact integral of ``|sf1 - sf2|`` over the merged breakpoints."""
    xs = np.union1d(sf1.breakpoints, sf2.breakpoints)
    if xs.size < 2:
        return 0.0
    diff = np.abs(sf1(xs[:-1]) - sf2(xs[:-1]))
    return float(np.sum(diff * np.diff(xs)))


def vectorize(
    pd: PersistenceDiagram,
    kind: str,
    grid: Sequence[float],
    landscape_k: int = 1,
    silhouette_power: float = 1.0,
    weight: str = "constant",
) -> SummaryVector:
    """Clamp ``pd`` and sample the requested summary on ``grid``."""
    pd = clamp(pd)
    if kind == "betti":
        return evaluate_grid(betti_function(pd, weight), grid, pd.dim)
    if kind == "landscape":
        return landscape(pd, landscape_k, grid)
    if kind == "silhouette":
        return silhouette(pd, silhouette_power, grid)
    raise ValidationError(f"kind must be one of {KINDS}, got {kind!r}")
