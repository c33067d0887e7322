"""Empirical checks of the L1 stability bound for Betti functions.

For intervals ``u = [a, b)`` and ``v = [c, d)`` the L1 distance between
their indicator functions is at most ``2 * max(|a - c|, |b - d|)``. Summed
along an optimal W1 matching this gives
``||beta - beta'||_1 <= 2 * W1(D, D')`` for finite diagrams.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .distances import wasserstein
from .errors import ValidationError
from .persistence import PersistenceDiagram
from .vectorize import betti_function, betti_l1_distance, clamp

LEMMA_TOL = 1e-12
THEOREM_TOL = 1e-9

OVERLAP, DISJOINT, NESTED = 1, 2, 3


def _check_interval(a: float, b: float) -> None:
    if a > b:
        raise ValidationError(f"interval ({a}, {b}) has start after end")


def interval_case(u: tuple[float, float], v: tuple[float, float]) -> int:
    """Classify an interval pair as NESTED, DISJOINT or OVERLAP (checked in that order).

    Nesting is tested on the endpoints, so an empty interval ``[a, a)`` counts
    as nested in ``[c, d)`` only when ``c <= a <= d``.
    """
    (a, b), (c, d) = u, v
    _check_interval(a, b)
    _check_interval(c, d)
    if (a <= c and d <= b) or (c <= a and b <= d):
        return NESTED
    if b <= c or d <= a:
        return DISJOINT
    return OVERLAP


def lemma_lhs(u: tuple[float, float], v: tuple[float, float]) -> float:
    """Closed form of the integral of ``|1[a,b) - 1[c,d)|``."""
    (a, b), (c, d) = u, v
    case = interval_case(u, v)
    if case == NESTED:
        return abs(c - a) + abs(b - d)
    if case == DISJOINT:
        return (b - a) + (d - c)
    return abs(c - a) + abs(d - b)


def check_lemma(u: tuple[float, float], v: tuple[float, float]) -> tuple[float, float, bool]:
    lhs = lemma_lhs(u, v)
    rhs = 2.0 * max(abs(u[0] - v[0]), abs(u[1] - v[1]))
    return lhs, rhs, lhs <= rhs + LEMMA_TOL


def check_theorem(pd1: PersistenceDiagram, pd2: PersistenceDiagram) -> tuple[float, float, bool]:
    """Return ``(L1 distance of Betti functions, 2 * W1, bound holds)``."""
    l1 = betti_l1_distance(betti_function(pd1), betti_function(pd2))
    bound = 2.0 * wasserstein(pd1, pd2, 1.0)[0]
    return l1, bound, l1 <= bound + THEOREM_TOL


def random_diagram(n: int, seed: int, range: float = 1.0, dim: int = 0) -> PersistenceDiagram:
    """``n`` points with birth ~ U[0, range] and death ~ U[birth, range]."""
    if n < 0:
        raise ValidationError(f"n must be >= 0, got {n}")
    rng = np.random.default_rng(seed)
    births = rng.uniform(0.0, range, n)
    deaths = births + rng.uniform(0.0, 1.0, n) * (range - births)
    deaths = np.minimum(deaths, range)
    return PersistenceDiagram(dim, tuple(zip(births.tolist(), deaths.tolist())), cap=range)


@dataclass
class StabilityReport:
    trials: int = 0
    violations: int = 0
    max_ratio: float = 0.0
    # pairs where the bound without the factor 2 fails
    unscaled_violations: int = 0
    witness: Optional[dict] = None

    def record(self, pd1: PersistenceDiagram, pd2: PersistenceDiagram) -> None:
        l1, bound, holds = check_theorem(pd1, pd2)
        self.trials += 1
        if not holds:
            self.violations += 1
        if l1 > bound / 2.0 + THEOREM_TOL:
            self.unscaled_violations += 1
        if bound > 0:
            ratio = l1 / bound
        else:
            ratio = 0.0 if l1 <= THEOREM_TOL else math.inf
        if ratio > self.max_ratio or self.witness is None:
            self.max_ratio = max(self.max_ratio, ratio)
            self.witness = {
                "pd1": [list(p) for p in pd1.points],
                "pd2": [list(p) for p in pd2.points],
                "l1": l1,
                "bound": bound,
            }

    @property
    def holds(self) -> bool:
        return self.violations == 0

    def to_dict(self, witness: bool = True) -> dict:
        out = {
            "trials": self.trials,
            "violations": self.violations,
            "max_ratio": self.max_ratio,
            "unscaled_violations": self.unscaled_violations,
        }
        if witness:
            out["witness"] = self.witness
        return out

    def to_json(self, witness: bool = True) -> str:
        return json.dumps(self.to_dict(witness), indent=2)


def adversarial_pairs(rng: np.random.Generator, scale: float = 1.0) -> list[tuple[PersistenceDiagram, PersistenceDiagram]]:
    """Hand-shaped diagram pairs: nested, disjoint, diagonal-heavy, versus empty."""
    r = float(rng.uniform(0.05, 1.0)) * scale
    a, b = sorted(rng.uniform(0, scale, 2).tolist())
    c, d = sorted(rng.uniform(a, b, 2).tolist())
    e = float(rng.uniform(0, scale))
    diag = tuple((x, x) for x in rng.uniform(0, scale, 5).tolist())
    P = PersistenceDiagram
    return [
        (P(0, ((0.0, 2 * r),)), P(0, ())),
        (P(0, ((a, b),)), P(0, ((c, d),))),
        (P(0, ((0.0, r / 2),)), P(0, ((r, 2 * r),))),
        (P(0, diag + ((e, e + r / 3),)), P(0, diag[:2])),
        (P(0, ((a, b), (c, d))), P(0, ((a, d), (c, b)))),
    ]


def stability_audit(trials: int, max_points: int = 30, seed: int = 0) -> StabilityReport:
    """Check the bound on ``trials`` random diagram pairs plus adversarial templates.

    Trial ``t`` draws from a generator seeded with ``seed ^ t`` so any trial can
    be replayed on its own.
    """
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}")
    report = StabilityReport()
    for t in range(trials):
        rng = np.random.default_rng(seed ^ t)
        n1, n2 = rng.integers(0, max_points + 1, 2).tolist()
        s1, s2 = rng.integers(0, 2**31, 2).tolist()
        report.record(random_diagram(n1, s1), random_diagram(n2, s2))
    rng = np.random.default_rng([seed, 1])
    for _ in range(max(1, trials // 100)):
        for pd1, pd2 in adversarial_pairs(rng):
            report.record(pd1, pd2)
    return report


def audit_diagrams(diagrams: Sequence[PersistenceDiagram], max_pairs: Optional[int] = None) -> StabilityReport:
    """Check the bound on all pairs of (clamped) real diagrams."""
    clamped = [clamp(pd) for pd in diagrams]
    report = StabilityReport()
    for i in range(len(clamped)):
        for j in range(i + 1, len(clamped)):
            if max_pairs is not None and report.trials >= max_pairs:
                return report
            report.record(clamped[i], clamped[j])
    return report
