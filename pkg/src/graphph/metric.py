"""Node-pair distance matrices: hop count and effective resistance."""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import ComputationError, ValidationError
from .graph import Graph, connected_components

# eigenvalues below this fraction of the largest are treated as zero
PINV_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric, zero-diagonal matrix; ``inf`` marks pairs in different components."""

    entries: np.ndarray

    def __post_init__(self):
        d = np.array(self.entries, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise ValidationError(f"distance matrix must be square, got shape {d.shape}")
        if np.any(np.isnan(d)) or np.any(d < 0):
            raise ValidationError("distances must be non-negative and not NaN")
        if np.any(np.diag(d) != 0):
            raise ValidationError("distance matrix must have a zero diagonal")
        if not np.array_equal(d, d.T):
            raise ValidationError("distance matrix must be symmetric")
        d.setflags(write=False)
        object.__setattr__(self, "entries", d)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    @property
    def max_finite(self) -> float:
        finite = self.entries[np.isfinite(self.entries)]
        return float(finite.max()) if finite.size else 0.0

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def to_csv(self, path: str | os.PathLike) -> None:
        """Debug dump; infinities are written as ``inf``."""
        with open(path, "w") as fh:
            for row in self.entries:
                fh.write(",".join("inf" if np.isinf(x) else format(x, ".9g") for x in row) + "\n")


def shortest_path_matrix(g: Graph) -> DistanceMatrix:
    """Hop-count distances (unit edge weights)."""
    n = g.num_nodes
    if n == 0:
        return DistanceMatrix(np.zeros((0, 0)))
    rows = [i for i, j in g.edges] + [j for i, j in g.edges]
    cols = [j for i, j in g.edges] + [i for i, j in g.edges]
    adj = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    d = shortest_path(adj, method="D", directed=False, unweighted=True)
    return DistanceMatrix(d)


def resistance_distance_matrix(g: Graph) -> DistanceMatrix:
    """Effective resistance between every node pair, computed per component.

    Uses the Moore-Penrose pseudoinverse of each component's Laplacian,
    ``r(i, j) = L+[i, i] + L+[j, j] - 2 L+[i, j]``. Pairs in different
    components are at infinite distance.
    """
    n = g.num_nodes
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0.0)
    lap_full = np.diag(g.degrees().astype(float)) - g.adjacency_matrix()
    for cid, comp in enumerate(connected_components(g)):
        idx = np.array(sorted(comp))
        if idx.size == 1:
            continue
        lap = lap_full[np.ix_(idx, idx)]
        try:
            w, v = np.linalg.eigh(lap)
        except np.linalg.LinAlgError as exc:
            raise ComputationError(f"Laplacian eigendecomposition failed for component {cid}: {exc}") from exc
        keep = w > PINV_RTOL * w.max()
        pinv = (v[:, keep] / w[keep]) @ v[:, keep].T
        diag = np.diag(pinv)
        r = diag[:, None] + diag[None, :] - 2.0 * pinv
        r = np.maximum((r + r.T) / 2.0, 0.0)
        np.fill_diagonal(r, 0.0)
        if not np.all(np.isfinite(r)):
            raise ComputationError(f"non-finite resistance in component {cid}")
        d[np.ix_(idx, idx)] = r
    return DistanceMatrix(d)


def normalize(dm: DistanceMatrix) -> DistanceMatrix:
    """Divide finite entries by the largest finite entry; infinities are kept."""
    m = dm.max_finite
    if m == 0.0:
        return dm
    d = dm.entries.copy()
    finite = np.isfinite(d)
    d[finite] = d[finite] / m
    return DistanceMatrix(d)
