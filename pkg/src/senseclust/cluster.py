"""From-scratch agglomerative clustering and affinity propagation.

Both algorithms are deterministic: merge ties break on the lowest original
point indices, affinity propagation uses no randomness, and the optional
oscillation-breaking jitter is a fixed function of the point indices.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

LINKAGES = ("ward", "average", "complete")
METRICS = ("euclidean", "manhattan", "cosine")
ALGORITHMS = ("agglomerative", "affinity_propagation")


@dataclass
class ClusteringConfig:
    """Algorithm tag plus its hyperparameters.

    ``preference=None`` means the affinity-propagation preference is set to
    the median off-diagonal similarity; an explicit numeric preference must
    lie in [-20, 5].
    """

    algorithm: str = "agglomerative"
    n_clusters: int = 2
    linkage: str = "ward"
    metric: str = "euclidean"
    damping: float = 0.5
    preference: float | None = None
    max_iter: int = 200
    convergence_window: int = 15

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.linkage not in LINKAGES:
            raise ValueError(f"unknown linkage {self.linkage!r}")
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}")
        if not 1 <= self.n_clusters <= 14:
            raise ValueError(f"n_clusters must be in 1..14, got {self.n_clusters}")
        if self.linkage == "ward" and self.metric != "euclidean":
            raise ValueError("ward linkage requires the euclidean metric")
        if not 0.5 <= self.damping < 1.0:
            raise ValueError(f"damping must be in [0.5, 1), got {self.damping}")
        if self.preference is not None and not -20.0 <= self.preference <= 5.0:
            raise ValueError(f"preference must be in [-20, 5], got {self.preference}")
        if self.max_iter <= 0 or self.convergence_window <= 0:
            raise ValueError("max_iter and convergence_window must be positive")


@dataclass
class ClusterResult:
    labels: np.ndarray
    k: int
    exemplars: list[int] | None = None
    converged: bool | None = None
    merge_trace: list[tuple[int, int, float]] | None = None
    jitter_applied: bool = False


def pairwise_distances(points: np.ndarray, metric: str) -> np.ndarray:
    """Dense symmetric distance matrix with a zero diagonal.

    Cosine distance is 1 - cos(x, y); a zero vector is at distance 1 from
    every other point.
    """
    X = np.asarray(points, dtype=np.float64)
    if metric == "euclidean":
        diff = X[:, None, :] - X[None, :, :]
        return np.sqrt((diff * diff).sum(axis=-1))
    if metric == "manhattan":
        diff = X[:, None, :] - X[None, :, :]
        return np.abs(diff).sum(axis=-1)
    if metric == "cosine":
        gram = X @ X.T
        norms = np.sqrt(np.diag(gram).copy())
        zero = norms == 0.0
        safe = np.where(zero, 1.0, norms)
        d = 1.0 - gram / np.outer(safe, safe)
        d[zero, :] = 1.0
        d[:, zero] = 1.0
        np.fill_diagonal(d, 0.0)
        return np.maximum(d, 0.0)
    raise ValueError(f"unknown metric {metric!r}")


def _squared_euclidean(points: np.ndarray) -> np.ndarray:
    X = np.asarray(points, dtype=np.float64)
    diff = X[:, None, :] - X[None, :, :]
    return (diff * diff).sum(axis=-1)


def dendrogram(points, linkage: str, metric: str = "euclidean"
               ) -> list[tuple[int, int, float]]:
    """Full bottom-up merge sequence via Lance-Williams updates.

    Returns n-1 merges ``(a, b, distance)`` where a < b are the lowest
    original point indices of the two merged clusters. Among minimum-distance
    pairs the one with the lexicographically smallest (a, b) wins, which
    makes the sequence deterministic. For ward linkage the recorded distance
    is the Lance-Williams value on the squared-euclidean scale (initialized
    to ||x_i - x_j||^2 between singletons).
    """
    if linkage not in LINKAGES:
        raise ValueError(f"unknown linkage {linkage!r}")
    if linkage == "ward":
        if metric != "euclidean":
            raise ValueError("ward linkage requires the euclidean metric")
        D = _squared_euclidean(points)
    else:
        D = pairwise_distances(points, metric)
    n = D.shape[0]
    if n == 0:
        raise ValueError("no points to cluster")
    D = D.copy()
    np.fill_diagonal(D, np.inf)
    active = np.ones(n, dtype=bool)
    sizes = np.ones(n, dtype=np.int64)
    merges: list[tuple[int, int, float]] = []
    for _ in range(n - 1):
        # Row-major argmin implements the lowest-(a, b) tie rule because each
        # active slot index equals its cluster's minimum original index.
        flat = int(np.argmin(D))
        a, b = divmod(flat, n)
        if a > b:
            a, b = b, a
        dist = float(D[a, b])
        merges.append((a, b, dist))
        others = active.copy()
        others[a] = others[b] = False
        idx = np.flatnonzero(others)
        if idx.size:
            if linkage == "complete":
                D[a, idx] = np.maximum(D[a, idx], D[b, idx])
            elif linkage == "average":
                sa, sb = sizes[a], sizes[b]
                D[a, idx] = (sa * D[a, idx] + sb * D[b, idx]) / (sa + sb)
            else:  # ward
                sa, sb, sk = sizes[a], sizes[b], sizes[idx]
                D[a, idx] = ((sa + sk) * D[a, idx] + (sb + sk) * D[b, idx]
                             - sk * dist) / (sa + sb + sk)
            D[idx, a] = D[a, idx]
        sizes[a] += sizes[b]
        active[b] = False
        D[b, :] = np.inf
        D[:, b] = np.inf
    return merges


def cut_merges(merges: list[tuple[int, int, float]], n: int, k: int) -> np.ndarray:
    """Labels after applying the first n-k merges.

    Clusters are numbered by ascending minimum original index.
    """
    members: dict[int, list[int]] = {i: [i] for i in range(n)}
    for a, b, _ in merges[: n - k]:
        members[a].extend(members[b])
        del members[b]
    labels = np.empty(n, dtype=np.int64)
    for label, rep in enumerate(sorted(members)):
        labels[members[rep]] = label
    return labels


def agglomerative(points, cfg: ClusteringConfig) -> ClusterResult:
    """Bottom-up clustering to cfg.n_clusters clusters (clamped to n)."""
    X = np.asarray(points, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("points must be a non-empty 2-D array")
    n = X.shape[0]
    k = cfg.n_clusters
    if k > n:
        warnings.warn(f"n_clusters={k} exceeds {n} points; clamping to {n}",
                      stacklevel=2)
        k = n
    merges = dendrogram(X, cfg.linkage, cfg.metric)
    labels = cut_merges(merges, n, k)
    return ClusterResult(labels=labels, k=k, merge_trace=merges[: n - k])


def _median_off_diagonal(S: np.ndarray) -> float:
    n = S.shape[0]
    mask = ~np.eye(n, dtype=bool)
    return float(np.median(S[mask]))


def _ap_messages(S: np.ndarray, damping: float, max_iter: int, window: int
                 ) -> tuple[np.ndarray, bool]:
    """Responsibility/availability passing; returns (diag(A+R) criterion, converged)."""
    n = S.shape[0]
    A = np.zeros((n, n))
    R = np.zeros((n, n))
    rows = np.arange(n)
    last_indicator = None
    stable = 0
    converged = False
    for _ in range(max_iter):
        # responsibilities: r(i,k) = s(i,k) - max_{k' != k} (a(i,k') + s(i,k'))
        AS = A + S
        best_idx = np.argmax(AS, axis=1)
        best = AS[rows, best_idx]
        AS[rows, best_idx] = -np.inf
        second = np.max(AS, axis=1)
        Rnew = S - best[:, None]
        Rnew[rows, best_idx] = S[rows, best_idx] - second
        R = damping * R + (1.0 - damping) * Rnew
        # availabilities: a(i,k) = min(0, r(k,k) + sum_{i' not in {i,k}} max(0, r(i',k)))
        Rp = np.maximum(R, 0.0)
        Rp[rows, rows] = R[rows, rows]
        colsum = Rp.sum(axis=0)
        Anew = colsum[None, :] - Rp
        diag = Anew[rows, rows].copy()
        Anew = np.minimum(Anew, 0.0)
        Anew[rows, rows] = diag
        A = damping * A + (1.0 - damping) * Anew
        indicator = (A[rows, rows] + R[rows, rows]) > 0
        if last_indicator is not None and np.array_equal(indicator, last_indicator):
            stable += 1
        else:
            stable = 1
            last_indicator = indicator
        if stable >= window:
            converged = True
            break
    return A[rows, rows] + R[rows, rows], converged


def _labels_from_exemplars(S: np.ndarray, criterion: np.ndarray
                           ) -> tuple[np.ndarray, list[int]]:
    n = S.shape[0]
    exemplars = np.flatnonzero(criterion > 0)
    if exemplars.size == 0:
        # Fully degenerate message fixed point (e.g. identical points): fall
        # back to the single best self-candidate, lowest index on ties.
        exemplars = np.array([int(np.argmax(criterion))])
    assign = np.argmax(S[:, exemplars], axis=1)
    assign[exemplars] = np.arange(exemplars.size)
    return assign.astype(np.int64), [int(e) for e in exemplars]


def _deterministic_jitter(n: int, scale: float) -> np.ndarray:
    grid = np.arange(n, dtype=np.float64)
    return scale * (grid[:, None] * n + grid[None, :]) / max(n * n - 1, 1)


def affinity_propagation(points, cfg: ClusteringConfig) -> ClusterResult:
    """Exemplar-based clustering by message passing.

    Similarity is negative squared euclidean distance; the preference (self
    similarity) is cfg.preference, or the median off-diagonal similarity when
    unset. If message passing fails to converge and the similarity matrix
    contains exact ties, one retry is made with a tiny deterministic
    index-dependent jitter added to break the symmetry; the retry is recorded
    on the result. Non-convergence still yields the final-iteration labeling.
    """
    X = np.asarray(points, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("points must be a non-empty 2-D array")
    n = X.shape[0]
    if n == 1:
        return ClusterResult(labels=np.zeros(1, dtype=np.int64), k=1,
                             exemplars=[0], converged=True)
    S = -_squared_euclidean(X)
    pref = cfg.preference if cfg.preference is not None else _median_off_diagonal(S)
    S_run = S.copy()
    np.fill_diagonal(S_run, pref)

    criterion, converged = _ap_messages(S_run, cfg.damping, cfg.max_iter,
                                        cfg.convergence_window)
    jitter_applied = False
    if not converged:
        upper = S_run[np.triu_indices(n, k=1)]
        has_ties = np.unique(upper).size < upper.size
        if has_ties:
            spread = float(S_run.max() - S_run.min())
            S_run = S_run + _deterministic_jitter(n, 1e-12 * max(spread, 1.0))
            criterion, converged = _ap_messages(S_run, cfg.damping, cfg.max_iter,
                                                cfg.convergence_window)
            jitter_applied = True
    labels, exemplars = _labels_from_exemplars(S_run, criterion)
    return ClusterResult(labels=labels, k=len(exemplars), exemplars=exemplars,
                         converged=converged, jitter_applied=jitter_applied)


def cluster(points, cfg: ClusteringConfig) -> ClusterResult:
    """Dispatch on cfg.algorithm."""
    if cfg.algorithm == "agglomerative":
        return agglomerative(points, cfg)
    return affinity_propagation(points, cfg)
