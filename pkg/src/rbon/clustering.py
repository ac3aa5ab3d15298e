"""K-means center selection and RBF spread computation.

Lloyd's algorithm with k-means++ seeding, restarted several times; the restart
with the smallest within-cluster sum of squares wins. Complex data (frequency
domain branch inputs) is clustered in the interleaved re/im embedding, which
preserves the modulus norm exactly.
"""

from dataclasses import dataclass, field

import numpy as np

SPREAD_FLOOR = 1e-8


@dataclass
class ClusterConfig:
    k: int
    restarts: int = 10
    max_iterations: int = 300
    convergence_tol: float = 1e-9
    seed: int = 0
    manual_centers: np.ndarray | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


@dataclass
class ClusterResult:
    centers: np.ndarray
    assignments: np.ndarray
    wcss: float
    wcss_history: list = field(default_factory=list)


def embed_complex(Z):
    """C^m -> R^(2m), interleaving re/im; preserves squared modulus distances."""
    Z = np.atleast_2d(Z)
    out = np.empty((Z.shape[0], 2 * Z.shape[1]))
    out[:, 0::2] = Z.real
    out[:, 1::2] = Z.imag
    return out


def unembed_complex(X):
    X = np.atleast_2d(X)
    return X[:, 0::2] + 1j * X[:, 1::2]


def _sq_dist(points, centers):
    return ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)


def _kmeanspp_init(points, k, rng):
    n = len(points)
    idx = [int(rng.integers(n))]
    d2 = ((points - points[idx[0]]) ** 2).sum(axis=1)
    while len(idx) < k:
        total = d2.sum()
        if total <= 0:
            break  # every point duplicates a chosen center
        nxt = int(rng.choice(n, p=d2 / total))
        idx.append(nxt)
        d2 = np.minimum(d2, ((points - points[nxt]) ** 2).sum(axis=1))
    return points[idx].copy()


def lloyd(points, k, rng, max_iterations=300, tol=1e-9):
    """One seeded Lloyd run. Returns (centers, assignments, wcss, wcss_history).

    wcss is recorded after each assignment step and must never increase; an
    increase would mean the update logic is wrong, so it raises.
    """
    centers = _kmeanspp_init(points, k, rng)
    history = []
    assignments = None
    for _ in range(max_iterations):
        d2 = _sq_dist(points, centers)
        assignments = d2.argmin(axis=1)
        wcss = float(d2[np.arange(len(points)), assignments].sum())
        if history and wcss > history[-1] * (1 + 1e-12) + 1e-12:
            raise RuntimeError(
                f"wcss increased from {history[-1]} to {wcss}; Lloyd step is broken"
            )
        history.append(wcss)
        new_centers = centers.copy()
        for i in range(len(centers)):
            mask = assignments == i
            if mask.any():
                new_centers[i] = points[mask].mean(axis=0)
            else:
                # dead unit: restart it at the point currently worst served
                far = int(d2[np.arange(len(points)), assignments].argmax())
                new_centers[i] = points[far]
        shift = np.sqrt(((new_centers - centers) ** 2).sum(axis=1)).max()
        centers = new_centers
        if shift < tol:
            break
    d2 = _sq_dist(points, centers)
    assignments = d2.argmin(axis=1)
    wcss = float(d2[np.arange(len(points)), assignments].sum())
    history.append(wcss)
    return centers, assignments, wcss, history


def kmeans(points, config):
    """Best-of-restarts k-means; deterministic given config.seed."""
    pts = np.atleast_2d(np.asarray(points))
    was_complex = np.iscomplexobj(pts)
    if was_complex:
        pts = embed_complex(pts)
    pts = pts.astype(float, copy=False)
    if len(pts) < 2:
        raise ValueError("k-means requires at least two points")

    if config.manual_centers is not None:
        centers = np.atleast_2d(np.asarray(config.manual_centers))
        if np.iscomplexobj(centers):
            centers = embed_complex(centers)
        centers = centers.astype(float, copy=False)
        history = []
    else:
        seeds = np.random.SeedSequence(config.seed).spawn(config.restarts)
        best = None
        for i, ss in enumerate(seeds):
            rng = np.random.default_rng(ss)
            centers_i, _, wcss_i, hist_i = lloyd(
                pts, config.k, rng, config.max_iterations, config.convergence_tol
            )
            if best is None or wcss_i < best[0]:
                best = (wcss_i, centers_i, hist_i)
        centers, history = best[1], best[2]
        # coincident centers are redundant units; keep one of each
        _, keep = np.unique(centers, axis=0, return_index=True)
        centers = centers[np.sort(keep)]

    d2 = _sq_dist(pts, centers)
    assignments = d2.argmin(axis=1)
    wcss = float(d2[np.arange(len(pts)), assignments].sum())
    if was_complex:
        centers = unembed_complex(centers)
    return ClusterResult(centers=centers, assignments=assignments, wcss=wcss,
                         wcss_history=history)


def compute_spreads(centers, overlap=1.0, data_diameter=None):
    """sigma_i = overlap * distance to the nearest distinct center.

    With a single center (or all centers coincident) there is no inter-center
    distance; fall back to half the data diameter when the caller provides it,
    else to the floor.
    """
    if overlap <= 0:
        raise ValueError("overlap must be positive")
    C = np.atleast_2d(np.asarray(centers))
    if np.iscomplexobj(C):
        C = embed_complex(C)
    n = len(C)
    fallback = (data_diameter / 2.0) if data_diameter is not None else 0.0
    if n == 1:
        return np.array([max(fallback * overlap, SPREAD_FLOOR)])
    d2 = _sq_dist(C, C)
    np.fill_diagonal(d2, np.inf)
    d2[d2 == 0] = np.inf
    nearest = np.sqrt(d2.min(axis=1))
    spreads = np.where(np.isfinite(nearest), nearest * overlap, fallback * overlap)
    return np.maximum(spreads, SPREAD_FLOOR)
