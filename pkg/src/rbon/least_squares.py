"""Minimum-norm least-squares solves, weight averaging, output calibration."""

from dataclasses import dataclass

import numpy as np

from .kernels import feature_product, normalize_features


@dataclass(frozen=True)
class Calibration:
    """Affine output map applied to the raw network sum: scale * raw + offset."""

    scale: float
    offset: float

    def __post_init__(self):
        if not (np.isfinite(self.scale) and np.isfinite(self.offset)):
            raise ValueError("calibration parameters must be finite")

    def apply(self, raw):
        return self.scale * raw + self.offset


@dataclass(frozen=True)
class DesignMatrix:
    """Per-query design: column j is b(u_j) kron t(y_l). Shape NM x J."""

    values: np.ndarray
    query_index: int


def build_design_matrix(branch_features, trunk_feature, query_index, normalized=False):
    """Assemble Phi_l from precomputed branch features and one trunk vector."""
    B = np.atleast_2d(branch_features)
    cols = [feature_product(B[j], trunk_feature) for j in range(B.shape[0])]
    if normalized:
        cols = [normalize_features(c) for c in cols]
    return DesignMatrix(values=np.column_stack(cols), query_index=query_index)


def min_norm_lstsq(A, b):
    """Minimum-Euclidean-norm minimizer of ||A^T x - b||_2.

    Equivalent to pinv(A^T) @ b; singular values below
    max(p, q) * eps * sigma_max are treated as zero (numpy's rcond=None).
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float).ravel()
    if A.ndim != 2:
        raise ValueError("A must be a matrix")
    if A.shape[1] != b.shape[0]:
        raise ValueError(f"A is {A.shape} but b has length {b.shape[0]}")
    if not (np.isfinite(A).all() and np.isfinite(b).all()):
        raise ValueError("non-finite entries in least-squares system")
    x, *_ = np.linalg.lstsq(A.T, b, rcond=None)
    return x


def average_weights(weight_vectors):
    """Component-wise arithmetic mean of equally sized weight vectors."""
    if len(weight_vectors) == 0:
        raise ValueError("no weight vectors to average")
    arrs = [np.asarray(w, dtype=float).ravel() for w in weight_vectors]
    length = arrs[0].shape[0]
    if any(a.shape[0] != length for a in arrs):
        raise ValueError("weight vectors have mismatched lengths")
    return np.mean(arrs, axis=0)


def fit_calibration(raw, targets):
    """Closed-form simple regression of targets on raw network outputs."""
    raw = np.asarray(raw, dtype=float).ravel()
    targets = np.asarray(targets, dtype=float).ravel()
    if raw.shape[0] != targets.shape[0]:
        raise ValueError("raw and target lengths differ")
    if raw.shape[0] < 2:
        raise ValueError("need at least two points to fit a calibration")
    rm = raw.mean()
    tm = targets.mean()
    dr = raw - rm
    if np.var(raw) < 1e-14:
        return Calibration(scale=1.0, offset=tm - rm)
    scale = float(dr @ (targets - tm) / (dr @ dr))
    return Calibration(scale=scale, offset=float(tm - scale * rm))
