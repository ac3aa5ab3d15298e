"""Training and prediction for radial-basis operator networks.

A model maps a sampled input function u (values at m fixed sensors) and a
query location y to a scalar output. The branch layer places Gaussian units
at K-means centers of the input samples, the trunk layer at centers of the
query locations, and the output weights couple every branch unit to every
trunk unit through a Kronecker product of the two feature vectors. Weights
come from a direct least-squares solve; a final affine calibration absorbs
any scale or offset the radial features cannot.

Three variants share this structure:

* ``rbon``   plain weighted sum of feature products
* ``nrbon``  feature products normalized to unit sum (convex combination)
* ``frbon``  branch inputs pass through a forward DFT first, so the branch
             clusters and distances live in the frequency domain
"""

import hashlib
import json
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial.distance import pdist

from .clustering import ClusterConfig, compute_spreads, embed_complex, kmeans
from .container import load_container, save_container
from .kernels import (
    DegenerateFeatureError,
    RbfLayer,
    feature_matrix,
    feature_product,
    normalize_features,
)
from .least_squares import (
    Calibration,
    average_weights,
    build_design_matrix,
    fit_calibration,
    min_norm_lstsq,
)

VARIANTS = ("rbon", "nrbon", "frbon")
WEIGHT_SOLVES = ("stacked", "per_query_average")

# Widest branch/trunk pair used in the PDE benchmark regime. Disable the cap
# (benchmark_cap=False) for applications that need wider layers.
MAX_BENCHMARK_UNITS = 15
MAX_BENCHMARK_WEIGHTS = 225


@dataclass(frozen=True)
class TrainingSet:
    """Sampled input functions, shared query locations, and target values.

    inputs   (n_functions, n_sensors) real matrix, row j = function j at the
             common sensor locations
    queries  (n_queries, query_dim) real matrix of output locations
    targets  (n_functions, n_queries) real matrix, entry (j, l) = value of
             output function j at query l
    """

    inputs: np.ndarray
    queries: np.ndarray
    targets: np.ndarray

    def __post_init__(self):
        inputs = np.asarray(self.inputs, dtype=float)
        queries = np.asarray(self.queries, dtype=float)
        targets = np.asarray(self.targets, dtype=float)
        if inputs.ndim != 2 or inputs.shape[0] < 2 or inputs.shape[1] < 1:
            raise ValueError(
                "inputs must be (n_functions, n_sensors) with at least "
                f"2 functions and 1 sensor, got shape {np.shape(self.inputs)}"
            )
        if queries.ndim != 2 or queries.shape[0] < 1:
            raise ValueError(
                f"queries must be a nonempty 2-d matrix, got shape {np.shape(self.queries)}"
            )
        if targets.shape != (inputs.shape[0], queries.shape[0]):
            raise ValueError(
                f"targets shape {np.shape(self.targets)} does not match "
                f"({inputs.shape[0]} functions, {queries.shape[0]} queries)"
            )
        if not np.all(np.isfinite(inputs)):
            raise ValueError("inputs contain non-finite values")
        if not np.all(np.isfinite(queries)):
            raise ValueError("queries contain non-finite values")
        if not np.all(np.isfinite(targets)):
            raise ValueError("targets contain non-finite values")
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "queries", queries)
        object.__setattr__(self, "targets", targets)

    @property
    def n_functions(self) -> int:
        return self.inputs.shape[0]

    @property
    def n_sensors(self) -> int:
        return self.inputs.shape[1]

    @property
    def n_queries(self) -> int:
        return self.queries.shape[0]

    @property
    def query_dim(self) -> int:
        return self.queries.shape[1]


@dataclass(frozen=True)
class ModelConfig:
    """Architecture and training knobs.

    weight_solve selects how the output weights are fit:

    * "stacked" (default) solves one least-squares system over every
      (function, query) pair jointly; with shared query locations this is
      the exact minimum-norm solution of the full system.
    * "per_query_average" solves an independent system per query location
      and averages the weight vectors element-wise. Each per-query solution
      is rank-one in the trunk index, so the average acts like a smoother;
      it is kept for comparison, not accuracy.

    benchmark_cap enforces the layer-width regime used by the PDE
    benchmarks (at most 15 units per layer, at most 225 weights); turn it
    off for wider models.
    """

    variant: str = "rbon"
    branch_units: int = 10
    trunk_units: int = 10
    branch_overlap: float = 1.0
    trunk_overlap: float = 1.0
    seed: int = 0
    restarts: int = 10
    weight_solve: str = "stacked"
    benchmark_cap: bool = True
    manual_branch_centers: Optional[np.ndarray] = None
    manual_trunk_centers: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.weight_solve not in WEIGHT_SOLVES:
            raise ValueError(
                f"weight_solve must be one of {WEIGHT_SOLVES}, got {self.weight_solve!r}"
            )
        if self.branch_units < 1 or self.trunk_units < 1:
            raise ValueError("branch_units and trunk_units must be at least 1")
        if self.benchmark_cap:
            if self.branch_units > MAX_BENCHMARK_UNITS or self.trunk_units > MAX_BENCHMARK_UNITS:
                raise ValueError(
                    f"layer width exceeds {MAX_BENCHMARK_UNITS} units; "
                    "set benchmark_cap=False for wider models"
                )
            if self.branch_units * self.trunk_units > MAX_BENCHMARK_WEIGHTS:
                raise ValueError(
                    f"weight count exceeds {MAX_BENCHMARK_WEIGHTS}; "
                    "set benchmark_cap=False for wider models"
                )
        if not (self.branch_overlap > 0 and self.trunk_overlap > 0):
            raise ValueError("overlap factors must be positive")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")

    def stable_hash(self) -> str:
        payload = {
            "variant": self.variant,
            "branch_units": self.branch_units,
            "trunk_units": self.trunk_units,
            "branch_overlap": self.branch_overlap,
            "trunk_overlap": self.trunk_overlap,
            "seed": self.seed,
            "restarts": self.restarts,
            "weight_solve": self.weight_solve,
        }
        text = json.dumps(payload, sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class TrainedModel:
    """Immutable result of train(); safe to share across threads."""

    variant: str
    branch_layer: RbfLayer
    trunk_layer: RbfLayer
    weights: np.ndarray
    calibration: Calibration
    sensor_count: int
    query_dim: int
    seed: int
    config_hash: str
    training_residual: float

    def __post_init__(self):
        expected = self.branch_layer.n_units * self.trunk_layer.n_units
        if self.weights.shape != (expected,):
            raise ValueError(
                f"weights shape {self.weights.shape} does not match "
                f"{self.branch_layer.n_units} x {self.trunk_layer.n_units} units"
            )

    @property
    def branch_units(self) -> int:
        return self.branch_layer.n_units

    @property
    def trunk_units(self) -> int:
        return self.trunk_layer.n_units


def to_frequency_domain(u: np.ndarray) -> np.ndarray:
    """Unnormalized forward DFT of the sensor samples.

    The inverse (numpy's ifft) recovers the input; branch centers learned
    from transformed inputs are complex vectors in the same convention.
    """
    u = np.asarray(u)
    if u.ndim != 1 or u.size < 1:
        raise ValueError(f"expected a nonempty 1-d sample vector, got shape {u.shape}")
    return np.fft.fft(u)


def _data_diameter(points: np.ndarray) -> float:
    """Largest pairwise distance, used as a spread fallback scale."""
    if np.iscomplexobj(points):
        points = embed_complex(points)
    if points.shape[0] < 2:
        return 0.0
    return float(np.max(pdist(points)))


def _fit_layer(points, units, overlap, seed, restarts, manual_centers):
    config = ClusterConfig(
        k=units,
        restarts=restarts,
        seed=seed,
        manual_centers=manual_centers,
    )
    result = kmeans(points, config)
    spreads = compute_spreads(
        result.centers,
        overlap=overlap,
        data_diameter=_data_diameter(points),
    )
    return RbfLayer(centers=result.centers, spreads=spreads)


def _normalize_rows(features: np.ndarray) -> np.ndarray:
    """Divide each feature row by its sum; degenerate rows are an error."""
    sums = features.sum(axis=1)
    bad = np.flatnonzero(np.abs(sums) < 1e-300)
    if bad.size:
        raise DegenerateFeatureError(
            f"feature sum underflowed for {bad.size} of {features.shape[0]} rows; "
            "inputs lie too far from every center"
        )
    return features / sums[:, None]


def _solve_stacked(branch_feats, trunk_feats, targets):
    """Minimum-norm weights for the full system over all (j, l) pairs.

    The stacked design factors as a Kronecker product of the branch and
    trunk feature matrices, and the pseudoinverse of a Kronecker product is
    the Kronecker product of pseudoinverses, so two small solves give the
    exact minimum-norm solution of the big system.
    """
    coeff, *_ = np.linalg.lstsq(branch_feats, targets, rcond=None)
    weight_matrix, *_ = np.linalg.lstsq(trunk_feats, coeff.T, rcond=None)
    return weight_matrix.T.ravel()


def _solve_per_query(branch_feats, trunk_feats, targets, normalized):
    """Independent minimum-norm solve per query, then element-wise average."""
    per_query = []
    for l in range(trunk_feats.shape[0]):
        design = build_design_matrix(branch_feats, trunk_feats[l], l, normalized=normalized)
        per_query.append(min_norm_lstsq(design.values, targets[:, l]))
    return average_weights(per_query)


def _check_live_features(features: np.ndarray, layer_name: str) -> None:
    if np.max(features) <= 0.0:
        raise DegenerateFeatureError(
            f"every {layer_name} feature underflowed to zero; "
            "spreads are too small for the data scale"
        )


def train(data: TrainingSet, config: ModelConfig) -> TrainedModel:
    """Fit branch/trunk layers by K-means and output weights by least squares.

    Deterministic for a fixed (data, config): layer seeds derive from
    config.seed and the least-squares path has no randomness.
    """
    branch_inputs = data.inputs
    if config.variant == "frbon":
        branch_inputs = np.fft.fft(data.inputs, axis=1)

    branch_seed, trunk_seed = (
        int(s) for s in np.random.SeedSequence(config.seed).generate_state(2, dtype=np.uint64)
    )
    branch_layer = _fit_layer(
        branch_inputs,
        config.branch_units,
        config.branch_overlap,
        branch_seed,
        config.restarts,
        config.manual_branch_centers,
    )
    trunk_layer = _fit_layer(
        data.queries,
        config.trunk_units,
        config.trunk_overlap,
        trunk_seed,
        config.restarts,
        config.manual_trunk_centers,
    )

    branch_feats = feature_matrix(branch_layer, branch_inputs)
    trunk_feats = feature_matrix(trunk_layer, data.queries)
    _check_live_features(branch_feats, "branch")
    _check_live_features(trunk_feats, "trunk")

    normalized = config.variant == "nrbon"
    if config.weight_solve == "stacked":
        if normalized:
            weights = _solve_stacked(
                _normalize_rows(branch_feats), _normalize_rows(trunk_feats), data.targets
            )
        else:
            weights = _solve_stacked(branch_feats, trunk_feats, data.targets)
    else:
        weights = _solve_per_query(branch_feats, trunk_feats, data.targets, normalized)

    raw = _raw_outputs(branch_feats, trunk_feats, weights, normalized)
    calibration = fit_calibration(raw.ravel(), data.targets.ravel())

    calibrated = calibration.apply(raw)
    residual = float(np.max(np.abs(calibrated - data.targets)))

    return TrainedModel(
        variant=config.variant,
        branch_layer=branch_layer,
        trunk_layer=trunk_layer,
        weights=weights,
        calibration=calibration,
        sensor_count=data.n_sensors,
        query_dim=data.query_dim,
        seed=config.seed,
        config_hash=config.stable_hash(),
        training_residual=residual,
    )


def _raw_outputs(branch_feats, trunk_feats, weights, normalized):
    """Uncalibrated outputs for every (function, query) pair, vectorized."""
    if normalized:
        branch_feats = _normalize_rows(branch_feats)
        trunk_feats = _normalize_rows(trunk_feats)
    weight_matrix = weights.reshape(branch_feats.shape[1], trunk_feats.shape[1])
    return branch_feats @ weight_matrix @ trunk_feats.T


def _branch_features_one(model: TrainedModel, u: np.ndarray) -> np.ndarray:
    u = np.asarray(u)
    if u.ndim != 1 or u.size != model.sensor_count:
        raise ValueError(
            f"expected a sensor vector of length {model.sensor_count}, got shape {u.shape}"
        )
    if model.variant == "frbon":
        u = to_frequency_domain(np.asarray(u, dtype=float))
    return feature_matrix(model.branch_layer, u[None, :])[0]


def predict_field(model: TrainedModel, u: np.ndarray, queries: np.ndarray) -> np.ndarray:
    """Evaluate one input function at many query locations.

    Branch features are computed once; each output is the weighted feature
    product at that query, passed through the affine calibration.
    """
    queries = np.asarray(queries, dtype=float)
    if queries.ndim != 2 or queries.shape[1] != model.query_dim:
        raise ValueError(
            f"expected queries of shape (n, {model.query_dim}), got {queries.shape}"
        )
    branch = _branch_features_one(model, u)
    trunk = feature_matrix(model.trunk_layer, queries)
    normalized = model.variant == "nrbon"
    out = np.empty(queries.shape[0])
    for l in range(queries.shape[0]):
        product = feature_product(branch, trunk[l])
        if normalized:
            product = normalize_features(product)
        out[l] = model.weights @ product
    return model.calibration.apply(out)


def predict(model: TrainedModel, u: np.ndarray, y: np.ndarray) -> float:
    """Evaluate one input function at a single query location."""
    y = np.atleast_1d(np.asarray(y, dtype=float))
    return float(predict_field(model, u, y[None, :])[0])


def predict_matrix(model: TrainedModel, inputs: np.ndarray, queries: np.ndarray) -> np.ndarray:
    """Evaluate many input functions at shared query locations.

    Returns an (n_functions, n_queries) matrix; agrees with predict_field
    row by row and exists so benchmark sweeps stay fast.
    """
    inputs = np.asarray(inputs, dtype=float)
    if inputs.ndim != 2 or inputs.shape[1] != model.sensor_count:
        raise ValueError(
            f"expected inputs of shape (n, {model.sensor_count}), got {inputs.shape}"
        )
    queries = np.asarray(queries, dtype=float)
    if queries.ndim != 2 or queries.shape[1] != model.query_dim:
        raise ValueError(
            f"expected queries of shape (n, {model.query_dim}), got {queries.shape}"
        )
    branch_inputs = np.fft.fft(inputs, axis=1) if model.variant == "frbon" else inputs
    branch_feats = feature_matrix(model.branch_layer, branch_inputs)
    trunk_feats = feature_matrix(model.trunk_layer, queries)
    raw = _raw_outputs(branch_feats, trunk_feats, model.weights, model.variant == "nrbon")
    return model.calibration.apply(raw)


def save_model(model: TrainedModel, destination) -> None:
    """Write the model so that load_model reproduces predictions exactly."""
    centers = model.branch_layer.centers
    arrays = {
        "branch_centers_real": np.real(centers),
        "branch_centers_imag": np.imag(centers),
        "branch_spreads": model.branch_layer.spreads,
        "trunk_centers": model.trunk_layer.centers,
        "trunk_spreads": model.trunk_layer.spreads,
        "weights": model.weights,
    }
    meta = {
        "kind": "model",
        "variant": model.variant,
        "sensor_count": model.sensor_count,
        "query_dim": model.query_dim,
        "branch_units": model.branch_units,
        "trunk_units": model.trunk_units,
        "scale": model.calibration.scale,
        "offset": model.calibration.offset,
        "seed": model.seed,
        "config_hash": model.config_hash,
        "training_residual": model.training_residual,
        "complex_branch": bool(model.branch_layer.is_complex),
    }
    save_container(destination, arrays, meta)


def load_model(source) -> TrainedModel:
    """Read a model written by save_model."""
    arrays, meta = load_container(source, expected_kind="model")
    real = arrays["branch_centers_real"]
    if meta["complex_branch"]:
        centers = real + 1j * arrays["branch_centers_imag"]
    else:
        centers = real
    branch_layer = RbfLayer(centers=centers, spreads=arrays["branch_spreads"])
    trunk_layer = RbfLayer(centers=arrays["trunk_centers"], spreads=arrays["trunk_spreads"])
    return TrainedModel(
        variant=meta["variant"],
        branch_layer=branch_layer,
        trunk_layer=trunk_layer,
        weights=arrays["weights"],
        calibration=Calibration(scale=meta["scale"], offset=meta["offset"]),
        sensor_count=meta["sensor_count"],
        query_dim=meta["query_dim"],
        seed=meta["seed"],
        config_hash=meta["config_hash"],
        training_residual=meta["training_residual"],
    )
