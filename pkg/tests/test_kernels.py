"""Gaussian units, feature matrices, Kronecker products, normalization."""

import numpy as np
import pytest

from rbon.kernels import (
    DegenerateFeatureError,
    RbfLayer,
    feature_matrix,
    feature_product,
    gaussian_rbf,
    layer_features,
    normalize_features,
)

EXP_HALF = 0.6065306597126334  # exp(-1/2) to full double precision


def test_gaussian_rbf_hand_value():
    # ||(3,4) - 0|| = 5 with spread 5: exp(-25 / 50) = exp(-1/2)
    assert gaussian_rbf([3.0, 4.0], [0.0, 0.0], 5.0) == pytest.approx(EXP_HALF, abs=1e-15)


def test_gaussian_rbf_is_one_at_center():
    rng = np.random.default_rng(0)
    for _ in range(10):
        c = rng.normal(size=4)
        assert gaussian_rbf(c, c, float(rng.uniform(0.1, 3.0))) == 1.0


def test_gaussian_rbf_monotone_decreasing_in_distance():
    rng = np.random.default_rng(1)
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    values = [gaussian_rbf(r * direction, np.zeros(3), 1.3) for r in np.linspace(0, 5, 40)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_gaussian_rbf_complex_uses_modulus_distance():
    x = np.array([1.0 + 1.0j])
    c = np.array([0.0 + 0.0j])
    # |1 + i|^2 = 2
    expected = np.exp(-2.0 / (2.0 * 1.5**2))
    value = gaussian_rbf(x, c, 1.5)
    assert isinstance(value, float)
    assert value == pytest.approx(expected, abs=1e-15)


def test_gaussian_rbf_rejects_nonpositive_spread():
    with pytest.raises(ValueError):
        gaussian_rbf([1.0], [0.0], 0.0)
    with pytest.raises(ValueError):
        gaussian_rbf([1.0], [0.0], -2.0)


def test_gaussian_rbf_rejects_dimension_mismatch():
    with pytest.raises(ValueError):
        gaussian_rbf([1.0, 2.0], [0.0], 1.0)


def test_layer_validation():
    with pytest.raises(ValueError):
        RbfLayer(centers=np.zeros((3, 2)), spreads=np.ones(2))
    with pytest.raises(ValueError):
        RbfLayer(centers=np.zeros((2, 2)), spreads=np.array([1.0, 0.0]))


def test_layer_properties():
    layer = RbfLayer(centers=np.zeros((4, 3)), spreads=np.ones(4))
    assert layer.n_units == 4
    assert layer.input_dim == 3
    assert not layer.is_complex
    clayer = RbfLayer(centers=np.zeros((2, 3), dtype=complex), spreads=np.ones(2))
    assert clayer.is_complex


def test_feature_matrix_matches_scalar_kernel():
    rng = np.random.default_rng(2)
    centers = rng.normal(size=(5, 3))
    spreads = rng.uniform(0.5, 2.0, size=5)
    layer = RbfLayer(centers=centers, spreads=spreads)
    X = rng.normal(size=(7, 3))
    F = feature_matrix(layer, X)
    assert F.shape == (7, 5)
    for i in range(7):
        for k in range(5):
            assert F[i, k] == pytest.approx(
                gaussian_rbf(X[i], centers[k], spreads[k]), abs=1e-14
            )


def test_layer_features_is_first_row_of_matrix():
    rng = np.random.default_rng(3)
    layer = RbfLayer(centers=rng.normal(size=(4, 2)), spreads=rng.uniform(0.5, 2, 4))
    x = rng.normal(size=2)
    np.testing.assert_array_equal(layer_features(layer, x), feature_matrix(layer, x[None, :])[0])


def test_feature_matrix_rejects_mismatches():
    layer = RbfLayer(centers=np.zeros((2, 3)), spreads=np.ones(2))
    with pytest.raises(ValueError):
        feature_matrix(layer, np.zeros((1, 4)))
    with pytest.raises(ValueError):
        feature_matrix(layer, np.zeros((1, 3), dtype=complex))
    clayer = RbfLayer(centers=np.zeros((2, 3), dtype=complex), spreads=np.ones(2))
    with pytest.raises(ValueError):
        feature_matrix(clayer, np.zeros((1, 3)))


def test_feature_product_is_branch_major():
    # entry for (branch i, trunk k) must sit at flat index i * N + k
    rng = np.random.default_rng(4)
    b = rng.uniform(0.1, 1.0, size=3)
    t = rng.uniform(0.1, 1.0, size=4)
    product = feature_product(b, t)
    assert product.shape == (12,)
    for i in range(3):
        for k in range(4):
            assert product[i * 4 + k] == pytest.approx(b[i] * t[k], abs=1e-15)


def test_feature_product_rejects_empty():
    with pytest.raises(ValueError):
        feature_product(np.array([]), np.array([1.0]))
    with pytest.raises(ValueError):
        feature_product(np.array([1.0]), np.array([]))


def test_normalize_features_sums_to_one():
    rng = np.random.default_rng(5)
    for _ in range(10):
        v = rng.uniform(0.01, 1.0, size=8)
        w = normalize_features(v)
        assert w.sum() == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(w * v.sum(), v, atol=1e-12)


def test_normalize_features_degenerate_raises():
    with pytest.raises(DegenerateFeatureError):
        normalize_features(np.zeros(5))
