"""PDE solvers against independent oracles, plus dataset assembly wiring."""

import numpy as np
import pytest

from rbon.benchmarks import (
    BenchmarkConfig,
    GridSpec,
    beam_config,
    beam_displacement,
    beam_forcing,
    build_benchmark_bundle,
    burgers_config,
    cospi,
    default_config,
    enumerate_id_parameters,
    ood_parameters,
    query_points,
    sensor_locations,
    sinpi,
    solve_beam,
    solve_burgers,
    solve_wave,
    solve_wave_from_initial,
    split_indices,
    wave_config,
    wave_initial,
)
from rbon.benchmarks import _burgers_coefficients, _burgers_evaluate, _burgers_tables


# trig helpers and grid ------------------------------------------------------


def test_sinpi_cospi_exact_at_integers():
    ks = np.arange(-6, 7, dtype=float)
    assert np.all(sinpi(ks) == 0.0)
    np.testing.assert_array_equal(cospi(ks), (-1.0) ** ks)


def test_sinpi_cospi_match_library_elsewhere():
    xs = np.linspace(-3.3, 3.3, 57)
    np.testing.assert_allclose(sinpi(xs), np.sin(np.pi * xs), atol=1e-14)
    np.testing.assert_allclose(cospi(xs), np.cos(np.pi * xs), atol=1e-14)


def test_grid_spec():
    grid = GridSpec(t_final=1.0, length=2.0, nt=5, nx=9)
    assert grid.dt == pytest.approx(0.25)
    assert grid.dx == pytest.approx(0.25)
    np.testing.assert_allclose(grid.t, np.linspace(0, 1, 5))
    np.testing.assert_allclose(grid.x, np.linspace(0, 2, 9))
    with pytest.raises(ValueError):
        GridSpec(t_final=0.0, length=1.0, nt=5, nx=5)
    with pytest.raises(ValueError):
        GridSpec(t_final=1.0, length=1.0, nt=2, nx=5)


# wave solver ----------------------------------------------------------------


def test_wave_initial_hand_values():
    # at x = L/2 the bump is exactly 2 and the ramp adds a/2
    assert wave_initial(3.0, 0.5, 1.0) == pytest.approx(2.0 + 1.5, abs=1e-15)
    # x = 0.25, a = 1, L = 1: 2 exp(-1/16) + 1/4
    expected = 2.0 * np.exp(-0.0625) + 0.25
    assert wave_initial(1.0, 0.25, 1.0) == pytest.approx(expected, abs=1e-15)
    with pytest.raises(ValueError):
        wave_initial(1.0, 0.5, 0.0)


def test_wave_keeps_initial_slice_and_endpoints():
    config = wave_config()
    field = solve_wave(2.0, config)
    nt = config.grid.nt
    np.testing.assert_array_equal(field.values[0], wave_initial(2.0, config.grid.x, 1.0))
    np.testing.assert_array_equal(field.values[:, 0], np.full(nt, field.values[0, 0]))
    np.testing.assert_array_equal(field.values[:, -1], np.full(nt, field.values[0, -1]))


def test_wave_reproduces_standing_wave_at_unit_courant():
    # u0 = sin(pi x), c = 1: exact solution sin(pi x) cos(pi t); at
    # c dt / dx = 1 the leapfrog scheme reproduces it to rounding error
    grid = GridSpec(t_final=1.0, length=1.0, nt=201, nx=201)
    field = solve_wave_from_initial(lambda x: np.sin(np.pi * x), grid, wave_speed=1.0)
    exact = np.sin(np.pi * grid.x)[None, :] * np.cos(np.pi * grid.t)[:, None]
    assert np.max(np.abs(field.values - exact)) <= 1e-12


def test_wave_second_order_convergence():
    def error_at(nt, nx):
        grid = GridSpec(t_final=1.0, length=1.0, nt=nt, nx=nx)
        field = solve_wave_from_initial(lambda x: np.sin(np.pi * x), grid, wave_speed=1.0)
        exact = np.sin(np.pi * grid.x)[None, :] * np.cos(np.pi * grid.t)[:, None]
        return np.max(np.abs(field.values - exact))

    # both runs at Courant number 0.5; halving h must quarter the error
    coarse = error_at(201, 101)
    fine = error_at(401, 201)
    ratio = coarse / fine
    assert 3.5 <= ratio <= 4.5


def test_wave_rejects_cfl_violation():
    grid = GridSpec(t_final=1.0, length=1.0, nt=3, nx=201)
    with pytest.raises(ValueError):
        solve_wave_from_initial(lambda x: np.sin(np.pi * x), grid, wave_speed=1.0)


# viscous solver -------------------------------------------------------------


def test_burgers_zero_initial_state_stays_zero():
    grid = GridSpec(t_final=1.0, length=1.0, nt=5, nx=65)
    field = solve_burgers(lambda x: np.zeros_like(x), 0.1, grid)
    assert np.all(field.values == 0.0)


def test_burgers_boundary_values_are_zero():
    grid = GridSpec(t_final=1.0, length=1.0, nt=9, nx=65)
    field = solve_burgers(lambda x: 2.0 * sinpi(x), 0.1, grid)
    assert np.all(field.values[:, 0] == 0.0)
    assert np.all(field.values[:, -1] == 0.0)


def test_burgers_initial_slice_matches_input():
    grid = GridSpec(t_final=1.0, length=1.0, nt=3, nx=129)
    field = solve_burgers(lambda x: 2.0 * sinpi(x), 0.1, grid)
    assert np.max(np.abs(field.values[0] - 2.0 * sinpi(grid.x))) <= 1e-7


def test_burgers_small_amplitude_matches_heat_linearization():
    # for tiny amplitude the equation linearizes to the heat equation, so
    # u ~ a sin(pi x) exp(-pi^2 nu t)
    nu = 0.1
    grid = GridSpec(t_final=1.0, length=1.0, nt=5, nx=129)
    field = solve_burgers(lambda x: 0.01 * sinpi(x), nu, grid)
    mid = slice(32, 97)  # keep sin(pi x) away from zero
    for row, t in enumerate(grid.t):
        linear = 0.01 * sinpi(grid.x[mid]) * np.exp(-np.pi**2 * nu * t)
        rel = np.abs(field.values[row, mid] - linear) / np.abs(linear)
        assert np.max(rel) < 0.01


def test_burgers_matches_finite_difference_solver():
    # independent explicit time-stepping cross-check at a = 2
    nu = 0.1
    nx = 401
    xs = np.linspace(0.0, 1.0, nx)
    dx = xs[1] - xs[0]
    steps_per_half = int(np.ceil(0.5 / (0.4 * dx**2 / (2.0 * nu))))
    dt = 0.5 / steps_per_half
    u = 2.0 * np.sin(np.pi * xs)
    snapshots = {}
    for step in range(1, 2 * steps_per_half + 1):
        diffusion = nu * (u[2:] - 2.0 * u[1:-1] + u[:-2]) / dx**2
        advection = u[1:-1] * (u[2:] - u[:-2]) / (2.0 * dx)
        u = u.copy()
        u[1:-1] += dt * (diffusion - advection)
        if step == steps_per_half:
            snapshots[0.5] = u.copy()
        elif step == 2 * steps_per_half:
            snapshots[1.0] = u.copy()

    grid = GridSpec(t_final=1.0, length=1.0, nt=3, nx=nx)
    field = solve_burgers(lambda x: 2.0 * sinpi(x), nu, grid)
    for row, t in ((1, 0.5), (2, 1.0)):
        scale = np.max(np.abs(field.values[row]))
        for xi in (100, 200, 300):
            rel = abs(field.values[row, xi] - snapshots[t][xi]) / scale
            assert rel < 1e-3


def test_burgers_series_satisfies_the_pde():
    # numeric residual u_t + u u_x - nu u_xx on the series solution itself,
    # using high-order stencils so the check is limited by the solution,
    # not the differencing
    nu = 0.1
    coeffs = _burgers_coefficients(lambda x: 2.0 * sinpi(x), nu)
    h = 1.0 / 4096.0
    dt = 1e-4
    t0 = 0.3
    residuals = []
    for x0 in (0.25, 0.5, 0.75):
        stencil = x0 + h * np.arange(-2, 3)
        sin_t, cos_t = _burgers_tables(stencil)
        u = _burgers_evaluate(coeffs, [t0 - dt, t0, t0 + dt], sin_t, cos_t, nu)
        u_t = (u[2, 2] - u[0, 2]) / (2.0 * dt)
        row = u[1]
        u_x = (-row[4] + 8.0 * row[3] - 8.0 * row[1] + row[0]) / (12.0 * h)
        u_xx = (-row[4] + 16.0 * row[3] - 30.0 * row[2] + 16.0 * row[1] - row[0]) / (
            12.0 * h**2
        )
        residuals.append(abs(u_t + row[2] * u_x - nu * u_xx))
    assert max(residuals) < 1e-6


def test_burgers_validation():
    grid = GridSpec(t_final=1.0, length=1.0, nt=3, nx=17)
    with pytest.raises(ValueError):
        solve_burgers(lambda x: sinpi(x), 0.0, grid)
    with pytest.raises(ValueError):
        solve_burgers(lambda x: sinpi(x), 0.1, GridSpec(t_final=1.0, length=2.0, nt=3, nx=17))
    with pytest.raises(ValueError):
        # huge negative initial state overflows the transformed variable
        solve_burgers(lambda x: -1e6 * np.ones_like(x), 0.1, grid)


# beam solution --------------------------------------------------------------


def test_beam_forcing_hand_values():
    assert beam_forcing(3.0, 0.5, 0.0, 1.0) == 0.0
    # sin(10 t) = 1 at t = pi/20, and exp(0) = 1
    assert beam_forcing(1.0, 0.05, np.pi / 20.0, 0.0) == pytest.approx(-99.0, abs=1e-12)
    expected = 2.0 * np.exp(-1.0) * (-99.0) * np.sin(3.0)
    assert beam_forcing(2.0, 1.0, 0.3, 1.0) == pytest.approx(expected, abs=1e-12)


def test_beam_displacement_hand_value():
    assert beam_displacement(1.0, 0.05, np.pi / 20.0, 0.0) == pytest.approx(1.0, abs=1e-15)


def test_beam_displacement_satisfies_pde_symbolically():
    sympy = pytest.importorskip("sympy")
    a, k, t, x = sympy.symbols("a k t x", positive=True)
    u = a * sympy.exp(-k * x) * sympy.sin(10 * t)
    forcing = a * sympy.exp(-k * x) * (-99) * sympy.sin(10 * t)
    residual = k**-4 * sympy.diff(u, x, 4) + sympy.diff(u, t, 2) - forcing
    assert sympy.simplify(residual) == 0


def test_beam_displacement_satisfies_pde_numerically():
    # hand-derived derivatives: u_tt = -100 u, u_xxxx = k^4 u, EI = k^-4
    rng = np.random.default_rng(90)
    for _ in range(30):
        a = rng.uniform(0.1, 10.0)
        k = rng.uniform(0.05, 2.0)
        t = rng.uniform(0.0, 1.0)
        x = rng.uniform(0.0, 1.0)
        u = a * np.exp(-k * x) * np.sin(10.0 * t)
        u_tt = -100.0 * u
        u_xxxx = k**4 * u
        residual = k**-4 * u_xxxx + u_tt - beam_forcing(a, k, t, x)
        assert abs(residual) < 1e-9 * max(abs(u), 1.0)
        assert beam_displacement(a, k, t, x) == pytest.approx(u, abs=1e-15)


def test_solve_beam_field():
    config = beam_config()
    field = solve_beam(1.0, 0.05, config)
    assert np.all(field.values[0] == 0.0)  # sin(0) = 0
    grid = config.grid
    assert field.values[10, 3] == beam_displacement(1.0, 0.05, grid.t[10], grid.x[3])


# parameter enumeration and splits -------------------------------------------


def test_id_parameter_counts():
    assert enumerate_id_parameters(wave_config()).size == 3001
    assert enumerate_id_parameters(wave_config(id_step=0.01)).size == 301
    assert enumerate_id_parameters(burgers_config()).size == 491
    assert enumerate_id_parameters(beam_config()).size == 200


def test_id_parameters_hit_both_endpoints():
    for config in (wave_config(), burgers_config(), beam_config()):
        params = enumerate_id_parameters(config)
        assert params[0] == pytest.approx(config.id_start, abs=1e-12)
        assert params[-1] == pytest.approx(config.id_stop, abs=1e-12)
        steps = np.diff(params)
        np.testing.assert_allclose(steps, config.id_step, atol=1e-12)


def test_ood_parameters():
    config = wave_config()
    params = ood_parameters(config)
    assert params.size == 100
    assert params[0] == 5.0
    assert params[-1] == 5.5


def test_split_sizes_and_cover():
    train, val, test = split_indices(3001, seed=0)
    assert (train.size, val.size, test.size) == (2401, 300, 300)
    merged = np.concatenate([train, val, test])
    assert merged.size == 3001
    np.testing.assert_array_equal(np.sort(merged), np.arange(3001))
    # each split comes back sorted
    for part in (train, val, test):
        assert np.all(np.diff(part) > 0)


def test_split_determinism():
    a = split_indices(500, seed=7)
    b = split_indices(500, seed=7)
    for left, right in zip(a, b):
        np.testing.assert_array_equal(left, right)
    c = split_indices(500, seed=8)
    assert not np.array_equal(a[0], c[0])


def test_split_rejects_tiny_populations():
    with pytest.raises(ValueError):
        split_indices(1, seed=0)


def test_default_config_dispatch():
    assert default_config("wave").family == "wave"
    assert default_config("beam").family == "beam"
    with pytest.raises(ValueError):
        default_config("plasma")


def test_config_validation():
    grid = GridSpec(t_final=1.0, length=1.0, nt=9, nx=9)
    with pytest.raises(ValueError):
        BenchmarkConfig(family="wave", grid=grid, id_start=1.0, id_stop=0.5,
                        id_step=0.1, ood_start=5.0, ood_stop=5.5)
    with pytest.raises(ValueError):
        BenchmarkConfig(family="wave", grid=grid, id_start=0.5, id_stop=1.0,
                        id_step=0.1, ood_start=5.0, ood_stop=5.5, query_nt=99)


def test_sensor_locations_shapes():
    wave = wave_config()
    locs = sensor_locations(wave)
    assert locs.shape == (128, 1)
    assert locs.min() == 0.0 and locs.max() == wave.grid.length
    beam = beam_config()
    grid_locs = sensor_locations(beam)
    assert grid_locs.shape == (256, 2)
    assert grid_locs[:, 0].max() == pytest.approx(beam.grid.t_final)
    assert grid_locs[:, 1].max() == pytest.approx(beam.grid.length)


def test_query_points_cover_the_subgrid():
    config = beam_config()  # queries the full 64 x 64 grid
    points = query_points(config)
    assert points.shape == (64 * 64, 2)
    tt, xx = np.meshgrid(config.grid.t, config.grid.x, indexing="ij")
    np.testing.assert_array_equal(points, np.column_stack([tt.ravel(), xx.ravel()]))


# bundle assembly ------------------------------------------------------------

_SMALL_WAVE = BenchmarkConfig(
    family="wave",
    grid=GridSpec(t_final=1.0, length=1.0, nt=65, nx=33),
    id_start=1.0,
    id_stop=4.0,
    id_step=0.1,
    ood_start=5.0,
    ood_stop=5.5,
    ood_count=10,
    sensor_count=16,
    query_nt=8,
    query_nx=8,
)

_SMALL_BURGERS = BenchmarkConfig(
    family="burgers",
    grid=GridSpec(t_final=1.0, length=1.0, nt=9, nx=33),
    id_start=0.1,
    id_stop=5.1,
    id_step=0.25,
    ood_start=3.5,
    ood_stop=4.5,
    ood_count=5,
    sensor_count=16,
    query_nt=8,
    query_nx=8,
)


def test_beam_bundle_counts_and_rows():
    config = beam_config()
    bundle = build_benchmark_bundle(config, seed=0)
    assert bundle.train.n_functions == 160
    assert bundle.validation.n_functions == 20
    assert bundle.id_test.n_functions == 20
    assert bundle.ood_test.n_functions == 100
    # every split shares the same queries
    np.testing.assert_array_equal(bundle.train.queries, query_points(config))
    np.testing.assert_array_equal(bundle.ood_test.queries, query_points(config))
    # recompute one training row from scratch
    a = bundle.train_params[3]
    sensors = sensor_locations(config)
    np.testing.assert_array_equal(
        bundle.train.inputs[3], beam_forcing(a, config.decay_id, sensors[:, 0], sensors[:, 1])
    )
    expected = beam_displacement(
        a, config.decay_id, config.grid.t[:, None], config.grid.x[None, :]
    ).ravel()
    np.testing.assert_array_equal(bundle.train.targets[3], expected)
    # OOD rows use the other decay rate
    b = bundle.ood_params[7]
    np.testing.assert_array_equal(
        bundle.ood_test.inputs[7],
        beam_forcing(b, config.decay_ood, sensors[:, 0], sensors[:, 1]),
    )


def test_wave_bundle_rows_match_solver():
    bundle = build_benchmark_bundle(_SMALL_WAVE, seed=0)
    xs = sensor_locations(_SMALL_WAVE)[:, 0]
    t_idx = np.round(np.linspace(0, 64, 8)).astype(int)
    x_idx = np.round(np.linspace(0, 32, 8)).astype(int)
    a = bundle.id_test_params[2]
    np.testing.assert_array_equal(bundle.id_test.inputs[2], wave_initial(a, xs, 1.0))
    field = solve_wave(a, _SMALL_WAVE)
    np.testing.assert_array_equal(
        bundle.id_test.targets[2], field.values[np.ix_(t_idx, x_idx)].ravel()
    )


def test_burgers_bundle_rows_match_solver():
    bundle = build_benchmark_bundle(_SMALL_BURGERS, seed=0)
    xs = sensor_locations(_SMALL_BURGERS)[:, 0]
    a = bundle.train_params[0]
    np.testing.assert_array_equal(bundle.train.inputs[0], a * sinpi(xs))
    t_idx = np.round(np.linspace(0, 8, 8)).astype(int)
    x_idx = np.round(np.linspace(0, 32, 8)).astype(int)
    field = solve_burgers(lambda x: a * sinpi(x), _SMALL_BURGERS.viscosity,
                          _SMALL_BURGERS.grid)
    np.testing.assert_allclose(
        bundle.train.targets[0], field.values[np.ix_(t_idx, x_idx)].ravel(), atol=1e-12
    )
    # OOD family is the polynomial bump, not a scaled sine
    b = bundle.ood_params[1]
    np.testing.assert_array_equal(bundle.ood_test.inputs[1], b * xs * (xs - 1.0))


def test_bundle_splits_partition_the_parameters():
    bundle = build_benchmark_bundle(_SMALL_WAVE, seed=3)
    merged = np.concatenate(
        [bundle.train_params, bundle.validation_params, bundle.id_test_params]
    )
    np.testing.assert_array_equal(np.sort(merged), enumerate_id_parameters(_SMALL_WAVE))


def test_bundle_deterministic_per_seed():
    a = build_benchmark_bundle(_SMALL_WAVE, seed=1)
    b = build_benchmark_bundle(_SMALL_WAVE, seed=1)
    np.testing.assert_array_equal(a.train.inputs, b.train.inputs)
    np.testing.assert_array_equal(a.train_params, b.train_params)
    c = build_benchmark_bundle(_SMALL_WAVE, seed=2)
    assert not np.array_equal(a.train_params, c.train_params)
