"""Smoke tests for the python bindings: shapes, metrics, and one oracle point."""

import math

import numpy as np

import biphoton as bp


def test_eval_single_matches_formula():
    p = bp.PhysicalParams()
    for dws, dwi in [(0.0, 0.0), (3.0, -4.0), (-12.5, 7.25)]:
        got = bp.eval_single(p, dws, dwi)
        want = math.exp(-((dws + dwi) ** 2) * p.tau**2 / 8.0) / complex(p.gamma3N / 2.0, -dwi)
        assert abs(got - want) < 1e-15 * abs(want) + 1e-300


def test_joint_spectrum_and_decomposition():
    p = bp.PhysicalParams()
    cfg = bp.MultiplexConfig([(30.0, 0.0), (-30.0, 0.0)])
    grid = bp.make_uniform_grid(-300.0, 300.0, 256)
    js = bp.build_joint_spectrum(p, cfg, grid, grid)
    assert js.normalized
    amp = np.asarray(js.amplitude)
    assert amp.shape == (256, 256)
    assert abs(js.weighted_norm() - 1.0) < 1e-10

    res = bp.decompose(js, 8)
    lam = np.asarray(res.eigenvalues)
    assert lam.shape == (8,)
    assert np.all(lam[:-1] >= lam[1:] - 1e-15)
    assert res.entropy_bits > 1.5
    assert res.pairs[0].first == 1 and res.pairs[0].second == 2
    assert abs(lam.sum() + res.tail_mass - 1.0) < 1e-10

    modes = np.asarray(res.signal_modes)
    assert modes.shape == (256, 8)


def test_metrics_helpers():
    assert abs(bp.entropy_bits([0.5, 0.5]) - 1.0) < 1e-12
    assert abs(bp.schmidt_number([0.25] * 4) - 4.0) < 1e-12
    pairs = bp.pair_degeneracies([0.3, 0.3, 0.2, 0.2])
    assert [(q.first, q.second) for q in pairs] == [(1, 2), (3, 4)]


def test_time_transform_conserves_mass():
    p = bp.PhysicalParams()
    grid = bp.make_uniform_grid(-300.0, 300.0, 256)
    js = bp.build_joint_spectrum(p, bp.MultiplexConfig.single(), grid, grid)
    res = bp.decompose(js, 1)
    tm = bp.to_time(res.idler_modes, grid, bp.default_time_window(p, grid))
    dens = np.abs(np.asarray(tm.modes)[:, 0]) ** 2
    mass = np.trapz(dens, np.asarray(tm.time_grid))
    assert abs(mass - 1.0) < 1e-5


def test_dynamics_oracle_point():
    p = bp.PhysicalParams()
    d = bp.DriveParams()
    numeric = bp.dsi_numeric(p, d, 0.0, 0.0)
    closed = bp.dsi_closed_form(p, d, 0.0, 0.0)
    assert abs(numeric - closed) / abs(closed) < 1e-6


def test_sweep_row_shape():
    spec = bp.SweepSpec()
    spec.grid = bp.GridSpec(-300.0, 300.0, 160)
    spec.steps = 2
    spec.dp1_start = 0.0
    spec.dp1_stop = 30.0
    rows = bp.run_sweep(spec)
    assert len(rows) == 3
    assert rows[0].in_window
    assert len(rows[0].lambdas) == 8


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} python smoke tests passed")


if __name__ == "__main__":
    main()
