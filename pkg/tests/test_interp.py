import json
from fractions import Fraction as F

import numpy as np
import pytest

from wu_kernels.forms import eval_form
from wu_kernels.interp import (
    PointSet,
    SolverError,
    condition_estimate,
    eval_interpolant,
    generate_points,
    interpolate,
    kernel_matrix,
    physical_form,
    run_experiment,
    spd_check,
)
from wu_kernels.wu import ConstraintError, KernelSpec

W11 = KernelSpec("wu", 1, 1, 1, 3)


def test_grid_points():
    pts = generate_points(1, 3, "grid")
    assert pts.points.ravel().tolist() == [0.0, 0.5, 1.0]
    assert len(generate_points(2, 16, "grid")) == 16
    with pytest.raises(ValueError):
        generate_points(2, 10, "grid")


def test_halton_deterministic_and_distinct():
    a = generate_points(2, 100, "halton", seed=3)
    b = generate_points(2, 100, "halton", seed=3)
    assert np.array_equal(a.points, b.points)
    assert not np.array_equal(a.points, generate_points(2, 100, "halton", seed=4).points)
    diff = a.points[:, None, :] - a.points[None, :, :]
    dist = np.sqrt((diff**2).sum(-1))
    assert np.all(dist[~np.eye(100, dtype=bool)] > 0)


def test_halton_uses_prime_bases():
    pts = generate_points(3, 4, "halton").points
    assert pts[1].tolist() == [1 / 2, 1 / 3, 1 / 5]


def test_points_from_file(tmp_path):
    f = tmp_path / "pts.csv"
    f.write_text("# x,y\n0.1,0.2\n0.3,0.4\n0.5,0.9\n")
    pts = generate_points(2, 3, "file", path=f)
    assert pts.points[2].tolist() == [0.5, 0.9]
    with pytest.raises(OSError, match="missing.csv"):
        generate_points(2, 3, "file", path=tmp_path / "missing.csv")


def test_pointset_invariants():
    with pytest.raises(ValueError):
        PointSet(1, [[0.2], [0.2]])
    with pytest.raises(ValueError):
        PointSet(1, [[1.5]])


def test_kernel_matrix_basics():
    pts = PointSet(3, [[0, 0, 0], [0.3, 0.4, 0]])
    A = kernel_matrix(W11, pts)
    phi = physical_form(W11)
    assert A.shape == (2, 2)
    assert A[0, 0] == A[1, 1] == pytest.approx(float(eval_form(phi, 0.0)))
    assert A[0, 1] == A[1, 0] == pytest.approx(float(eval_form(phi, 0.5)))


def test_kernel_matrix_support_and_symmetry():
    spec = KernelSpec("wu", 2, F(3, 2), F(1, 4), 2)
    pts = generate_points(2, 80)
    A = kernel_matrix(spec, pts)
    assert np.array_equal(A, A.T)
    far = np.linalg.norm(pts.points[:, None] - pts.points[None], axis=-1) >= 0.25
    assert np.all(A[far] == 0.0)


def test_sparsity_matches_geometry():
    spec = KernelSpec("wu", 1, 1, F(1, 5), 2)
    pts = generate_points(2, 400)
    A = kernel_matrix(spec, pts)
    off = ~np.eye(400, dtype=bool)
    nonzero = np.mean(A[off] != 0)
    # chance that two uniform points in the unit square lie within 0.2
    r = 0.2
    predicted = np.pi * r**2 - 8 * r**3 / 3 + r**4 / 2
    assert nonzero == pytest.approx(predicted, rel=0.1)


def test_kernel_matrix_dimension_checks():
    with pytest.raises(ConstraintError):
        kernel_matrix(W11, generate_points(2, 5))
    with pytest.raises(ConstraintError):
        kernel_matrix(KernelSpec("imq", 0, 2, 1, 2), generate_points(2, 5))


def test_spd_check_examples():
    assert spd_check(np.eye(3)) == (True, 1.0)
    ok, _ = spd_check(kernel_matrix(W11, generate_points(3, 50)))
    assert ok
    A = kernel_matrix(W11, generate_points(3, 10))
    dup = np.vstack([np.hstack([A, A[:, :1]]), np.hstack([A[:1], A[:1, :1]])])
    assert spd_check(dup)[0] is False


def test_interpolate_examples():
    pts = generate_points(3, 30)
    assert np.all(interpolate(W11, pts, np.zeros(30)) == 0)
    single = PointSet(3, [[0.2, 0.2, 0.2]])
    coef = interpolate(W11, single, [5.0])
    assert coef[0] == pytest.approx(5.0 / (8 / 3))


def test_interpolant_reproduces_data():
    spec = KernelSpec("wu", 2, F(1, 2), 1, 2)
    pts = generate_points(2, 120)
    y = np.exp(-np.sum(pts.points**2, axis=1))
    coef = interpolate(spec, pts, y)
    A = kernel_matrix(spec, pts)
    assert np.max(np.abs(A @ coef - y)) <= 1e-10 * np.max(np.abs(y))
    assert np.max(np.abs(eval_interpolant(spec, pts, coef, pts.points) - y)) <= 1e-10
    assert isinstance(eval_interpolant(spec, pts, coef, pts.points[0]), float)


def test_interpolate_refuses_singular():
    A_pts = PointSet(1, [[0.0], [0.5]])
    with pytest.raises(SolverError):
        interpolate(KernelSpec("wu", 1, 0, 1, 1), A_pts, [1.0, 2.0], jitter=-10.0)


def test_condition_estimate():
    A = np.diag([1.0, 2.0, 10.0])
    assert condition_estimate(A) == pytest.approx(10.0, rel=1e-6)


def test_convergence_trend():
    cfg = {"kernel": {"family": "wu", "ell": 2, "k": "1/2", "dimension": 2}, "target": "gaussian"}
    small = run_experiment({**cfg, "n": 50})
    large = run_experiment({**cfg, "n": 200})
    assert large.rmse_test < small.rmse_test


def test_run_experiment_persists_deterministically(tmp_path):
    cfg = {
        "kernel": {"family": "wu", "ell": 3, "k": 1, "dimension": 3},
        "n": 60,
        "json": str(tmp_path / "a.json"),
        "csv": str(tmp_path / "a.csv"),
    }
    run_experiment(cfg)
    first = json.loads((tmp_path / "a.json").read_text())
    run_experiment({**cfg, "json": str(tmp_path / "b.json")})
    second = json.loads((tmp_path / "b.json").read_text())
    first.pop("timings")
    second.pop("timings")
    assert first == second
    assert first["kernel"] == {"family": "wu", "ell": "3", "k": "1", "scale": "1", "dimension": 3}
    assert first["spd_ok"] and first["rmse_train"] < 1e-10
    header = (tmp_path / "a.csv").read_text().splitlines()[0].split(",")
    assert {"n", "min_pivot", "rmse_test", "kernel.family", "timings.solve_ms"} <= set(header)


def test_run_experiment_validates_first(tmp_path):
    with pytest.raises(ConstraintError):
        run_experiment({"kernel": {"ell": 1, "k": 2, "dimension": 1}, "json": str(tmp_path / "x.json")})
    assert not (tmp_path / "x.json").exists()


def test_run_experiment_io_error_has_path(tmp_path):
    bad = tmp_path / "no" / "such" / "dir" / "r.json"
    with pytest.raises(OSError, match="r.json"):
        run_experiment({"kernel": {"ell": 1, "k": 1, "dimension": 3}, "n": 10, "json": str(bad)})


@pytest.mark.parametrize("ell,k,d", [(1, 1, 3), (2, F(1, 2), 2), (2, F(3, 2), 4), (3, 1, 3)])
def test_pd_suite(ell, k, d):
    rep = run_experiment({"kernel": {"ell": ell, "k": k, "dimension": d}, "n": 100})
    assert rep.spd_ok
