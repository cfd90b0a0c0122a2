"""Scattered-data interpolation with compactly supported radial kernels."""
from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import linalg
from scipy.spatial.distance import cdist, pdist, squareform
from scipy.stats import qmc

from .forms import ClosedForm, eval_form, form_hash, rescale
from .wu import ConstraintError, KernelSpec, kernel_form

__all__ = [
    "PointSet",
    "InterpolationReport",
    "SolverError",
    "TARGETS",
    "generate_points",
    "physical_form",
    "kernel_matrix",
    "spd_check",
    "interpolate",
    "eval_interpolant",
    "condition_estimate",
    "run_experiment",
]


class SolverError(np.linalg.LinAlgError):
    """The kernel matrix failed the positive definiteness check."""


@dataclass(frozen=True)
class PointSet:
    dimension: int
    points: np.ndarray
    generator: str = "halton"
    seed: int = 0

    def __post_init__(self):
        pts = np.array(self.points, dtype=float, ndmin=2)
        if pts.ndim != 2 or pts.shape[1] != self.dimension:
            raise ValueError(f"points must have shape (n, {self.dimension})")
        if np.any(pts < 0.0) or np.any(pts > 1.0):
            raise ValueError("points must lie in the unit cube")
        if len(pts) > 1 and np.min(pdist(pts)) == 0.0:
            raise ValueError("points must be pairwise distinct")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def subset(self, idx) -> "PointSet":
        return PointSet(self.dimension, self.points[idx], self.generator, self.seed)


def generate_points(d: int, n: int, generator: str = "halton", seed: int = 0, path=None) -> PointSet:
    """Deterministic point sets in ``[0, 1]**d``.

    ``halton`` uses the unscrambled sequence on the first ``d`` primes and
    skips its first ``seed`` points.  ``grid`` needs ``n = m**d``.  ``file``
    reads whitespace or comma separated coordinates from ``path``.
    """
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    if generator == "halton":
        sampler = qmc.Halton(d=d, scramble=False)
        if seed:
            sampler.fast_forward(int(seed))
        pts = sampler.random(n)
    elif generator == "grid":
        m = round(n ** (1.0 / d))
        if m**d != n:
            raise ValueError(f"grid generator needs n = m**{d}; got n = {n}")
        axis = np.linspace(0.0, 1.0, m) if m > 1 else np.array([0.5])
        pts = np.stack(np.meshgrid(*([axis] * d), indexing="ij"), axis=-1).reshape(-1, d)
    elif generator == "file":
        if path is None:
            raise ValueError("file generator needs a path")
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise OSError(f"cannot read points from {path}: {exc}") from exc
        rows = [ln.replace(",", " ").split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        pts = np.array(rows, dtype=float, ndmin=2)
        if pts.shape[1] != d:
            raise ValueError(f"{path}: expected {d} columns, found {pts.shape[1]}")
        if len(pts) < n:
            raise ValueError(f"{path}: only {len(pts)} points, {n} requested")
        pts = pts[:n]
    else:
        raise ValueError(f"unknown generator {generator!r}")
    return PointSet(d, pts, generator, seed)


def physical_form(spec: KernelSpec) -> ClosedForm:
    """The kernel's exact form rescaled so its support radius equals ``spec.scale``."""
    cf = kernel_form(spec)
    return rescale(cf, cf.support_end / spec.scale)


def _check_dims(spec: KernelSpec, pts: PointSet):
    if spec.family == "imq":
        raise ConstraintError("imq kernels are spectral only; no kernel matrix")
    if spec.dimension != pts.dimension:
        raise ConstraintError(f"kernel dimension {spec.dimension} != point dimension {pts.dimension}")


def kernel_matrix(spec: KernelSpec, pts: PointSet) -> np.ndarray:
    """``A[i, j] = phi(|x_i - x_j|)``, exactly symmetric."""
    _check_dims(spec, pts)
    cf = physical_form(spec)
    diag = float(eval_form(cf, 0.0))
    if len(pts) == 1:
        return np.array([[diag]])
    vals = np.asarray(eval_form(cf, pdist(pts.points)), dtype=float)
    A = squareform(vals)
    np.fill_diagonal(A, diag)
    return A


def spd_check(matrix) -> tuple[bool, float]:
    """Unpivoted Cholesky; returns ``(ok, min_pivot)``.

    A pivot at or below ``n * eps * max(diag)`` counts as failure, so exactly
    singular matrices (duplicate points) are reported as not positive definite.
    """
    A = np.array(matrix, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("square matrix required")
    if n == 0:
        return True, float("inf")
    floor = n * np.finfo(float).eps * max(float(np.max(np.diag(A))), 0.0)
    min_pivot = float("inf")
    for j in range(n):
        p = A[j, j]
        min_pivot = min(min_pivot, float(p))
        if not p > floor:
            return False, min_pivot
        col = A[j + 1 :, j] / np.sqrt(p)
        A[j + 1 :, j + 1 :] -= np.outer(col, col)
    return True, min_pivot


def interpolate(spec: KernelSpec, pts: PointSet, values, jitter: float = 0.0) -> np.ndarray:
    """Coefficients ``c`` with ``A c = values``."""
    A = kernel_matrix(spec, pts)
    y = np.asarray(values, dtype=float)
    if y.shape != (len(pts),):
        raise ValueError("one value per point required")
    if jitter:
        A = A + jitter * np.eye(len(A))
    ok, pivot = spd_check(A)
    if not ok:
        raise SolverError(f"kernel matrix not positive definite (pivot {pivot:.3e})")
    return linalg.cho_solve(linalg.cho_factor(A, lower=True), y)


def eval_interpolant(spec: KernelSpec, pts: PointSet, coefficients, x) -> np.ndarray | float:
    """``s(x) = sum_j c_j phi(|x - x_j|)``; ``x`` is one point or an ``(m, d)`` array."""
    cf = physical_form(spec)
    xx = np.asarray(x, dtype=float)
    single = xx.ndim == 1
    xx = np.atleast_2d(xx)
    if xx.shape[1] != pts.dimension:
        raise ConstraintError("evaluation points have the wrong dimension")
    vals = np.asarray(eval_form(cf, cdist(xx, pts.points)), dtype=float)
    out = vals @ np.asarray(coefficients, dtype=float)
    return float(out[0]) if single else out


def condition_estimate(A, iterations: int = 50) -> float:
    """``lambda_max / lambda_min`` by power iteration on ``A`` and ``A**-1``."""
    A = np.asarray(A, dtype=float)
    n = len(A)
    if n == 1:
        return 1.0
    factor = linalg.cho_factor(A, lower=True)
    v = np.ones(n) / np.sqrt(n)
    w = v.copy()
    hi = lo = 0.0
    for _ in range(iterations):
        v = A @ v
        hi = np.linalg.norm(v)
        v /= hi
        w = linalg.cho_solve(factor, w)
        lo = np.linalg.norm(w)
        w /= lo
    return float(hi * lo)


TARGETS = {
    "gaussian": lambda x: np.exp(-np.sum(np.square(x), axis=-1)),
    "cosine": lambda x: np.prod(np.cos(np.pi * x), axis=-1),
}


@dataclass
class InterpolationReport:
    kernel: KernelSpec
    n: int
    n_train: int
    n_test: int
    spd_ok: bool
    min_pivot: float
    condition_estimate: float
    rmse_train: float
    rmse_test: float
    max_residual: float
    target: str
    generator: str
    seed: int
    provenance: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "kernel": self.kernel.as_dict(),
            "n": self.n,
            "n_train": self.n_train,
            "n_test": self.n_test,
            "spd_ok": self.spd_ok,
            "min_pivot": self.min_pivot,
            "condition_estimate": self.condition_estimate,
            "rmse_train": self.rmse_train,
            "rmse_test": self.rmse_test,
            "max_residual": self.max_residual,
            "target": self.target,
            "generator": self.generator,
            "seed": self.seed,
            "provenance": dict(self.provenance),
            "timings": dict(self.timings),
        }

    def csv_row(self) -> dict:
        row = {}
        for key, val in self.as_dict().items():
            if isinstance(val, dict):
                for sub, v in val.items():
                    row[f"{key}.{sub}"] = v
            else:
                row[key] = val
        return row


def _rmse(a, b) -> float:
    return float(np.sqrt(np.mean(np.square(np.asarray(a) - np.asarray(b))))) if len(a) else 0.0


def _spec_from_config(cfg: dict) -> KernelSpec:
    k = cfg.get("kernel", cfg)
    return KernelSpec(
        family=k.get("family", "wu"),
        ell=k["ell"],
        k_or_alpha=k.get("k", k.get("k_or_alpha", 0)),
        scale=k.get("scale", 1),
        dimension=int(k.get("dimension", 1)),
    )


def write_json(path, payload: dict):
    try:
        Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write JSON report to {path}: {exc}") from exc


def write_csv(path, rows: list[dict]):
    fields = sorted({key for row in rows for key in row})
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=fields)
            writer.writeheader()
            writer.writerows(rows)
    except OSError as exc:
        raise OSError(f"cannot write CSV report to {path}: {exc}") from exc


def run_experiment(config: dict) -> InterpolationReport:
    """Fit on 80% of a point set and score on the rest.

    Every fifth generated point (index 4, 9, ...) is held out.  Config keys:
    ``kernel`` (family, ell, k, scale, dimension), ``n``, ``generator``,
    ``seed``, ``target`` and optional ``json`` / ``csv`` output paths.
    """
    spec = _spec_from_config(config)
    n = int(config.get("n", 100))
    generator = config.get("generator", "halton")
    seed = int(config.get("seed", 0))
    target = config.get("target", "gaussian")
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; choose from {sorted(TARGETS)}")
    fn = TARGETS[target]

    pts = generate_points(spec.dimension, n, generator, seed, config.get("points"))
    idx = np.arange(n)
    train, test = pts.subset(idx % 5 != 4), pts.points[idx % 5 == 4]

    t0 = time.perf_counter()
    A = kernel_matrix(spec, train)
    t1 = time.perf_counter()
    ok, pivot = spd_check(A)
    y = fn(train.points)
    if ok:
        coef = linalg.cho_solve(linalg.cho_factor(A, lower=True), y)
        t2 = time.perf_counter()
        fit = A @ coef
        rmse_train = _rmse(fit, y)
        max_res = float(np.max(np.abs(fit - y)))
        rmse_test = _rmse(eval_interpolant(spec, train, coef, test), fn(test)) if len(test) else 0.0
        cond = condition_estimate(A)
    else:
        t2 = time.perf_counter()
        rmse_train = rmse_test = max_res = cond = float("nan")

    cf = kernel_form(spec)
    report = InterpolationReport(
        kernel=spec,
        n=n,
        n_train=len(train),
        n_test=len(test),
        spd_ok=ok,
        min_pivot=pivot,
        condition_estimate=cond,
        rmse_train=rmse_train,
        rmse_test=rmse_test,
        max_residual=max_res,
        target=target,
        generator=generator,
        seed=seed,
        provenance={"route": "operators" if spec.family == "wu" else "wendland", "form_hash": form_hash(cf)},
        timings={"assemble_ms": 1e3 * (t1 - t0), "solve_ms": 1e3 * (t2 - t1)},
    )
    if config.get("json"):
        write_json(config["json"], report.as_dict())
    if config.get("csv"):
        write_csv(config["csv"], [report.csv_row()])
    return report
