"""Radial Fourier transforms of Wu kernels.

``F_d phi(r) = 2**(-(d-2)/2) * int_0^R phi(t) t**(d-1) H_{(d-2)/2}(t**2 r**2 / 4) dt``
is the d-variate Fourier transform (unitary convention) of the radial
function ``phi``; for ``d = 1`` it is the cosine transform
``sqrt(2/pi) * int_0^R phi(t) cos(t r) dt``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np
from scipy import optimize
from scipy.special import gamma as sgamma

from .forms import ClosedForm, eval_form
from .special import ConvergenceError, NumericProfile, bessel_zero, get_profile, h_nu
from .wu import ConstraintError, _check_lk

__all__ = [
    "DecayReport",
    "SIGNALS",
    "fourier_wu",
    "hankel_numeric",
    "hankel_transform",
    "f_transform",
    "imq_transform",
    "decay_check",
    "isometry_check",
]

_GRADE_LEVELS = 30
_GRADE_NODES = 16
_PANEL_NODES = 32
_MAX_BLOCK = 4_000_000


def fourier_wu(ell, k, r):
    """Closed Fourier transform ``d_l * H_{l+1/2}(r**2/4)**2`` in dimension ``2k+1``.

    Valid for real ``0 <= k <= l``; the value does not depend on ``k``.
    """
    ell, k = float(ell), float(k)
    if not 0.0 <= k <= ell:
        raise ConstraintError("fourier_wu requires 0 <= k <= ell")
    d_l = sgamma(ell + 1.0) ** 2 * math.sqrt(2.0 * math.pi) / 2.0
    rr = np.asarray(r, dtype=float)
    h = h_nu(ell + 0.5, rr * rr / 4.0)
    out = d_l * np.square(h)
    return out if np.ndim(out) else float(out)


def imq_transform(s, r):
    """Inverse multiquadric ``(1 + r**2)**(-s)``, the Sobolev kernel spectrum."""
    if s <= 0:
        raise ConstraintError("imq_transform requires s > 0")
    out = np.power(1.0 + np.square(np.asarray(r, dtype=float)), -float(s))
    return out if np.ndim(out) else float(out)


# ---------------------------------------------------------------------------
# panel quadrature


def _panel_rule(a: float, b: float, npanel: int, grade: tuple[bool, bool], breaks=()):
    """Gauss-Legendre nodes/weights on ``[a, b]`` with geometric grading at ends.

    ``breaks`` are interior points where the integrand may have a kink; the
    panels are laid out on each sub-interval separately, graded on both sides.
    """
    cuts = [a, *sorted(x for x in breaks if a < x < b), b]
    nodes, weights = [], []
    xg, wg = np.polynomial.legendre.leggauss(_PANEL_NODES)
    xs, ws = np.polynomial.legendre.leggauss(_GRADE_NODES)
    for i, (lo, hi) in enumerate(zip(cuts[:-1], cuts[1:])):
        gl = grade[0] if i == 0 else True
        gr = grade[1] if i == len(cuts) - 2 else True
        m = max(2, math.ceil(npanel * (hi - lo) / (b - a)))
        edges = np.linspace(lo, hi, m + 1)
        h = edges[1] - edges[0]
        pieces = [(edges[j], edges[j + 1], xg, wg) for j in range(m)]
        if gl:
            pieces[0] = None
            pts = lo + h * 2.0 ** -np.arange(_GRADE_LEVELS, -1, -1)
            pieces += [(lo, pts[0], xs, ws)] + [(p, q, xs, ws) for p, q in zip(pts[:-1], pts[1:])]
        if gr:
            pieces[m - 1] = None
            pts = hi - h * 2.0 ** -np.arange(0, _GRADE_LEVELS + 1)
            pieces += [(p, q, xs, ws) for p, q in zip(pts[:-1], pts[1:])] + [(pts[-1], hi, xs, ws)]
        for piece in pieces:
            if piece is None:
                continue
            p, q, x, w = piece
            half = 0.5 * (q - p)
            nodes.append(p + half * (x + 1.0))
            weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)


def _kernel(nu: float, t: np.ndarray, r: np.ndarray) -> np.ndarray:
    if nu == -0.5:
        return np.cos(np.outer(t, r)) / math.sqrt(math.pi)
    x = np.outer(t, r)
    return h_nu(nu, x * x / 4.0)


def hankel_transform(
    func: Callable[[np.ndarray], np.ndarray],
    d: float,
    r,
    upper: float,
    profile: NumericProfile | None = None,
    *,
    breaks=(),
    grade: tuple[bool, bool] = (True, True),
):
    """``F_d`` of a radial function given as a vectorized callable on ``[0, upper]``.

    The integrand is assumed to vanish (or be negligible) beyond ``upper``.
    Panels are refined by doubling until successive results agree.
    """
    profile = get_profile(profile)
    d = float(d)
    if d <= 0:
        raise ValueError("dimension must be positive")
    rr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(rr < 0):
        raise ValueError("r must be nonnegative")
    nu = (d - 2.0) / 2.0
    pref = 2.0 ** (-nu)
    oscill = float(rr.max(initial=0.0)) * upper / (2.0 * math.pi)
    npanel = max(4, 2 * math.ceil(oscill))
    prev = None
    for _level in range(profile.max_refinement):
        t, w = _panel_rule(0.0, upper, npanel, grade, breaks)
        wf = w * np.asarray(func(t), dtype=float) * t ** (d - 1.0)
        cur = np.empty_like(rr)
        step = max(1, _MAX_BLOCK // max(1, t.size))
        for j in range(0, rr.size, step):
            cur[j : j + step] = wf @ _kernel(nu, t, rr[j : j + step])
        cur *= pref
        if prev is not None:
            scale = max(1.0, float(np.max(np.abs(cur))))
            if np.max(np.abs(cur - prev)) <= profile.abs_tol * scale:
                break
        prev = cur
        npanel *= 2
    else:
        raise ConvergenceError(f"hankel quadrature did not settle after {profile.max_refinement} doublings")
    return cur if np.ndim(r) else float(cur[0])


def hankel_numeric(cf: ClosedForm, d: float, r, profile: NumericProfile | None = None):
    """``F_d`` of an exact compactly supported form, by panel Gauss-Legendre."""
    if not isinstance(cf, ClosedForm):
        raise TypeError("hankel_numeric expects a ClosedForm; use hankel_transform for callables")
    upper = float(cf.support_end)
    return hankel_transform(lambda t: eval_form(cf, t), d, r, upper, profile)


def f_transform(func, mu: float, r, upper: float, profile: NumericProfile | None = None, *, damping: float = 0.0):
    """``F_mu phi(r) = int_0^inf phi(t) t**mu H_mu(t r) dt`` for an f-domain ``phi``.

    Evaluated as ``F_d`` of ``rho -> phi(rho**2/2)`` at ``sqrt(2r)`` with
    ``d = 2mu + 2``; ``upper`` truncates the radial variable ``rho``.  A
    positive ``damping`` multiplies the integrand by ``exp(-damping*rho**2)``,
    which blurs the result by a Gaussian of variance ``2*damping`` and makes
    slowly decaying integrands usable away from discontinuities.
    """
    def g(rho):
        out = np.asarray(func(rho * rho / 2.0), dtype=float)
        return out * np.exp(-damping * rho * rho) if damping else out

    rr = np.sqrt(2.0 * np.asarray(r, dtype=float))
    return hankel_transform(g, 2.0 * mu + 2.0, rr, upper, profile)


# ---------------------------------------------------------------------------
# Sobolev decay


@dataclass
class DecayReport:
    ell: float
    k: float
    s: float
    grid: list[float]
    weighted_values: list[float]
    sup: float
    slope_estimate: float
    target_slope: float
    envelope_r: list[float] = field(default_factory=list)
    envelope_values: list[float] = field(default_factory=list)
    passed: bool = False

    def as_dict(self) -> dict:
        return asdict(self)


def _envelope(ell: float, k: float, r_lo: float, r_hi: float):
    """Maxima of the transform between consecutive zeros in ``[r_lo, r_hi]``."""
    nu = ell + 0.5
    zeros = []
    m = 1
    while True:
        z = bessel_zero(nu, m)
        if z > r_hi:
            break
        zeros.append(z)
        m += 1
    rs, vals = [], []
    for a, b in zip(zeros[:-1], zeros[1:]):
        if a < r_lo:
            continue
        res = optimize.minimize_scalar(
            lambda x: -fourier_wu(ell, k, x), bounds=(a, b), method="bounded", options={"xatol": 1e-10}
        )
        rs.append(float(res.x))
        vals.append(float(-res.fun))
    return np.array(rs), np.array(vals)


def decay_check(ell, k, s, r_max: float = 100.0, n: int = 400, slope_tol: float = 0.2) -> DecayReport:
    """Compare the Wu spectrum with ``(1 + r**2)**(-s)`` on ``[0, r_max]``.

    ``s`` must satisfy ``k + 1/2 < s <= l + 1``.  The envelope slope is a
    log-log fit through the local maxima in the upper decade of the grid.
    """
    ell, k, s = float(ell), float(k), float(s)
    if not 0.0 <= k <= ell:
        raise ConstraintError("decay_check requires 0 <= k <= ell")
    if not (k + 0.5 < s <= ell + 1.0):
        raise ConstraintError(f"s={s} outside ({k + 0.5}, {ell + 1.0}]")
    if n < 2 or r_max <= 0:
        raise ValueError("need n >= 2 and r_max > 0")
    grid = np.concatenate([[0.0], np.geomspace(min(1e-2, r_max / 10), r_max, n - 1)])
    weighted = fourier_wu(ell, k, grid) / imq_transform(s, grid)
    sup = float(np.max(weighted))
    env_r, env_v = _envelope(ell, k, r_max / 10.0, r_max)
    target = -(2.0 * ell + 2.0)
    if env_r.size >= 2:
        slope = float(np.polyfit(np.log(env_r), np.log(env_v), 1)[0])
    else:
        slope = float("nan")
    ok = math.isfinite(sup) and math.isfinite(slope)
    if ok and s == ell + 1.0:
        ok = abs(slope - target) <= slope_tol
    return DecayReport(
        ell=ell,
        k=k,
        s=s,
        grid=grid.tolist(),
        weighted_values=weighted.tolist(),
        sup=sup,
        slope_estimate=slope,
        target_slope=target,
        envelope_r=env_r.tolist(),
        envelope_values=env_v.tolist(),
        passed=bool(ok),
    )


# ---------------------------------------------------------------------------
# native-space isometry, d = 1, k = 0


def _gaussian(x):
    return np.exp(-np.square(x))


def _mexican_hat(x):
    x2 = np.square(x)
    return (1.0 - x2) * np.exp(-x2 / 2.0)


# name -> (callable or None for the kernel factor itself, effective half-width, frequency cutoff)
SIGNALS = {
    "gaussian": (_gaussian, 7.0, 40.0),
    "mexican-hat": (_mexican_hat, 10.0, 40.0),
    "kernel": (None, 1.0, 300.0),
    "zero": (lambda x: np.zeros_like(np.asarray(x, dtype=float)), 1.0, 1.0),
}


def _factor(ell: int):
    return lambda x: np.where(np.abs(x) < 1.0, np.power(np.clip(1.0 - np.square(x), 0.0, None), ell), 0.0)


def isometry_check(ell, g_id: str = "gaussian", profile: NumericProfile | None = None) -> float:
    """Relative gap between ``||P*g||`` in the native space and ``||g||_2``.

    ``P = (1 - x**2)_+**l`` is the convolution square root of ``phi_{l,0}``.
    ``f = P*g`` and its cosine transform are both computed by quadrature;
    the native norm is ``(2 pi)**(-1/2) int |f^|**2 / phi^``.
    """
    profile = get_profile(profile)
    ell, _ = _check_lk(ell, 0)
    if g_id not in SIGNALS:
        raise KeyError(f"unknown signal {g_id!r}; choose from {sorted(SIGNALS)}")
    g, width, omega_max = SIGNALS[g_id]
    P = _factor(ell)
    if g is None:
        g = P
    xg, wg = np.polynomial.legendre.leggauss(64)

    def g_norm2():
        t, w = _panel_rule(0.0, width, 8, (False, g is P))
        return 2.0 * float(w @ np.square(g(t)))

    norm_g2 = g_norm2()
    if norm_g2 == 0.0:
        return 0.0

    def f(x):
        # (P*g)(x) = int P(y) g(x - y) dy over the overlap of the supports
        x = np.atleast_1d(np.asarray(x, dtype=float))
        lo = np.full_like(x, -1.0)
        hi = np.ones_like(x)
        if g is P:
            lo = np.maximum(lo, x - 1.0)
            hi = np.minimum(hi, x + 1.0)
        half = np.clip(0.5 * (hi - lo), 0.0, None)
        y = (0.5 * (hi + lo))[:, None] + half[:, None] * xg
        return half * ((P(y) * g(x[:, None] - y)) @ wg)

    upper = width + 1.0
    grid, gw = _panel_rule(0.0, omega_max, max(8, math.ceil(omega_max / 2.0)), (False, False))
    fhat = hankel_transform(f, 1.0, grid, upper, profile, grade=(False, g is P))
    spec = fourier_wu(ell, 0, grid)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(spec > 0, np.square(fhat) / spec, 0.0)
    native2 = 2.0 * float(gw @ ratio) / math.sqrt(2.0 * math.pi)
    if g is P:
        # mean tail of phi^ beyond the cutoff, from the Bessel envelope
        d_l = sgamma(ell + 1.0) ** 2 * math.sqrt(2.0 * math.pi) / 2.0
        tail = d_l * 2.0 ** (2 * ell + 1) / (math.pi * (2 * ell + 1) * omega_max ** (2 * ell + 1))
        native2 += 2.0 * tail / math.sqrt(2.0 * math.pi)
    return abs(math.sqrt(native2) - math.sqrt(norm_g2)) / math.sqrt(norm_g2)
