"""Floating-point special functions: J_nu, H_nu, Bessel zeros and 2F1.

``bessel_j`` is vectorized in ``x``.  It switches between

* the power series for ``x <= 8`` where cancellation is harmless,
* closed sine/cosine forms for half-integer orders up to 9/2,
* Miller's backward recurrence normalized by
  ``(x/2)**f = sum_k (f+2k) Gamma(f+k)/k! J_{f+2k}(x)``,
* the Hankel asymptotic expansion once ``x`` exceeds both the profile
  crossover and ``nu**2/2 + 25``.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import optimize
from scipy.special import gammaln, rgamma

__all__ = [
    "DomainError",
    "ConvergenceError",
    "NumericProfile",
    "PROFILES",
    "get_profile",
    "bessel_j",
    "h_nu",
    "bessel_zero",
    "hyp2f1",
    "hyp2f1_exact",
    "hyp2f1_terminating",
]

SERIES_MAX_X = 8.0


class DomainError(ValueError):
    """Argument outside the supported envelope."""


class ConvergenceError(ArithmeticError):
    """An iterative numeric method did not reach its tolerance."""


@dataclass(frozen=True)
class NumericProfile:
    """Tolerances shared by the numeric oracles.

    ``max_refinement`` bounds the number of panel doublings in the
    quadrature loops; adaptive scipy routines get 50 subintervals per unit.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_refinement: int = 10
    series_asymptotic_crossover: float = 25.0
    name: str = "custom"

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.series_asymptotic_crossover <= 0:
            raise ValueError("crossover must be positive")
        if self.max_refinement < 1:
            raise ValueError("max_refinement must be at least 1")

    @property
    def quad_limit(self) -> int:
        return 50 * self.max_refinement


PROFILES = {
    "fast": NumericProfile(abs_tol=1e-10, rel_tol=1e-10, max_refinement=10, name="fast"),
    "strict": NumericProfile(abs_tol=1e-12, rel_tol=1e-12, max_refinement=14, name="strict"),
}


def get_profile(name: str | NumericProfile | None = None) -> NumericProfile:
    """Resolve a profile; ``WU_KERNELS_PROFILE`` overrides the default."""
    if isinstance(name, NumericProfile):
        return name
    if name is None:
        name = os.environ.get("WU_KERNELS_PROFILE", "fast")
    try:
        return PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; choose from {sorted(PROFILES)}") from None


# ---------------------------------------------------------------------------
# Bessel J


def _series(nu: float, x: np.ndarray) -> np.ndarray:
    y = -(x * x) / 4.0
    with np.errstate(under="ignore"):
        term = (x / 2.0) ** nu * rgamma(nu + 1.0)
    total = term.copy()
    for k in range(1, 80):
        term = term * y / (k * (k + nu))
        total = total + term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total) + 1e-300):
            break
    return total


def _half_integer_trig(n: int, x: np.ndarray) -> np.ndarray:
    """``J_{n+1/2}(x)`` from spherical Bessel functions, for moderate ``x``."""
    s, c = np.sin(x), np.cos(x)
    j0 = s / x
    if n == 0:
        out = j0
    else:
        j1 = s / (x * x) - c / x
        for m in range(1, n):
            j0, j1 = j1, (2 * m + 1) / x * j1 - j0
        out = j1
    return np.sqrt(2.0 * x / np.pi) * out


def _asymptotic(nu: float, x: np.ndarray, nterms: int = 40) -> np.ndarray:
    mu = 4.0 * nu * nu
    P = np.ones_like(x)
    Q = np.zeros_like(x)
    term = np.ones_like(x)
    for k in range(1, nterms):
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if k % 2:
            Q = Q + (-1) ** (k // 2) * term
        else:
            P = P + (-1) ** (k // 2) * term
        if np.all(np.abs(term) < 1e-17):
            break
    w = x - (nu / 2.0 + 0.25) * np.pi
    return np.sqrt(2.0 / (np.pi * x)) * (P * np.cos(w) - Q * np.sin(w))


def _miller(nu: float, x: np.ndarray) -> np.ndarray:
    n0 = int(math.floor(nu))
    f = nu - n0
    xm = float(np.max(x))
    top = int(max(xm, nu) + 30 + 10 * xm ** (1.0 / 3.0))
    top += top % 2
    jp1 = np.zeros_like(x)
    j = np.full_like(x, 1e-280)
    norm = np.zeros_like(x)
    target = np.zeros_like(x)
    lw0 = gammaln(f + 1.0)
    for m in range(top, -1, -1):
        # j holds J_{f+m}
        if m == n0:
            target = j.copy()
        if m % 2 == 0:
            k = m // 2
            w = math.exp(gammaln(f + k) - gammaln(k + 1.0)) * (f + 2 * k) if k else math.exp(lw0)
            norm = norm + w * j
        if m == 0:
            break
        jm1 = 2.0 * (f + m) / x * j - jp1
        jp1, j = j, jm1
        big = np.abs(j) > 1e250
        if np.any(big):
            sc = np.where(big, 1e-250, 1.0)
            j, jp1, norm, target = j * sc, jp1 * sc, norm * sc, target * sc
    return target / norm * (x / 2.0) ** f


def _asym_start(nu: float, crossover: float) -> float:
    return max(crossover, nu * nu / 2.0 + 25.0)


def bessel_j(nu: float, x, profile: NumericProfile | None = None):
    """Bessel function of the first kind ``J_nu(x)`` for ``0 <= nu <= 50``, ``0 <= x <= 1e4``."""
    profile = profile or get_profile()
    nu = float(nu)
    xa = np.asarray(x, dtype=float)
    if not (0.0 <= nu <= 50.0):
        raise DomainError(f"order {nu} outside [0, 50]")
    if np.any(xa < 0) or np.any(xa > 1e4) or not np.all(np.isfinite(xa)):
        raise DomainError("argument outside [0, 1e4]")
    flat = np.atleast_1d(xa).ravel()
    out = np.empty_like(flat)
    zero = flat == 0.0
    out[zero] = 1.0 if nu == 0.0 else 0.0
    small = (~zero) & (flat <= SERIES_MAX_X)
    if np.any(small):
        out[small] = _series(nu, flat[small])
    x_asym = _asym_start(nu, profile.series_asymptotic_crossover)
    large = flat > x_asym
    if np.any(large):
        out[large] = _asymptotic(nu, flat[large])
    mid = ~(zero | small | large)
    if np.any(mid):
        twice = 2.0 * nu
        if twice == round(twice) and int(round(twice)) % 2 == 1 and nu <= 4.5:
            out[mid] = _half_integer_trig(int(nu - 0.5), flat[mid])
        else:
            out[mid] = _miller(nu, flat[mid])
    out = out.reshape(np.shape(xa))
    return out if out.ndim else float(out)


def h_nu(nu: float, u, profile: NumericProfile | None = None):
    """``H_nu(u) = sum_k (-u)**k / (k! Gamma(k+nu+1))`` for ``nu > -1``.

    Equivalently ``(x/2)**(-nu) J_nu(x)`` with ``u = x**2/4``.
    """
    nu = float(nu)
    if nu <= -1.0:
        raise DomainError("h_nu requires nu > -1")
    ua = np.asarray(u, dtype=float)
    if np.any(ua < 0):
        raise DomainError("h_nu requires u >= 0")
    flat = np.atleast_1d(ua).ravel()
    x = 2.0 * np.sqrt(flat)
    out = np.empty_like(flat)
    small = x <= SERIES_MAX_X
    if np.any(small):
        y = -flat[small]
        term = np.full_like(y, rgamma(nu + 1.0))
        total = term.copy()
        for k in range(1, 80):
            term = term * y / (k * (k + nu))
            total = total + term
            if np.all(np.abs(term) <= 1e-17 * np.abs(total) + 1e-300):
                break
        out[small] = total
    big = ~small
    if np.any(big):
        xb = x[big]
        if nu == -0.5:
            jv = np.sqrt(2.0 / (np.pi * xb)) * np.cos(xb)
        elif nu < 0:
            jv = 2.0 * (nu + 1.0) / xb * bessel_j(nu + 1.0, xb, profile) - bessel_j(nu + 2.0, xb, profile)
        else:
            jv = bessel_j(nu, xb, profile)
        with np.errstate(under="ignore"):
            out[big] = jv * (xb / 2.0) ** (-nu)
    out = out.reshape(np.shape(ua))
    return out if out.ndim else float(out)


def _djdx(nu: float, x: float) -> float:
    if nu == 0.0:
        return -bessel_j(1.0, x)
    if nu < 1.0:
        # J_{nu-1} with nu-1 in (-1, 0) via the recurrence
        jm1 = 2.0 * nu / x * bessel_j(nu, x) - bessel_j(nu + 1.0, x)
    else:
        jm1 = bessel_j(nu - 1.0, x)
    return 0.5 * (jm1 - bessel_j(nu + 1.0, x))


def bessel_zero(nu: float, k: int) -> float:
    """The ``k``-th positive zero of ``J_nu`` (``nu <= 10``, ``k <= 50``)."""
    nu = float(nu)
    if not (0.0 <= nu <= 10.0) or not (1 <= int(k) <= 50):
        raise DomainError("bessel_zero supports 0 <= nu <= 10 and 1 <= k <= 50")
    k = int(k)
    lo = max(nu, 1e-3)
    hi = (k + nu / 2.0 + 1.0) * np.pi + 5.0
    grid = np.arange(lo, hi, 0.1)
    vals = bessel_j(nu, grid)
    idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)[0]
    if len(idx) < k:
        raise ConvergenceError(f"could not bracket zero {k} of J_{nu}")
    i = idx[k - 1]
    a, b = grid[i], grid[i + 1]
    if vals[i] == 0.0:
        return float(a)
    root = optimize.brentq(lambda t: bessel_j(nu, t), a, b, xtol=1e-15, maxiter=200)
    for _ in range(3):
        d = _djdx(nu, root)
        if d == 0.0:
            break
        step = bessel_j(nu, root) / d
        if abs(step) > 1e-6:
            break
        root -= step
        if abs(step) < 1e-16 * root:
            break
    return float(root)


# ---------------------------------------------------------------------------
# Gauss hypergeometric function


def _nonpositive_int(v) -> bool:
    return float(v) <= 0 and float(v) == int(float(v))


def hyp2f1_terminating(a, b, c) -> list[Fraction]:
    """Exact coefficients of the polynomial ``2F1(a, b; c; z)`` in ``z``.

    Requires ``a`` or ``b`` to be a nonpositive integer.
    """
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if not (_nonpositive_int(a) or _nonpositive_int(b)):
        raise DomainError("series does not terminate")
    n = int(-a) if _nonpositive_int(a) else int(-b)
    if _nonpositive_int(b) and _nonpositive_int(a):
        n = min(int(-a), int(-b))
    coeffs = [Fraction(1)]
    t = Fraction(1)
    for k in range(n):
        den = (c + k) * (k + 1)
        if den == 0:
            raise DomainError("c is a nonpositive integer inside the terminating range")
        t = t * (a + k) * (b + k) / den
        coeffs.append(t)
    return coeffs


def hyp2f1_exact(a, b, c, z) -> Fraction:
    """Exact value of a terminating ``2F1`` at rational ``z``."""
    z = Fraction(z)
    out = Fraction(0)
    for coef in reversed(hyp2f1_terminating(a, b, c)):
        out = out * z + coef
    return out


def hyp2f1(a: float, b: float, c: float, z: float, profile: NumericProfile | None = None) -> float:
    """Gauss hypergeometric function ``2F1(a, b; c; z)`` for real arguments."""
    profile = profile or get_profile()
    if _nonpositive_int(a) or _nonpositive_int(b):
        return float(hyp2f1_exact(Fraction(a), Fraction(b), Fraction(c), Fraction(z)))
    if _nonpositive_int(c):
        raise DomainError("c must not be a nonpositive integer")
    if abs(z) > 1 - 1e-6:
        raise DomainError("|z| must be at most 1 - 1e-6 for a non-terminating series")
    term = 1.0
    total = 1.0
    comp = 0.0
    for k in range(10_000_000):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        # Kahan summation
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if abs(term) <= profile.rel_tol * 1e-3 * abs(total) and k > 2:
            return total
    raise ConvergenceError("2F1 series did not converge")
