"""Generalized Wu and Wendland functions by several independent routes.

Conventions: ``f_l(r) = (1 - r**2)_+**l`` and ``phi_{l,k} = D**k (f_l * f_l)``
on the support ``[0, 2]``.  Half-integer ``k`` uses the half-order operator
for the last half step.  The Wendland functions ``psi_{mu,alpha}`` live on
``[0, 1]``.
"""
from __future__ import annotations

import functools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate, special as sps

from .exact import Poly, RationalFunction, ScaledRational, binomial, gamma_half, pochhammer
from .forms import ClosedForm, fform, fform_inv
from .operators import HalfStepOperator, opD, opD_half
from .special import NumericProfile, get_profile, hyp2f1_terminating

__all__ = [
    "ConstraintError",
    "KernelSpec",
    "WuConstants",
    "wu_constants",
    "askey",
    "conv1d",
    "wu_ops",
    "wu_ops_half_first",
    "wu_ll",
    "wu_closed",
    "wu_numeric",
    "wendland",
    "wu_from_wendland",
    "kernel_form",
    "clear_cache",
]


class ConstraintError(ValueError):
    """Parameters violate a hypothesis of the construction."""


def _as_half(x, what: str) -> Fraction:
    x = Fraction(x)
    if (2 * x).denominator != 1 or x < 0:
        raise ConstraintError(f"{what} must be a nonnegative half-integer, got {x}")
    return x


def _as_nat(x, what: str) -> int:
    x = Fraction(x)
    if x.denominator != 1 or x < 0:
        raise ConstraintError(f"{what} must be a natural number, got {x}")
    return int(x)


def _check_lk(ell, k) -> tuple[int, Fraction]:
    ell = _as_nat(ell, "ell")
    k = _as_half(k, "k")
    if k > ell:
        raise ConstraintError(f"k = {k} exceeds ell = {ell}")
    return ell, k


@dataclass(frozen=True)
class KernelSpec:
    """A radial kernel for the interpolation harness.

    ``scale`` is the support radius in physical units: the kernel at
    distance ``rho`` is the canonical form evaluated at ``R * rho / scale``.
    For ``imq`` the field ``k_or_alpha`` is the Sobolev exponent ``s``.
    """

    family: str
    ell: Fraction
    k_or_alpha: Fraction
    scale: Fraction = Fraction(1)
    dimension: int = 1

    def __post_init__(self):
        for name in ("ell", "k_or_alpha", "scale"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.family not in ("wu", "wendland", "imq"):
            raise ConstraintError(f"unknown kernel family {self.family!r}")
        if self.scale <= 0:
            raise ConstraintError("scale must be positive")
        if self.dimension < 1:
            raise ConstraintError("dimension must be positive")
        if self.ell < 0 or self.k_or_alpha < 0:
            raise ConstraintError("parameters must be nonnegative")
        if self.family == "wu":
            if self.k_or_alpha > self.ell:
                raise ConstraintError(f"k = {self.k_or_alpha} exceeds ell = {self.ell}")
            if self.dimension > 2 * self.k_or_alpha + 1:
                raise ConstraintError(
                    f"wu({self.ell},{self.k_or_alpha}) is only positive definite for d <= {2 * self.k_or_alpha + 1}"
                )
        if self.family == "imq" and not self.k_or_alpha > Fraction(self.dimension, 2):
            raise ConstraintError("imq exponent s must exceed dimension/2")

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "ell": str(self.ell),
            "k": str(self.k_or_alpha),
            "scale": str(self.scale),
            "dimension": self.dimension,
        }


@dataclass(frozen=True)
class WuConstants:
    c_lk: ScaledRational
    d_l: ScaledRational


def wu_constants(ell, k) -> WuConstants:
    """``c = Gamma(l+1)**2/Gamma(l-k+1)**2 (2/pi)**k`` and ``d = Gamma(l+1)**2 sqrt(2 pi)/2``."""
    ell, k = _check_lk(ell, k)
    g = gamma_half(ell + 1)
    two_over_pi_k = ScaledRational(1, a=int(2 * k), b=-int(2 * k))
    c = g * g / gamma_half(ell - k + 1) ** 2 * two_over_pi_k
    d = g * g * ScaledRational(Fraction(1, 2), a=1, b=1)
    return WuConstants(c, d)


# ---------------------------------------------------------------------------
# memo cache

_cache: dict = {}
_lock = threading.Lock()


def _memo(fn):
    @functools.wraps(fn)
    def wrapper(*args):
        key = (fn.__name__,) + tuple(Fraction(a) for a in args)
        with _lock:
            if key in _cache:
                return _cache[key]
        value = fn(*args)
        with _lock:
            return _cache.setdefault(key, value)

    return wrapper


def clear_cache():
    with _lock:
        _cache.clear()


# ---------------------------------------------------------------------------
# exact routes


def askey(ell) -> ClosedForm:
    """Truncated power ``(1 - r**2)_+**l`` on ``[0, 1]``."""
    ell = _as_nat(ell, "ell")
    return ClosedForm(A=RationalFunction(Poly([1, 0, -1]) ** ell), support_end=1)


@_memo
def conv1d(ell) -> ClosedForm:
    """Exact one-dimensional self-convolution of ``f_l``, a polynomial on ``[0, 2]``."""
    ell = _as_nat(ell, "ell")
    # integrand (1-y^2)^l (1-(r-y)^2)^l as {(i, j): c} for y^i r^j
    a = {}
    for i in range(ell + 1):
        a[(2 * i, 0)] = Fraction(binomial(ell, i) * (-1) ** i)
    b = {(0, 0): Fraction(1)}
    base = {(0, 0): Fraction(1), (0, 2): Fraction(-1), (1, 1): Fraction(2), (2, 0): Fraction(-1)}
    for _ in range(ell):
        nb = {}
        for (i1, j1), c1 in b.items():
            for (i2, j2), c2 in base.items():
                key = (i1 + i2, j1 + j2)
                nb[key] = nb.get(key, 0) + c1 * c2
        b = nb
    prod = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            key = (i1 + i2, j1 + j2)
            prod[key] = prod.get(key, 0) + c1 * c2
    lower = Poly([-1, 1])  # y = r - 1
    out = Poly()
    for (i, j), c in prod.items():
        if c == 0:
            continue
        anti = c / (i + 1)
        out = out + Poly.monomial(j, anti) - Poly.monomial(j, anti) * lower ** (i + 1)
    return ClosedForm(A=RationalFunction(out), support_end=2)


@_memo
def wu_ll(ell) -> ClosedForm:
    """``phi_{l,l} = 2**(l+1) l! [1^(l)/(3/2)^(l) - (r/2) 2F1(-l, 1/2; 3/2; r**2/4)]``."""
    ell = _as_nat(ell, "ell")
    const = pochhammer(1, ell) / pochhammer(Fraction(3, 2), ell)
    coeffs = [Fraction(0)] * (2 * ell + 2)
    coeffs[0] = const
    for j, c in enumerate(hyp2f1_terminating(-ell, Fraction(1, 2), Fraction(3, 2))):
        coeffs[2 * j + 1] -= c / Fraction(2) ** (2 * j + 1)
    pre = 2 ** (ell + 1) * math.factorial(ell)
    return ClosedForm(A=RationalFunction(Poly(c * pre for c in coeffs)), support_end=2)


@_memo
def wu_ops(ell, k) -> ClosedForm:
    """``phi_{l,k}`` by the operator pipeline ``D**floor(k)`` then ``D**(1/2)``."""
    ell, k = _check_lk(ell, k)
    cf = conv1d(ell)
    for _ in range(int(k)):
        cf = opD(cf)
    if k.denominator == 2:
        cf = opD_half(cf)
    return cf


def wu_ops_half_first(ell, k) -> ClosedForm:
    """Same function with the half step applied before the integer steps."""
    ell, k = _check_lk(ell, k)
    cf = conv1d(ell)
    if k.denominator == 2:
        cf = opD_half(cf)
    for _ in range(int(k)):
        cf = opD(cf)
    return cf


@_memo
def wu_closed(ell, k) -> ClosedForm:
    """``phi_{l,k}`` from ``phi_{l,l}`` by the fractional integral ``I_{l-k}`` in the f-form."""
    ell, k = _check_lk(ell, k)
    fd = fform(wu_ll(ell))
    return fform_inv(HalfStepOperator(ell - k).apply(fd))


@_memo
def wendland(mu, alpha) -> ClosedForm:
    """Generalized Wendland function ``psi_{mu,alpha}``: ``I_alpha`` of ``(1-r)_+**mu`` in the f-form."""
    mu = _as_nat(mu, "mu")
    alpha = _as_half(alpha, "alpha")
    base = ClosedForm(A=RationalFunction(Poly([1, -1]) ** mu), support_end=1)
    if alpha == 0:
        return base
    return fform_inv(HalfStepOperator(alpha).apply(fform(base)))


@_memo
def wu_from_wendland(ell, k) -> ClosedForm:
    """``r -> phi_{l,k}(2r)`` as a combination of Wendland functions on ``[0, 1]``.

    ``phi_{l,k}(2r) = 2**(3l-2k+1) l! sum_n C(l,n) 2**(l-n) (-1)**n/(l+n+1) psi_{l+n+1, l-k}(r)``
    """
    ell, k = _check_lk(ell, k)
    alpha = ell - k
    pre = Fraction(2) ** int(3 * ell - 2 * k + 1) * math.factorial(ell)
    out = ClosedForm(support_end=1)
    for n in range(ell + 1):
        c = pre * Fraction(binomial(ell, n) * 2 ** (ell - n) * (-1) ** n, ell + n + 1)
        out = out + wendland(ell + n + 1, alpha) * c
    return out


def kernel_form(spec: KernelSpec) -> ClosedForm:
    """Exact form of a ``wu`` or ``wendland`` kernel spec."""
    if spec.family == "wu":
        return wu_ops(spec.ell, spec.k_or_alpha)
    if spec.family == "wendland":
        return wendland(spec.ell, spec.k_or_alpha)
    raise ConstraintError("imq kernels have no exact radial form in this library")


# ---------------------------------------------------------------------------
# numeric route


def _ball_route(ell: float, r: float) -> float:
    """``phi_{l,l}(r) = 2**(l+1) Gamma(l+1) int_{r/2}^1 (1-x**2)**l dx``."""
    x2 = min((r / 2.0) ** 2, 1.0)
    tail = 0.5 * sps.beta(0.5, ell + 1.0) * sps.betaincc(0.5, ell + 1.0, x2)
    return 2.0 ** (ell + 1.0) * sps.gamma(ell + 1.0) * tail


def _quad(f, a, b, tol, **kw):
    val, _ = integrate.quad(f, a, b, epsabs=tol, epsrel=1e-12, limit=400, **kw)
    return val


def _self_conv(lam: float, d: float, r: float, tol: float) -> float:
    """Self-convolution of ``(1-|x|**2)_+**lam`` in dimension ``d`` at distance ``r``."""
    if d == 1.0:
        if r == 0.0:
            return sps.beta(0.5, 2 * lam + 1.0)
        # weights (y-(r-1))**lam (1-y)**lam, remaining factors smooth on [r-1, 1]
        g = lambda y: (1.0 + y) ** lam * (1.0 + r - y) ** lam
        return _quad(g, r - 1.0, 1.0, tol, weight="alg", wvar=(lam, lam))
    sphere = lambda m: 2.0 * np.pi ** (m / 2.0) / sps.gamma(m / 2.0)
    if r == 0.0:
        return sphere(d) * 0.5 * sps.beta(d / 2.0, 2 * lam + 1.0)
    beta_ = (d - 3.0) / 2.0

    def inner(s):
        c0 = (r * r + s * s - 1.0) / (2.0 * r * s)
        if c0 >= 1.0:
            return 0.0
        pref = (2.0 * r * s) ** lam
        if c0 > -1.0:
            g = lambda c: (1.0 + c) ** beta_
            return pref * _quad(g, c0, 1.0, tol * 1e-2, weight="alg", wvar=(lam, beta_))
        g = lambda c: (c - c0) ** lam
        return pref * _quad(g, -1.0, 1.0, tol * 1e-2, weight="alg", wvar=(beta_, beta_))

    outer = lambda s: s ** (d - 1.0) * (1.0 + s) ** lam * inner(s)
    lo = max(0.0, r - 1.0)
    kink = abs(1.0 - r)
    total = 0.0
    if lo < kink < 1.0:
        total += _quad(lambda t: outer(t) * (1.0 - t) ** lam, lo, kink, tol)
        lo = kink
    total += _quad(outer, lo, 1.0, tol, weight="alg", wvar=(0.0, lam))
    return sphere(d - 1.0) * total


def wu_numeric(ell: float, k: float, r: float, profile: NumericProfile | None = None) -> float:
    """Numeric ``phi_{l,k}(r)`` for real ``0 <= k <= l``.

    ``k = l`` uses the one-dimensional ball integral.  Otherwise the value
    is ``c_{l,k}`` times the self-convolution of ``f_{l-k}`` in the real
    dimension ``2k+1``, integrated in bipolar coordinates.
    """
    profile = profile or get_profile()
    ell, k, r = float(ell), float(k), float(r)
    if not 0.0 <= k <= ell:
        raise ConstraintError("wu_numeric requires 0 <= k <= ell")
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r >= 2.0:
        return 0.0
    if k == ell:
        return float(_ball_route(ell, r))
    lam = ell - k
    c = sps.gamma(ell + 1.0) ** 2 / sps.gamma(lam + 1.0) ** 2 * (2.0 / np.pi) ** k
    tol = profile.abs_tol * 1e-1
    return float(c * _self_conv(lam, 2.0 * k + 1.0, r, tol))
