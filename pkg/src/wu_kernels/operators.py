"""Operator calculus on exact radial forms.

``D phi(r) = -phi'(r)/r`` and ``I phi(r) = int_r^oo t phi(t) dt`` become the
plain ``-d/du`` and ``int_u^s`` in the f-form.  The half-order versions are
transported Riemann-Liouville integrals ``I_{1/2}``; ``I_{-1/2}`` is applied
as ``I_{1/2}`` after one derivative.

The exact ``I_{1/2}`` reduces every term of an :class:`FDomainForm` by one of
four closed rules (``x`` integrates over ``[u, s]`` against ``(x-u)**(-1/2)``):

* ``x**n`` with integer ``n >= 0`` -> binomial expansion about ``u``;
* ``x**(n+1/2)`` -> the recurrence ``K_n = (s**(n+1/2) sqrt(s-u) + (n+1/2) u K_{n-1})/(n+1)``
  started from ``K_{-1} = -2 Lam(u)``;
* ``x**n (s-x)**(m+1/2)`` -> substitution ``x = u + (s-u) t`` giving Beta values,
  and for ``n = -1`` the classical ``pi / sqrt(s u)``;
* ``x**n Lam(x)`` -> integration by parts against ``Lam'(x) = sqrt(s)/(2x sqrt(s-x))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate, special as sps

from .exact import ScaledRational, beta, binomial, sqrt_rational
from .forms import (
    ClosedForm,
    FDomainForm,
    RationalFunction,
    RepresentationError,
    fform,
    fform_inv,
    half_power,
    singular_at_zero,
)
from .special import ConvergenceError, NumericProfile, get_profile

__all__ = [
    "SmoothnessExhaustedError",
    "HalfStepOperator",
    "deriv_u",
    "frac_int_one",
    "frac_int_half",
    "opD",
    "opI",
    "opD_half",
    "opI_half",
    "frac_int_numeric",
]

PI = ScaledRational(1, b=2)
INV_SQRT_PI = ScaledRational(1, b=-1)


class SmoothnessExhaustedError(ArithmeticError):
    """Differentiation produced a singularity that is not removable."""


# ---------------------------------------------------------------------------
# r-domain operators


def opD(cf: ClosedForm) -> ClosedForm:
    """Exact ``-phi'(r)/r`` computed directly in the r-domain."""
    R2 = cf.support_end**2
    r = RationalFunction([0, 1])
    edge = RationalFunction([R2, 0, -1])
    A = cf.A.derivative()
    B = cf.B.derivative() - cf.B * r / edge + cf.C * R2 / (r * edge)
    C = cf.C.derivative()
    out = ClosedForm(A / r * -1, B / r * -1, C / r * -1, cf.support_end)
    if singular_at_zero(out):
        raise SmoothnessExhaustedError(
            "D produced a non-removable singularity at r = 0 (k would exceed ell)"
        )
    return out


def opI(cf: ClosedForm) -> ClosedForm:
    """Exact ``int_r^R t phi(t) dt`` via the f-form."""
    return fform_inv(frac_int_one(fform(cf)))


def opD_half(cf: ClosedForm) -> ClosedForm:
    """Half-order differential operator, ``I_{1/2}`` after one derivative in the f-form."""
    fd = fform(cf)
    _check_boundary(fd)
    out = fform_inv(frac_int_half(deriv_u(fd)))
    if singular_at_zero(out):
        raise SmoothnessExhaustedError("half derivative is singular at r = 0")
    return out


def opI_half(cf: ClosedForm) -> ClosedForm:
    """Half-order integral operator."""
    return fform_inv(frac_int_half(fform(cf)))


def _check_boundary(fd: FDomainForm):
    """Reject forms with a jump at the support end (the derivative would carry a delta)."""
    if any(b < 0 for (_, b, _) in fd.terms):
        return
    total = ScaledRational(0)
    try:
        for (a, b, e), c in fd.terms.items():
            if b == 0 and e == 0:
                total = total + c * half_power(fd.support, a)
    except ArithmeticError:
        raise RepresentationError("form does not vanish at the support end")
    if total.q != 0:
        raise RepresentationError("form does not vanish at the support end")


# ---------------------------------------------------------------------------
# f-domain operators


def _acc(out: dict, key, c):
    if c.q == 0:
        return
    old = out.get(key)
    new = c if old is None else old + c
    if new.q == 0:
        out.pop(key, None)
    else:
        out[key] = new


def deriv_u(fd: FDomainForm) -> FDomainForm:
    """``I_{-1}``: the negative u-derivative, exact within the algebra."""
    s = fd.support
    rs = sqrt_rational(s)
    out: dict = {}
    for (a, b, e), c in fd.terms.items():
        if a:
            _acc(out, (a - 2, b, e), -c * Fraction(a, 2))
        if b:
            _acc(out, (a, b - 2, e), c * Fraction(b, 2))
        if e:
            # Lam'(u) = sqrt(s) / (2 u sqrt(s-u))
            _acc(out, (a - 2, b - 1, 0), -c * rs * Fraction(1, 2))
    return FDomainForm(out, s)


def _int_power(s: Fraction, a: int) -> dict:
    """``int_u^s x**(a/2) dx`` for ``a != -2``."""
    if a == -2:
        raise RepresentationError("integral of 1/u leaves the algebra")
    p = Fraction(a + 2, 2)
    inv = ScaledRational(1 / p)
    return {(0, 0, 0): half_power(s, a + 2) * inv, (a + 2, 0, 0): -inv}


def _int_q(s: Fraction, n: int, m: int) -> dict:
    """``int_u^s x**n (s-x)**(m+1/2) dx`` for ``n >= 0``, ``m >= -1``."""
    if n < 0 or m < -1:
        raise RepresentationError(f"cannot integrate x^{n}(s-x)^({m}+1/2)")
    out: dict = {}
    for i in range(n + 1):
        c = ScaledRational(binomial(n, i) * s ** (n - i) * (-1) ** i / (i + m + Fraction(3, 2)))
        _acc(out, (0, 2 * (i + m) + 3, 0), c)
    return out


def frac_int_one(fd: FDomainForm) -> FDomainForm:
    """``I_1 f(u) = int_u^s f(x) dx`` reduced into the algebra."""
    s = fd.support
    rs = sqrt_rational(s)
    out = FDomainForm({}, s)
    for (a, b, e), c in fd.items():
        if e == 0 and b == 0:
            part = _int_power(s, a)
        elif e == 0 and b % 2 == 1 and a % 2 == 0:
            part = _int_q(s, a // 2, (b - 1) // 2)
        elif e == 1 and b == 0 and a % 2 == 0 and a >= 0:
            n = a // 2
            part = {(a + 2, 0, 1): ScaledRational(Fraction(-1, n + 1))}
            for k, v in _int_q(s, n, -1).items():
                _acc(part, k, v * rs * Fraction(-1, 2 * (n + 1)))
        else:
            raise RepresentationError(f"I_1 cannot reduce term (a={a}, b={b}, e={e})")
        out = out + FDomainForm(part, s) * c
    return out


@lru_cache(maxsize=None)
def _half_q(s: Fraction, n: int, m: int) -> FDomainForm:
    """``int_u^s (x-u)**(-1/2) x**n (s-x)**(m+1/2) dx`` (no Gamma factor)."""
    if m < -1 or n < -1:
        raise RepresentationError(f"I_1/2 cannot reduce x^{n}(s-x)^({m}+1/2)")
    if n == -1:
        if m == -1:
            return FDomainForm({(-1, 0, 0): PI / sqrt_rational(s)}, s)
        return _half_q(s, -1, m - 1) * ScaledRational(s) - _half_q(s, 0, m - 1)
    out: dict = {}
    for j in range(n + 1):
        c = beta(Fraction(2 * j + 1, 2), Fraction(2 * m + 3, 2)) * binomial(n, j)
        _acc(out, (2 * (n - j), 2 * (j + m + 1), 0), c)
    return FDomainForm(out, s)


@lru_cache(maxsize=None)
def _half_k(s: Fraction, n: int) -> FDomainForm:
    """``int_u^s (x-u)**(-1/2) x**(n+1/2) dx``."""
    if n < -1:
        raise RepresentationError(f"I_1/2 cannot reduce u^({2 * n + 1}/2)")
    if n == -1:
        return FDomainForm({(0, 0, 1): ScaledRational(-2)}, s)
    head = FDomainForm({(0, 1, 0): half_power(s, 2 * n + 1)}, s)
    tail = _half_k(s, n - 1).shift(2) * Fraction(2 * n + 1, 2)
    return (head + tail) * Fraction(1, n + 1)


@lru_cache(maxsize=None)
def _half_p(s: Fraction, n: int) -> FDomainForm:
    """``int_u^s (x-u)**(-1/2) x**n dx`` for integer ``n >= 0``."""
    out: dict = {}
    for j in range(n + 1):
        _acc(out, (2 * (n - j), 2 * j + 1, 0), ScaledRational(Fraction(binomial(n, j) * 2, 2 * j + 1)))
    return FDomainForm(out, s)


@lru_cache(maxsize=None)
def _half_log(s: Fraction, n: int) -> FDomainForm:
    """``int_u^s (x-u)**(-1/2) x**n Lam(x) dx`` by parts."""
    rs = sqrt_rational(s)
    out = FDomainForm({}, s)
    for j in range(n + 1):
        outer = Fraction(binomial(n, j) * 2, 2 * j + 1)
        for i in range(j + 2):
            c = outer * binomial(j + 1, i) * (-1) ** (j + 1 - i)
            out = out + _half_q(s, i - 1, -1).shift(2 * (n + 1 - i)) * c
    return out * (-rs * Fraction(1, 2))


def frac_int_half(fd: FDomainForm) -> FDomainForm:
    """Exact ``I_{1/2} f(u) = int_u^s (x-u)**(-1/2) f(x) dx / Gamma(1/2)``."""
    s = fd.support
    out = FDomainForm({}, s)
    for (a, b, e), c in fd.items():
        if e == 0 and b == 0:
            if a % 2 == 0:
                if a < 0:
                    raise RepresentationError(f"I_1/2 cannot reduce u^({a}/2)")
                part = _half_p(s, a // 2)
            else:
                part = _half_k(s, (a - 1) // 2)
        elif e == 0 and b % 2 == 1 and a % 2 == 0:
            part = _half_q(s, a // 2, (b - 1) // 2)
        elif e == 1 and b == 0 and a % 2 == 0 and a >= 0:
            part = _half_log(s, a // 2)
        else:
            raise RepresentationError(f"I_1/2 cannot reduce term (a={a}, b={b}, e={e})")
        out = out + part * c
    return out * INV_SQRT_PI


@dataclass(frozen=True)
class HalfStepOperator:
    """``I_nu`` for half-integer ``nu``; negative orders differentiate."""

    nu: Fraction

    def __post_init__(self):
        nu = Fraction(self.nu)
        if (2 * nu).denominator != 1:
            raise ValueError("order must be a half-integer")
        object.__setattr__(self, "nu", nu)

    def __matmul__(self, other: "HalfStepOperator") -> "HalfStepOperator":
        return HalfStepOperator(self.nu + other.nu)

    def apply(self, fd: FDomainForm) -> FDomainForm:
        nu = self.nu
        nd = math.ceil(-nu) if nu < 0 else 0
        for _ in range(nd):
            fd = deriv_u(fd)
        rest = nu + nd
        for _ in range(int(rest)):
            fd = frac_int_one(fd)
        if rest.denominator == 2:
            fd = frac_int_half(fd)
        return fd

    def __call__(self, cf: ClosedForm) -> ClosedForm:
        fd = fform(cf)
        if self.nu < 0:
            _check_boundary(fd)
        return fform_inv(self.apply(fd))


# ---------------------------------------------------------------------------
# numeric oracle


def frac_int_numeric(f, nu: float, r: float, profile: NumericProfile | None = None, support: float = 2.0) -> float:
    """Numeric ``int_r^s (x-r)**(nu-1)/Gamma(nu) f(x) dx``.

    For ``nu < 1`` the substitution ``x = r + t**(1/nu)`` removes the endpoint
    singularity, leaving ``int_0^{(s-r)**nu} f(r + t**(1/nu)) dt / Gamma(nu+1)``.
    """
    profile = profile or get_profile()
    if nu <= 0:
        raise ValueError("frac_int_numeric requires nu > 0")
    if r >= support:
        return 0.0
    if nu < 1:
        top = (support - r) ** nu
        g = lambda t: f(r + t ** (1.0 / nu))
        val, err = integrate.quad(g, 0.0, top, epsabs=profile.abs_tol * 1e-2, epsrel=profile.rel_tol,
                                  limit=profile.max_refinement)
        val /= sps.gamma(nu + 1)
        err /= sps.gamma(nu + 1)
    else:
        g = lambda x: (x - r) ** (nu - 1) * f(x)
        val, err = integrate.quad(g, r, support, epsabs=profile.abs_tol * 1e-2, epsrel=profile.rel_tol,
                                  limit=profile.max_refinement)
        val /= sps.gamma(nu)
        err /= sps.gamma(nu)
    if not np.isfinite(val) or err > max(profile.abs_tol, profile.rel_tol * abs(val)):
        raise ConvergenceError(f"fractional integral did not converge (err={err:.3g})")
    return float(val)
