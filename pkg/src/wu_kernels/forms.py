"""Exact kernel representations in the radial (r) and f-form (u) domains.

A :class:`ClosedForm` on ``[0, R]`` is ``A(r) + B(r) S(r) + C(r) L(r)`` with
rational functions ``A, B, C`` and

    S(r) = sqrt(1 - (r/R)**2),     L(r) = log((r/R) / (1 + S(r))).

For the canonical support ``R = 2`` these are ``sqrt(1 - r**2/4)`` and
``log((r/2)/(1 + S))``.  Rescaling the argument keeps the same shape with
``R`` replaced, so Table-style forms on ``[0, 1]`` use ``sqrt(1 - r**2)``.

The f-form substitutes ``r = sqrt(2u)``.  With ``s = R**2/2`` an
:class:`FDomainForm` is a finite sum ``c * u**(a/2) * (s-u)**(b/2) * Lam(u)**e``
where ``Lam(u) = log(sqrt(u) / (sqrt(s) + sqrt(s-u)))`` is the image of ``L``.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .exact import (
    ONE,
    ZERO,
    IncompatibleClassError,
    Poly,
    RationalFunction,
    ScaledRational,
    as_scaled,
    binomial,
    sqrt_rational,
)

__all__ = [
    "RepresentationError",
    "NumericError",
    "ClosedForm",
    "FDomainForm",
    "RenderedForm",
    "fform",
    "fform_inv",
    "eval",
    "eval_form",
    "equals",
    "rescale",
    "render",
    "render_factored",
    "format_scalar",
    "form_hash",
    "half_power",
]


class RepresentationError(ValueError):
    """A value left the exact S/L algebra."""


class NumericError(ArithmeticError):
    """Floating-point evaluation could not honour its contract."""


def half_power(s, a: int) -> ScaledRational:
    """Exact ``s**(a/2)`` for rational ``s`` whose square root is representable."""
    s = Fraction(s)
    if a % 2 == 0:
        return ScaledRational(s ** (a // 2))
    return sqrt_rational(s) ** a


def _rf(x) -> RationalFunction:
    return RationalFunction.coerce(x)


@dataclass(frozen=True)
class ClosedForm:
    """Exact radial function ``A + B*S + C*L`` on ``[0, support_end]``."""

    A: RationalFunction = field(default_factory=lambda: RationalFunction(0))
    B: RationalFunction = field(default_factory=lambda: RationalFunction(0))
    C: RationalFunction = field(default_factory=lambda: RationalFunction(0))
    support_end: Fraction = Fraction(2)

    def __post_init__(self):
        object.__setattr__(self, "A", _rf(self.A))
        object.__setattr__(self, "B", _rf(self.B))
        object.__setattr__(self, "C", _rf(self.C))
        R = Fraction(self.support_end)
        if R <= 0:
            raise ValueError("support_end must be positive")
        object.__setattr__(self, "support_end", R)

    @classmethod
    def polynomial(cls, coeffs: Iterable, support_end=2) -> "ClosedForm":
        return cls(A=RationalFunction(Poly(coeffs)), support_end=support_end)

    def is_polynomial(self) -> bool:
        return self.B.is_zero() and self.C.is_zero() and self.A.is_poly()

    def is_zero(self) -> bool:
        return self.A.is_zero() and self.B.is_zero() and self.C.is_zero()

    @property
    def poly(self) -> Poly:
        """The polynomial ``A`` of a pure polynomial form."""
        if not self.is_polynomial():
            raise RepresentationError("form is not a polynomial")
        return self.A.num * (ONE / self.A.den.lead)

    def _check(self, other: "ClosedForm"):
        if self.support_end != other.support_end:
            raise ValueError("forms live on different supports")

    def __add__(self, other):
        if not isinstance(other, ClosedForm):
            return NotImplemented
        self._check(other)
        return ClosedForm(self.A + other.A, self.B + other.B, self.C + other.C, self.support_end)

    def __neg__(self):
        return ClosedForm(-self.A, -self.B, -self.C, self.support_end)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction, ScaledRational)):
            return ClosedForm(self.A * c, self.B * c, self.C * c, self.support_end)
        if isinstance(c, (RationalFunction, Poly)):
            return ClosedForm(self.A * c, self.B * c, self.C * c, self.support_end)
        return NotImplemented

    __rmul__ = __mul__

    def __call__(self, r):
        return eval_form(self, r)

    def __str__(self):
        return render(self).text


@dataclass(frozen=True)
class RenderedForm:
    text: str
    latex: str

    def __str__(self):
        return self.text


# ---------------------------------------------------------------------------
# f-domain algebra


def _add_term(terms: dict, key, c):
    c = as_scaled(c)
    if c.q == 0:
        return
    old = terms.get(key)
    new = c if old is None else old + c
    if new.q == 0:
        terms.pop(key, None)
    else:
        terms[key] = new


class FDomainForm:
    """Sum of terms ``c * u**(a/2) * (s-u)**(b/2) * Lam(u)**e`` on ``(0, s)``.

    The constructor canonicalizes: nonnegative powers of ``(s-u)`` are
    expanded so that ``b`` is ``0`` or ``1`` whenever ``b >= 0``.
    """

    __slots__ = ("terms", "support")

    def __init__(self, terms: Mapping | Iterable = (), support=2):
        s = Fraction(support)
        if s <= 0:
            raise ValueError("support must be positive")
        items = terms.items() if isinstance(terms, Mapping) else (
            ((a, b, e), c) for c, a, b, e in terms
        )
        out: dict = {}
        for (a, b, e), c in items:
            a, b, e = int(a), int(b), int(e)
            if e not in (0, 1):
                raise RepresentationError(f"log power {e} is outside the algebra")
            if b >= 2:
                j, rest = divmod(b, 2)
                for i in range(j + 1):
                    coef = as_scaled(c) * (binomial(j, i) * s ** (j - i) * (-1) ** i)
                    _add_term(out, (a + 2 * i, rest, e), coef)
            else:
                _add_term(out, (a, b, e), c)
        object.__setattr__(self, "terms", out)
        object.__setattr__(self, "support", s)

    def __setattr__(self, name, value):
        raise AttributeError("FDomainForm is immutable")

    def items(self):
        return sorted(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        body = ", ".join(f"{c!r}*u^({a}/2)*(s-u)^({b}/2)*Lam^{e}" for (a, b, e), c in self.items())
        return f"FDomainForm([{body}], support={self.support})"

    def __add__(self, other):
        if not isinstance(other, FDomainForm):
            return NotImplemented
        if self.support != other.support:
            raise ValueError("f-forms live on different supports")
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_term(out, k, c)
        return FDomainForm(out, self.support)

    def __neg__(self):
        return FDomainForm({k: -c for k, c in self.terms.items()}, self.support)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = as_scaled(c)
        return FDomainForm({k: v * c for k, v in self.terms.items()}, self.support)

    __rmul__ = __mul__

    def shift(self, da: int) -> "FDomainForm":
        """Multiply by ``u**(da/2)``."""
        return FDomainForm({(a + da, b, e): c for (a, b, e), c in self.terms.items()}, self.support)

    def __eq__(self, other):
        if not isinstance(other, FDomainForm):
            return NotImplemented
        if self.support != other.support:
            return False
        if self.terms == other.terms:
            return True
        try:
            return fform_inv(self) == fform_inv(other)
        except RepresentationError:
            return False

    __hash__ = None

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        s = float(self.support)
        inside = (u > 0) & (u < s)
        uu = np.where(inside, u, 0.5 * s)
        su = s - uu
        lam = np.log(np.sqrt(uu) / (math.sqrt(s) + np.sqrt(su)))
        out = np.zeros_like(uu)
        for (a, b, e), c in self.terms.items():
            t = float(c) * uu ** (a / 2) * su ** (b / 2)
            if e:
                t = t * lam
            out = out + t
        out = np.where(inside, out, 0.0)
        return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# conversions


def _support_from_s(s: Fraction) -> Fraction:
    R2 = 2 * s
    root = sqrt_rational(R2)
    if not root.is_rational():
        raise RepresentationError(f"support sqrt({R2}) is irrational")
    return root.q


def _factor_den(den: Poly, R: Fraction):
    """Split ``den = c * r**i * (R**2 - r**2)**j``; return (c, i, j)."""
    i = den.order_at_zero()
    rest = Poly(den.coeffs[i:])
    edge = Poly([R * R, 0, -1])
    j = 0
    while rest.degree >= 2:
        q, rem = rest.divmod(edge)
        if not rem.is_zero():
            break
        rest, j = q, j + 1
    if rest.degree != 0:
        raise RepresentationError(
            f"denominator {den!r} has roots other than 0 and +-{R}"
        )
    return rest.coeff(0), i, j


def fform(cf: ClosedForm) -> FDomainForm:
    """f-form ``u -> cf(sqrt(2u))`` as an exact term sum."""
    R = cf.support_end
    s = R * R / 2
    rs = sqrt_rational(s)
    sqrt2 = ScaledRational(1, a=1)
    terms: dict = {}
    for comp, db, e in ((cf.A, 0, 0), (cf.B, 1, 0), (cf.C, 0, 1)):
        if comp.is_zero():
            continue
        cden, i, j = _factor_den(comp.den, R)
        base = ONE / cden / ScaledRational(2) ** j
        if db:
            base = base / rs
        for m, n in enumerate(comp.num.coeffs):
            if n.q == 0:
                continue
            _add_term(terms, (m - i, db - 2 * j, e), n * base * sqrt2 ** (m - i))
    return FDomainForm(terms, s)


def fform_inv(fd: FDomainForm) -> ClosedForm:
    """Inverse f-form ``r -> fd(r**2/2)``."""
    s = fd.support
    R = _support_from_s(s)
    rs = sqrt_rational(s)
    comps: dict[int, list] = {0: [], 1: [], 2: []}
    for (a, b, e), c in fd.terms.items():
        if b % 2 and e:
            raise RepresentationError(f"term (a={a}, b={b}, e={e}) has an S*L cofactor")
        slot = 2 if e else (1 if b % 2 else 0)
        j = (b - 1) // 2 if b % 2 else b // 2
        coef = c * ScaledRational(1, a=-a) * ScaledRational(Fraction(1, 2) ** j)
        if b % 2:
            coef = coef * rs
        comps[slot].append((coef, a, j))
    edge = Poly([R * R, 0, -1])
    out = []
    for slot in (0, 1, 2):
        terms = comps[slot]
        if not terms:
            out.append(RationalFunction(0))
            continue
        i0 = max(max(-a for _, a, _ in terms), 0)
        j0 = max(max(-j for _, _, j in terms), 0)
        num = Poly()
        for coef, a, j in terms:
            num = num + Poly.monomial(a + i0, coef) * edge ** (j + j0)
        den = Poly.monomial(i0) * edge**j0
        out.append(RationalFunction(num, den))
    return ClosedForm(out[0], out[1], out[2], R)


# ---------------------------------------------------------------------------
# evaluation


def _S(r, R):
    return np.sqrt(np.maximum(1.0 - (r / R) ** 2, 0.0))


def _L(r, R):
    S = _S(r, R)
    with np.errstate(divide="ignore"):
        return np.log((r / R) / (1.0 + S))


def _raw(cf: ClosedForm, r: np.ndarray) -> np.ndarray:
    R = float(cf.support_end)
    out = cf.A(r) if not cf.A.is_zero() else np.zeros_like(r)
    if not cf.B.is_zero():
        out = out + cf.B(r) * _S(r, R)
    if not cf.C.is_zero():
        c = cf.C(r)
        with np.errstate(invalid="ignore"):
            t = c * _L(r, R)
        # c underflows before log(r) diverges for subnormal r
        t = np.where((r == 0.0) | (c == 0.0), 0.0, t)
        out = out + t
    return out


def _poles(cf: ClosedForm) -> list[float]:
    R = float(cf.support_end)
    poles = set()
    for comp in (cf.A, cf.B, cf.C):
        if comp.is_zero() or comp.den.is_constant():
            continue
        roots = np.roots(list(reversed(comp.den.float_coeffs())))
        for z in roots:
            if abs(z.imag) < 1e-9 and -1e-9 <= z.real <= R * (1 + 1e-9):
                poles.add(round(max(z.real, 0.0), 12))
    return sorted(poles)


def singular_at_zero(cf: ClosedForm) -> bool:
    """Exact test whether ``cf`` is unbounded as ``r -> 0+``."""
    C = cf.C
    if not C.is_zero():
        if C.den.order_at_zero() > 0 or C.num.coeff(0).q != 0:
            return True
    pa = cf.A.pole_order_at_zero()
    pb = cf.B.pole_order_at_zero()
    if pa == 0 and pb == 0:
        return False
    la = cf.A.laurent_at_zero(0)
    lb = cf.B.laurent_at_zero(0)
    if pb:
        # S = sum_n binom(1/2, n) (-(r/R)^2)^n
        R = cf.support_end
        sser = {}
        for n in range(pb // 2 + 1):
            c = Fraction(1)
            for t in range(n):
                c *= (Fraction(1, 2) - t) / (t + 1)
            sser[2 * n] = c * (-1) ** n / R ** (2 * n)
        lb_full = cf.B.laurent_at_zero(0)
        lb = {}
        for i, c in lb_full.items():
            for p, sc in sser.items():
                if i + p < 0:
                    lb[i + p] = lb.get(i + p, ZERO) + c * sc
    try:
        for i in set(la) | set(lb):
            if i < 0 and (la.get(i, ZERO) + lb.get(i, ZERO)).q != 0:
                return True
    except IncompatibleClassError:
        return True
    return False


def eval_form(cf: ClosedForm, r, profile=None):
    """Float evaluation of ``cf`` at ``r`` (scalar or array), zero outside support.

    Points within ``1e-6 * support`` of a pole are evaluated by averaging the
    two offsets ``r +- 1e-4``.  When an offset would leave ``(0, support)``
    the value is extrapolated linearly from the inside.
    """
    r_in = np.asarray(r, dtype=float)
    r = np.atleast_1d(r_in)
    if np.any(r < 0):
        raise ValueError("eval requires r >= 0")
    R = float(cf.support_end)
    inside = r < R
    rr = np.where(inside, r, 0.5 * R)
    if np.any(inside & (rr == 0.0)) and singular_at_zero(cf):
        raise NumericError("form has a non-removable singularity at r = 0")
    with np.errstate(divide="ignore", invalid="ignore"):
        val = _raw(cf, rr)
    h = 1e-4
    for p in _poles(cf):
        near = inside & (np.abs(rr - p) < 1e-6 * R)
        if not np.any(near):
            continue
        if p == 0.0 and singular_at_zero(cf):
            raise NumericError("evaluation at a non-removable pole r = 0")
        x = rr[near]
        lo, hi = x - h, x + h
        if np.all(lo > 0) and np.all(hi < R):
            f1, f2 = _raw(cf, lo), _raw(cf, hi)
            if np.any(np.abs(f1 - f2) > 1e-2 * (1 + np.abs(f1 + f2))):
                raise NumericError(f"non-removable pole near r = {p}")
            val[near] = 0.5 * (f1 + f2)
        else:
            sgn = 1.0 if p < 0.5 * R else -1.0
            f1 = _raw(cf, x + sgn * h)
            f2 = _raw(cf, x + 2 * sgn * h)
            val[near] = 2 * f1 - f2
    out = np.where(inside, val, 0.0)
    if not np.all(np.isfinite(out)):
        raise NumericError("non-finite value in evaluation")
    return out.reshape(r_in.shape) if r_in.ndim else float(out[0])


def eval(cf: ClosedForm, r, profile=None):  # noqa: A001 - mirrors the public name
    """Evaluate ``cf`` at ``r``; see :func:`eval_form`."""
    return eval_form(cf, r, profile)


def equals(x: ClosedForm, y: ClosedForm) -> bool:
    return x == y


def rescale(cf: ClosedForm, c) -> ClosedForm:
    """Return ``r -> cf(c*r)`` on ``[0, support_end/c]``."""
    c = Fraction(c)
    if c <= 0:
        raise ValueError("rescale factor must be positive")
    if c == 1:
        return cf
    return ClosedForm(
        cf.A.scale_arg(c), cf.B.scale_arg(c), cf.C.scale_arg(c), cf.support_end / c
    )


# ---------------------------------------------------------------------------
# rendering


def _irrational_parts(a: int, b: int):
    num, den = [], []
    if a:
        num.append("2")
    if b % 2:
        (num if b > 0 else den).append("pi")
        m = (b - 1) // 2 if b > 0 else (b + 1) // 2
    else:
        m = b // 2
    return num, den, m


def format_scalar(x: ScaledRational, latex: bool = False) -> str:
    """Render ``q * 2**(a/2) * pi**(b/2)``, e.g. ``(2/9)·sqrt(2/pi)``."""
    x = as_scaled(x)
    q = x.q
    num, den, m = _irrational_parts(x.a, x.b)
    parts = []
    if m:
        if latex:
            parts.append(r"\pi" if m == 1 else (rf"\pi^{{{m}}}"))
        else:
            parts.append("pi" if m == 1 else f"pi^{m}")
    if num or den:
        if latex:
            n = r" ".join(r"\pi" if t == "pi" else t for t in num) or "1"
            d = r" ".join(r"\pi" if t == "pi" else t for t in den)
            parts.append(rf"\sqrt{{\frac{{{n}}}{{{d}}}}}" if d else rf"\sqrt{{{n}}}")
        else:
            n = "*".join(num) or "1"
            parts.append(f"sqrt({n}/{'*'.join(den)})" if den else f"sqrt({n})")
    if not parts:
        return _frac_text(q, latex)
    irr = (" " if latex else "·").join(parts)
    if q == 1:
        return irr
    if q == -1:
        return "-" + irr
    return f"{_frac_text(q, latex, paren=True)}{' ' if latex else '·'}{irr}"


def _frac_text(q: Fraction, latex: bool = False, paren: bool = False) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    if latex:
        sign = "-" if q < 0 else ""
        return rf"{sign}\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"
    return f"({q})" if paren else str(q)


def _poly_text(p: Poly, latex: bool = False, var: str = "r", compact: bool = False) -> str:
    """Ascending-order rendering of a polynomial with rational coefficients."""
    if p.is_zero():
        return "0"
    pieces = []
    for i, c in enumerate(p.coeffs):
        if c.q == 0:
            continue
        if not c.is_rational():
            raise RepresentationError("non-rational coefficient in polynomial body")
        q = c.q
        neg = q < 0
        mag = abs(q)
        if i == 0:
            body = _frac_text(mag, latex)
        else:
            mono = var if i == 1 else (f"{var}^{{{i}}}" if latex else f"{var}^{i}")
            if mag == 1:
                body = mono
            elif latex or compact:
                body = f"{_frac_text(mag, latex, paren=not latex)}{' ' if latex else ''}{mono}"
            else:
                body = f"{_frac_text(mag, latex, paren=True)}*{mono}"
        pieces.append((neg, body))
    out = []
    for k, (neg, body) in enumerate(pieces):
        if compact:
            out.append(("-" if neg else ("+" if k else "")) + body)
        elif k == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _common_class(cf: ClosedForm):
    classes = set()
    for comp in (cf.A, cf.B, cf.C):
        for c in comp.num.coeffs:
            if c.q:
                classes.add(c.cls)
    if len(classes) == 1:
        return classes.pop()
    return None


def _rf_text(rf: RationalFunction, scale: ScaledRational, latex: bool) -> str:
    num = _poly_text(rf.num * scale, latex)
    if rf.den.is_constant():
        return num
    den = _poly_text(rf.den, latex)
    if latex:
        return rf"\frac{{{num}}}{{{den}}}"
    return f"({num})/({den})"


def render(cf: ClosedForm) -> RenderedForm:
    """Deterministic expanded text and LaTeX renderings."""
    if cf.is_zero():
        return RenderedForm("0", "0")
    cls = _common_class(cf)
    if cls is None:
        raise RepresentationError("coefficients do not share an irrational class")
    pre = ScaledRational(1, *cls)
    inv = ONE / pre
    texts = []
    for latex in (False, True):
        parts = []
        for comp, sym in ((cf.A, ""), (cf.B, "S(r)"), (cf.C, "L(r)")):
            if comp.is_zero():
                continue
            body = _rf_text(comp, inv, latex)
            if sym:
                nterms = sum(1 for c in comp.num.coeffs if c.q)
                if nterms > 1 or not comp.den.is_constant():
                    body = f"({body})"
                elif body == "1":
                    body = ""
                elif body == "-1":
                    body = "-"
                sep = "" if latex or body in ("", "-") else "·"
                body = f"{body}{sep}{sym}"
            parts.append(body)
        text = parts[0]
        for p in parts[1:]:
            text += " - " + p[1:] if p.startswith("-") else " + " + p
        if cls != (0, 0):
            text = f"{format_scalar(pre, latex)}{' ' if latex else '·'}({text})"
            if latex:
                text = text.replace("(", r"\left(", 1)
                text = text[::-1].replace(")", r"\right)"[::-1], 1)[::-1]
        texts.append(text)
    return RenderedForm(texts[0], texts[1])


def _split_poly(p: Poly, R: Fraction):
    """Return ``(content, r_power, edge_power, primitive)`` for rational ``p``.

    ``p = content * r**r_power * (R - r)**edge_power * primitive`` with
    ``primitive`` integral, content-free and positive at its lowest term.
    """
    i = p.order_at_zero()
    rest = Poly(p.coeffs[i:])
    edge = Poly([R, -1])
    m = 0
    while rest.degree >= 1:
        q, rem = rest.divmod(edge)
        if not rem.is_zero():
            break
        rest, m = q, m + 1
    qs = [c.q for c in rest.coeffs]
    den = math.lcm(*(q.denominator for q in qs))
    ints = [int(q * den) for q in qs]
    g = math.gcd(*ints)
    first = next(x for x in ints if x)
    if first < 0:
        g = -g
    prim = Poly(Fraction(x, g) for x in ints)
    return Fraction(g, den), i, m, prim


def render_factored(cf: ClosedForm) -> str:
    """Table-style text such as ``(4/3)(1-r)^2(2+r)``."""
    if cf.is_zero():
        return "0"
    cls = _common_class(cf)
    if cls is None:
        raise RepresentationError("coefficients do not share an irrational class")
    pre = ScaledRational(1, *cls)
    inv = ONE / pre
    R = cf.support_end
    edge_txt = f"{_frac_text(R)}-r"

    def factored(p: Poly, with_edge: bool):
        content, ip, m, prim = _split_poly(p * inv, R)
        if not with_edge and m:
            prim = prim * Poly([R, -1]) ** m
            m = 0
        out = ""
        if ip:
            out += "r" if ip == 1 else f"r^{ip}"
        if m:
            out += f"({edge_txt})" + (f"^{m}" if m > 1 else "")
        if prim.degree > 0:
            out += f"({_poly_text(prim, compact=True)})"
        return content, out

    if cf.is_polynomial():
        content, body = factored(cf.poly, True)
        c_txt = "" if content == 1 else ("-" if content == -1 else _frac_text(content, paren=True))
        pre_txt = "" if cls == (0, 0) else format_scalar(pre) + "·"
        return f"{pre_txt}{c_txt}{body or '1'}"
    if not (cf.A.is_zero() and cf.B.is_poly() and cf.C.is_poly()):
        return render(cf).text
    pieces = []
    for comp, sym in ((cf.B, "S(r)"), (cf.C, "L(r)")):
        if comp.is_zero():
            continue
        pieces.append((factored(comp.num * (ONE / comp.den.lead), False), sym))
    common = pieces[0][0][0]
    for (c, _), _ in pieces[1:]:
        common = Fraction(math.gcd(common.numerator, c.numerator), math.lcm(common.denominator, c.denominator))
    inner = []
    for (c, body), sym in pieces:
        k = c / common
        k_txt = "" if k == 1 else ("-" if k == -1 else _frac_text(k, paren=True))
        inner.append(f"{k_txt}{body}{sym}")
    text = inner[0]
    for p in inner[1:]:
        text += p if p.startswith("-") else "+" + p
    c_txt = "" if common == 1 else _frac_text(common, paren=True)
    pre_txt = "" if cls == (0, 0) else format_scalar(pre)
    return f"{c_txt}{pre_txt}[{text}]"


def form_hash(cf: ClosedForm) -> str:
    """Stable content hash of a canonical form."""
    payload = f"{cf.support_end}|{cf.A!r}|{cf.B!r}|{cf.C!r}"
    return hashlib.sha256(payload.encode()).hexdigest()[:16]
