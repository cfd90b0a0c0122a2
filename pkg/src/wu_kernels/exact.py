"""Exact arithmetic: rationals, the field Q(sqrt 2, sqrt pi) restricted to
monomials, dense polynomials and reduced rational functions.

A :class:`ScaledRational` is ``q * 2**(a/2) * pi**(b/2)``.  Every constant
that appears in the Wu and Wendland constructions (Gamma at half-integers,
Beta values, powers of two) lives in this set, which is closed under
multiplication.  Addition is only allowed between values sharing the same
irrational part, so an inconsistent derivation fails loudly instead of
producing a silently wrong number.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Rational",
    "IncompatibleClassError",
    "ScaledRational",
    "as_scaled",
    "sqrt_rational",
    "gamma_half",
    "pochhammer",
    "beta",
    "binomial",
    "Poly",
    "RationalFunction",
]

Rational = Fraction


class IncompatibleClassError(ArithmeticError):
    """Raised when adding values with different irrational parts."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _half_integer(x, what="argument") -> Fraction:
    x = _as_fraction(x)
    if (2 * x).denominator != 1:
        raise ValueError(f"{what} must be a half-integer, got {x}")
    return x


class ScaledRational:
    """Exact number ``q * 2**(a/2) * pi**(b/2)``.

    The representation is canonical: ``a`` is reduced to 0 or 1 by moving
    whole powers of two into ``q``, and zero is stored with ``a = b = 0``.
    ``b`` cannot be reduced since pi is transcendental.
    """

    __slots__ = ("q", "a", "b")

    def __init__(self, q=0, a: int = 0, b: int = 0):
        q = _as_fraction(q)
        a = int(a)
        b = int(b)
        if q == 0:
            a = b = 0
        else:
            q = q * Fraction(2) ** (a // 2)
            a = a % 2
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("ScaledRational is immutable")

    @property
    def cls(self) -> tuple[int, int]:
        """Irrational part ``(a, b)``; values add only within one class."""
        return (self.a, self.b)

    def is_zero(self) -> bool:
        return self.q == 0

    def is_rational(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return self.q != 0

    def __eq__(self, other):
        try:
            other = as_scaled(other)
        except TypeError:
            return NotImplemented
        return (self.q, self.a, self.b) == (other.q, other.a, other.b)

    def __hash__(self):
        if self.a == 0 and self.b == 0:
            return hash(self.q)
        return hash((self.q, self.a, self.b))

    def __repr__(self):
        return f"ScaledRational({self.q}, a={self.a}, b={self.b})"

    def __str__(self):
        from .forms import format_scalar

        return format_scalar(self)

    def __add__(self, other):
        try:
            other = as_scaled(other)
        except TypeError:
            return NotImplemented
        if other.q == 0:
            return self
        if self.q == 0:
            return other
        if self.cls != other.cls:
            raise IncompatibleClassError(f"cannot add {self!r} and {other!r}")
        return ScaledRational(self.q + other.q, self.a, self.b)

    __radd__ = __add__

    def __neg__(self):
        return ScaledRational(-self.q, self.a, self.b)

    def __sub__(self, other):
        try:
            other = as_scaled(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return as_scaled(other) - self

    def __mul__(self, other):
        try:
            other = as_scaled(other)
        except TypeError:
            return NotImplemented
        return ScaledRational(self.q * other.q, self.a + other.a, self.b + other.b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = as_scaled(other)
        except TypeError:
            return NotImplemented
        if other.q == 0:
            raise ZeroDivisionError("division by zero ScaledRational")
        return ScaledRational(self.q / other.q, self.a - other.a, self.b - other.b)

    def __rtruediv__(self, other):
        return as_scaled(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are exact")
        if n < 0:
            return ScaledRational(1) / self ** (-n)
        return ScaledRational(self.q**n, self.a * n, self.b * n)

    def __float__(self):
        return float(self.q) * math.sqrt(2.0) ** self.a * math.sqrt(math.pi) ** self.b

    def normalized(self) -> "ScaledRational":
        return ScaledRational(self.q, self.a, self.b)


def as_scaled(x) -> ScaledRational:
    """Coerce an int, Fraction or ScaledRational."""
    if isinstance(x, ScaledRational):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return ScaledRational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to ScaledRational")


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    s = math.isqrt(n)
    return s if s * s == n else None


def sqrt_rational(x) -> ScaledRational:
    """Exact square root of a rational ``x`` if it lies in the field.

    Works when ``x`` is a rational square or twice a rational square.
    """
    x = _as_fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return ScaledRational(0)
    p, q = x.numerator, x.denominator
    s = _isqrt_exact(p * q)
    if s is not None:
        return ScaledRational(Fraction(s, q))
    s = _isqrt_exact(2 * p * q)
    if s is not None:
        return ScaledRational(Fraction(s, 2 * q), a=1)
    raise ValueError(f"sqrt({x}) is not representable")


def gamma_half(x) -> ScaledRational:
    """Exact Gamma function at a positive half-integer."""
    x = _half_integer(x, "gamma_half argument")
    if x <= 0:
        raise ValueError(f"gamma_half requires x > 0, got {x}")
    if x.denominator == 1:
        return ScaledRational(math.factorial(int(x) - 1))
    n = int(x - Fraction(1, 2))
    # Gamma(n + 1/2) = (2n)! / (4^n n!) * sqrt(pi)
    return ScaledRational(
        Fraction(math.factorial(2 * n), 4**n * math.factorial(n)), b=1
    )


def pochhammer(a, n: int) -> Fraction:
    """Rising factorial ``a (a+1) ... (a+n-1)``."""
    a = _as_fraction(a)
    if n < 0:
        raise ValueError("pochhammer requires n >= 0")
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def beta(a, b) -> ScaledRational:
    """Exact Beta function at positive half-integers."""
    a = _half_integer(a)
    b = _half_integer(b)
    if a <= 0 or b <= 0:
        raise ValueError(f"beta requires positive arguments, got ({a}, {b})")
    return gamma_half(a) * gamma_half(b) / gamma_half(a + b)


def binomial(n: int, k: int) -> int:
    return math.comb(n, k)


ZERO = ScaledRational(0)
ONE = ScaledRational(1)


class Poly:
    """Dense polynomial in ``r`` with ScaledRational coefficients (ascending)."""

    __slots__ = ("coeffs", "_float")

    def __init__(self, coeffs: Iterable = ()):
        c = [as_scaled(x) for x in coeffs]
        while c and c[-1].q == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "_float", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, n: int, c=1) -> "Poly":
        return cls([0] * n + [c])

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self) -> ScaledRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, i: int) -> ScaledRational:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else ZERO

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ScaledRational)):
            s = as_scaled(other)
            return Poly(c * s for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x.q == 0:
                continue
            for j, y in enumerate(other.coeffs):
                if y.q:
                    out[i + j] = out[i + j] + x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derivative(self) -> "Poly":
        return Poly(c * i for i, c in enumerate(self.coeffs) if i > 0)

    def scale_arg(self, c) -> "Poly":
        """Return ``p(c*r)``."""
        c = as_scaled(c)
        return Poly(x * c**i for i, x in enumerate(self.coeffs))

    def compose(self, other: "Poly") -> "Poly":
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * other + Poly([c])
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        quo = [ZERO] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c.q == 0:
                continue
            f = c / lead
            quo[i - dq] = f
            for j, y in enumerate(other.coeffs):
                rem[i - dq + j] = rem[i - dq + j] - f * y
            rem[i] = ZERO
        return Poly(quo), Poly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_poly(other))[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (ONE / self.lead)

    def order_at_zero(self) -> int:
        """Multiplicity of the root ``r = 0``."""
        for i, c in enumerate(self.coeffs):
            if c.q:
                return i
        raise ValueError("zero polynomial has infinite order")

    def exact_value(self, x) -> ScaledRational:
        x = as_scaled(x)
        out = ZERO
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def float_coeffs(self):
        if self._float is None:
            object.__setattr__(self, "_float", tuple(float(c) for c in self.coeffs))
        return self._float

    def __call__(self, x):
        out = 0.0 * x
        for c in reversed(self.float_coeffs()):
            out = out * x + c
        return out


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (list, tuple)):
        return Poly(x)
    return Poly([x])


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor."""
    a, b = p.monic(), q.monic()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic() if not a.is_zero() else Poly([1])


class RationalFunction:
    """Reduced quotient ``num/den`` with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduce: bool = True):
        num = _as_poly(num)
        den = Poly([1]) if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly([1])
        elif reduce:
            if not den.is_constant():
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num = num // g
                    den = den // g
            lead = den.lead
            if lead != ONE:
                num = num * (ONE / lead)
                den = den * (ONE / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        return cls(x)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Poly, int, Fraction, ScaledRational)):
            return self == RationalFunction(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def __add__(self, other):
        other = RationalFunction.coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ScaledRational)):
            return RationalFunction(self.num * other, self.den, reduce=False)
        other = RationalFunction.coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, ScaledRational)):
            return RationalFunction(self.num * (ONE / as_scaled(other)), self.den, reduce=False)
        other = RationalFunction.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def derivative(self) -> "RationalFunction":
        n, d = self.num, self.den
        if d.is_constant():
            return RationalFunction(n.derivative(), d)
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def scale_arg(self, c) -> "RationalFunction":
        return RationalFunction(self.num.scale_arg(c), self.den.scale_arg(c))

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def pole_order_at_zero(self) -> int:
        if self.is_zero():
            return 0
        return max(self.den.order_at_zero() - self.num.order_at_zero(), 0)

    def laurent_at_zero(self, upto: int) -> dict[int, ScaledRational]:
        """Laurent coefficients of ``r**i`` for ``i < upto`` at ``r = 0``."""
        if self.is_zero():
            return {}
        m = self.den.order_at_zero()
        dt = Poly(self.den.coeffs[m:])
        n = self.num
        count = upto + m
        if count <= 0:
            return {}
        inv0 = ONE / dt.coeff(0)
        series: list[ScaledRational] = []
        for i in range(count):
            s = n.coeff(i)
            for j in range(1, min(i, dt.degree) + 1):
                s = s - dt.coeff(j) * series[i - j]
            series.append(s * inv0)
        return {i - m: c for i, c in enumerate(series) if c.q}


def poly_from_fractions(values: Sequence) -> Poly:
    return Poly(Fraction(v) for v in values)
