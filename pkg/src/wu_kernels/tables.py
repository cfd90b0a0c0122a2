"""Published reference values: small Bessel zeros and rescaled Wu functions.

Wu entries are exact forms on ``[0, 1]`` with ``S(r) = sqrt(1 - r**2)`` and
``L(r) = log(r / (1 + S(r)))``.  They equal ``2 * phi_{l,k}(2r)`` under the
convolution normalization used throughout this package.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import Poly, RationalFunction, ScaledRational
from .forms import ClosedForm

__all__ = ["BESSEL_ZEROS", "WuTableEntry", "WU_TABLE", "TABLE_FACTOR"]

# j_{nu,k} for k = 1..6
BESSEL_ZEROS = {
    0.0: (2.40483, 5.52008, 8.65373, 11.7915, 14.9309, 18.0711),
    0.5: (3.14159, 6.28319, 9.42478, 12.5664, 15.708, 18.8496),
    1.0: (3.83171, 7.01559, 10.1735, 13.3237, 16.4706, 19.6159),
    1.5: (4.49341, 7.72525, 10.9041, 14.0662, 17.2208, 20.3713),
    2.0: (5.13562, 8.41724, 11.6198, 14.796, 17.9598, 21.117),
    2.5: (5.76346, 9.09501, 12.3229, 15.5146, 18.689, 21.8539),
}

# published entries are twice phi_{l,k}(2r)
TABLE_FACTOR = 2

SQRT_2_OVER_PI = ScaledRational(1, a=1, b=-1)


@dataclass(frozen=True)
class WuTableEntry:
    ell: int
    k: Fraction
    printed: str
    form: ClosedForm
    note: str = ""

    @property
    def dimension(self) -> int:
        return int(2 * self.k + 1)


def _poly(form_factor: Fraction, edge_power: int, inner) -> ClosedForm:
    p = Poly([1, -1]) ** edge_power * Poly(inner) * form_factor
    return ClosedForm(A=RationalFunction(p), support_end=1)


def _sl(pre: Fraction, q, p) -> ClosedForm:
    c = SQRT_2_OVER_PI * pre
    return ClosedForm(
        B=RationalFunction(Poly(q) * c), C=RationalFunction(Poly(p) * c), support_end=1
    )


def _even(*coeffs):
    """Coefficients of ``sum c_i r**(2i)`` as a dense list."""
    out = []
    for c in coeffs:
        out.extend([c, 0])
    return out[:-1]


def _shift(n: int, coeffs):
    return [0] * n + list(coeffs)


F = Fraction
WU_TABLE = (
    WuTableEntry(0, F(0), "4(1-r)", _poly(F(4), 1, [1])),
    WuTableEntry(1, F(0), "32/15(1-r)^3(1+3r+r^2)", _poly(F(32, 15), 3, [1, 3, 1])),
    WuTableEntry(2, F(0), "512/315(1-r)^5(1+5r+9r^2+5r^3+r^4)", _poly(F(512, 315), 5, [1, 5, 9, 5, 1])),
    WuTableEntry(
        1, F(1, 2), "2sqrt(2/pi)[(2+r^2)S+r^2(4-r^2)L]",
        _sl(F(2), _even(2, 1), _shift(2, _even(4, -1))),
    ),
    WuTableEntry(
        2, F(1, 2), "2/9sqrt(2/pi)[(16-88r^2-42r^4+9r^6)S+3r^4(-48+16r^2-3r^4)L]",
        _sl(F(2, 9), _even(16, -88, -42, 9), _shift(4, _even(-144, 48, -9))),
    ),
    WuTableEntry(
        3, F(1, 2), "2/75sqrt(2/pi)[(128-896+3168r^4+1480r^6-490r^8+75r^10)S+15r^6(320-120r^2+36r^4-5r^6)L]",
        _sl(F(2, 75), _even(128, -896, 3168, 1480, -490, 75), _shift(6, _even(4800, -1800, 540, -75))),
        note="printed '-896' read as '-896r^2' (the r^2 factor is missing in print)",
    ),
    WuTableEntry(1, F(1), "8/3(1-r)^2(2+r)", _poly(F(8, 3), 2, [2, 1])),
    WuTableEntry(2, F(1), "128/105(1-r)^4(4+16r+12r^2+3r^3)", _poly(F(128, 105), 4, [4, 16, 12, 3])),
    WuTableEntry(
        3, F(1), "1024/1155(1-r)^6(6+36r+82r^2+72r^3+30r^4+5r^5)",
        _poly(F(1024, 1155), 6, [6, 36, 82, 72, 30, 5]),
    ),
    WuTableEntry(
        2, F(3, 2), "4/3sqrt(2/pi)[(8+10r^2-3r^4)S+3r^2(8-4r^2+r^4)L]",
        _sl(F(4, 3), _even(8, 10, -3), _shift(2, _even(24, -12, 3))),
    ),
    WuTableEntry(
        3, F(3, 2), "2/5sqrt(2/pi)[(32-224r^2-188r^4+80r^6-15r^8)S+15r^4(-32+16r^2-6r^4+r^6)L]",
        _sl(F(2, 5), _even(32, -224, -188, 80, -15), _shift(4, _even(-480, 240, -90, 15))),
    ),
    WuTableEntry(
        4, F(3, 2), "8/525sqrt(2/pi)[q S + p L]",
        _sl(
            F(8, 525),
            _even(1024, -8448, 36224, 25520, -12600, 3850, -525),
            _shift(6, _even(105 * 640, -105 * 320, 105 * 144, -105 * 40, 105 * 5)),
        ),
    ),
)
