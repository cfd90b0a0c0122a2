"""Verification suites: each returns per-case records with expected and computed values."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fourier import decay_check, fourier_wu, hankel_numeric
from .forms import rescale, render_factored
from .operators import opD, opD_half
from .special import bessel_zero, get_profile
from .tables import BESSEL_ZEROS, TABLE_FACTOR, WU_TABLE
from .wu import wu_closed, wu_from_wendland, wu_ll, wu_ops

__all__ = ["CaseResult", "SUITES", "run_suite", "walk_grid"]


@dataclass
class CaseResult:
    suite: str
    case: str
    expected: object
    computed: object
    tolerance: object
    passed: bool
    note: str = ""

    def as_dict(self) -> dict:
        out = {
            "suite": self.suite,
            "case": self.case,
            "expected": self.expected,
            "computed": self.computed,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.note:
            out["note"] = self.note
        return out


def _halves(ell: int):
    return [Fraction(j, 2) for j in range(2 * ell + 1)]


def walk_grid() -> np.ndarray:
    return np.geomspace(0.1, 20.0, 40)


def suite_table2(profile=None) -> list[CaseResult]:
    out = []
    for e in WU_TABLE:
        computed = rescale(wu_ops(e.ell, e.k), 2) * TABLE_FACTOR
        note = f"table entry = {TABLE_FACTOR}*phi(2r)"
        if e.note:
            note += "; " + e.note
        out.append(
            CaseResult(
                "table2",
                f"phi_{{{e.ell},{e.k}}} d={e.dimension}",
                e.printed,
                render_factored(computed),
                "exact",
                computed == e.form,
                note,
            )
        )
    return out


def suite_zeros(profile=None) -> list[CaseResult]:
    out = []
    for nu, row in BESSEL_ZEROS.items():
        for m, expected in enumerate(row, start=1):
            z = bessel_zero(nu, m)
            ok = abs(z - expected) <= 1e-4 * expected
            note = ""
            if nu == 0.5:
                ok = ok and abs(z - m * math.pi) <= 1e-10
                note = "also |z - m*pi| <= 1e-10"
            out.append(CaseResult("zeros", f"j({nu:g},{m})", expected, z, 1e-4, ok, note))
    return out


def suite_routes(profile=None) -> list[CaseResult]:
    out = []
    for ell in range(5):
        for k in _halves(ell):
            ops = wu_ops(ell, k)
            ok = ops == wu_closed(ell, k) and rescale(ops, 2) == wu_from_wendland(ell, k)
            out.append(CaseResult("routes", f"ops=closed=wendland ({ell},{k})", "equal", "equal" if ok else "differ", "exact", ok))
    for ell in range(7):
        ok = wu_ops(ell, ell) == wu_ll(ell)
        out.append(CaseResult("routes", f"ops=ball ({ell},{ell})", "equal", "equal" if ok else "differ", "exact", ok))
    return out


def suite_walk(profile=None, tol: float = 1e-6) -> list[CaseResult]:
    profile = get_profile(profile)
    rs = walk_grid()
    out = []
    for ell in (1, 2, 3):
        phi = wu_ops(ell, 0)
        base = hankel_numeric(phi, 1, rs, profile)
        half = hankel_numeric(opD_half(phi), 2, rs, profile)
        full = hankel_numeric(opD(phi), 3, rs, profile)
        for name, other in (("half step d=1->2", half), ("full step d=1->3", full)):
            res = float(np.max(np.abs(base - other)))
            out.append(CaseResult("walk", f"phi_{{{ell},0}} {name}", 0.0, res, tol, res <= tol))
    return out


DECAY_CASES = ((1, Fraction(1)), (2, Fraction(1)), (2, Fraction(1, 2)), (3, Fraction(3, 2)))


def suite_decay(profile=None) -> list[CaseResult]:
    out = []
    for ell, k in DECAY_CASES:
        rep = decay_check(ell, k, ell + 1)
        out.append(
            CaseResult(
                "decay",
                f"slope phi_{{{ell},{k}}} s={ell + 1}",
                rep.target_slope,
                rep.slope_estimate,
                0.2,
                rep.passed,
                f"sup of weighted spectrum = {rep.sup:.10g}",
            )
        )
        d_l = math.gamma(ell + 1) ** 2 * math.sqrt(2 * math.pi) / 2
        for m in (1, 2, 3):
            z = bessel_zero(ell + 0.5, m)
            v = abs(fourier_wu(ell, k, z))
            out.append(CaseResult("decay", f"zero phi_{{{ell},{k}}} m={m}", 0.0, v, 1e-10 * d_l, v <= 1e-10 * d_l))
    return out


SUITES = {
    "table2": suite_table2,
    "zeros": suite_zeros,
    "routes": suite_routes,
    "walk": suite_walk,
    "decay": suite_decay,
}


def run_suite(name: str, profile=None) -> list[CaseResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](profile)
