import math
from fractions import Fraction as F

import numpy as np
import pytest
from scipy import special as sps

from wu_kernels.exact import pochhammer
from wu_kernels.special import (
    PROFILES,
    DomainError,
    _asymptotic,
    _miller,
    bessel_j,
    bessel_zero,
    get_profile,
    h_nu,
    hyp2f1,
    hyp2f1_exact,
    hyp2f1_terminating,
)
from wu_kernels.tables import BESSEL_ZEROS


def test_bessel_examples():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(0.5, math.pi) == pytest.approx(0.0, abs=1e-15)
    assert abs(bessel_j(0, 2.40483)) < 1e-5


def test_bessel_against_reference(rng):
    nus = [0, 0.25, 0.5, 1, 1.5, 2.5, 3.7, 4.5, 7, 12.5, 30]
    x = np.concatenate([rng.uniform(0, 10, 40), rng.uniform(10, 200, 40), [0.0, 8.0, 25.0, 1e4]])
    for nu in nus:
        assert np.max(np.abs(bessel_j(nu, x) - sps.jv(nu, x))) < 1e-12


def test_three_term_recurrence():
    x = np.geomspace(0.1, 100, 200)
    for twice in range(2, 11):
        nu = twice / 2
        lhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x) - 2 * nu / x * bessel_j(nu, x)
        assert np.all(np.abs(lhs) <= 1e-8 * np.maximum(1, np.abs(bessel_j(nu, x))))


def test_series_asymptotic_continuity():
    cross = get_profile().series_asymptotic_crossover
    x = np.linspace(cross - 2, cross + 8, 50)
    for nu in (0.0, 0.5, 1.0, 2.5):
        assert np.max(np.abs(_miller(nu, x) - _asymptotic(nu, x))) < 1e-8


def test_bessel_domain():
    with pytest.raises(DomainError):
        bessel_j(-1, 1.0)
    with pytest.raises(DomainError):
        bessel_j(1, -1.0)


def test_h_nu_examples():
    for nu in (0, 0.5, 1.5, 3):
        assert h_nu(nu, 0.0) == pytest.approx(1 / math.gamma(nu + 1), rel=1e-15)
    u = np.array([0.1, 1.0, 9.0, 100.0])
    assert np.allclose(h_nu(0.5, u), np.sin(2 * np.sqrt(u)) / np.sqrt(np.pi * u), rtol=1e-13, atol=0)
    assert abs(h_nu(1.5, 4.49341**2 / 4)) < 1e-5


def test_h_nu_negative_order():
    x = np.array([0.5, 3.0, 10.0, 40.0])
    for nu in (-0.5, -0.25, -0.75):
        ref = sps.jv(nu, x) / (x / 2) ** nu
        assert np.allclose(h_nu(nu, x * x / 4), ref, rtol=1e-12, atol=1e-14)
    with pytest.raises(DomainError):
        h_nu(-1, 1.0)


def test_zero_examples():
    assert bessel_zero(0.5, 1) == pytest.approx(math.pi, abs=1e-10)
    assert bessel_zero(0, 1) == pytest.approx(2.40483, abs=1e-4)
    assert bessel_zero(2.5, 6) == pytest.approx(21.8539, abs=1e-3)


def test_zeros_match_table_and_reference():
    for nu, row in BESSEL_ZEROS.items():
        for m, z in enumerate(row, start=1):
            got = bessel_zero(nu, m)
            assert abs(got - z) <= 1e-4 * z
            if nu == int(nu):
                assert got == pytest.approx(sps.jn_zeros(int(nu), m)[-1], abs=1e-12)


def test_zero_interlacing():
    for nu in (0.0, 0.5, 1.0, 1.5, 2.0):
        for m in range(1, 6):
            assert bessel_zero(nu, m) < bessel_zero(nu + 0.5, m) < bessel_zero(nu, m + 1)


def test_hyp2f1_examples():
    assert hyp2f1(0.3, 0.7, 1.9, 0.0) == 1.0
    z = 0.37
    assert hyp2f1(-1, 0.5, 1.5, z) == pytest.approx(1 - z / 3, rel=1e-15)
    assert hyp2f1_exact(-1, F(1, 2), F(3, 2), 1) == F(2, 3)


def test_hyp2f1_nonterminating_matches_reference():
    for a, b, c, z in [(0.5, 1.0, 2.5, 0.3), (-0.5, 1.0, 1.5, 0.9), (1.2, 2.3, 3.9, -0.7)]:
        assert hyp2f1(a, b, c, z) == pytest.approx(sps.hyp2f1(a, b, c, z), rel=1e-10)


def test_hyp2f1_domain():
    with pytest.raises(DomainError):
        hyp2f1(0.5, 0.5, 1.5, 1.0)
    with pytest.raises(DomainError):
        hyp2f1(0.5, 0.5, -2, 0.3)
    with pytest.raises(DomainError):
        hyp2f1_terminating(0.5, 0.5, 1)


def test_gauss_summation_exact():
    for ell in range(21):
        assert hyp2f1_exact(-ell, F(1, 2), F(3, 2), 1) == pochhammer(1, ell) / pochhammer(F(3, 2), ell)


def test_profiles(monkeypatch):
    assert get_profile("strict").abs_tol < get_profile("fast").abs_tol
    monkeypatch.setenv("WU_KERNELS_PROFILE", "strict")
    assert get_profile() is PROFILES["strict"]
    with pytest.raises(ValueError):
        get_profile("nope")
