import json
import math
from fractions import Fraction as F

import numpy as np
import pytest

from wu_kernels.fourier import (
    DecayReport,
    decay_check,
    f_transform,
    fourier_wu,
    hankel_numeric,
    hankel_transform,
    imq_transform,
    isometry_check,
)
from wu_kernels.forms import eval_form
from wu_kernels.special import ConvergenceError, NumericProfile, bessel_zero, h_nu
from wu_kernels.wu import ConstraintError, wu_numeric, wu_ops

TWO_SQRT_2_OVER_PI = 2 * math.sqrt(2 / math.pi)


def d_l(ell):
    return math.gamma(ell + 1) ** 2 * math.sqrt(2 * math.pi) / 2


def test_fourier_wu_at_origin():
    assert fourier_wu(0, 0, 0.0) == pytest.approx(TWO_SQRT_2_OVER_PI, rel=1e-15)


def test_fourier_wu_nonnegative_and_zero_at_bessel_zeros():
    r = np.linspace(0, 60, 3001)
    for ell in range(4):
        assert np.all(fourier_wu(ell, 0, r) >= 0)
        for m in (1, 2, 3):
            assert abs(fourier_wu(ell, ell, bessel_zero(ell + 0.5, m))) <= 1e-10 * d_l(ell)


def test_fourier_wu_rejects_k_above_ell():
    with pytest.raises(ConstraintError):
        fourier_wu(1, 2, 1.0)


def test_hankel_of_phi00_at_zero():
    assert hankel_numeric(wu_ops(0, 0), 1, 0.0) == pytest.approx(TWO_SQRT_2_OVER_PI, abs=1e-8)


@pytest.mark.parametrize("ell", [0, 1, 2, 3])
def test_hankel_matches_closed_transform(ell):
    r = np.geomspace(0.1, 20, 40)
    for twice in range(2 * ell + 1):
        k = F(twice, 2)
        got = hankel_numeric(wu_ops(ell, k), 2 * k + 1, r)
        assert np.max(np.abs(got - fourier_wu(ell, k, r))) <= 1e-6
        assert np.all(got >= -1e-8)


def test_inverse_transform_of_step():
    # F_0[H_1](r) = 1 for r < 1; Gaussian damping blurs only near the jump at r = 1
    for r in (0.1, 0.5, 0.9):
        gap = math.sqrt(2) - math.sqrt(2 * r)
        eps = gap * gap / 120
        val = f_transform(lambda t: h_nu(1.0, t), 0.0, r, math.sqrt(40 / eps), damping=eps)
        assert val == pytest.approx(1.0, abs=1e-8)


def test_self_inversion():
    phi = wu_ops(3, 1)
    r = np.linspace(0.1, 1.9, 7)
    back = hankel_transform(lambda w: hankel_numeric(phi, 3, w), 3, r, 40.0, grade=(True, False))
    assert np.max(np.abs(back - eval_form(phi, r))) <= 1e-5


def test_fractional_dimension_numeric_routes_agree():
    # space-domain convolution versus inverse transform of d_l H^2 in dimension 1.5
    for r in (0.3, 1.0, 1.6):
        space = wu_numeric(1, 0.25, r)
        spectral = hankel_transform(lambda w: fourier_wu(1, 0.25, w), 1.5, r, 400.0, grade=(True, False))
        assert space == pytest.approx(spectral, abs=1e-6)


def test_hankel_non_convergence_is_reported():
    tight = NumericProfile(abs_tol=1e-300, rel_tol=1e-12, max_refinement=2)
    with pytest.raises(ConvergenceError):
        hankel_numeric(wu_ops(1, F(1, 2)), 2, [1.0, 7.0], tight)


def test_imq_examples():
    assert imq_transform(3, 0.0) == 1.0
    assert imq_transform(1, 1.0) == 0.5
    assert imq_transform(2, 3.0) == pytest.approx(0.01)
    with pytest.raises(ConstraintError):
        imq_transform(0, 1.0)


def test_decay_example():
    rep = decay_check(1, 1, 2, 100, 400)
    assert isinstance(rep, DecayReport)
    assert rep.passed
    assert rep.slope_estimate == pytest.approx(-4, abs=0.2)
    assert rep.sup == max(rep.weighted_values)
    json.dumps(rep.as_dict())


def test_decay_hypothesis_range():
    with pytest.raises(ConstraintError):
        decay_check(1, 1, 1.4, 100, 100)
    with pytest.raises(ConstraintError):
        decay_check(1, 1, 2.5, 100, 100)


def test_weighted_value_vanishes_at_first_zero():
    z = bessel_zero(1.5, 1)
    assert fourier_wu(1, 1, z) / imq_transform(2, z) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("ell", [0, 1, 2])
@pytest.mark.parametrize("signal", ["gaussian", "mexican-hat", "kernel"])
def test_isometry(ell, signal):
    assert isometry_check(ell, signal) <= 1e-3


def test_isometry_zero_signal():
    assert isometry_check(1, "zero") == 0.0


def test_isometry_unknown_signal():
    with pytest.raises(KeyError):
        isometry_check(1, "sawtooth")
