import math
from fractions import Fraction as F

import numpy as np
import pytest

from wu_kernels.exact import Poly, RationalFunction, ScaledRational
from wu_kernels.forms import (
    ClosedForm,
    FDomainForm,
    NumericError,
    equals,
    eval as ev,
    eval_form,
    fform,
    fform_inv,
    form_hash,
    render,
    render_factored,
    rescale,
)
from wu_kernels.wu import askey, wu_ll, wu_ops

PHI00 = ClosedForm.polynomial([2, -1])
L_ONLY = ClosedForm(C=RationalFunction(1))


def test_fform_of_truncated_power():
    for ell in range(4):
        fd = fform(askey(ell))
        assert fd.support == F(1, 2)
        u = np.array([0.05, 0.2, 0.45])
        assert np.allclose(fd(u), (1 - 2 * u) ** ell, rtol=0, atol=1e-14)


def test_fform_constant():
    one = ClosedForm.polynomial([1])
    fd = fform(one)
    assert fd == FDomainForm({(0, 0, 0): ScaledRational(1)}, support=2)


def test_fform_log_becomes_lambda():
    fd = fform(L_ONLY)
    for u in (0.3, 1.0, 1.7):
        lam = math.log(math.sqrt(u) / (math.sqrt(2) + math.sqrt(2 - u)))
        assert fd(u) == pytest.approx(lam, abs=1e-12)
        # the same function seen through the r variable
        assert float(ev(L_ONLY, math.sqrt(2 * u))) == pytest.approx(lam, abs=1e-12)


def test_fform_inv_half_power():
    fd = FDomainForm({(1, 0, 0): ScaledRational(1)}, support=2)
    assert fform_inv(fd) == ClosedForm.polynomial([0, ScaledRational(1, a=-1)])


def test_round_trip_on_generated_forms():
    for ell in range(3):
        for twice in range(2 * ell + 1):
            cf = wu_ops(ell, F(twice, 2))
            assert fform_inv(fform(cf)) == cf


def test_eval_examples():
    assert ev(PHI00, 1.0) == pytest.approx(1.0)
    assert ev(wu_ops(2, 1), 3.0) == 0.0
    assert ev(wu_ops(1, F(1, 2)), 2.0) == pytest.approx(0.0, abs=1e-15)


def test_log_is_minus_atanh():
    r = np.linspace(0.05, 1.95, 11)
    S = np.sqrt(1 - (r / 2) ** 2)
    assert np.allclose(eval_form(L_ONLY, r), -np.arctanh(S), atol=1e-13)


def test_removable_pole_evaluates():
    # (r^2 - 1)/(r - 1) = r + 1, written with an explicit pole at 1
    cf = ClosedForm(A=RationalFunction(Poly([-1, 0, 1]), Poly([-1, 1]), reduce=False))
    assert float(ev(cf, 1.0)) == pytest.approx(2.0, abs=1e-7)


def test_genuine_singularity_at_zero_is_reported():
    cf = ClosedForm(A=RationalFunction(Poly([1]), Poly([0, 1])))
    with pytest.raises(NumericError):
        ev(cf, 0.0)


def test_equals():
    x = wu_ops(1, 1)
    assert equals(x, x)
    assert equals(x, wu_ll(1))
    assert not equals(x, x * 2)


def test_rescale():
    assert rescale(PHI00, 2) == ClosedForm.polynomial([2, -2], support_end=1)
    assert rescale(PHI00, 1) is PHI00
    cf = wu_ops(2, F(1, 2))
    assert rescale(rescale(cf, 2), F(1, 2)) == cf


def test_render_text():
    assert render(PHI00).text == "2 - r"
    txt = render(wu_ops(1, F(1, 2))).text
    assert txt.startswith("sqrt(2/pi)·(")
    assert "S(r)" in txt and "L(r)" in txt


def test_render_latex_has_fraction():
    assert "\\frac" in render(wu_ops(1, 1)).latex


def test_render_factored():
    assert render_factored(rescale(wu_ops(1, 1), 2)) == "(4/3)(1-r)^2(2+r)"


def test_form_hash_stable():
    assert len(form_hash(wu_ops(2, 1))) == 16
    assert form_hash(wu_ops(1, 1)) == form_hash(wu_ll(1))
    assert form_hash(wu_ops(1, 1)) != form_hash(wu_ops(1, 0))


def test_log_term_at_subnormal_radius():
    from wu_kernels.wu import wu_ops

    cf = wu_ops(1, F(1, 2))
    assert eval_form(cf, 5e-324) == eval_form(cf, 0.0)
