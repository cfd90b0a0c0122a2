import math
from fractions import Fraction as F

import numpy as np
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from wu_kernels.exact import Poly, RationalFunction, ScaledRational
from wu_kernels.forms import ClosedForm, eval_form, fform, fform_inv, rescale
from wu_kernels.fourier import fourier_wu, imq_transform
from wu_kernels.operators import opD, opD_half, opI
from wu_kernels.wu import wu_ops

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)
nonzero = fractions.filter(lambda q: q != 0)
small_int = st.integers(-4, 4)
scaled = st.builds(ScaledRational, fractions, small_int, small_int)
same_class = st.tuples(small_int, small_int).flatmap(
    lambda ab: st.tuples(*(st.builds(ScaledRational, fractions, st.just(ab[0] + 2 * j), st.just(ab[1])) for j in (0, 1, -1)))
)
polys = st.lists(fractions, max_size=6).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
half_integers = st.integers(0, 8).map(lambda n: F(n, 2))
ell_k = st.integers(0, 4).flatmap(lambda ell: st.tuples(st.just(ell), st.integers(0, 2 * ell).map(lambda j: F(j, 2))))

fast = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@given(scaled)
def test_canonical_form_is_idempotent(x):
    y = ScaledRational(x.q, x.a, x.b)
    assert y == x and (y.q, y.a, y.b) == (x.q, x.a, x.b)
    assert x.a in (0, 1)


@given(fractions, small_int, small_int)
def test_canonical_value_is_preserved(q, a, b):
    x = ScaledRational(q, a, b)
    assert math.isclose(float(x), float(q) * 2 ** (a / 2) * math.pi ** (b / 2), rel_tol=1e-12, abs_tol=1e-300)


@given(same_class)
def test_addition_in_one_class(xyz):
    x, y, z = xyz
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x - x == ScaledRational(0)


@given(scaled, scaled, scaled)
def test_multiplication_laws(x, y, z):
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * ScaledRational(1) == x


@given(same_class, scaled)
def test_distributive(xyz, w):
    x, y, _ = xyz
    assert w * (x + y) == w * x + w * y


@given(scaled.filter(lambda x: not x.is_zero()))
def test_inverse(x):
    assert x * (ScaledRational(1) / x) == ScaledRational(1)


@given(polys, polys, polys)
def test_poly_ring(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(polys, nonzero_polys)
def test_poly_division(p, q):
    quo, rem = p.divmod(q)
    assert quo * q + rem == p
    assert rem.is_zero() or rem.degree < q.degree


@given(polys, polys)
def test_poly_derivative_leibniz(p, q):
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


@given(nonzero_polys, nonzero_polys, nonzero_polys)
def test_rational_function_cancels_common_factor(p, q, g):
    reduced = RationalFunction(p * g, q * g)
    assert reduced == RationalFunction(p, q)
    assert reduced.den.lead == ScaledRational(1)


@given(polys, nonzero_polys, st.floats(0.1, 3.0))
def test_rational_function_value(p, q, x):
    assume(abs(q(x)) > 1e-3)
    rf = RationalFunction(p, q)
    assert math.isclose(rf.num(x) / rf.den(x), p(x) / q(x), rel_tol=1e-9, abs_tol=1e-9)


@fast
@given(ell_k)
def test_fform_round_trip(lk):
    cf = wu_ops(*lk)
    assert fform_inv(fform(cf)) == cf


@fast
@given(ell_k, st.fractions(min_value=F(1, 4), max_value=4, max_denominator=8))
def test_rescale_inverse(lk, c):
    cf = wu_ops(*lk)
    assert rescale(rescale(cf, c), 1 / c) == cf


@given(st.lists(fractions, min_size=1, max_size=6), st.fractions(min_value=1, max_value=4, max_denominator=4))
def test_integral_inverts_derivative(coeffs, R):
    # even in r and vanishing to second order at the support end
    p = Poly(coeffs).compose(Poly([0, 0, 1])) * Poly([R * R, 0, -1]) ** 2
    cf = ClosedForm(A=RationalFunction(p), support_end=R)
    assert opI(opD(cf)) == cf


@fast
@given(st.integers(1, 5), st.integers(0, 4))
def test_degree_law(ell, k):
    assume(k < ell)
    before = wu_ops(ell, k).A.num.degree
    after = opD(wu_ops(ell, k)).A.num.degree
    assert after == before - 2


@fast
@given(st.integers(1, 4).flatmap(lambda ell: st.tuples(st.just(ell), st.integers(0, 2 * ell - 2).map(lambda j: F(j, 2)))))
def test_half_steps_compose_to_full_step(lk):
    ell, k = lk
    cf = wu_ops(ell, k)
    assert opD_half(opD_half(cf)) == opD(cf)


@fast
@given(ell_k, st.floats(0.0, 60.0))
def test_fourier_nonnegative(lk, r):
    assert fourier_wu(*lk, r) >= 0.0


@given(st.floats(0.1, 10.0), st.floats(0.0, 50.0), st.floats(0.0, 50.0))
def test_imq_monotone(s, r1, r2):
    lo, hi = sorted((r1, r2))
    assert imq_transform(s, hi) <= imq_transform(s, lo) <= 1.0


@fast
@given(ell_k, st.floats(0.0, 2.0))
def test_kernel_bounded_by_origin(lk, r):
    cf = wu_ops(*lk)
    assert eval_form(cf, r) <= eval_form(cf, 0.0) * (1 + 1e-12) + 1e-12


def test_support_end_is_two():
    for ell in range(4):
        for j in range(2 * ell + 1):
            cf = wu_ops(ell, F(j, 2))
            assert cf.support_end == 2
            assert abs(eval_form(cf, np.nextafter(2.0, 0))) < 1e-6
