import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import close, complex_in_annulus, rand_complex
from qexpand.askey_wilson import AWPoint, aw_gf_sides, aw_poly, aw_poly_scaled
from qexpand.errors import DomainError
from qexpand.qcore import EXTENDED
from qexpand.series import SumCtrl


def _point(rng, real=False):
    if real:
        vals = [rng.uniform(-0.8, 0.8) for _ in range(4)]
        e = cmath.exp(1j * rng.uniform(0, math.pi))
        q = rng.uniform(0.2, 0.8)
    else:
        vals = [rand_complex(rng) for _ in range(4)]
        e = rand_complex(rng, 0.7, 1.3)
        q = rand_complex(rng, 0.2, 0.8)
    return AWPoint.from_e(e, *vals, q)


def p1_closed(pt):
    a, b, c, d = pt.a, pt.b, pt.c, pt.d
    e, f = pt.e_plus, pt.e_minus
    return ((1 - a * b) * (1 - a * c) * (1 - a * d) - (1 - a * e) * (1 - a * f) * (1 - a * b * c * d)) / a


def test_degree_zero_is_one(rng):
    for _ in range(5):
        assert close(aw_poly(0, _point(rng)), 1, 1e-15)


def test_degree_one_closed_form(rng):
    for _ in range(10):
        pt = _point(rng)
        assert close(aw_poly(1, pt), p1_closed(pt), 1e-13)


def test_degree_one_is_linear_in_y():
    # p_1 = 2 a' y + const, so it depends on e only through e + 1/e
    base = dict(a=0.3, b=0.4j, c=-0.5, d=0.2 + 0.1j, q=0.6)
    vals = [aw_poly(1, AWPoint.from_e(e, **base)) for e in (0.5, 1.5, 0.8 + 0.3j)]
    ys = [(e + 1 / e) / 2 for e in (0.5, 1.5, 0.8 + 0.3j)]
    slope = (vals[1] - vals[0]) / (ys[1] - ys[0])
    assert close(vals[2], vals[0] + slope * (ys[2] - ys[0]), 1e-13)


def _divided_difference(ys, vals):
    vals = list(vals)
    for level in range(1, len(ys)):
        vals = [(vals[i + 1] - vals[i]) / (ys[i + level] - ys[i]) for i in range(len(vals) - 1)]
    return vals[0]


@pytest.mark.parametrize("n", [2, 4])
def test_polynomial_of_degree_n_in_y(n):
    base = dict(a=0.3 + 0.2j, b=-0.4, c=0.5j, d=0.25, q=0.55)
    ys = [-0.9 + 0.45 * i for i in range(n + 2)]
    vals = [aw_poly(n, AWPoint.from_e(y + cmath.sqrt(y * y - 1), **base)) for y in ys]
    lead = _divided_difference(ys[:-1], vals[:-1])
    assert abs(lead) > 1e-3
    assert abs(_divided_difference(ys, vals)) < 1e-10 * abs(lead)


def test_small_base_high_degree_matches_extended():
    # heavy cancellation in the 4phi3; the double result must still be accurate
    pt = AWPoint.from_e(0.9 + 0.5j, 0.3 - 0.2j, 0.6j, -0.45, 0.7, -0.22)
    v = aw_poly(9, pt)
    with EXTENDED.context():
        m = mpmath.mpmathify
        ref = aw_poly(9, AWPoint(*(m(getattr(pt, k)) for k in ("e_plus", "e_minus", "a", "b", "c", "d", "q"))))
    assert abs(v - complex(ref)) < 1e-13 * abs(complex(ref))


@pytest.mark.parametrize("n", [2, 3, 5])
def test_symmetric_in_parameters(rng, n):
    for _ in range(4):
        pt = _point(rng)
        ref = aw_poly(n, pt)
        for a, b, c, d in [(pt.b, pt.a, pt.c, pt.d), (pt.c, pt.b, pt.a, pt.d), (pt.d, pt.c, pt.b, pt.a)]:
            other = AWPoint(pt.e_plus, pt.e_minus, a, b, c, d, pt.q)
            assert close(aw_poly(n, other), ref, 1e-11)


@pytest.mark.parametrize("n", [1, 4, 7])
def test_conjugation_invariant(rng, n):
    for _ in range(4):
        pt = _point(rng)
        swapped = AWPoint(pt.e_minus, pt.e_plus, pt.a, pt.b, pt.c, pt.d, pt.q)
        assert close(aw_poly(n, swapped), aw_poly(n, pt), 1e-10)


def test_real_parameters_give_real_values(rng):
    for _ in range(10):
        pt = _point(rng, real=True)
        v = aw_poly(4, pt)
        assert abs(v.imag) < 1e-12 * max(1, abs(v))


def test_scaled_form_allows_a_zero():
    pt = AWPoint.from_e(0.7 + 0.2j, 0, 0.3, 0.4, 0.5, 0.6)
    v = aw_poly_scaled(3, pt)
    assert math.isfinite(abs(v))
    with pytest.raises(DomainError):
        aw_poly(3, pt)


@settings(max_examples=30, deadline=None)
@given(
    complex_in_annulus(),
    complex_in_annulus(),
    complex_in_annulus(),
    complex_in_annulus(),
    complex_in_annulus(0.2, 0.8),
    st.floats(0, math.pi),
    complex_in_annulus(0.1, 0.6),
)
def test_generating_function(a, b, c, d, q, theta, x):
    pt = AWPoint.from_e(cmath.exp(1j * theta), a, b, c, d, q)
    lhs, rhs = aw_gf_sides(x, pt)
    assert close(lhs.value, rhs.value, 1e-10)


def test_generating_function_extended():
    with EXTENDED.context():
        m = mpmath.mpmathify
        pt = AWPoint.from_e(mpmath.expjpi(m("0.3")), m("0.4"), m("-0.3"), m("0.5"), m("0.6"), m("0.45"))
        lhs, rhs = aw_gf_sides(m("0.35"), pt, SumCtrl.for_precision(EXTENDED))
        assert abs(lhs.value - rhs.value) < mpmath.mpf(10) ** -25


def test_errors():
    with pytest.raises(DomainError):
        AWPoint(0.5, 0.5, 0.1, 0.2, 0.3, 0.4, 0.5)
    pt = AWPoint.from_e(0.5, 0.1, 0.2, 0.3, 0.4, 0.5)
    with pytest.raises(DomainError):
        aw_poly(-1, pt)
    with pytest.raises(DomainError):
        aw_gf_sides(1.2, pt)
