import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import close, complex_in_annulus
from qexpand.errors import DomainError, NoConvergence, PoleError
from qexpand.qcore import EXTENDED, Param, csqrt, qpoch, qpoch_inf
from qexpand.series import (
    Accumulator,
    SumCtrl,
    eval_bilateral,
    eval_series,
    evaluate,
    exact,
    combine,
    is_terminating,
    phi,
    phi_tilde,
    psi,
    sum_terms,
    term,
    vwp_spec,
)


def direct(spec, N):
    return sum(term(spec, n) for n in range(N))


def test_spec_shapes():
    s = phi([0.1, 0.2, 0.3], [0.4], 0.5, 0.2)
    assert (s.r, s.s, s.tau_power) == (3, 1, -1)
    t = phi_tilde([0.1], [0.2, 0.3], 0.5, 0.2)
    assert t.tau_power == 1
    with pytest.raises(DomainError):
        psi([0.1, 0.2], [0.3], 0.5, 0.2)


def test_running_ratio_matches_terms():
    spec = phi([0.3 + 0.1j, -0.4], [0.6j], 0.5 - 0.2j, 0.7)
    assert close(eval_series(spec).value, direct(spec, 200), 1e-13)
    tspec = phi_tilde([0.3, 0.2j], [0.6, -0.5], 0.45, 0.4 + 0.1j)
    assert close(eval_series(tspec).value, direct(tspec, 300), 1e-13)


def test_q_binomial_theorem():
    # 1phi0(a; -; q, z) = (az; q)_inf / (z; q)_inf
    a, q, z = 0.3 - 0.4j, 0.6 + 0.1j, 0.5j
    v = eval_series(phi([a], [], q, z)).value
    assert close(v, qpoch_inf(a * z, q) / qpoch_inf(z, q), 1e-13)


def test_q_gauss_summation():
    a, b, c, q = 0.6, -0.7 + 0.2j, 0.2j, 0.5
    z = c / (a * b)
    v = eval_series(phi([a, b], [c], q, z)).value
    ref = qpoch_inf(c / a, q) * qpoch_inf(c / b, q) / (qpoch_inf(c, q) * qpoch_inf(c / (a * b), q))
    assert close(v, ref, 1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 12), complex_in_annulus(0.1, 0.9), complex_in_annulus(0.1, 0.9), complex_in_annulus(0.25, 0.75))
def test_q_chu_vandermonde(n, a, c, q):
    # 2phi1(q^-n, a; c; q, q) = (c/a; q)_n / (c; q)_n a^n
    spec = phi([Param.qpower(q, -n), a], [c], q, q)
    try:
        v = eval_series(spec)
        ref = qpoch(c / a, q, n) / qpoch(c, q, n) * a**n
    except PoleError:
        return
    assert v.terminated_exactly and v.terms_used == n + 1
    # the sum can cancel heavily, so the error is measured against the term sizes
    scale = max(1.0, sum(abs(term(spec, k)) for k in range(n + 1)))
    assert abs(v.value - ref) <= 1e-13 * scale


def test_tag_termination_exact_count():
    q = 0.4
    spec = phi([Param.qpower(q, -5), 0.3, 0.2], [0.7, 0.1], q, 1.3)
    assert is_terminating(spec) == 5
    r = eval_series(spec)
    assert r.terminated_exactly and r.terms_used == 6 and r.tail_estimate == 0
    assert is_terminating(phi([0.3], [0.2], q, 0.1)) is None


def test_bilateral_ramanujan():
    # 1psi1(a; b; q, z) = (q, b/a, az, q/(az); q)_inf / (b, q/a, z, b/(az); q)_inf
    a, b, q, z = 0.8 + 0.1j, 0.2 - 0.1j, 0.45, 0.6 + 0.1j
    v = eval_bilateral(psi([a], [b], q, z)).value
    num = qpoch_inf(q, q) * qpoch_inf(b / a, q) * qpoch_inf(a * z, q) * qpoch_inf(q / (a * z), q)
    den = qpoch_inf(b, q) * qpoch_inf(q / a, q) * qpoch_inf(z, q) * qpoch_inf(b / (a * z), q)
    assert close(v, num / den, 1e-12)
    assert close(evaluate(psi([a], [b], q, z)).value, v, 0)


def test_bilateral_negative_terms():
    a, b, q, z = 0.8, 0.2, 0.5, 0.6
    spec = psi([a], [b], q, z)
    neg = sum(term(spec, -n) for n in range(1, 80))
    pos = sum(term(spec, n) for n in range(0, 200))
    assert close(eval_bilateral(spec).value, pos + neg, 1e-12)


def test_divergence_detected():
    with pytest.raises(NoConvergence):
        eval_series(phi([0.3], [], 0.5, 1.2), SumCtrl(max_terms=500))
    with pytest.raises(NoConvergence):
        eval_bilateral(psi([0.3], [0.6], 0.5, 0.5), SumCtrl(max_terms=500))  # |b/(az)| > 1


def test_ordinary_and_tilde_relation():
    # an extra numerator q cancels (q;q)_n and, with r = s, leaves tau^0 on both sides
    A, B, q, z = [0.3, 0.2j], [0.5, -0.4], 0.5, 0.3
    t = eval_series(phi_tilde(A, B, q, z)).value
    p = eval_series(phi(A + [q], B, q, z)).value
    assert close(t, p, 1e-13)


def test_tail_estimate_geometric():
    r = sum_terms(lambda n: 0.5**n, SumCtrl(tol=1e-10))
    assert r.ratio == pytest.approx(0.5)
    assert 0 < r.tail_estimate < 1e-9
    assert close(r.value, 2.0, 1e-9)


def test_sum_terms_finite_stop():
    r = sum_terms(lambda n: n, stop=10)
    assert r.value == 55 and r.terminated_exactly


def test_scaled_and_combined_results():
    r = sum_terms(lambda n: 0.5**n)
    s = r.scaled(-2)
    assert s.value == pytest.approx(-4) and s.tail_estimate == pytest.approx(2 * r.tail_estimate)
    c = combine(s.value + 1, s, exact(1.0))
    assert c.tail_estimate == pytest.approx(s.tail_estimate) and not c.terminated_exactly


def test_accumulator_compensates():
    acc = Accumulator(0j)
    for v in [1e16, 1.0, -1e16, 1.0j, 1e16j, -1e16j] * 10:
        acc.add(v)
    assert acc.value == 10 + 10j


def test_scale_and_qshift():
    q = 0.3 + 0.05j
    spec = phi([Param.qpower(q, -40), 0.2], [0.5, q], q, 0.7 * q)
    base = eval_series(spec).value
    shift = 40 * 39 // 2
    scaled = eval_series(spec, scale=2.5, qshift=shift).value
    with mpmath.workdps(60):
        ref = mpmath.mpmathify(base) * 2.5 * mpmath.mpc(q) ** shift
    # q^780 underflows a double, but the product with the large inner sum does not
    assert scaled != 0
    assert abs(scaled - complex(ref)) <= 1e-10 * abs(complex(ref))


def test_extended_precision_series():
    with EXTENDED.context():
        q = mpmath.mpf("0.5")
        a = mpmath.mpf("0.3")
        z = mpmath.mpf("0.4")
        v = eval_series(phi([a], [], q, z), SumCtrl.for_precision(EXTENDED)).value
        ref = mpmath.qp(a * z, q) / mpmath.qp(z, q)
        assert abs(v - ref) < mpmath.mpf(10) ** -27


def test_vwp_structure_and_branch():
    a1, q, z = 0.3 + 0.2j, 0.5, 0.2
    upper = [0.4, -0.3j, 0.25]
    spec = vwp_spec(a1, upper, q, z)
    s = csqrt(a1)
    vals = [p.value for p in spec.numerator]
    assert close(vals[1], q * s, 1e-15) and close(vals[2], -q * s, 1e-15)
    assert close(spec.denominator[-1].value, a1 * q / 0.25, 1e-15)
    # flipping the square-root branch swaps the +-sqrt pair and leaves every term unchanged
    flipped = phi([a1, -q * s, q * s] + upper, [-s, s] + [a1 * q / u for u in upper], q, z)
    for n in range(8):
        assert close(term(spec, n), term(flipped, n), 1e-13)
    assert close(eval_series(spec).value, eval_series(flipped).value, 1e-13)
    with pytest.raises(DomainError):
        vwp_spec(0, upper, q, z)


def test_vwp_tagged_lower_parameters():
    q = 0.5
    spec = vwp_spec(0.3, [Param.qpower(q, -4), 0.2], q, 0.5)
    assert is_terminating(spec) == 4
    assert eval_series(spec).terminated_exactly


def test_bad_base():
    with pytest.raises(DomainError):
        eval_series(phi([0.1], [], 1.0, 0.5))
    with pytest.raises(DomainError):
        eval_series(psi([0.1], [0.2], 0.5, 0.5))
    with pytest.raises(DomainError):
        eval_bilateral(phi([0.1], [], 0.5, 0.5))


def test_lower_parameter_pole():
    q = 0.5
    with pytest.raises(PoleError):
        eval_series(phi([0.3], [q**-2], q, 0.2))
