import itertools

import mpmath
import pytest

from conftest import close, rand_complex
from qexpand.errors import DomainError, NoConvergence, NotFound
from qexpand.harness import PASS, verify_identity
from qexpand.identities import (
    DeltaOp,
    EvalContext,
    apply_delta,
    build_catalog,
    eval_multi,
    listing,
    lookup,
    omega_val,
    thm_dlidi_sides,
    thm_main_sides,
    wp_bailey_beta,
)
from qexpand.identities.entries_classical import H, rogers_fine_sides
from qexpand.identities.entries_special import pfaff_ksum, pfaff_phi, pfaff_product
from qexpand.identities.limits import (
    MIN_SHRINK,
    concluding_y,
    dlidi_to_carlitz,
    gen_rogers_fine_to_rogers_fine,
    thm_main_to_dlidi,
)
from qexpand.identities.theorems import multi_rhs, multi_rhs_naive, omega_seq
from qexpand.qcore import EXTENDED, qpoch
from qexpand.series import DEFAULT_CTRL, eval_series, phi_tilde

CATALOG = build_catalog()
IDS = [i.id for i in CATALOG]


def test_catalog_size_and_ids():
    assert len(CATALOG) >= 30
    assert len(set(IDS)) == len(IDS)
    rows = listing()
    assert [r["id"] for r in rows] == IDS
    assert all(r["anchor"] and r["params"][-1] == "q" for r in rows)


def test_lookup_unknown():
    with pytest.raises(NotFound):
        lookup("no_such_identity")


@pytest.mark.parametrize("ident", IDS)
def test_smoke_point(ident):
    identity = lookup(ident)
    asg = identity.domain.complete(identity.smoke)
    assert identity.domain.rejection(asg) is None
    res = verify_identity(identity, asg)
    assert res.status == PASS, (res.rel_err, res.lhs_tail, res.rhs_tail, res.detail)


@pytest.mark.parametrize("ident", ["rogers_fine", "thm_dlidi", "cor310", "bailey_6psi6", "aw_gf", "multi_gauss"])
def test_smoke_point_extended(ident):
    identity = lookup(ident)
    ctx = EvalContext.for_precision(EXTENDED)
    res = verify_identity(identity, identity.domain.complete(identity.smoke), ctx)
    assert res.status == PASS
    assert res.rel_err < 1e-25


def test_q_gauss_against_mpmath():
    c, d, x, q = 0.5, 0.3, 0.4, 0.5
    lhs, rhs = lookup("q_gauss").evaluate(dict(c=c, d=d, x=x, q=q))
    ref = mpmath.qhyper([d * q / c, c / x], [d * q], q, x)
    prod = mpmath.qp(c, q) * mpmath.qp(d * x * q / c, q) / (mpmath.qp(d * q, q) * mpmath.qp(x, q))
    assert close(lhs.value, complex(ref), 1e-13)
    assert close(rhs.value, complex(prod), 1e-13)


def test_rogers_fine_collapses_at_c_equal_x():
    x = 0.4 + 0.1j
    lhs, rhs = rogers_fine_sides(0.3, x, x, 0.5, DEFAULT_CTRL)
    assert close(lhs.value, 1 - x, 1e-15)
    assert close(rhs.value, 1 - x, 1e-13)


def test_H_symmetric_in_a_d_x(rng):
    for _ in range(10):
        a, d, x, c, q = (rand_complex(rng) for _ in range(5))
        vals = [H(*p, c, q, DEFAULT_CTRL).value for p in itertools.permutations((a, d, x))]
        assert all(close(v, vals[0], 1e-10) for v in vals)


def test_delta_gives_n_plus_one_terms():
    base = phi_tilde([0.3], [0.4, -0.2], 0.5, 0.7)
    for n in range(6):
        res = eval_series(apply_delta(DeltaOp(n, 0.2, 0.6), base))
        assert res.terminated_exactly
        assert res.terms_used == n + 1


def test_delta_composes():
    spec = apply_delta(DeltaOp(2, 0.2, 0.6), phi_tilde([0.3], [0.4], 0.5, 0.7))
    twice = apply_delta(DeltaOp(1, 0.3, 0.5), spec)
    assert len(twice.denominator) == len(spec.denominator) + 3


def test_omega_stream_matches_closed_form():
    x, c, d, q = 0.3 + 0.2j, 0.4, -0.5, 0.6
    stream = omega_seq(x, c, d, q)
    for n in range(12):
        assert close(next(stream), omega_val(n, x, c, d, q), 1e-14)
    with pytest.raises(DomainError):
        omega_val(0, x, c, 0, q)


def test_thm_main_shape_check():
    with pytest.raises(DomainError):
        thm_main_sides([0.1, 0.2], [0.3], 0.3, 0.2, 0.5, 0.4, 0.1, 0.5)


def test_dlidi_only_printed_reading_holds():
    args = ([0.3], [0.6], 0.2, 0.4, 0.5, 0.5)
    lhs, rhs = thm_dlidi_sides(*args)
    assert close(lhs.value, rhs.value, 1e-13)
    lhs, rhs = thm_dlidi_sides(*args, reading="tau_doubled")
    assert not close(lhs.value, rhs.value, 1e-6)
    # without the quadratic power the expansion diverges
    with pytest.raises(NoConvergence):
        thm_dlidi_sides(*args, reading="tau_absorbed")


def test_pfaff_forms_agree(rng):
    for _ in range(10):
        a, c, d, q = (rand_complex(rng) for _ in range(4))
        for n, i in [(0, 0), (3, 1), (6, 2), (8, 5)]:
            ref = pfaff_product(a, c, d, n, i, q)
            assert close(pfaff_phi(a, c, d, n, i, q), ref, 1e-9)
            assert close(pfaff_ksum(a, c, d, n, i, q), ref, 1e-9)


def test_wp_bailey_unit_pair():
    t, b, q = 0.3 + 0.1j, -0.4, 0.6
    for n in range(6):
        beta = wp_bailey_beta(lambda k: 1 if k == 0 else 0, t, b, n, q)
        ref = qpoch(b * t, q, n) * qpoch(b, q, n) / (qpoch(q, q, n) * qpoch(t * q, q, n))
        assert close(beta, ref, 1e-14)


def test_wp_bailey_linear():
    t, b, q = 0.3, 0.5j, 0.45
    f = lambda k: 0.5**k  # noqa: E731
    g = lambda k: (-0.3) ** k  # noqa: E731
    for n in range(5):
        both = wp_bailey_beta(lambda k: 2 * f(k) - g(k), t, b, n, q)
        assert close(both, 2 * wp_bailey_beta(f, t, b, n, q) - wp_bailey_beta(g, t, b, n, q), 1e-13)


def test_factorized_multisum_matches_naive():
    p = dict(lookup("thm_multi_m2").smoke)
    A, B = [p["a1"]], [p["b1"]]
    X, C, D = [p["x1"], p["x2"]], [p["c1"], p["c2"]], [p["d1"], p["d2"]]
    for N in (0, 1, 4, 7):
        fast = multi_rhs(A, B, X, C, D, p["t"], p["q"], truncation=N).value
        slow = multi_rhs_naive(A, B, X, C, D, p["t"], p["q"], N)
        assert close(fast, slow, 1e-12)


def test_eval_multi_shape_errors():
    p = dict(lookup("thm_multi_m2").smoke)
    with pytest.raises(DomainError):
        eval_multi(4, p)
    with pytest.raises(DomainError):
        eval_multi(3, p)


def test_limit_rogers_fine():
    chk = gen_rogers_fine_to_rogers_fine(dict(a=0.3, c=0.2, x=0.4, q=0.5))
    assert chk.ok(1e-4)
    assert chk.shrink >= MIN_SHRINK


def test_limit_main_to_dlidi():
    chk = thm_main_to_dlidi([0.25], [0.35, -0.45], 0.3, 0.2, 0.4, 0.1, 0.5)
    assert chk.ok(1e-4)


def test_limit_concluding():
    chk = concluding_y(dict(lookup("concluding_transform").smoke))
    assert chk.ok(1e-2)


def test_limit_carlitz():
    chk = dlidi_to_carlitz(dict(lookup("carlitz_gen").smoke))
    assert chk.ok(1e-4)
