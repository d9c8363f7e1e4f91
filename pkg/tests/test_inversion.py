import mpmath
import pytest
from hypothesis import given, settings

from conftest import complex_in_annulus, rand_complex
from qexpand.errors import DomainError
from qexpand.inversion import (
    FGKernel,
    NodeSequences,
    basis,
    expansion_coeffs,
    forward_transform,
    gessel_stanton_pair,
    inverse_pair,
    inverse_transform,
    lemma_matrices,
    linear_kernel,
    matrix_B,
    matrix_Binv,
    reconstruct,
    verify_inverse_pair,
)


@settings(max_examples=200, deadline=None)
@given(complex_in_annulus(0.05, 3), complex_in_annulus(0.05, 3), complex_in_annulus(0.05, 3), complex_in_annulus(0.05, 3))
def test_linear_kernel_triple_relation(a, b, c, x):
    assert abs(linear_kernel.triple_residual(a, b, c, x)) < 1e-12
    assert linear_kernel.antisymmetry_residual(a, x) == 0


def test_non_kernel_detected():
    bad = FGKernel(lambda x, y: 1 + x * y, lambda x, y: x * y, "bad")
    assert abs(bad.triple_residual(0.1, 0.2, 0.3, 0.4)) > 1e-3
    assert abs(bad.antisymmetry_residual(0.1, 0.2)) > 1e-3


def test_pair_is_inverse(rng):
    a, c, q = rand_complex(rng), rand_complex(rng), rand_complex(rng, 0.2, 0.8)
    B, Binv = inverse_pair(linear_kernel, NodeSequences.geometric(a, c, q), 12)
    assert B.size == 13
    assert verify_inverse_pair(B, Binv) < 1e-20


def test_individual_builders_agree_with_pair():
    seqs = NodeSequences.geometric(0.3, 0.4 + 0.1j, 0.5)
    B = matrix_B(linear_kernel, seqs, 6)
    Binv = matrix_Binv(linear_kernel, seqs, 6)
    assert verify_inverse_pair(B, Binv) < 1e-15
    for n in range(7):
        assert abs(B[n, n] * Binv[n, n] - 1) < 1e-15
    assert B[2, 5] == 0


def test_single_entry_matrix():
    B, Binv = inverse_pair(linear_kernel, NodeSequences.geometric(0.3, 0.4, 0.5), 0)
    assert B.size == 1
    assert abs(B[0, 0] * Binv[0, 0] - 1) < 1e-25


def test_size_mismatch():
    seqs = NodeSequences.geometric(0.3, 0.4, 0.5)
    with pytest.raises(DomainError):
        verify_inverse_pair(matrix_B(linear_kernel, seqs, 3), matrix_Binv(linear_kernel, seqs, 4))


def test_coincident_nodes_rejected():
    seqs = NodeSequences(lambda n: mpmath.mpf("0.3"), lambda n: mpmath.mpf("0.5"))
    with pytest.raises(DomainError):
        inverse_pair(linear_kernel, seqs, 3)
    with pytest.raises(DomainError):
        NodeSequences.geometric(0.3, 0.4, 1.0)


def test_gessel_stanton(rng):
    A, p, q = rand_complex(rng), rand_complex(rng, 0.2, 0.8), rand_complex(rng, 0.2, 0.8)
    M, W = gessel_stanton_pair(A, p, q, 10)
    assert verify_inverse_pair(M, W) < 1e-20
    with mpmath.workdps(W.dps):
        for n in range(4):
            assert abs(M[n, n] * W[n, n] - 1) < 1e-25
    with pytest.raises(DomainError):
        gessel_stanton_pair(0.3, 1.2, 0.5, 4)


def test_lemma_round_trip(rng):
    a, c, q = rand_complex(rng), rand_complex(rng), rand_complex(rng, 0.2, 0.8)
    seqs = NodeSequences.geometric(a, c, q)
    G = [rand_complex(rng, 0.1, 2.0) for _ in range(9)]
    F = forward_transform(G, linear_kernel, seqs)
    back = inverse_transform(F, linear_kernel, seqs)
    assert max(abs(complex(g) - complex(h)) for g, h in zip(G, back)) < 1e-12
    T, U = lemma_matrices(linear_kernel, seqs, 8)
    assert verify_inverse_pair(T, U) < 1e-20


def test_lemma_is_sampling_of_expansion(rng):
    """``F_n`` is the expansion ``sum_k G_k basis_k`` evaluated at the node ``b_n``."""
    a, c, q = 0.3 + 0.1j, 0.45 - 0.2j, 0.5 + 0.1j
    seqs = NodeSequences.geometric(a, c, q)
    G = [rand_complex(rng, 0.1, 2.0) for _ in range(7)]
    F = forward_transform(G, linear_kernel, seqs)
    with mpmath.workdps(40):
        for n in range(7):
            v = reconstruct(G, linear_kernel, seqs, seqs.b_seq(n), 6)
            assert abs(v - F[n]) < 1e-25 * max(1, abs(F[n]))


def test_expansion_coeffs_constant_function():
    a, c, q = 0.3, 0.4, 0.5
    seqs = NodeSequences.geometric(a, c, q)
    g0 = expansion_coeffs(lambda k: 1, linear_kernel, seqs, 0)
    with mpmath.workdps(40):
        assert abs(g0 - 1 / (1 - mpmath.mpf(a) * mpmath.mpf(c))) < 1e-25
    # the full expansion reproduces F = 1 at every node
    G = [expansion_coeffs(lambda k: 1, linear_kernel, seqs, n) for n in range(6)]
    for n in range(6):
        assert abs(reconstruct(G, linear_kernel, seqs, seqs.b_seq(n), 5) - 1) < 1e-20


def test_basis_vanishes_at_earlier_nodes():
    seqs = NodeSequences.geometric(0.3, 0.4, 0.5)
    with mpmath.workdps(30):
        for n in range(1, 5):
            for k in range(n):
                assert abs(basis(linear_kernel, seqs, n, seqs.b_seq(k))) < 1e-25


def test_geometric_nodes_values():
    q = 0.5
    seqs = NodeSequences.geometric(0.3, 0.4, q)
    with mpmath.workdps(30):
        assert abs(seqs.x_seq(3) - 0.3 * q**3) < 1e-15
        assert abs(seqs.b_seq(2) - 0.4 * q**2) < 1e-15


def test_matrix_accessors():
    seqs = NodeSequences.geometric(0.3, 0.4, 0.5)
    B = matrix_B(linear_kernel, seqs, 5)
    assert all(abs(d) > 0 for d in B.diagonal())
    assert len(B.to_complex()) == 6
    assert B.max_abs() > 0
