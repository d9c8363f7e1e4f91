"""Triangular matrix inversion pairs built from an (f, g) kernel.

For a kernel satisfying the three-term relation

    g(a, b) f(x, c) + g(b, c) f(x, a) + g(c, a) f(x, b) = 0,   g(x, y) = -g(y, x),

and node sequences ``x_n``, ``b_n`` the lower-triangular matrices

    B[n, k]    = prod_{i=k}^{n-1} f(x_i, b_k) / prod_{i=k+1}^{n} g(b_i, b_k)
    Binv[n, k] = f(x_k, b_k) / f(x_n, b_n)
                 * prod_{i=k+1}^{n} f(x_i, b_n) / prod_{i=k}^{n-1} g(b_i, b_n)

are mutually inverse.  The entries grow quickly with the size (products of
``1/(b_i - b_k)`` for geometric nodes), and the row sums of ``B @ Binv``
cancel to many digits, so all matrices are built with mpmath at a working
precision chosen from a first low-precision pass.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath

from .errors import DomainError, PoleError
from .qcore import qpoch

BASE_DPS = 30
GUARD_DPS = 15
#: nodes closer than this (relative to their size) are rejected as coincident
NODE_SEPARATION = 1e-8
#: relative size below which a kernel value in a denominator counts as zero
KERNEL_POLE_EPS = 1e-12


@dataclass(frozen=True)
class FGKernel:
    f: Callable
    g: Callable
    name: str = "custom"

    def triple_residual(self, a, b, c, x):
        """Left side of the three-term relation (zero for a valid kernel)."""
        f, g = self.f, self.g
        return g(a, b) * f(x, c) + g(b, c) * f(x, a) + g(c, a) * f(x, b)

    def antisymmetry_residual(self, x, y):
        return self.g(x, y) + self.g(y, x)


def _lin_f(x, y):
    return 1 - x * y


def _lin_g(x, y):
    return y - x


linear_kernel = FGKernel(_lin_f, _lin_g, "linear")
KERNELS = {"linear": linear_kernel}


def _mp(v):
    return mpmath.mpmathify(v)


@dataclass(frozen=True)
class NodeSequences:
    """The node sequences ``x_n`` and ``b_n`` as functions of the index."""

    x_seq: Callable[[int], object]
    b_seq: Callable[[int], object]

    @classmethod
    def geometric(cls, a, c, q) -> "NodeSequences":
        """``x_n = a q^n``, ``b_n = c q^n``, evaluated at the current mpmath precision."""
        if not 0 < abs(q) < 1:
            raise DomainError("geometric nodes need 0 < |q| < 1")
        return cls(lambda n: _mp(a) * _mp(q) ** n, lambda n: _mp(c) * _mp(q) ** n)

    def check(self, N: int) -> None:
        """Reject index ranges whose b-nodes nearly coincide."""
        with mpmath.workdps(BASE_DPS):
            bs = [self.b_seq(i) for i in range(N + 1)]
            for i in range(N + 1):
                for j in range(i):
                    if abs(bs[i] - bs[j]) < NODE_SEPARATION * max(abs(bs[i]), abs(bs[j])):
                        raise DomainError(f"nodes b_{j} and b_{i} nearly coincide")


@dataclass(frozen=True)
class TriMatrix:
    """Lower-triangular square matrix stored by rows (row ``n`` has ``n + 1`` entries)."""

    size: int
    rows: tuple
    dps: int = BASE_DPS

    def __post_init__(self):
        if len(self.rows) != self.size or any(len(r) != n + 1 for n, r in enumerate(self.rows)):
            raise ValueError("rows do not form a lower-triangular matrix")

    def __getitem__(self, idx):
        n, k = idx
        if k > n:
            return mpmath.mpc(0)
        return self.rows[n][k]

    def diagonal(self) -> list:
        return [self.rows[n][n] for n in range(self.size)]

    def max_abs(self) -> float:
        return max(float(abs(v)) for r in self.rows for v in r)

    def to_complex(self) -> list:
        """Dense nested list of Python complex numbers."""
        return [[complex(self[n, k]) for k in range(self.size)] for n in range(self.size)]


def _denominator(v, *scale):
    # |re| + |im| bounds the modulus from above, max(|re|, |im|) from below;
    # exact moduli are only needed when the bounds do not decide
    bound = KERNEL_POLE_EPS * (1 + sum(abs(s.real) + abs(s.imag) for s in scale))
    if max(abs(v.real), abs(v.imag)) > bound:
        return v
    if abs(v) <= KERNEL_POLE_EPS * (1 + sum(abs(s) for s in scale)):
        raise PoleError(f"kernel value {v} vanishes in a denominator")
    return v


def _nodes(seqs: NodeSequences, N: int, conv) -> tuple:
    return [conv(seqs.x_seq(i)) for i in range(N + 1)], [conv(seqs.b_seq(i)) for i in range(N + 1)]


def _build_B(kernel: FGKernel, seqs: NodeSequences, N: int, conv) -> list:
    f, g = kernel.f, kernel.g
    xs, bs = _nodes(seqs, N, conv)
    one = conv(1)
    rows = [[None] * (n + 1) for n in range(N + 1)]
    for k in range(N + 1):
        v = one
        rows[k][k] = v
        for n in range(k + 1, N + 1):
            v = v * f(xs[n - 1], bs[k]) / _denominator(g(bs[n], bs[k]), bs[n], bs[k])
            rows[n][k] = v
    return rows


def _build_Binv(kernel: FGKernel, seqs: NodeSequences, N: int, conv) -> list:
    f, g = kernel.f, kernel.g
    xs, bs = _nodes(seqs, N, conv)
    one = conv(1)
    fd = [_denominator(f(xs[i], bs[i]), xs[i] * bs[i]) for i in range(N + 1)]
    rows = []
    for n in range(N + 1):
        row = [None] * (n + 1)
        v = one
        row[n] = v
        # walk k downward: ratio of consecutive entries is a single factor
        for k in range(n, 0, -1):
            v = v * fd[k - 1] / fd[k] * f(xs[k], bs[n]) / _denominator(g(bs[k - 1], bs[n]), bs[k - 1], bs[n])
            row[k - 1] = v
        rows.append(row)
    return rows


def _lemma_forward_rows(kernel: FGKernel, seqs: NodeSequences, N: int, conv) -> list:
    """Coefficients of ``F_n = sum_k T[n,k] G_k``."""
    f, g = kernel.f, kernel.g
    xs, bs = _nodes(seqs, N, conv)
    rows = []
    for n in range(N + 1):
        row = []
        v = conv(1)  # prod_{i<k} g(b_i, b_n) / prod_{1<=i<=k} f(x_i, b_n)
        for k in range(n + 1):
            if k > 0:
                v = v * g(bs[k - 1], bs[n]) / _denominator(f(xs[k], bs[n]), xs[k] * bs[n])
            row.append(f(xs[k], bs[k]) * v)
        rows.append(row)
    return rows


def _lemma_inverse_rows(kernel: FGKernel, seqs: NodeSequences, N: int, conv) -> list:
    """Coefficients of ``G_n = sum_k U[n,k] F_k``.

    The numerator ``prod_{i=1}^{n-1} f(x_i, b_k)`` at ``n = 0`` is read as the
    reciprocal ``1 / f(x_0, b_k)``, the usual convention for a product whose
    upper limit is one below its lower limit minus one.
    """
    f, g = kernel.f, kernel.g
    xs, bs = _nodes(seqs, N, conv)
    rows = []
    for n in range(N + 1):
        row = []
        for k in range(n + 1):
            if n == 0:
                num = 1 / _denominator(f(xs[0], bs[k]), xs[0] * bs[k])
            else:
                num = conv(1)
                for i in range(1, n):
                    num *= f(xs[i], bs[k])
            den = conv(1)
            for i in range(n + 1):
                if i != k:
                    den *= _denominator(g(bs[i], bs[k]), bs[i], bs[k])
            row.append(num / den)
        rows.append(row)
    return rows


def _log_magnitude(rows: list) -> float:
    m = max(abs(v) for r in rows for v in r)
    if not m > 0:
        return 0.0
    return float(mpmath.log10(m)) if isinstance(m, mpmath.mpf) else math.log10(m)


def _scout(build) -> float:
    """Order of magnitude of a matrix, from a cheap double-precision pass."""
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            mag = _log_magnitude(build(complex))
        if math.isfinite(mag):
            return mag
    except (OverflowError, ZeroDivisionError):
        pass
    with mpmath.workdps(BASE_DPS):
        return _log_magnitude(build(_mp))


def _adaptive(builders: Sequence[Callable], dps=None) -> tuple:
    """Build several matrices at a precision that absorbs their cancellation."""
    if dps is None:
        mags = [max(0.0, _scout(b)) for b in builders]
        dps = BASE_DPS + GUARD_DPS + int(math.ceil(sum(mags)))
    with mpmath.workdps(dps):
        return tuple(TriMatrix(len(rows), tuple(tuple(r) for r in rows), dps) for rows in (b(_mp) for b in builders))


def matrix_B(kernel: FGKernel, seqs: NodeSequences, N: int, dps=None) -> TriMatrix:
    seqs.check(N)
    return _adaptive([lambda conv: _build_B(kernel, seqs, N, conv)], dps)[0]


def matrix_Binv(kernel: FGKernel, seqs: NodeSequences, N: int, dps=None) -> TriMatrix:
    seqs.check(N)
    return _adaptive([lambda conv: _build_Binv(kernel, seqs, N, conv)], dps)[0]


def inverse_pair(kernel: FGKernel, seqs: NodeSequences, N: int, dps=None) -> tuple:
    """``(B, Binv)`` built at a common precision suitable for multiplying them."""
    seqs.check(N)
    return _adaptive(
        [lambda conv: _build_B(kernel, seqs, N, conv), lambda conv: _build_Binv(kernel, seqs, N, conv)], dps
    )


def _product_deviation(A: TriMatrix, B: TriMatrix) -> object:
    worst = mpmath.mpf(0)
    cols = [[B.rows[i][k] for i in range(k, B.size)] for k in range(B.size)]
    for n in range(A.size):
        row = A.rows[n]
        for k in range(n + 1):
            s = mpmath.fdot(row[k : n + 1], cols[k][: n + 1 - k])
            if n == k:
                s -= 1
            # the componentwise bound is cheap; |s| is only needed when it could win
            if 2 * max(abs(s.real), abs(s.imag)) > worst:
                worst = max(worst, abs(s))
    return worst


def verify_inverse_pair(B: TriMatrix, Binv: TriMatrix) -> float:
    """Largest deviation of ``B @ Binv`` or ``Binv @ B`` from the identity."""
    if B.size != Binv.size:
        raise DomainError("matrices differ in size")
    with mpmath.workdps(max(B.dps, Binv.dps)):
        return float(max(_product_deviation(B, Binv), _product_deviation(Binv, B)))


def _gs_rows(A, p, q, N: int, conv) -> tuple:
    A, p, q = conv(A), conv(p), conv(q)
    M, W = [], []
    for n in range(N + 1):
        mrow, wrow = [], []
        for k in range(n + 1):
            d = n - k
            apq = A * p**k * q**k
            mrow.append(qpoch(apq, p, d) / qpoch(q, q, d) * q ** (-n * k))
            sign = -1 if d % 2 else 1
            expo = (d + 1) * d // 2 + n * k
            # finite product in base 1/p; d - 1 = -1 uses the reciprocal rule
            fin = qpoch(A * q**n * p ** (n - 1), 1 / p, d - 1)
            wrow.append(sign * q**expo * (1 - apq) * fin / qpoch(q, q, d))
        M.append(mrow)
        W.append(wrow)
    return M, W


def gessel_stanton_pair(A, p, q, N: int, dps=None) -> tuple:
    """The q-Lagrange inversion pair ``(M, W)`` with bases ``p`` and ``q``."""
    if not (0 < abs(p) < 1 and 0 < abs(q) < 1):
        raise DomainError("Gessel-Stanton pair needs 0 < |p|, |q| < 1")
    return _adaptive([lambda conv: _gs_rows(A, p, q, N, conv)[0], lambda conv: _gs_rows(A, p, q, N, conv)[1]], dps)


def lemma_matrices(kernel: FGKernel, seqs: NodeSequences, N: int, dps=None) -> tuple:
    """``(T, U)`` with ``F = T G`` the forward transform and ``G = U F`` its inverse."""
    seqs.check(N)
    return _adaptive(
        [
            lambda conv: _lemma_forward_rows(kernel, seqs, N, conv),
            lambda conv: _lemma_inverse_rows(kernel, seqs, N, conv),
        ],
        dps,
    )


def _apply(T: TriMatrix, vec: Sequence) -> list:
    with mpmath.workdps(T.dps):
        return [mpmath.fsum(T[n, k] * vec[k] for k in range(n + 1)) for n in range(T.size)]


def forward_transform(G: Sequence, kernel: FGKernel, seqs: NodeSequences) -> list:
    """``F_0..F_N`` from ``G_0..G_N``."""
    T, _ = lemma_matrices(kernel, seqs, len(G) - 1)
    return _apply(T, [_mp(v) for v in G])


def inverse_transform(F: Sequence, kernel: FGKernel, seqs: NodeSequences) -> list:
    """``G_0..G_N`` from ``F_0..F_N``."""
    _, U = lemma_matrices(kernel, seqs, len(F) - 1)
    return _apply(U, [_mp(v) for v in F])


def expansion_coeffs(F_at_b: Callable[[int], object], kernel: FGKernel, seqs: NodeSequences, n: int):
    """Coefficient ``G_n`` of the expansion of ``F`` from its values at ``b_0..b_n``."""
    _, U = lemma_matrices(kernel, seqs, n)
    with mpmath.workdps(U.dps):
        return mpmath.fsum(U[n, k] * _mp(F_at_b(k)) for k in range(n + 1))


def basis(kernel: FGKernel, seqs: NodeSequences, n: int, x):
    """The n-th expansion function ``f(x_n,b_n) prod_{k<n} g(b_k,x) / prod_{1<=k<=n} f(x_k,x)``."""
    f, g = kernel.f, kernel.g
    v = f(seqs.x_seq(n), seqs.b_seq(n))
    for k in range(n):
        v *= g(seqs.b_seq(k), x)
    for k in range(1, n + 1):
        v /= _denominator(f(seqs.x_seq(k), x), seqs.x_seq(k) * x)
    return v


def reconstruct(G: Sequence, kernel: FGKernel, seqs: NodeSequences, x, N: int, dps: int = 60):
    """Partial sum ``sum_{n<=N} G_n * basis_n(x)``."""
    with mpmath.workdps(dps):
        x = _mp(x)
        return mpmath.fsum(_mp(G[n]) * basis(kernel, seqs, n, x) for n in range(min(N, len(G) - 1) + 1))
