"""The general expansion theorems and the operators they are built from.

Notation: ``A``/``B`` are the free numerator/denominator parameter lists of
the series being expanded, ``t`` its free argument.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

from ..errors import DomainError, NoConvergence, PoleError
from ..qcore import Param, pole_factor, qpoch, qpoch_multi, qpow
from ..series import (
    DEFAULT_CTRL,
    PHI,
    PHI_TILDE,
    Accumulator,
    SeriesSpec,
    SumCtrl,
    SumResult,
    _Stopper,
    _zero_like,
    eval_series,
    ldexp,
    phi,
    phi_tilde,
    renorm,
    split_scale,
    sum_terms,
)

TAU_READINGS = {"printed": 0, "tau_absorbed": -1, "tau_doubled": 1}


def omega_val(n: int, x, c, d, q):
    """``(1-xd)(1-cq^{2n+2}) (xd)^n (q/d, cq/x; q)_n / (cdq, xq; q)_{n+1}``."""
    if d == 0:
        raise DomainError("omega needs d != 0")
    num = qpoch_multi([q / d, c * q / x], q, n)
    den = qpoch(c * d * q, q, n + 1) * qpoch(x * q, q, n + 1)
    if den == 0:
        raise PoleError("omega denominator vanishes")
    return (1 - x * d) * (1 - c * qpow(q, 2 * n + 2)) * (x * d) ** n * num / den


def omega_seq(x, c, d, q) -> Iterator:
    """``omega_val(n, ...)`` for n = 0, 1, 2, ... with O(1) work per step."""
    if d == 0:
        raise DomainError("omega needs d != 0")
    ratio = 1 / (pole_factor(c * d * q) * pole_factor(x * q))  # (q/d, cq/x)_n / (cdq, xq)_{n+1}
    pref = 1 - x * d
    xd_n = x * 0 + 1
    n = 0
    while True:
        yield pref * (1 - c * qpow(q, 2 * n + 2)) * xd_n * ratio
        qn1 = qpow(q, n + 1)
        ratio = ratio * (1 - qn1 / d) * (1 - c * qn1 / x)
        ratio = ratio / (pole_factor(c * d * q * qn1) * pole_factor(x * q * qn1))
        xd_n = xd_n * x * d
        n += 1


@dataclass(frozen=True)
class DeltaOp:
    n: int
    c: object
    d: object


def apply_delta(op: DeltaOp, spec: SeriesSpec) -> SeriesSpec:
    """Prepend ``cdq, q^{-n}, cq^{n+2}`` / ``cdq^{n+2}, q^{-n} d`` to a series.

    Acting on a tilde series the result is an ordinary phi series.  Acting on
    the output of an earlier application, the new block brings its own
    ``1/(q;q)_k``, carried here as an extra lower parameter ``q``.
    """
    q, c, d, n = spec.base, op.c, op.d, op.n
    upper = (Param(c * d * q), Param.qpower(q, -n), Param(c * qpow(q, n + 2))) + spec.numerator
    lower = (Param(c * d * qpow(q, n + 2)), Param.qpower(q, -n, d)) + spec.denominator
    if spec.variant == PHI:
        lower = lower + (Param(q),)
    elif spec.variant != PHI_TILDE:
        raise DomainError("delta acts on tilde series or earlier delta outputs")
    return SeriesSpec(PHI, upper, lower, q, spec.argument)


def _terminating(spec: SeriesSpec, scale=1, qshift: int = 0) -> SumResult:
    return eval_series(spec, SumCtrl(1e-300, 10**6), scale, qshift)


# ---------------------------------------------------------------- single sums


def thm_main_sides(A: Sequence, B: Sequence, a, c, d, x, t, q, ctrl: SumCtrl = DEFAULT_CTRL) -> tuple:
    """Expansion of ``phi~[A, cq/x; B, xdq; q, xt] / (1 - xd)`` over well-poised weights."""
    if len(B) < len(A):
        raise DomainError("the expansion needs s >= r")
    lhs = eval_series(phi_tilde(list(A) + [c * q / x], list(B) + [x * d * q], q, x * t), ctrl)
    lhs = lhs.scaled(1 / (1 - x * d))
    base = phi_tilde(A, B, q, t / a)

    def term(n):
        w = (1 - a * c * qpow(q, 2 * n + 2)) * (x * d) ** n * qpoch_multi([a * q / d, c * q / x], q, n)
        w = w / (qpoch(c * d * q, q, n + 1) * qpoch(a * x * q, q, n + 1))
        return _terminating(apply_delta(DeltaOp(n, a * c, d / a), base), w).value

    return lhs, sum_terms(term, ctrl, zero=_zero_like(x))


def thm_dlidi_sides(A: Sequence, B: Sequence, c, x, t, q, ctrl: SumCtrl = DEFAULT_CTRL, reading: str = "printed"):
    """Expansion of ``phi[A, c/x; B; q, xt]`` with ``len(A) = r - 1`` and ``len(B) = s``.

    ``reading`` selects how the outer ``tau(n)`` is combined with the weight;
    only ``"printed"`` is an identity (the others are kept for comparison).
    """
    shift = TAU_READINGS[reading]
    lhs = eval_series(phi(list(A) + [c / x], B, q, x * t), ctrl)

    def term(n):
        # tau(n)^(1 + shift) = (-1)^(n(1 + shift)) q^((1 + shift) n(n-1)/2), the power kept apart
        w = qpoch(c / x, q, n) / qpoch(x, q, n + 1) * (1 - c * qpow(q, 2 * n)) * (-x) ** n * (-1) ** (n * shift)
        inner = phi([Param.qpower(q, -n)] + list(A) + [c * qpow(q, n)], list(B) + [q], q, t * q)
        return _terminating(inner, w, (1 + shift) * (n * (n - 1) // 2)).value

    return lhs, sum_terms(term, ctrl, zero=_zero_like(x))


# ----------------------------------------------------------------- multi sums


@dataclass
class Axis:
    """One summation index ``n`` of a multi-sum ``sum_n w(n) M(n, k)``.

    ``upper(n)`` and ``lower(n)`` list the parameters of ``M(n, k)``; ``M``
    vanishes identically for ``k > n`` (a ``q^{-n}`` numerator parameter).
    """

    weights: Iterator
    upper: Callable[[int], Sequence]
    lower: Callable[[int], Sequence]
    #: optional power of q multiplying the n-th weight, kept apart from it so it cannot underflow
    qshift: Optional[Callable[[int], int]] = None


@dataclass
class Shared:
    """The ``k``-dependent factor ``v_k`` common to all axes."""

    upper: Sequence
    lower: Sequence
    argument: object
    qq_copies: int = 1
    tau_power: int = 0


def _m_row(ax: Axis, n: int, q, w) -> list:
    """``[w M(n, 0), ..., w M(n, n)]``; the weight goes in first to avoid overflow."""
    up, lo = ax.upper(n), ax.lower(n)
    v, E = split_scale(w, q, ax.qshift(n) if ax.qshift else 0)
    row = [ldexp(v, E)]
    for k in range(n):
        qk = qpow(q, k)
        num = 1
        for u in up:
            num = num * (1 - u * qk)
        den = 1
        for l in lo:
            den = den * pole_factor(l * qk)
        v, E = renorm(v * num / den, E)
        row.append(ldexp(v, E))
    return row


def factorized_multisum(axes: Sequence[Axis], shared: Shared, q, ctrl: SumCtrl = DEFAULT_CTRL,
                        truncation=None) -> SumResult:
    """``sum_{n_1..n_m} prod_i w_i(n_i) * sum_{k <= min n_i} v_k prod_i M_i(n_i, k)``.

    The box-truncated sum (all ``n_i <= N``) is reorganised exactly as
    ``sum_k v_k prod_i S_i(k)`` with ``S_i(k) = sum_{k <= n <= N} w_i(n) M_i(n, k)``,
    which costs O(m N^2) instead of O(N^{m+1}).  ``N`` grows until the change
    in the total obeys the usual stopping rule, or is fixed by ``truncation``.
    """
    one = shared.argument * 0 + q * 0 + 1
    zero = _zero_like(one)
    S = [[] for _ in axes]
    v = []  # v_k
    vk = one
    rule = _Stopper(ctrl)
    prev = None
    N = 0
    while True:
        # extend v to index N
        v.append(vk)
        qN = qpow(q, N)
        num = 1
        for u in shared.upper:
            num = num * (1 - u * qN)
        den = pole_factor(qN * q) ** shared.qq_copies
        for l in shared.lower:
            den = den * pole_factor(l * qN)
        vk = vk * num / den * shared.argument
        if shared.tau_power:
            vk = vk * (-qN) ** shared.tau_power
        for i, ax in enumerate(axes):
            w = next(ax.weights)
            row = _m_row(ax, N, q, w * one)
            S[i].append(zero * 0 + 0 * one)
            for k in range(N + 1):
                S[i][k] = S[i][k] + row[k]
        acc = Accumulator(zero)
        for k in range(N + 1):
            p = v[k]
            for i in range(len(axes)):
                p = p * S[i][k]
            acc.add(p)
        total = acc.value
        if not abs(total) < float("inf"):
            raise NoConvergence("multi-sum diverged")
        step = total if prev is None else total - prev
        prev = total
        stop = rule.observe(N, float(abs(step)), float(abs(total)))
        if truncation is not None:
            if N >= truncation:
                tail, rho = rule.tail()
                return SumResult(total, N + 1, False, tail, rho)
        elif stop:
            tail, rho = rule.tail()
            return SumResult(total, N + 1, False, tail, rho)
        elif N + 1 >= ctrl.max_terms:
            raise NoConvergence("multi-sum did not settle")
        N += 1


def naive_multisum(axes_weights: Sequence[Callable[[int], object]], inner: Callable[[tuple], SeriesSpec],
                   N: int) -> object:
    """Direct box sum ``sum_{n_i <= N} prod w_i(n_i) * eval(inner(n))`` (reference only)."""
    total = 0
    for ns in itertools.product(range(N + 1), repeat=len(axes_weights)):
        w = 1
        for wf, n in zip(axes_weights, ns):
            w = w * wf(n)
        total = total + _terminating(inner(ns), w).value
    return total


def _lists(p, prefix: str) -> list:
    out = []
    i = 1
    while f"{prefix}{i}" in p:
        out.append(p[f"{prefix}{i}"])
        i += 1
    return out


def multi_lhs(A, B, X, C, D, t, q, ctrl: SumCtrl = DEFAULT_CTRL) -> SumResult:
    prod_x = 1
    for x in X:
        prod_x = prod_x * x
    upper = list(A) + [c * q / x for x, c in zip(X, C)]
    lower = list(B) + [x * d * q for x, d in zip(X, D)]
    return eval_series(phi_tilde(upper, lower, q, t * prod_x), ctrl)


def _delta_axis(x, c, d, q) -> Axis:
    return Axis(
        omega_seq(x, c, d, q),
        lambda n, c=c, d=d: [c * d * q, qpow(q, -n), c * qpow(q, n + 2)],
        lambda n, c=c, d=d: [c * d * qpow(q, n + 2), qpow(q, -n) * d],
    )


def multi_rhs(A, B, X, C, D, t, q, ctrl: SumCtrl = DEFAULT_CTRL, truncation=None) -> SumResult:
    axes = [_delta_axis(x, c, d, q) for x, c, d in zip(X, C, D)]
    return factorized_multisum(axes, Shared(A, B, t, qq_copies=len(X)), q, ctrl, truncation)


def multi_rhs_naive(A, B, X, C, D, t, q, N: int):
    """Nested evaluation through explicit composed deltas (reference for small N)."""
    base = phi_tilde(A, B, q, t)

    def inner(ns):
        spec = base
        for n, c, d in zip(ns, C, D):
            spec = apply_delta(DeltaOp(n, c, d), spec)
        return spec

    weights = [lambda n, x=x, c=c, d=d: omega_val(n, x, c, d, q) for x, c, d in zip(X, C, D)]
    return naive_multisum(weights, inner, N)


def eval_multi(m: int, p, ctrl: SumCtrl = DEFAULT_CTRL, truncation=None) -> tuple:
    """Both sides of the m-fold expansion for an assignment with keys
    ``a1.., b1.., x1..xm, c1..cm, d1..dm, t, q``."""
    if m not in (1, 2, 3):
        raise DomainError("multi-sum expansion is provided for m = 1, 2, 3")
    A, B = _lists(p, "a"), _lists(p, "b")
    X, C, D = _lists(p, "x")[:m], _lists(p, "c")[:m], _lists(p, "d")[:m]
    if len(A) != len(B) or len(X) != m or len(C) != m or len(D) != m:
        raise DomainError("assignment does not match the multi-sum shape")
    q, t = p["q"], p["t"]
    return multi_lhs(A, B, X, C, D, t, q, ctrl), multi_rhs(A, B, X, C, D, t, q, ctrl, truncation)


# ------------------------------------------------------------ WP Bailey pairs


class BetaTable:
    """Cached Pochhammer tables for ``beta_n = sum_k (bt)_{n+k} (b)_{n-k} / ((q)_{n-k} (tq)_{n+k}) alpha_k``."""

    def __init__(self, t, b, q):
        self.t, self.b, self.q = t, b, q
        one = t * 0 + b * 0 + q * 0 + 1
        self._bt = [one]
        self._tq = [one]
        self._b = [one]
        self._q = [one]

    def _extend(self, m: int):
        q = self.q
        while len(self._bt) <= m:
            j = len(self._bt) - 1
            qj = qpow(q, j)
            self._bt.append(self._bt[-1] * (1 - self.b * self.t * qj))
            self._tq.append(self._tq[-1] * pole_factor(self.t * q * qj))
            self._b.append(self._b[-1] * (1 - self.b * qj))
            self._q.append(self._q[-1] * (1 - q * qj))

    def beta(self, alpha: Sequence, n: int):
        self._extend(2 * n)
        acc = Accumulator(_zero_like(self._bt[0]))
        for k in range(n + 1):
            acc.add(self._bt[n + k] * self._b[n - k] / (self._q[n - k] * self._tq[n + k]) * alpha[k])
        return acc.value


def wp_bailey_beta(alpha: Callable[[int], object], t, b, n: int, q):
    return BetaTable(t, b, q).beta([alpha(k) for k in range(n + 1)], n)
