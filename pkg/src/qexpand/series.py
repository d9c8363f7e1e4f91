"""Evaluation of unilateral and bilateral basic hypergeometric series.

Three variants are supported, differing only in the balancing factor carried
by the n-th term::

    phi        prod (a;q)_n / prod (b;q)_n * tau(n)^(1+s-r) * z^n / (q;q)_n
    phi_tilde  prod (a;q)_n / prod (b;q)_n * tau(n)^(s-r)   * z^n
    psi        prod (a;q)_n / prod (b;q)_n * z^n,   n over all integers

Terms are generated by their running ratio, which is rational in q^n, and
accumulated with a compensated (Neumaier) sum.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import DomainError, NoConvergence
from .qcore import (
    DOUBLE,
    Param,
    Precision,
    check_base,
    csqrt,
    is_finite,
    is_mp,
    pole_factor,
    qpoch,
    qpow,
    tau,
)

PHI = "phi"
PHI_TILDE = "phi_tilde"
PSI = "psi_bilateral"
VARIANTS = (PHI, PHI_TILDE, PSI)


@dataclass(frozen=True)
class SeriesSpec:
    variant: str
    numerator: tuple
    denominator: tuple
    base: object
    argument: object

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise DomainError(f"unknown series variant {self.variant!r}")
        object.__setattr__(self, "numerator", tuple(Param.of(p) for p in self.numerator))
        object.__setattr__(self, "denominator", tuple(Param.of(p) for p in self.denominator))
        if self.variant == PSI and len(self.numerator) != len(self.denominator):
            raise DomainError("bilateral series need equally many numerator and denominator parameters")

    @property
    def r(self) -> int:
        return len(self.numerator)

    @property
    def s(self) -> int:
        return len(self.denominator)

    @property
    def tau_power(self) -> int:
        if self.variant == PHI:
            return 1 + self.s - self.r
        if self.variant == PHI_TILDE:
            return self.s - self.r
        return 0


def phi(upper: Sequence, lower: Sequence, q, z) -> SeriesSpec:
    return SeriesSpec(PHI, tuple(upper), tuple(lower), q, z)


def phi_tilde(upper: Sequence, lower: Sequence, q, z) -> SeriesSpec:
    return SeriesSpec(PHI_TILDE, tuple(upper), tuple(lower), q, z)


def psi(upper: Sequence, lower: Sequence, q, z) -> SeriesSpec:
    return SeriesSpec(PSI, tuple(upper), tuple(lower), q, z)


@dataclass(frozen=True)
class SumCtrl:
    tol: float = 1e-14
    max_terms: int = 4000
    k_stop: int = 5

    def __post_init__(self):
        if not (self.tol > 0 and self.max_terms >= 1 and self.k_stop >= 1):
            raise DomainError(f"invalid summation control {self}")

    @classmethod
    def for_precision(cls, prec: Precision = DOUBLE, max_terms: int = 4000) -> "SumCtrl":
        return cls(tol=prec.sum_tol, max_terms=max_terms)


DEFAULT_CTRL = SumCtrl()


@dataclass
class SumResult:
    value: object
    terms_used: int
    terminated_exactly: bool
    tail_estimate: float
    # largest asymptotic term ratio seen; bilateral sums report both tails here
    ratio: float = 0.0

    def __post_init__(self):
        if not self.tail_estimate >= 0:
            raise ValueError("tail estimate must be non-negative")

    def scaled(self, factor) -> "SumResult":
        return SumResult(
            self.value * factor,
            self.terms_used,
            self.terminated_exactly,
            self.tail_estimate * float(abs(factor)),
            self.ratio,
        )


def exact(value) -> SumResult:
    """Wrap a closed-form value (no truncation involved)."""
    return SumResult(value, 0, True, 0.0)


def combine(value, *parts: SumResult, weights: Optional[Sequence] = None) -> SumResult:
    """Result for ``value`` assembled from the given partial results."""
    if weights is None:
        weights = [1] * len(parts)
    tail = sum(p.tail_estimate * float(abs(w)) for p, w in zip(parts, weights))
    return SumResult(
        value,
        sum(p.terms_used for p in parts),
        all(p.terminated_exactly for p in parts),
        tail,
        max((p.ratio for p in parts), default=0.0),
    )


def _two_sum(a, b):
    s = a + b
    bp = s - a
    return s, (a - (s - bp)) + (b - bp)


class Accumulator:
    """Compensated running sum of complex (or mpc) terms."""

    __slots__ = ("re", "im", "cre", "cim")

    def __init__(self, zero=0.0):
        self.re = zero
        self.im = zero
        self.cre = zero
        self.cim = zero

    def add(self, z):
        self.re, e = _two_sum(self.re, z.real)
        self.cre += e
        self.im, e = _two_sum(self.im, z.imag)
        self.cim += e

    @property
    def value(self):
        return complex(self.re + self.cre, self.im + self.cim) if isinstance(self.re, float) else (
            (self.re + self.cre) + 1j * (self.im + self.cim)
        )


def _zero_like(z):
    return (z * 0).real


class _Stopper:
    """Shared stopping rule and tail bookkeeping for one-directional sums.

    The tail ratio is the geometric mean of the term ratios over the last
    ``k_stop`` steps, so an isolated small term (a near-zero of an irregular
    summand) does not masquerade as divergence.
    """

    def __init__(self, ctrl: SumCtrl):
        self.ctrl = ctrl
        self.small = 0
        self.window: deque = deque(maxlen=ctrl.k_stop + 1)  # (index, |term|) of nonzero terms

    def observe(self, n: int, mag: float, partial_mag: float) -> bool:
        if mag > 0:
            self.window.append((n, mag))
        if mag < self.ctrl.tol * max(1.0, partial_mag):
            self.small += 1
        else:
            self.small = 0
        return self.small >= self.ctrl.k_stop

    def tail(self) -> tuple:
        if len(self.window) < 2:
            return 0.0, 0.0
        (i0, m0), (i1, m1) = self.window[0], self.window[-1]
        rho = (m1 / m0) ** (1.0 / (i1 - i0))
        if rho >= 1:
            return math.inf, rho
        # measured from the last nonzero term: a run of zeros (possibly underflow) is not proof of termination
        return m1 * rho / (1 - rho), rho


def sum_terms(term: Callable[[int], object], ctrl: SumCtrl = DEFAULT_CTRL, start: int = 0,
              stop: Optional[int] = None, zero=0.0) -> SumResult:
    """Sum ``term(n)`` for ``n = start, start+1, ...`` under the stopping rule.

    ``stop`` (inclusive) marks a sum known to be finite; it is then summed
    completely and reported as exactly terminated.
    """
    acc = Accumulator(zero)
    rule = _Stopper(ctrl)
    n = start
    while True:
        if stop is not None and n > stop:
            return SumResult(acc.value, n - start, True, 0.0)
        if n - start >= ctrl.max_terms:
            raise NoConvergence(f"no convergence within {ctrl.max_terms} terms")
        t = term(n)
        if not is_finite(t):
            raise NoConvergence(f"term {n} is not finite")
        acc.add(t)
        if stop is None and rule.observe(n, float(abs(t)), float(abs(acc.value))):
            tail, rho = rule.tail()
            return SumResult(acc.value, n - start + 1, False, tail, rho)
        n += 1


def is_terminating(spec: SeriesSpec) -> Optional[int]:
    """Smallest ``N`` such that a numerator parameter is exactly ``q^{-N}``."""
    best = None
    for p in spec.numerator:
        if p.tagged and p.exponent <= 0 and p.coeff == 1:
            n = -p.exponent
            best = n if best is None else min(best, n)
    return best


def term(spec: SeriesSpec, n: int):
    """The n-th summand, computed from scratch."""
    q, z = spec.base, spec.argument
    if spec.variant != PSI:
        if n < 0:
            raise DomainError("unilateral series have no negative-index terms")
        stop = is_terminating(spec)
        if stop is not None and n > stop:
            return z * 0 + q * 0
    if n < 0:
        # (a;q)_{-m} = 1 / prod_{k=1}^{m} (1 - a q^{-k}); interleave factors so nothing underflows
        t = q * 0 + z * 0 + 1
        for k in range(1, -n + 1):
            qk = qpow(q, -k)
            f = 1 / z
            for p in spec.denominator:
                f = f * (1 - p.value * qk)
            for p in spec.numerator:
                f = f / pole_factor(p.value * qk)
            t = t * f
        return t
    num = q * 0 + 1
    for p in spec.numerator:
        num = num * qpoch(p.value, q, n)
    den = q * 0 + 1
    for p in spec.denominator:
        for k in range(n):
            den = den * pole_factor(p.value * qpow(q, k))
    if spec.variant == PHI:
        den = den * qpoch(q, q, n)
    t = num / den * z**n
    if spec.tau_power:
        t = t * tau(n, q) ** spec.tau_power
    return t


def _ratio_forward(spec: SeriesSpec, n: int, qn):
    """term(n+1)/term(n) given ``qn = q**n``."""
    num = 1
    for p in spec.numerator:
        num = num * (1 - p.value * qn)
    den = 1
    for p in spec.denominator:
        den = den * pole_factor(p.value * qn)
    if spec.variant == PHI:
        den = den * pole_factor(qn * spec.base)
    r = num / den * spec.argument
    tp = spec.tau_power
    if tp > 0:
        r = r * (-qn) ** tp
    elif tp < 0:
        r = r / (-qn) ** (-tp)
    return r


#: running terms are renormalised to a power-of-two exponent outside this band
_RENORM = 2.0**256


def split_scale(value, q, shift: int) -> tuple:
    """``value * q^shift`` as ``(mantissa, E)`` meaning ``mantissa * 2^E``.

    Only double-precision values need this; mpmath numbers have no practical
    exponent limit and are returned unsplit.
    """
    if shift == 0:
        return value, 0
    if is_mp(value) or is_mp(q):
        return value * qpow(q, shift), 0
    lg = shift * math.log2(abs(q))
    E = math.floor(lg)
    phase = qpow(q / abs(q), shift)
    return value * phase * 2.0 ** (lg - E), E


def renorm(t, E: int) -> tuple:
    """Rescale a split value ``t * 2^E`` so that ``|t|`` is near 1."""
    if is_mp(t) or t == 0:
        return t, E
    e = math.frexp(abs(t))[1]
    return ldexp(t, -e), E + e


def ldexp(t, E: int):
    """``t * 2^E`` for real or complex ``t``."""
    if E == 0:
        return t
    try:
        if isinstance(t, complex):
            return complex(math.ldexp(t.real, E), math.ldexp(t.imag, E))
        return math.ldexp(t, E)
    except OverflowError:
        raise NoConvergence("scaled term overflows") from None


def _forward(spec: SeriesSpec, ctrl: SumCtrl, include_zero: bool = True, scale=1, qshift: int = 0) -> SumResult:
    q = spec.base
    one = spec.argument * 0 + q * 0 + 1
    zero = _zero_like(one)
    acc = Accumulator(zero)
    stop = is_terminating(spec) if spec.variant != PSI else None
    rule = _Stopper(ctrl)
    # the running term is mantissa t times 2^E; E stays 0 unless a scale is tiny or huge
    t, E = split_scale(one * scale, q, qshift)
    split = not is_mp(t)
    n = 0
    if include_zero:
        v = ldexp(t, E)
        acc.add(v)
        rule.observe(0, float(abs(v)), float(abs(v)))
    if spec.argument == 0 or t == 0:
        return SumResult(acc.value, 1, True, 0.0)
    while True:
        if stop is not None and n >= stop:
            return SumResult(acc.value, n + 1, True, 0.0)
        if n >= ctrl.max_terms:
            raise NoConvergence(f"series did not converge within {ctrl.max_terms} terms")
        t = t * _ratio_forward(spec, n, qpow(q, n))
        n += 1
        if not is_finite(t):
            raise NoConvergence(f"series diverged at term {n}")
        if t == 0:
            return SumResult(acc.value, n, True, 0.0)
        if split:
            mag = abs(t)
            if E or not 1 / _RENORM < mag < _RENORM:
                t, E = renorm(t, E)
        v = ldexp(t, E)
        acc.add(v)
        if stop is None and rule.observe(n, float(abs(v)), float(abs(acc.value))):
            tail, rho = rule.tail()
            return SumResult(acc.value, n + 1, False, tail, rho)


def eval_series(spec: SeriesSpec, ctrl: SumCtrl = DEFAULT_CTRL, scale=1, qshift: int = 0) -> SumResult:
    """Sum a unilateral series, every term multiplied by ``scale * q^qshift``.

    Folding a prefactor in before summing keeps the running terms of a long
    terminating series (which grow like ``|q|^{-n^2/2}``) finite.  ``qshift``
    carries a large power of ``q`` (typically from ``tau(n)``) whose value
    alone would underflow; in double precision the running term then keeps
    a separate binary exponent.
    """
    if spec.variant == PSI:
        raise DomainError("use eval_bilateral for bilateral series")
    check_base(spec.base)
    return _forward(spec, ctrl, scale=scale, qshift=qshift)


def eval_bilateral(spec: SeriesSpec, ctrl: SumCtrl = DEFAULT_CTRL) -> SumResult:
    """Sum a bilateral series as two independently converging tails."""
    if spec.variant != PSI:
        raise DomainError("eval_bilateral needs a psi_bilateral spec")
    check_base(spec.base)
    q, z = spec.base, spec.argument
    one = z * 0 + q * 0 + 1
    if z == 0:
        return SumResult(one, 1, True, 0.0)
    pos = _forward(spec, ctrl)

    zero = _zero_like(one)
    acc = Accumulator(zero)
    rule = _Stopper(ctrl)
    t = one
    n = 0
    neg_exact = False
    while True:
        if n >= ctrl.max_terms:
            raise NoConvergence(f"negative tail did not converge within {ctrl.max_terms} terms")
        qk = qpow(q, -(n + 1))
        num = 1
        for p in spec.denominator:
            num = num * (1 - p.value * qk)
        den = 1
        for p in spec.numerator:
            den = den * pole_factor(p.value * qk)
        t = t * num / den / z
        n += 1
        if not is_finite(t):
            raise NoConvergence(f"negative tail diverged at term -{n}")
        if t == 0:
            neg_exact = True
            break
        acc.add(t)
        if rule.observe(n, float(abs(t)), float(abs(acc.value))):
            break
    neg_tail, neg_rho = (0.0, 0.0) if neg_exact else rule.tail()
    return SumResult(
        pos.value + acc.value,
        pos.terms_used + n,
        pos.terminated_exactly and neg_exact,
        pos.tail_estimate + neg_tail,
        max(pos.ratio, neg_rho),
    )


def evaluate(spec: SeriesSpec, ctrl: SumCtrl = DEFAULT_CTRL) -> SumResult:
    if spec.variant == PSI:
        return eval_bilateral(spec, ctrl)
    return eval_series(spec, ctrl)


def bilateral_ratios(spec: SeriesSpec) -> tuple:
    """Limiting term ratios ``(forward, backward)`` of a bilateral series."""
    num = 1
    den = 1
    for p in spec.numerator:
        num = num * p.value
    for p in spec.denominator:
        den = den * p.value
    if num == 0:
        return float(abs(spec.argument)), 0.0
    return float(abs(spec.argument)), float(abs(den / num / spec.argument))


def vwp_spec(a1, upper: Sequence, q, z) -> SeriesSpec:
    """Expand the very-well-poised shorthand ``W(a1; a4, ..., ar; q, z)`` into a phi spec."""
    if a1 == 0:
        raise DomainError("very-well-poised series need a1 != 0")
    s = csqrt(a1)
    num = [Param.of(a1), Param.of(q * s), Param.of(-q * s)]
    den = [Param.of(s), Param.of(-s)]
    for p in upper:
        p = Param.of(p)
        if p.value == 0:
            raise DomainError("very-well-poised parameters must be nonzero")
        num.append(p)
        if p.tagged:
            den.append(Param(q * a1 / p.value, q * a1 / p.coeff, -p.exponent))
        else:
            den.append(Param(q * a1 / p.value))
    return SeriesSpec(PHI, tuple(num), tuple(den), q, z)
