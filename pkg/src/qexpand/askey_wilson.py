"""Askey-Wilson polynomials through their terminating 4phi3 representation."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import mpmath

from .errors import DomainError, NoConvergence
from .qcore import Param, is_mp, qpoch, qpoch_multi, qpow
from .series import DEFAULT_CTRL, SumCtrl, SumResult, eval_series, phi, phi_tilde, sum_terms


@dataclass(frozen=True)
class AWPoint:
    """Evaluation point: ``e_plus = e^{i theta}``, ``e_minus = e^{-i theta}`` and the four parameters.

    Only the pair (e_plus, e_minus) is stored.  ``|e_plus|`` need not be 1; the
    generating-function identity is rational in it.
    """

    e_plus: object
    e_minus: object
    a: object
    b: object
    c: object
    d: object
    q: object

    def __post_init__(self):
        if abs(self.e_plus * self.e_minus - 1) > 1e-12:
            raise DomainError("e_plus * e_minus must equal 1")

    @classmethod
    def from_e(cls, e_plus, a, b, c, d, q) -> "AWPoint":
        return cls(e_plus, 1 / e_plus, a, b, c, d, q)

    @property
    def y(self):
        return (self.e_plus + self.e_minus) / 2


def _inner(n: int, pt: AWPoint, scale=1, qshift: int = 0) -> SumResult:
    a, b, c, d, q = pt.a, pt.b, pt.c, pt.d, pt.q
    spec = phi(
        [Param.qpower(q, -n), a * pt.e_plus, a * pt.e_minus, a * b * c * d * qpow(q, n - 1)],
        [a * b, a * c, a * d],
        q,
        q,
    )
    return eval_series(spec, SumCtrl(1e-300, max(n + 2, 2)), scale, qshift)


def aw_poly_scaled(n: int, pt: AWPoint):
    """``a^n p_n = (ab, ac, ad; q)_n * 4phi3[...]``; finite even when ``a = 0``."""
    return qpoch_multi([pt.a * pt.b, pt.a * pt.c, pt.a * pt.d], pt.q, n) * _inner(n, pt).value


#: extra digits carried on top of the estimated cancellation
GUARD_DPS = 10
MAX_ROUNDS = 4


def _log_peak(n: int, pt: AWPoint) -> float:
    """log10 of the largest 4phi3 term, from a double-precision pass."""
    a, b, c, d, q = (complex(v) for v in (pt.a, pt.b, pt.c, pt.d, pt.q))
    ep, em = complex(pt.e_plus), complex(pt.e_minus)
    t, peak = 1.0, 0.0
    try:
        for k in range(n):
            qk = q**k
            num = (1 - q ** (k - n)) * (1 - a * ep * qk) * (1 - a * em * qk) * (1 - a * b * c * d * q ** (n - 1 + k))
            den = (1 - q * qk) * (1 - a * b * qk) * (1 - a * c * qk) * (1 - a * d * qk)
            t = t * num / den * q
            if abs(t) > 0:
                peak = max(peak, math.log10(abs(t)))
    except (OverflowError, ZeroDivisionError):
        return 300.0
    return peak if math.isfinite(peak) else 300.0


def _poly_at(n: int, pt: AWPoint, dps: int):
    with mpmath.workdps(dps):
        mp = AWPoint(*(mpmath.mpmathify(getattr(pt, f.name)) for f in fields(pt)))
        return aw_poly_scaled(n, mp) / mp.a**n


def aw_poly(n: int, pt: AWPoint):
    """The Askey-Wilson polynomial ``p_n(y; a, b, c, d | q)``.

    The terminating 4phi3 cancels heavily when ``|q|`` is small, so the sum is
    taken with mpmath at a precision covering its largest term and confirmed
    by a second pass at higher precision.  The result has the scalar type of
    the inputs.
    """
    if n < 0:
        raise DomainError("polynomial degree must be non-negative")
    if pt.a == 0:
        raise DomainError("the 4phi3 normalisation needs a != 0")
    mp_in = is_mp(pt.a) or is_mp(pt.q)
    digits = mpmath.mp.dps if mp_in else 16
    dps = digits + GUARD_DPS + int(math.ceil(_log_peak(n, pt)))
    lo = _poly_at(n, pt, dps)
    for _ in range(MAX_ROUNDS):
        dps += 2 * GUARD_DPS
        hi = _poly_at(n, pt, dps)
        with mpmath.workdps(dps):
            if abs(hi - lo) <= mpmath.mpf(10) ** (-digits - 2) * abs(hi):
                return +hi if mp_in else complex(hi)
        lo = hi
    raise NoConvergence(f"p_{n} did not settle by {dps} digits")


def aw_gf_sides(x, pt: AWPoint, ctrl: SumCtrl = DEFAULT_CTRL) -> tuple:
    """Both sides of the generating function

        (1 - x) 3phi~3[a e+, a e-, abcd/(xq); ab, ac, ad; q, x]
            = sum_n p_n (abcd/(xq); q)_n / (xq, ab, ac, ad; q)_n (1 - abcd q^{2n-1}) tau(n) (ax)^n.
    """
    if not abs(x) < 1:
        raise DomainError("generating function needs |x| < 1")
    a, b, c, d, q = pt.a, pt.b, pt.c, pt.d, pt.q
    abcd = a * b * c * d
    lhs = eval_series(phi_tilde([a * pt.e_plus, a * pt.e_minus, abcd / (x * q)], [a * b, a * c, a * d], q, x), ctrl)
    lhs = lhs.scaled(1 - x)

    def term(n):
        # p_n a^n divided by (ab, ac, ad)_n leaves the bare 4phi3
        w = qpoch(abcd / (x * q), q, n) / qpoch(x * q, q, n) * (1 - abcd * qpow(q, 2 * n - 1))
        # tau(n) = (-1)^n q^{n(n-1)/2}; the power of q is applied inside the 4phi3 to avoid underflow
        return _inner(n, pt, w * (-x) ** n, n * (n - 1) // 2).value

    rhs = sum_terms(term, ctrl, zero=(x * 0).real)
    return lhs, rhs
