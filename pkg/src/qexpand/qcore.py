"""q-shifted factorials and the small arithmetic kernel everything else builds on.

Every function here is generic over the scalar type: plain Python ``complex``
in double mode, ``mpmath.mpc`` in extended mode.  Callers pick the mode by the
type of the values they pass in (see :class:`Precision`), and the arithmetic
follows along.
"""

from __future__ import annotations

import cmath
import contextlib
import math
from collections import OrderedDict
from dataclasses import dataclass
from typing import Iterable, Optional

import mpmath

from .errors import DomainError, PoleError, ScalarOverflow

#: relative size below which a factor ``1 - u`` counts as a pole
POLE_EPS = 1e-12
#: consecutive negligible factors required before an infinite product stops
K_STOP_INF = 3


@dataclass(frozen=True)
class Precision:
    name: str
    dps: Optional[int]
    sum_tol: float
    verify_tol: float

    def num(self, x):
        """Convert a number to this mode's scalar type."""
        if self.dps is None:
            return complex(x)
        return mpmath.mpc(x)

    def context(self):
        if self.dps is None:
            return contextlib.nullcontext()
        return mpmath.workdps(self.dps)

    @property
    def eps(self) -> float:
        if self.dps is None:
            return 2.0**-52
        return 10.0 ** (-self.dps)


DOUBLE = Precision("double", None, 1e-14, 1e-8)
EXTENDED = Precision("extended", 40, 1e-28, 1e-20)
PRECISIONS = {p.name: p for p in (DOUBLE, EXTENDED)}


def get_precision(name: str) -> Precision:
    try:
        return PRECISIONS[name]
    except KeyError:
        raise DomainError(f"unknown precision {name!r}; expected one of {sorted(PRECISIONS)}") from None


def is_mp(z) -> bool:
    return isinstance(z, (mpmath.mpc, mpmath.mpf))


def is_finite(z) -> bool:
    if is_mp(z):
        return bool(mpmath.isfinite(z))
    z = complex(z)
    return math.isfinite(z.real) and math.isfinite(z.imag)


def check_finite(z, what: str = "value"):
    if not is_finite(z):
        raise ScalarOverflow(f"{what} is not finite: {z}")
    return z


def csqrt(z):
    """Principal square root for either scalar type."""
    if is_mp(z):
        return mpmath.sqrt(z)
    return cmath.sqrt(z)


def machine_eps(z) -> float:
    if is_mp(z):
        return float(mpmath.mpf(2) ** (-mpmath.mp.prec))
    return 2.0**-52


def check_base(q) -> None:
    if not 0 < abs(q) < 1:
        raise DomainError(f"base must satisfy 0 < |q| < 1, got |q| = {float(abs(q))}")


def qpow(q, m: int):
    """``q**m`` for integer ``m`` by binary exponentiation."""
    if m < 0:
        return 1 / qpow(q, -m)
    result = q * 0 + 1
    base = q
    while m:
        if m & 1:
            result = result * base
        m >>= 1
        if m:
            base = base * base
    return result


def pole_factor(u):
    """Return ``1 - u``, raising :class:`PoleError` when it is numerically zero."""
    f = 1 - u
    if abs(f) <= POLE_EPS * (1 + abs(u)):
        raise PoleError(f"factor 1 - ({u}) vanishes")
    return f


#: partial products (a; q)_0..(a; q)_k of recently used (a, q), so that summing
#: n terms whose factors are recomputed per term costs O(n) products, not O(n^2)
_PREFIX_CACHE: OrderedDict = OrderedDict()
_PREFIX_CACHE_SIZE = 256


def _prefix_products(a, q, one, n: int) -> list:
    try:
        key = (type(a), a, type(q), q, mpmath.mp.prec)
        prefix = _PREFIX_CACHE.get(key)
    except TypeError:  # unhashable scalar
        key, prefix = None, None
    if prefix is None:
        prefix = [one]
        if key is not None:
            _PREFIX_CACHE[key] = prefix
            if len(_PREFIX_CACHE) > _PREFIX_CACHE_SIZE:
                _PREFIX_CACHE.popitem(last=False)
    elif key is not None:
        _PREFIX_CACHE.move_to_end(key)
    # same left-to-right products as a direct loop, so values do not depend on the cache
    while len(prefix) <= n:
        k = len(prefix) - 1
        prefix.append(prefix[-1] * (1 - a * qpow(q, k)))
    return prefix


def qpoch(a, q, n: int):
    """Finite q-shifted factorial ``(a; q)_n`` for any integer ``n``.

    For negative ``n`` this is the reciprocal ``1 / prod_{k=1}^{|n|} (1 - a q^{-k})``.
    """
    one = a * 0 + q * 0 + 1
    if n >= 0:
        return _prefix_products(a, q, one, n)[n]
    r = one
    for k in range(1, -n + 1):
        r = r * pole_factor(a * qpow(q, -k))
    return one / r


def qpoch_multi(params: Iterable, q, n: int):
    r = q * 0 + 1
    for a in params:
        r = r * qpoch(a, q, n)
    return r


def qpoch_inf(a, q, tol: Optional[float] = None, max_factors: int = 100_000):
    """Infinite product ``(a; q)_inf``.

    Factors are multiplied until ``|a q^k| < tol`` holds for ``K_STOP_INF``
    consecutive ``k``; the neglected tail then contributes a relative error of
    at most about ``tol / (1 - |q|)``.
    """
    check_base(q)
    if tol is None:
        tol = machine_eps(a * q) / 4
    r = a * 0 + q * 0 + 1
    if a == 0:
        return r
    small = 0
    for k in range(max_factors):
        u = a * qpow(q, k)
        r = r * (1 - u)
        if r == 0:
            return r
        if abs(u) < tol:
            small += 1
            if small >= K_STOP_INF:
                return check_finite(r, "(a;q)_inf")
        else:
            small = 0
    raise ScalarOverflow("infinite product did not settle")  # pragma: no cover


def qpoch_inf_multi(params: Iterable, q, tol: Optional[float] = None):
    r = q * 0 + 1
    for a in params:
        r = r * qpoch_inf(a, q, tol)
    return r


def tau(n: int, q):
    """``(-1)^n q^{n(n-1)/2}``."""
    e = n * (n - 1) // 2
    v = qpow(q, e)
    return -v if n % 2 else v


def qbinom(n: int, k: int, q):
    if not 0 <= k <= n:
        raise DomainError(f"q-binomial needs 0 <= k <= n, got n={n}, k={k}")
    return qpoch(q, q, n) / (qpoch(q, q, n - k) * qpoch(q, q, k))


@dataclass(frozen=True)
class Param:
    """A series parameter, optionally known to be exactly ``coeff * q**exponent``.

    The tag lets the summation code terminate a series (``q^{-N}`` in a
    numerator) without relying on floating-point cancellation.
    """

    value: object
    coeff: object = None
    exponent: Optional[int] = None

    @classmethod
    def qpower(cls, q, exponent: int, coeff=1):
        return cls(coeff * qpow(q, exponent), coeff, exponent)

    @classmethod
    def of(cls, v) -> "Param":
        return v if isinstance(v, Param) else cls(v)

    @property
    def tagged(self) -> bool:
        return self.exponent is not None

    def consistent(self, q, rtol: float = 1e-10) -> bool:
        if not self.tagged:
            return True
        expect = self.coeff * qpow(q, self.exponent)
        return abs(expect - self.value) <= rtol * max(1.0, float(abs(expect)))
