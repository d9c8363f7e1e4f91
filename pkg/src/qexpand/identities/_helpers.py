"""Small shared pieces for catalog entries."""

from __future__ import annotations

from typing import Callable, Sequence

from ..qcore import qpoch_inf_multi
from ..series import SeriesSpec, SumResult, evaluate, exact, sum_terms, _zero_like
from .catalog import EvalContext  # noqa: F401


def ev(spec: SeriesSpec, ctx: EvalContext) -> SumResult:
    return evaluate(spec, ctx.ctrl)


def ser(term: Callable[[int], object], ctx: EvalContext, like) -> SumResult:
    return sum_terms(term, ctx.ctrl, zero=_zero_like(like))


def products(num: Sequence, den: Sequence, q) -> SumResult:
    """Exact-type result for ``(num; q)_inf / (den; q)_inf``."""
    return exact(qpoch_inf_multi(num, q) / qpoch_inf_multi(den, q))


def bilateral_poles(spec: SeriesSpec) -> list:
    """Values ``p`` whose ``p q^m`` (m >= 0) must avoid 1 for a bilateral spec."""
    out = [p.value for p in spec.denominator]
    # (u; q)_{-n} = 1 / prod_{k=1}^{n} (1 - u q^{-k}) blows up when u = q^k
    out += [spec.base / p.value for p in spec.numerator if p.value != 0]
    return out
