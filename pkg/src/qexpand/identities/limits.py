"""Limit checks: an identity evaluated at a small parameter against its limiting form.

Each check evaluates the discrepancy at ``eps`` and ``eps / 2``.  A first-order
error model predicts the discrepancy halves; the check asks it to shrink by at
least :data:`MIN_SHRINK`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from ..series import DEFAULT_CTRL, SumCtrl
from .catalog import EvalContext, lookup
from .entries_classical import gen_rogers_fine_sides, rogers_fine_sides
from .entries_special import concluding_lhs, concluding_w
from .theorems import thm_dlidi_sides, thm_main_sides

MIN_SHRINK = 1.5


@dataclass(frozen=True)
class LimitCheck:
    eps: float
    discrepancy: float  # at eps
    half: float  # at eps / 2

    @property
    def shrink(self) -> float:
        return self.discrepancy / self.half if self.half > 0 else float("inf")

    def ok(self, tol: float) -> bool:
        return self.discrepancy < tol and self.shrink >= MIN_SHRINK


def _pair_gap(near, limit) -> float:
    return max(abs(complex(near[0].value - limit[0].value)), abs(complex(near[1].value - limit[1].value)))


def _check(gap: Callable[[float], float], eps: float) -> LimitCheck:
    return LimitCheck(eps, gap(eps), gap(eps / 2))


def gen_rogers_fine_to_rogers_fine(p: Mapping, eps: float = 1e-6, ctrl: SumCtrl = DEFAULT_CTRL) -> LimitCheck:
    """``d -> 0`` in the generalised Rogers-Fine identity, both sides compared."""
    a, c, x, q = p["a"], p["c"], p["x"], p["q"]
    rf = rogers_fine_sides(a, c, x, q, ctrl)
    # the generalised identity lists its sides in the opposite order
    return _check(lambda d: _pair_gap(gen_rogers_fine_sides(a, c, d, x, q, ctrl)[::-1], rf), eps)


def thm_main_to_dlidi(A, B, a, c, x, t, q, eps: float = 1e-6, ctrl: SumCtrl = DEFAULT_CTRL) -> LimitCheck:
    """``d -> 0`` in the main expansion.

    The limit is the argument-coupled expansion with an extra numerator ``q``
    (cancelling ``(q;q)_n``), an extra zero denominator and ``c`` replaced by ``cq``.
    """
    limit = thm_dlidi_sides(list(A) + [q], list(B) + [0], c * q, x, t, q, ctrl)
    return _check(lambda d: _pair_gap(thm_main_sides(A, B, a, c, d, x, t, q, ctrl), limit), eps)


def concluding_y(p: Mapping, eps: float = 1e-4, ctx: EvalContext = EvalContext()) -> LimitCheck:
    """The 8W7 side at small ``y`` against the left side of the limiting transformation."""
    a, b, c, d, x, q = (p[k] for k in ("a", "b", "c", "d", "x", "q"))
    lhs = concluding_lhs(a, b, c, d, x, q, ctx).value
    return _check(lambda y: abs(complex(concluding_w(a, b, c, d, x, y, q, ctx).value - lhs)), eps)


def dlidi_to_carlitz(p: Mapping, eps: float = 1e-6, ctx: EvalContext = EvalContext()) -> LimitCheck:
    """``c -> 0`` in the argument-coupled expansion against the Carlitz-type entry."""
    carlitz = lookup("carlitz_gen").evaluate(p, ctx)
    a1, b1, x, t, q = (p[k] for k in ("a1", "b1", "x", "t", "q"))
    return _check(lambda c: _pair_gap(thm_dlidi_sides([a1], [b1], c, x, t, q, ctx.ctrl), carlitz), eps)
