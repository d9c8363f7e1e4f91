"""Two-sided comparison of one identity at one assignment."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

from ..errors import DomainError, NoConvergence, PoleError, ScalarOverflow
from ..identities import EvalContext, Identity
from ..qcore import is_finite

PASS = "pass"
FAIL = "fail"
REJECTED = "rejected_sample"
NO_CONVERGENCE = "no_convergence"
STATUSES = (PASS, FAIL, REJECTED, NO_CONVERGENCE)


@dataclass(frozen=True)
class ComparisonResult:
    assignment: dict
    lhs: object
    rhs: object
    rel_err: float
    lhs_tail: float
    rhs_tail: float
    status: str
    detail: str = ""


def rel_err(lhs, rhs) -> float:
    """``|lhs - rhs| / max(|lhs|, |rhs|, 1)``."""
    return float(abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1))


def _failed(asg, status, detail) -> ComparisonResult:
    return ComparisonResult(dict(asg), None, None, math.nan, math.nan, math.nan, status, detail)


def verify_identity(identity: Identity, assignment: Mapping, ctx: Optional[EvalContext] = None,
                    tol: Optional[float] = None) -> ComparisonResult:
    """Evaluate both sides and classify the outcome.

    Passing needs ``rel_err < tol`` and both tail estimates (relative to the
    same denominator as ``rel_err``) below ``tol / 10``.  Poles and domain
    violations met during evaluation mark the sample as rejected; divergence
    or overflow gives ``no_convergence``.  Nothing here raises.
    """
    ctx = ctx or EvalContext()
    tol = ctx.prec.verify_tol if tol is None else tol
    try:
        with ctx.prec.context():
            lhs, rhs = identity.sides(ctx.convert(assignment), ctx)
            l, r = lhs.value, rhs.value
            if not (is_finite(l) and is_finite(r)):
                return _failed(assignment, NO_CONVERGENCE, "non-finite value")
            den = float(max(abs(l), abs(r), 1))
            err = rel_err(l, r)
    except (PoleError, DomainError, ZeroDivisionError) as exc:
        return _failed(assignment, REJECTED, str(exc))
    except (NoConvergence, ScalarOverflow, OverflowError) as exc:
        return _failed(assignment, NO_CONVERGENCE, str(exc))
    lt, rt = float(lhs.tail_estimate) / den, float(rhs.tail_estimate) / den
    if not (math.isfinite(lt) and math.isfinite(rt)):
        status = NO_CONVERGENCE
    elif err < tol and lt < tol / 10 and rt < tol / 10:
        status = PASS
    else:
        status = FAIL
    return ComparisonResult(dict(assignment), l, r, err, lt, rt, status)
