"""Parameter domains: how to draw an assignment and when to reject it."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

from ..qcore import qpow
from ..series import bilateral_ratios

MODULUS_RANGE = (0.15, 0.85)
Q_RANGE = (0.2, 0.8)
#: draws with ``|1 - p q^m|`` below this for some listed ``p`` are rejected
POLE_MARGIN = 1e-3
POLE_DEPTH = 200
#: bilateral series whose limiting term ratio exceeds this on either tail are rejected
TAIL_RATIO_GUARD = 0.95

COMPLEX = "complex"
REAL = "real"
PHASE = "phase"  # unit modulus, uniform argument


@dataclass(frozen=True)
class IntRange:
    lo: int
    hi: int  # inclusive


@dataclass(frozen=True)
class Constraint:
    text: str
    check: Callable[[Mapping], bool]


@dataclass(frozen=True)
class PoleSet:
    """Values ``p`` (with base and starting power) that must stay clear of ``q^{-m}``."""

    fn: Callable[[Mapping], Sequence]
    base: str = "q"  # "q" or "q2"
    m_lo: int = 0

    def violated(self, asg: Mapping, margin: float = POLE_MARGIN, depth: int = POLE_DEPTH) -> Optional[str]:
        q = complex(asg["q"])
        base = q * q if self.base == "q2" else q
        for p in self.fn(asg):
            p = complex(p)
            step = base
            u = p * qpow(base, self.m_lo)
            for m in range(self.m_lo, depth + 1):
                if abs(1 - u) <= margin:
                    return f"pole: {p} * {self.base}^{m} near 1"
                u *= step
                if abs(u) < 1 - 2 * margin:
                    break  # |u| only shrinks from here on
        return None


@dataclass(frozen=True)
class ParamDomain:
    """Sampling recipe and admissibility predicates for one catalog entry.

    ``kinds`` maps parameter names to ``COMPLEX``, ``REAL``, ``PHASE`` or an
    :class:`IntRange`; ``moduli`` overrides the default modulus range for some
    names.  ``derived`` computes dependent parameters after the draw.
    """

    kinds: Mapping
    moduli: Mapping = field(default_factory=dict)
    q_kind: str = COMPLEX
    q_range: tuple = Q_RANGE
    derived: Optional[Callable[[Mapping], Mapping]] = None
    constraints: tuple = ()
    poles: tuple = ()
    bilateral: Optional[Callable[[Mapping], Sequence]] = None

    @property
    def names(self) -> tuple:
        return tuple(self.kinds) + ("q",)

    def draw(self, rng) -> dict:
        """One raw assignment of Python numbers (not yet screened)."""
        asg = {}
        for name, kind in self.kinds.items():
            if isinstance(kind, IntRange):
                asg[name] = int(rng.integers(kind.lo, kind.hi + 1))
            else:
                asg[name] = _draw_scalar(rng, kind, self.moduli.get(name, MODULUS_RANGE))
        asg["q"] = _draw_scalar(rng, self.q_kind, self.q_range)
        return self.complete(asg)

    def complete(self, asg: Mapping) -> dict:
        """Copy of ``asg`` with the derived parameters filled in."""
        out = dict(asg)
        if self.derived is not None:
            out.update(self.derived(out))
        return out

    def rejection(self, asg: Mapping) -> Optional[str]:
        """Reason to reject ``asg``, or None when it is admissible."""
        for c in self.constraints:
            try:
                ok = c.check(asg)
            except ZeroDivisionError:
                ok = False
            if not ok:
                return f"constraint {c.text}"
        for ps in self.poles:
            why = ps.violated(asg)
            if why:
                return why
        if self.bilateral is not None:
            for spec in self.bilateral(asg):
                fwd, bwd = bilateral_ratios(spec)
                if fwd > TAIL_RATIO_GUARD or bwd > TAIL_RATIO_GUARD:
                    return f"bilateral tail ratio {max(fwd, bwd):.3f}"
        return None


def _draw_scalar(rng, kind, mod_range):
    lo, hi = mod_range
    if kind == PHASE:
        return cmath.exp(1j * rng.uniform(0, 2 * math.pi))
    r = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    if kind == REAL:
        return complex(r if rng.uniform() < 0.5 else -r)
    return cmath.rect(r, rng.uniform(0, 2 * math.pi))


def below(limit: float, fn: Callable[[Mapping], object], text: str) -> Constraint:
    """Constraint ``|fn(asg)| < limit``."""
    return Constraint(text, lambda a: abs(complex(fn(a))) < limit)


def poles(fn: Callable[[Mapping], Sequence], base: str = "q", m_lo: int = 0) -> PoleSet:
    return PoleSet(fn, base, m_lo)
