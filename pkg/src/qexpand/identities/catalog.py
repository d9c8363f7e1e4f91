"""Registry of two-sided identities."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from ..errors import NotFound
from ..qcore import DOUBLE, Precision
from ..series import SumCtrl, SumResult
from .domain import ParamDomain


@dataclass(frozen=True)
class EvalContext:
    prec: Precision = DOUBLE
    ctrl: SumCtrl = SumCtrl()

    @classmethod
    def for_precision(cls, prec: Precision, max_terms: int = 4000) -> "EvalContext":
        return cls(prec, SumCtrl.for_precision(prec, max_terms))

    def convert(self, asg: Mapping) -> dict:
        """Assignment with every non-integer value in this precision's scalar type."""
        return {k: v if isinstance(v, int) else self.prec.num(v) for k, v in asg.items()}


@dataclass(frozen=True)
class Identity:
    """A computable identity ``lhs(asg) == rhs(asg)`` on a sampled domain.

    ``sides`` evaluates both members at once (several identities share work
    between them); ``smoke`` is a fixed admissible assignment.
    """

    id: str
    anchor: str
    domain: ParamDomain
    sides: Callable[[dict, EvalContext], tuple]
    smoke: Mapping = field(default_factory=dict)
    summary: str = ""

    @property
    def params(self) -> tuple:
        return self.domain.names

    def evaluate(self, asg: Mapping, ctx: Optional[EvalContext] = None) -> tuple:
        ctx = ctx or EvalContext()
        with ctx.prec.context():
            return self.sides(ctx.convert(asg), ctx)

    def lhs(self, asg: Mapping, ctx: Optional[EvalContext] = None) -> SumResult:
        return self.evaluate(asg, ctx)[0]

    def rhs(self, asg: Mapping, ctx: Optional[EvalContext] = None) -> SumResult:
        return self.evaluate(asg, ctx)[1]


_REGISTRY: dict = {}


def register(identity: Identity) -> Identity:
    if identity.id in _REGISTRY:
        raise ValueError(f"duplicate identity id {identity.id!r}")
    _REGISTRY[identity.id] = identity
    return identity


def _load() -> None:
    from . import entries_classical, entries_expansions, entries_special  # noqa: F401


def build_catalog() -> tuple:
    _load()
    return tuple(_REGISTRY.values())


def lookup(identity_id: str) -> Identity:
    _load()
    try:
        return _REGISTRY[identity_id]
    except KeyError:
        raise NotFound(f"unknown identity id {identity_id!r}") from None


def listing() -> list:
    """Machine-readable ``[{id, anchor, params}]`` for every entry."""
    return [{"id": i.id, "anchor": i.anchor, "params": list(i.params)} for i in build_catalog()]
