"""Expansion theorems and the catalog of identities derived from them."""

from .catalog import EvalContext, Identity, build_catalog, listing, lookup
from .domain import ParamDomain
from .theorems import (
    DeltaOp,
    apply_delta,
    eval_multi,
    omega_val,
    thm_dlidi_sides,
    thm_main_sides,
    wp_bailey_beta,
)

__all__ = [
    "DeltaOp",
    "EvalContext",
    "Identity",
    "ParamDomain",
    "apply_delta",
    "build_catalog",
    "eval_multi",
    "listing",
    "lookup",
    "omega_val",
    "thm_dlidi_sides",
    "thm_main_sides",
    "wp_bailey_beta",
]
