"""Catalog sweeps and the report they produce."""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import mpmath

from .. import __version__
from ..errors import ConfigError, ExhaustedRejections
from ..identities import EvalContext, build_catalog, lookup
from ..qcore import PRECISIONS, get_precision
from .sampling import sample_params
from .verify import NO_CONVERGENCE, PASS, REJECTED, STATUSES, ComparisonResult, verify_identity

SEED_MAX = 2**64 - 1
#: sample indices tried per requested sample before an identity gives up
INDEX_BUDGET = 20


@dataclass(frozen=True)
class RunConfig:
    """What to sweep and how.  ``workers`` only affects scheduling, never results."""

    identity_ids: tuple = ()
    samples: int = 50
    seed: int = 0
    tol: Optional[float] = None  # None: the precision's verification tolerance
    max_terms: int = 4000
    precision: str = "double"
    report_path: Optional[str] = None
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "identity_ids", tuple(self.identity_ids))
        if self.samples < 1:
            raise ConfigError("samples must be at least 1")
        if self.tol is not None and not self.tol > 0:
            raise ConfigError("tol must be positive")
        if not 0 <= self.seed <= SEED_MAX:
            raise ConfigError("seed must fit in 64 unsigned bits")
        if self.max_terms < 1:
            raise ConfigError("max_terms must be at least 1")
        if self.precision not in PRECISIONS:
            raise ConfigError(f"precision must be one of {sorted(PRECISIONS)}")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")

    @property
    def effective_tol(self) -> float:
        return get_precision(self.precision).verify_tol if self.tol is None else self.tol

    def echo(self) -> dict:
        return {
            "identity_ids": list(self.identity_ids),
            "samples": self.samples,
            "seed": self.seed,
            "tol": self.effective_tol,
            "max_terms": self.max_terms,
            "precision": self.precision,
        }


@dataclass
class IdentityReport:
    id: str
    anchor: str
    results: list = field(default_factory=list)  # (sample index, ComparisonResult), accepted samples only
    rejections: int = 0
    exhausted: str = ""

    @property
    def accepted(self) -> int:
        return len(self.results)

    def counts(self) -> dict:
        out = {s: 0 for s in STATUSES if s != REJECTED}
        for _, r in self.results:
            out[r.status] += 1
        return out

    def errors(self) -> list:
        return [r.rel_err for _, r in self.results if not math.isnan(r.rel_err)]

    def passed(self, samples: int) -> bool:
        return not self.exhausted and self.accepted == samples and all(r.status == PASS for _, r in self.results)

    def worst(self) -> Optional[tuple]:
        """The accepted sample with the largest error (non-evaluable samples first)."""
        if not self.results:
            return None
        return max(self.results, key=lambda ir: (ir[1].status == NO_CONVERGENCE, _nan_low(ir[1].rel_err)))


def _nan_low(v: float) -> float:
    return -1.0 if math.isnan(v) else v


def sweep_identity(identity_id: str, config: RunConfig) -> IdentityReport:
    """All samples of one identity, in index order."""
    identity = lookup(identity_id)
    prec = get_precision(config.precision)
    ctx = EvalContext.for_precision(prec, config.max_terms)
    tol = config.effective_tol
    rep = IdentityReport(identity.id, identity.anchor)
    index = 0
    while rep.accepted < config.samples:
        if index >= INDEX_BUDGET * config.samples + 100:
            rep.exhausted = "sample index budget used up"
            break
        try:
            sample = sample_params(identity, config.seed, index)
        except ExhaustedRejections as exc:
            rep.exhausted = str(exc)
            break
        rep.rejections += sample.rejections
        res = verify_identity(identity, sample.assignment, ctx, tol)
        if res.status == REJECTED:
            rep.rejections += 1
        else:
            rep.results.append((index, res))
        index += 1
    return rep


def _sweep_args(args) -> IdentityReport:
    return sweep_identity(*args)


@dataclass
class Report:
    config: RunConfig
    identities: list
    wall_time: float = 0.0  # kept out of the serialized report so reports stay reproducible

    @property
    def all_passed(self) -> bool:
        return all(r.passed(self.config.samples) for r in self.identities)

    @property
    def failed_ids(self) -> list:
        return [r.id for r in self.identities if not r.passed(self.config.samples)]

    def to_dict(self) -> dict:
        n = self.config.samples
        results = []
        for r in self.identities:
            errs = r.errors()
            worst = r.worst()
            results.append(
                {
                    "id": r.id,
                    "anchor": r.anchor,
                    "passed": r.passed(n),
                    "accepted_samples": r.accepted,
                    "rejections": r.rejections,
                    "status_counts": r.counts(),
                    "max_rel_err": _num(max(errs)) if errs else None,
                    "mean_rel_err": _num(math.fsum(errs) / len(errs)) if errs else None,
                    "worst_assignment": _assignment(worst[1].assignment) if worst else None,
                    "exhausted": r.exhausted or None,
                    "samples": [_sample(i, c) for i, c in r.results],
                }
            )
        return {
            "config": self.config.echo(),
            "results": results,
            "summary": {
                "identities": len(self.identities),
                "passed": len(self.identities) - len(self.failed_ids),
                "failed": len(self.failed_ids),
                "failed_ids": self.failed_ids,
                "all_passed": self.all_passed,
                "library_version": __version__,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False) + "\n"

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())


def _num(v: float):
    """Floats as JSON numbers (shortest round-trip repr); non-finite ones as strings."""
    v = float(v)
    return v if math.isfinite(v) else str(v)


def _decimal(x) -> str:
    if isinstance(x, mpmath.mpf):
        # every significant bit, independent of the ambient mpmath precision
        return mpmath.libmp.to_str(x._mpf_, mpmath.libmp.prec_to_dps(max(x._mpf_[3], 1)) + 1)
    return repr(float(x))


def _scalar(z):
    if z is None:
        return None
    if isinstance(z, int):
        return z
    if isinstance(z, mpmath.mpc):
        return {"re": _decimal(z.real), "im": _decimal(z.imag)}
    if isinstance(z, mpmath.mpf):
        return {"re": _decimal(z), "im": "0.0"}
    z = complex(z)
    return {"re": repr(z.real), "im": repr(z.imag)}


def _assignment(asg: dict) -> dict:
    return {k: _scalar(asg[k]) for k in sorted(asg)}


def _sample(index: int, c: ComparisonResult) -> dict:
    return {
        "index": index,
        "status": c.status,
        "rel_err": _num(c.rel_err),
        "lhs_tail": _num(c.lhs_tail),
        "rhs_tail": _num(c.rhs_tail),
        "lhs": _scalar(c.lhs),
        "rhs": _scalar(c.rhs),
        "assignment": _assignment(c.assignment),
        "detail": c.detail or None,
    }


def resolve_ids(config: RunConfig) -> list:
    """Requested ids in report order; unknown ids raise NotFound before any work."""
    if not config.identity_ids:
        return sorted(i.id for i in build_catalog())
    for i in config.identity_ids:
        lookup(i)
    return sorted(dict.fromkeys(config.identity_ids))


def run(config: RunConfig) -> Report:
    ids = resolve_ids(config)
    start = time.perf_counter()
    jobs = [(i, config) for i in ids]
    if config.workers > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            reps = list(pool.map(_sweep_args, jobs))
    else:
        reps = [_sweep_args(j) for j in jobs]
    report = Report(config, reps, time.perf_counter() - start)
    if config.report_path:
        report.write(config.report_path)
    return report
