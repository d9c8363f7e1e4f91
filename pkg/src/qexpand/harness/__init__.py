"""Randomized verification sweeps, inversion stress tests and report emission."""

from .inversion_check import InversionReport, inversion_stress
from .runner import IdentityReport, Report, RunConfig, run, sweep_identity
from .sampling import MAX_REJECTIONS, Sample, sample_params, sample_rng
from .verify import FAIL, NO_CONVERGENCE, PASS, REJECTED, ComparisonResult, rel_err, verify_identity

__all__ = [
    "FAIL",
    "MAX_REJECTIONS",
    "NO_CONVERGENCE",
    "PASS",
    "REJECTED",
    "ComparisonResult",
    "IdentityReport",
    "InversionReport",
    "Report",
    "RunConfig",
    "Sample",
    "inversion_stress",
    "rel_err",
    "run",
    "sample_params",
    "sample_rng",
    "sweep_identity",
    "verify_identity",
]
