"""Randomized checks that constructed matrix pairs really are mutually inverse."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from ..errors import DomainError, PoleError
from ..identities.domain import MODULUS_RANGE, Q_RANGE
from ..inversion import KERNELS, NodeSequences, gessel_stanton_pair, inverse_pair, verify_inverse_pair
from .sampling import sample_rng

KERNEL_CHOICES = ("linear", "gessel-stanton")
MAX_REDRAWS = 100


def _complex(rng, lo_hi) -> complex:
    lo, hi = lo_hi
    return cmath.rect(math.exp(rng.uniform(math.log(lo), math.log(hi))), rng.uniform(0, 2 * math.pi))


@dataclass(frozen=True)
class InversionReport:
    kernel: str
    size: int
    trials: int
    tol: float
    deviations: tuple

    @property
    def max_deviation(self) -> float:
        return max(self.deviations)

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tol


def _trial(kernel: str, size: int, rng) -> float:
    for _ in range(MAX_REDRAWS):
        q = _complex(rng, Q_RANGE)
        try:
            if kernel == "linear":
                a, c = _complex(rng, MODULUS_RANGE), _complex(rng, MODULUS_RANGE)
                B, Binv = inverse_pair(KERNELS["linear"], NodeSequences.geometric(a, c, q), size)
            else:
                A, p = _complex(rng, MODULUS_RANGE), _complex(rng, Q_RANGE)
                B, Binv = gessel_stanton_pair(A, p, q, size)
        except (DomainError, PoleError):
            continue  # degenerate draw (coincident nodes or a kernel pole)
        return verify_inverse_pair(B, Binv)
    raise DomainError(f"no admissible {kernel} draw in {MAX_REDRAWS} attempts")


def inversion_stress(kernel: str = "linear", size: int = 16, trials: int = 20, seed: int = 0,
                     tol: float = 1e-9) -> InversionReport:
    """Build ``trials`` random pairs of order ``size + 1`` and record how far both products are from I."""
    if kernel not in KERNEL_CHOICES:
        raise DomainError(f"unknown kernel {kernel!r}")
    devs = tuple(_trial(kernel, size, sample_rng(seed, f"inversion/{kernel}", i)) for i in range(trials))
    return InversionReport(kernel, size, trials, tol, devs)
