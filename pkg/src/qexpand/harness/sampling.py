"""Reproducible parameter sampling.

Every sample has its own counter-based generator keyed by
``(seed, crc32(identity id), sample index)``, so the assignment drawn for a
given index does not depend on which worker draws it or in what order.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

from ..errors import ExhaustedRejections
from ..identities import Identity

MAX_REJECTIONS = 1000


def sample_rng(seed: int, key: str, index: int) -> np.random.Generator:
    ss = np.random.SeedSequence([int(seed), zlib.crc32(key.encode()), int(index)])
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class Sample:
    index: int
    assignment: dict
    rejections: int  # draws discarded before this one was accepted


def sample_params(identity: Identity, seed: int, index: int, max_rejections: int = MAX_REJECTIONS) -> Sample:
    """Draw until the identity's domain accepts, or give up after ``max_rejections``."""
    rng = sample_rng(seed, identity.id, index)
    last = None
    for rejected in range(max_rejections):
        asg = identity.domain.draw(rng)
        last = identity.domain.rejection(asg)
        if last is None:
            return Sample(index, asg, rejected)
    raise ExhaustedRejections(f"{identity.id}: {max_rejections} consecutive rejections (last: {last})")
