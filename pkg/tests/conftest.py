import cmath
import math

import numpy as np
import pytest
from hypothesis import strategies as st


def rand_complex(rng, lo=0.15, hi=0.85):
    r = math.exp(rng.uniform(math.log(lo), math.log(hi)))
    return cmath.rect(r, rng.uniform(0, 2 * math.pi))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def complex_in_annulus(lo=0.15, hi=0.85):
    """Hypothesis strategy for complex numbers with modulus in [lo, hi]."""
    return st.builds(
        lambda r, th: cmath.rect(r, th),
        st.floats(lo, hi),
        st.floats(0, 2 * math.pi),
    )


def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))
