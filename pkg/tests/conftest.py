"""Shared fixtures for the muntzbasis test suite."""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))


@pytest.fixture
def rng():
    """Seeded generator so property tests are reproducible."""
    return np.random.default_rng(0x5EED)


@pytest.fixture
def random_trig(rng):
    """Factory for random trigonometric polynomials of a given degree."""
    from src.fourier.trig import TrigPolynomial

    def make(degree: int) -> TrigPolynomial:
        a0 = float(rng.standard_normal())
        pairs = tuple((float(a), float(b)) for a, b in rng.standard_normal((degree, 2)))
        return TrigPolynomial(a0, pairs)

    return make
