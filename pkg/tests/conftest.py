import random

import pytest

from coble.curve import sample_vr_config
from coble.fields import PrimeField
from coble.restriction import build_restriction

P = 10007


@pytest.fixture(scope="session")
def fp():
    return PrimeField(P)


@pytest.fixture(scope="session")
def restriction8(fp):
    """One r = 8 configuration with its cubic model, shared by the curve tests."""
    rng = random.Random(8)
    c = sample_vr_config(8, fp, rng)
    return build_restriction(c, rng)


@pytest.fixture(scope="session")
def model(restriction8):
    return restriction8.model
