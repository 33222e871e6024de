import random

import pytest

from ppgroup.services.utils import sample_sequences

SEED = 20240611


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture(scope="session")
def samples():
    return sample_sequences(20, seed=SEED)
