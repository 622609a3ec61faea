import random

import pytest

from gnd_core.corpus import get_corpus


@pytest.fixture
def rng():
    return random.Random(1939)


@pytest.fixture
def corpus():
    return get_corpus()
