import random

import pytest

from prk.gen import PropGen, TermGen, seed_from_env


@pytest.fixture
def rng():
    return random.Random(seed_from_env())


@pytest.fixture
def prop_gen(rng):
    return PropGen(rng)


@pytest.fixture
def term_gen(rng):
    return TermGen(rng)


@pytest.fixture(scope="session")
def models_1var():
    from prk.kripke import enumerate_models
    return enumerate_models(("a",), 3)


@pytest.fixture(scope="session")
def models_2var():
    from prk.kripke import enumerate_models
    return enumerate_models(("a", "b"), 3)
