import pytest

from freeprob import models


@pytest.fixture(scope="session")
def circular_model():
    return models.circular_model()


@pytest.fixture(scope="session")
def two_atom_model():
    return models.two_atom_model()


@pytest.fixture(scope="session")
def haar_model():
    return models.haar_model()
