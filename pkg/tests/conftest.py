import pytest

from smtlab import RelationContext, Space


@pytest.fixture(scope="session")
def space233():
    return Space(2, 3, 3)


@pytest.fixture(scope="session")
def space243():
    return Space(2, 4, 3)


@pytest.fixture(scope="session")
def ctx233(space233):
    return RelationContext(space233)


@pytest.fixture(scope="session")
def ctx243(space243):
    return RelationContext(space243)
