import numpy as np
import pytest

from algebra.group_presentation import build_D_type
from classification.catalog import build_canonical
from oracle.cayley import CayleyTable, group_table, materialize
from settings import WorkbenchSettings

# Smallest loop that is not a group: Latin, non-associative, hence not Moufang.
ORDER_FIVE_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


@pytest.fixture
def settings():
    return WorkbenchSettings(seed=7, sample_trials=300)


@pytest.fixture(scope="session")
def type1():
    return build_canonical(1)


@pytest.fixture(scope="session")
def octonions():
    # type 2 at m1 = 1 is the Moufang loop of the unit octonions
    return build_canonical(2)


@pytest.fixture(scope="session")
def type1_table(type1):
    return materialize(type1)


@pytest.fixture(scope="session")
def octonion_table(octonions):
    return materialize(octonions)


@pytest.fixture(scope="session")
def d4_table():
    return group_table(build_D_type(1, 1))


@pytest.fixture(scope="session")
def q8_table():
    return group_table(build_D_type(2, 1))


@pytest.fixture(scope="session")
def non_moufang_table():
    return CayleyTable(np.array(ORDER_FIVE_LOOP))
