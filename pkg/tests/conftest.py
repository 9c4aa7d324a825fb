"""Shared fixture matrices, all entered from their published sources."""

import pytest

from binomhorn import IntMatrix


@pytest.fixture
def B_erd():
    return IntMatrix([[1, 0], [-2, 1], [1, -2], [0, 1]])


@pytest.fixture
def A_erd():
    return IntMatrix([[3, 2, 1, 0], [0, 1, 2, 3]])


@pytest.fixture
def B_nh():
    return IntMatrix([[1, 1], [-1, -1], [1, 0], [0, 1]])


@pytest.fixture
def A_nh():
    return IntMatrix([[1, 1, 0, 0], [0, 1, 1, 1]])


@pytest.fixture
def B_ds():
    return IntMatrix([[-2, -1], [3, 0], [0, 3], [-1, -2]])


@pytest.fixture
def A_ds():
    return IntMatrix([[1, 1, 1, 1], [3, 2, 1, 0]])


@pytest.fixture
def B_him():
    return IntMatrix([[1, 1, 1], [-1, -2, -3],
                      [1, 0, 0], [0, 1, 0], [0, 0, 1]])


@pytest.fixture
def A_him():
    return IntMatrix([[-3, -1, 2, 1, 0], [-1, 0, 1, 1, 1]])


@pytest.fixture
def B_gauss():
    return IntMatrix([[1], [-1], [-1], [1]])


@pytest.fixture
def M3():
    return IntMatrix([[1, -5, 0], [-1, 1, -1], [0, 3, 1]])


@pytest.fixture
def M_erd23():
    return IntMatrix([[-2, 1], [1, -2]])


@pytest.fixture
def B_five():
    return IntMatrix([[0, -1, 2], [-1, 0, -1], [0, 1, -1],
                      [4, 5, 0], [-3, -5, 0]])


@pytest.fixture
def A_five():
    return IntMatrix([[1, 1, 1, 1, 1], [5, 10, 0, 7, 6]])
