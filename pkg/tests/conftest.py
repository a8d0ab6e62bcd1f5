import pytest

import codespectra as cs


@pytest.fixture(scope="session")
def even5():
    return cs.make_even_weight(5)


@pytest.fixture(scope="session")
def even7():
    return cs.make_even_weight(7)


@pytest.fixture(scope="session")
def gold5():
    return cs.make_gold(5)


@pytest.fixture(scope="session")
def gold7():
    return cs.make_gold(7)


@pytest.fixture(scope="session")
def rm1_3():
    return cs.make_rm1(3)
