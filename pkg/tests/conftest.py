import pytest
from hypothesis import settings

from modinv.gf import make_field, prime_field
from modinv.rep import (
    a4_char3_module,
    alternating_group_4,
    cyclic_group,
    regular_representation,
    symmetric_group,
)

# exact algebra has bursty timings; examples are bounded instead
settings.register_profile("modinv", deadline=None, max_examples=40)
settings.load_profile("modinv")


@pytest.fixture(scope="session")
def s3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def f2():
    return prime_field(2)


@pytest.fixture(scope="session")
def f3():
    return prime_field(3)


@pytest.fixture(scope="session")
def f4():
    return make_field(2, [3])


@pytest.fixture(scope="session")
def z2_swap(f2):
    return regular_representation(cyclic_group(2), f2)


@pytest.fixture(scope="session")
def a4_rep():
    return a4_char3_module()


@pytest.fixture(scope="session")
def a4():
    return alternating_group_4()
