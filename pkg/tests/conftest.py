import pytest

from quiverkit import HNSystem, Stability, make_kronecker, make_three_vertex

RUNNING_D = (2, 3)
RUNNING_THETA = (3, -2)
RUNNING_CHI = (-1, 1)


@pytest.fixture(scope="session")
def k4():
    return make_kronecker(4)


@pytest.fixture(scope="session")
def tri():
    return make_three_vertex(1, 1, 1)


@pytest.fixture(scope="session")
def running_stability():
    return Stability.of(RUNNING_THETA)


@pytest.fixture(scope="session")
def running_hn(k4, running_stability):
    return HNSystem(k4, RUNNING_D, running_stability)


@pytest.fixture(scope="session")
def running_chow(k4, running_stability):
    from quiverkit.chow import ModuliContext

    ctx = ModuliContext(k4, RUNNING_D, running_stability, RUNNING_CHI)
    ctx.graded_basis()
    return ctx


from hypothesis import settings

# fixed seeds: every property test sees the same examples on every run
settings.register_profile("fixed", derandomize=True, deadline=None, print_blob=True)
settings.load_profile("fixed")
