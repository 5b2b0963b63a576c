import pytest

from coverchaos.address import ImplicitTower
from coverchaos.embed import build_embedding
from coverchaos.providers import FixedPointProvider, OdometerProvider


@pytest.fixture(scope="session")
def fixed_provider():
    return FixedPointProvider()


@pytest.fixture(scope="session")
def odometer_provider():
    return OdometerProvider()


@pytest.fixture(scope="session")
def fixed_engine(fixed_provider):
    return ImplicitTower(fixed_provider)


@pytest.fixture(scope="session")
def odometer_engine(odometer_provider):
    return ImplicitTower(odometer_provider)


@pytest.fixture(scope="session", params=["fixed-point", "odometer"])
def engine(request, fixed_engine, odometer_engine):
    return fixed_engine if request.param == "fixed-point" else odometer_engine


@pytest.fixture(scope="session")
def fixed_tower(fixed_provider):
    return build_embedding(fixed_provider, 5)


@pytest.fixture(scope="session")
def odometer_tower(odometer_provider):
    return build_embedding(odometer_provider, 5)


@pytest.fixture(scope="session", params=["fixed-point", "odometer"])
def tower(request, fixed_tower, odometer_tower):
    return fixed_tower if request.param == "fixed-point" else odometer_tower


@pytest.fixture(scope="session")
def tower_and_engine(tower, fixed_engine, odometer_engine):
    eng = fixed_engine if tower.provider.name == "fixed-point" else odometer_engine
    return tower, eng


SAMPLE_COVERING = """\
covering sample
level 1
vertices a b
edges
a b
b a
end
level 2
vertices a0 a1 b0 b1
edges
a0 b0
b0 a1
a1 b1
b1 a0
map
a0 -> a
a1 -> a
b0 -> b
b1 -> b
end
"""


@pytest.fixture
def sample_covering_text():
    return SAMPLE_COVERING
