import pytest

from wavesym.detsys import ClassSpec


@pytest.fixture(scope="session")
def spec():
    return ClassSpec.default()


@pytest.fixture(scope="session")
def ch(spec):
    return spec.chart
