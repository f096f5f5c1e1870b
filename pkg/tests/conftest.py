import pytest

from psdo.app.presets import build_symbol
from psdo.app.settings import SymbolConfig
from psdo.symbols import CircleSymbol


def _preset(name: str) -> CircleSymbol:
    symbol = build_symbol(SymbolConfig(preset=name))
    assert isinstance(symbol, CircleSymbol)
    return symbol


@pytest.fixture
def cosine() -> CircleSymbol:
    return _preset("cosine")


@pytest.fixture
def example13() -> CircleSymbol:
    return _preset("example13")


@pytest.fixture
def two_direction() -> CircleSymbol:
    return _preset("two_direction")


@pytest.fixture(scope="session")
def scattering() -> CircleSymbol:
    return _preset("scattering")
