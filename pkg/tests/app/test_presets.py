import pytest

from psdo.app.presets import PRESETS, build_symbol, expand_preset, get_preset, pinned_values, symbol_geometry
from psdo.app.settings import SymbolConfig
from psdo.symbols import CircleSymbol, TorusSymbol2D


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_every_preset_builds(name):
    cfg = SymbolConfig(preset=name)
    symbol = build_symbol(cfg)
    expected = TorusSymbol2D if symbol_geometry(cfg) == "torus2" else CircleSymbol
    assert isinstance(symbol, expected)


def test_unknown_preset():
    with pytest.raises(KeyError, match="unknown preset 'sine'"):
        get_preset("sine")


def test_expand_text_preset():
    expanded = expand_preset(SymbolConfig(preset="cosine"))
    assert expanded.preset is None
    assert [c.mode for c in expanded.coefficients] == [-1, 1]
    assert build_symbol(expanded).modes == build_symbol(SymbolConfig(preset="cosine")).modes


def test_expand_leaves_built_presets():
    cfg = SymbolConfig(preset="example14")
    assert expand_preset(cfg) is cfg


def test_scattering_pins_record_the_parameters():
    pins = pinned_values(SymbolConfig(preset="scattering", c=0.5, projection_modes=10))
    assert pins["c"] == 0.5
    assert pins["L"] == 10


def test_inline_symbol_has_no_pins():
    assert pinned_values(SymbolConfig(coefficients=[{"l": 0, "profile": "0.5"}])) == {}
