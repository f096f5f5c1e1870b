import math

import numpy as np
import pytest

from psdo.errors import NonRealSymbolError, UnimodularityError
from psdo.symbols import (
    CircleSymbol,
    TrigPolynomial,
    angular_distance,
    critical_points,
    estimate_symbol_class,
    localization_constant,
    predict_essential_spectrum,
    symbol_range_samples,
    unitary_critical_set,
)


class TestCriticalPoints:
    def test_cosine(self):
        crit = critical_points(TrigPolynomial({1: 0.5, -1: 0.5}))
        assert crit.points == pytest.approx([0.0, 0.5], abs=1e-9)
        assert crit.values == pytest.approx([-1.0, 1.0], abs=1e-12)

    def test_constant_is_one_flat_run(self):
        crit = critical_points(TrigPolynomial({0: 2.0}), n_grid=64)
        assert crit.values == [pytest.approx(2.0)]
        assert len(crit.flat_runs) == 1

    def test_grid_is_bounded_below(self):
        with pytest.raises(ValueError, match="n_grid"):
            critical_points(TrigPolynomial({1: 1.0}), n_grid=8)


class TestEssentialSpectrum:
    def test_cosine_band(self, cosine):
        pred = predict_essential_spectrum(cosine)
        assert pred.interval_plus == pytest.approx((-1.0, 1.0), abs=1e-9)
        assert pred.interval_minus == pytest.approx((-1.0, 1.0), abs=1e-9)
        assert pred.critical_set == pytest.approx([-1.0, 1.0], abs=1e-9)

    def test_two_direction_bands(self, two_direction):
        pred = predict_essential_spectrum(two_direction)
        assert pred.interval_plus == pytest.approx((-1.0, 1.0), abs=1e-9)
        assert pred.interval_minus == pytest.approx((2.0, 4.0), abs=1e-9)
        assert pred.critical_set == pytest.approx([-1.0, 1.0, 2.0, 4.0], abs=1e-9)

    def test_dirstep_collapses_to_points(self):
        a = CircleSymbol.from_texts({0: "dirstep(2, -2, 10)"})
        pred = predict_essential_spectrum(a)
        assert pred.interval_plus == pytest.approx((2.0, 2.0))
        assert pred.interval_minus == pytest.approx((-2.0, -2.0))
        assert pred.critical_set == pytest.approx([-2.0, 2.0])

    def test_distance_and_hits(self, cosine):
        pred = predict_essential_spectrum(cosine)
        assert pred.distance(1.5) == pytest.approx(0.5, abs=1e-9)
        assert pred.contains(0.3)
        assert pred.critical_hits(0.5, 1.2) == pytest.approx([1.0], abs=1e-9)
        assert pred.critical_hits(-0.8, 0.8) == []

    def test_requires_a_real_symbol(self):
        with pytest.raises(NonRealSymbolError):
            predict_essential_spectrum(CircleSymbol.from_texts({1: "1j"}))


class TestLocalizationConstant:
    def test_cosine(self, cosine):
        C = localization_constant(cosine, (-0.8, 0.8))
        assert C == pytest.approx(4 * math.pi**2 * 0.36, rel=1e-6)

    def test_example13(self, example13):
        C = localization_constant(example13, (-0.8, 0.8))
        assert C == pytest.approx(4 * math.pi**2 * 0.36, rel=1e-6)

    def test_empty_preimage(self, cosine):
        assert localization_constant(cosine, (2.0, 3.0)) == 0.0


class TestUnitaryCriticalSet:
    def test_scattering_angles(self, scattering):
        crit = unitary_critical_set(scattering)
        assert crit.angles == pytest.approx([-1.0, 1.0], abs=1e-6)
        assert crit.points_plus == pytest.approx([0.25, 0.75], abs=1e-8)

    def test_requires_unimodular_limits(self, cosine):
        with pytest.raises(UnimodularityError):
            unitary_critical_set(cosine)

    def test_angular_distance_wraps(self):
        assert float(angular_distance(math.pi - 0.1, -math.pi + 0.1)) == pytest.approx(0.2)
        assert float(angular_distance(0.3, 0.1)) == pytest.approx(0.2)


class TestSymbolClass:
    def test_cosine_is_order_zero(self, cosine):
        estimate = estimate_symbol_class(cosine, 0.0)
        assert estimate.bounded
        assert estimate.constant(1, 0).constant == pytest.approx(2 * math.pi, rel=1e-3)

    def test_xi_is_not_order_zero(self):
        a = CircleSymbol.from_texts({0: "xi"})
        assert not estimate_symbol_class(a, 0.0, alpha_max=0, beta_max=1).bounded
        assert estimate_symbol_class(a, 1.0, alpha_max=0, beta_max=1).bounded

    def test_orders_are_capped(self, cosine):
        with pytest.raises(ValueError, match="0..3"):
            estimate_symbol_class(cosine, 0.0, alpha_max=4)


def test_range_samples_cover_the_band(cosine):
    samples = symbol_range_samples(cosine)
    assert min(samples["plus"]) == pytest.approx(-1.0)
    assert max(samples["minus"]) == pytest.approx(1.0)
    assert len(samples["plus"]) == 512
