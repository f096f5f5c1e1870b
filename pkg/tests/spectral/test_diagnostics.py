import math

import numpy as np
import pytest

from psdo.quantization import quantize_circle
from psdo.spectral import eigendecompose, probe_vector, spectral_density, survival_average
from psdo.symbols import CircleSymbol


class TestProbeVector:
    def test_constant_is_mode_zero(self):
        u = probe_vector("constant", 4)
        assert u[4] == 1.0
        assert np.linalg.norm(u) == 1.0

    def test_mode_probe(self):
        assert probe_vector("mode:-2", 4)[2] == 1.0

    def test_mode_outside_the_lattice(self):
        with pytest.raises(ValueError, match="outside"):
            probe_vector("mode:9", 4)

    @pytest.mark.parametrize("kind", ["fourier-ones", "random"])
    def test_unit_norm(self, kind):
        assert np.linalg.norm(probe_vector(kind, 6)) == pytest.approx(1.0)

    def test_random_is_seeded(self):
        np.testing.assert_array_equal(probe_vector("random", 5, seed=3), probe_vector("random", 5, seed=3))
        assert not np.allclose(probe_vector("random", 5, seed=3), probe_vector("random", 5, seed=4))

    def test_torus_constant(self):
        u = probe_vector("constant", 2, geometry="torus2")
        assert u.size == 25
        assert u[2 * 5 + 2] == 1.0

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown probe"):
            probe_vector("gaussian", 4)


class TestSpectralDensity:
    def test_embedded_eigenvector_gives_a_lorentzian_peak(self, example13):
        K = 16
        dec = eigendecompose(quantize_circle(example13, K))
        eps = 0.01
        result = spectral_density(dec, probe_vector("constant", K), np.array([-0.5, 0.0, 0.5]), eps)
        assert result.values[1] * math.pi * eps == pytest.approx(1.0, abs=1e-8)
        assert result.eps == eps

    def test_default_width_is_ten_spacings(self, cosine):
        dec = eigendecompose(quantize_circle(cosine, 16))
        result = spectral_density(dec, probe_vector("constant", 16), np.linspace(-0.5, 0.5, 11))
        assert result.eps == pytest.approx(10 * result.mean_spacing)
        assert not result.below_floor

    def test_narrow_width_is_flagged(self, cosine):
        dec = eigendecompose(quantize_circle(cosine, 16))
        result = spectral_density(dec, probe_vector("constant", 16), np.linspace(-0.5, 0.5, 11), eps=1e-4)
        assert result.below_floor

    def test_degenerate_spectrum_falls_back_to_the_grid_step(self):
        K = 4
        dec = eigendecompose(quantize_circle(CircleSymbol.from_texts({0: "0.25"}), K))
        grid = np.linspace(-1.0, 1.0, 201)
        result = spectral_density(dec, probe_vector("constant", K), grid)
        assert result.mean_spacing == pytest.approx(0.01)
        assert result.eps == pytest.approx(0.1)
        assert result.values[125] == pytest.approx(1 / (math.pi * 0.1))
        assert np.all(np.isfinite(result.values))

    def test_probe_must_be_normalized(self, cosine):
        dec = eigendecompose(quantize_circle(cosine, 4))
        with pytest.raises(ValueError, match="unit norm"):
            spectral_density(dec, 2 * probe_vector("constant", 4), np.linspace(-1, 1, 5))


class TestSurvivalAverage:
    def test_embedded_eigenvector_never_decays(self, example13):
        dec = eigendecompose(quantize_circle(example13, 16))
        assert survival_average(dec, probe_vector("constant", 16)) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("K", [8, 16, 32])
    def test_cosine_oracle(self, cosine, K):
        # only odd Toeplitz modes see e_0, each with weight 1 / (K + 1)
        dec = eigendecompose(quantize_circle(cosine, K))
        assert survival_average(dec, probe_vector("constant", K)) == pytest.approx(1 / (K + 1), rel=1e-10)
