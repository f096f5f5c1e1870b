import numpy as np
import pytest

from psdo.quantization import quantize_circle
from psdo.spectral import (
    band_coverage,
    classify_spectrum,
    decompose_many,
    eigendecompose,
    truncation_stability,
    unclassified_spectrum,
)
from psdo.symbols import CircleSymbol, predict_essential_spectrum


class TestClassifySpectrum:
    def test_dirstep_levels(self):
        a = CircleSymbol.from_texts({0: "dirstep(2, -2, 10)"})
        dec = eigendecompose(quantize_circle(a, 4))
        report = classify_spectrum(dec, predict_essential_spectrum(a))
        # +-2 from |2 pi k| >= 10; k = -1, 0, 1 sit on the ramp
        assert report.counts()["band"] == 6
        assert report.counts()["discrete"] == 3
        assert sorted(report.values("discrete"))[1] == pytest.approx(0.0, abs=1e-15)

    def test_persistent_zero_is_an_embedded_candidate(self, example13):
        K = 16
        dec = eigendecompose(quantize_circle(example13, K))
        report = classify_spectrum(dec, predict_essential_spectrum(example13), persistent=[0.0])
        counts = report.counts()
        assert counts["embedded-candidate"] == 1
        assert counts["band"] == 2 * K
        assert counts["discrete"] == 0
        (entry,) = [e for e in report.entries if e.label == "embedded-candidate"]
        assert entry.persistent
        assert entry.localization == pytest.approx(1.0)

    def test_torus_style_report(self, cosine):
        report = unclassified_spectrum(eigendecompose(quantize_circle(cosine, 3)))
        assert report.counts()["unclassified"] == 7
        assert report.band_tol == 0.0


class TestTruncationStability:
    def test_example13_keeps_zero(self, example13):
        result = truncation_stability(example13, K_list=(16, 32, 64))
        assert result.values == pytest.approx([0.0], abs=1e-12)
        (value,) = result.persistent
        assert sorted(value.values_per_K) == [16, 32, 64]
        assert value.localization > 0.9
        assert result.match_tol == pytest.approx(0.1 / 64)

    def test_cosine_has_no_persistent_values(self, cosine):
        assert truncation_stability(cosine, K_list=(16, 32, 64)).values == []

    def test_reuses_given_decompositions(self, example13):
        ks = (8, 16, 24)
        decs = decompose_many(example13, 0.5, ks)
        result = truncation_stability(example13, K_list=ks, decompositions=decs)
        assert result.values == pytest.approx([0.0], abs=1e-12)

    @pytest.mark.parametrize("ks", [(16, 32), (32, 16, 64), (16, 16, 32)])
    def test_size_list_is_checked(self, cosine, ks):
        with pytest.raises(ValueError, match="K_list"):
            truncation_stability(cosine, K_list=ks)


def test_decompose_many_threads_match_serial(cosine):
    serial = decompose_many(cosine, 0.5, [4, 8, 12])
    threaded = decompose_many(cosine, 0.5, [4, 8, 12], jobs=3)
    for a, b in zip(serial, threaded, strict=True):
        assert a.K == b.K
        np.testing.assert_allclose(a.eigenvalues, b.eigenvalues)


class TestBandCoverage:
    def test_gap_in_the_middle(self):
        cover = band_coverage([-1.0, 0.0, 1.0], [(-1.0, 1.0)])
        assert cover.containment == 0.0
        assert cover.coverage == pytest.approx(0.5)
        assert cover.hausdorff == pytest.approx(0.5)

    def test_eigenvalue_outside_the_bands(self):
        cover = band_coverage([-1.0, 1.0, 3.0], [(-1.0, 1.0)])
        assert cover.containment == pytest.approx(2.0)

    def test_no_eigenvalues(self):
        assert band_coverage([], [(0.0, 1.0)]).coverage == float("inf")

    def test_cosine_fills_its_band(self, cosine):
        dec = eigendecompose(quantize_circle(cosine, 64))
        cover = band_coverage(dec.eigenvalues, predict_essential_spectrum(cosine).intervals)
        assert cover.hausdorff < 0.05
