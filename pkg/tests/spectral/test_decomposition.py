import numpy as np
import pytest

from psdo.errors import EigenResidualError, NonHermitianError
from psdo.quantization import quantize_circle
from psdo.spectral import eigendecompose, localization_score
from psdo.symbols import CircleSymbol


class TestEigendecompose:
    @pytest.mark.parametrize("K", [4, 16, 33])
    def test_cosine_matches_the_toeplitz_oracle(self, cosine, K):
        dec = eigendecompose(quantize_circle(cosine, K))
        oracle = np.sort(np.cos(np.arange(1, 2 * K + 2) * np.pi / (2 * K + 2)))
        np.testing.assert_allclose(dec.eigenvalues, oracle, atol=1e-12)
        assert dec.residual < 1e-12

    def test_example13_has_e0_as_eigenvector(self, example13):
        K = 16
        dec = eigendecompose(quantize_circle(example13, K))
        index = int(np.argmin(np.abs(dec.eigenvalues)))
        assert abs(dec.eigenvalues[index]) < 1e-12
        assert abs(dec.eigenvectors[K, index]) == pytest.approx(1.0, abs=1e-12)
        assert dec.localization(index) == pytest.approx(1.0)

    def test_diagonal_section_skips_the_solver(self):
        a = CircleSymbol.from_texts({0: "dirstep(2, -2, 10)"})
        dec = eigendecompose(quantize_circle(a, 4))
        assert dec.residual == 0.0
        np.testing.assert_array_equal(np.abs(dec.eigenvectors).sum(axis=0), np.ones(9))
        assert dec.eigenvalues[0] == -2.0
        assert dec.eigenvalues[-1] == 2.0

    def test_non_hermitian_section(self):
        a = CircleSymbol.from_texts({1: "0.5"})
        with pytest.raises(NonHermitianError) as exc:
            eigendecompose(quantize_circle(a, 4))
        assert exc.value.deviation == pytest.approx(0.5)

    def test_residual_contract(self, cosine):
        H = quantize_circle(cosine, 16)
        dec = eigendecompose(H)
        assert dec.residual <= 1e-10 * np.max(np.abs(dec.eigenvalues))
        with pytest.raises(EigenResidualError) as exc:
            eigendecompose(H, residual_tol=dec.residual / 10)
        assert exc.value.residual == pytest.approx(dec.residual)

    def test_weights_sum_to_one(self, cosine):
        dec = eigendecompose(quantize_circle(cosine, 8))
        u = np.zeros(dec.dim, dtype=complex)
        u[3] = 1.0
        assert dec.weights(u).sum() == pytest.approx(1.0)


class TestLocalizationScore:
    def test_unit_vector(self):
        assert localization_score(np.eye(20)[3]) == 1.0

    def test_flat_vector(self):
        assert localization_score(np.ones(100)) == pytest.approx(0.05)

    def test_zero_vector(self):
        assert localization_score(np.zeros(5)) == 0.0
