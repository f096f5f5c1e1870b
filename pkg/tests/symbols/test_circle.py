import numpy as np
import pytest

from psdo.app.presets import scattering_function
from psdo.errors import NonRealSymbolError, ProjectionTailError
from psdo.symbols import CircleSymbol, TrigPolynomial, directional_limits, evaluate, fourier_project
from psdo.symbols.profile import Const, default_xi_probes


class TestTrigPolynomial:
    def test_derivative_picks_up_mode_factor(self):
        p = TrigPolynomial({1: 0.5, -1: 0.5}).derivative()
        assert p.coefficient(1) == pytest.approx(1j * np.pi)
        assert p.coefficient(-1) == pytest.approx(-1j * np.pi)

    def test_product_of_cosines(self):
        cos = TrigPolynomial({1: 0.5, -1: 0.5})
        square = cos * cos
        assert square.coefficient(0) == pytest.approx(0.5)
        assert square.coefficient(2) == pytest.approx(0.25)
        assert square.bandwidth == 2

    def test_conj_reflects_modes(self):
        p = TrigPolynomial({2: 1 + 1j}).conj()
        assert p.coefficient(-2) == pytest.approx(1 - 1j)
        assert p.coefficient(2) == 0

    def test_hermitian_symmetrized_is_real(self):
        p = TrigPolynomial({1: 1.0}).hermitian_symmetrized()
        x = np.linspace(0, 1, 9)
        np.testing.assert_allclose(p(x).imag, 0, atol=1e-15)
        np.testing.assert_allclose(p(x).real, np.cos(2 * np.pi * x), atol=1e-15)


class TestCircleSymbol:
    def test_cosine_values(self, cosine):
        assert cosine.bandwidth == 1
        assert evaluate(cosine, 0.0, 5.0) == pytest.approx(1.0)
        assert evaluate(cosine, 0.5, -5.0) == pytest.approx(-1.0)
        assert cosine.is_real()
        assert cosine.sup_bound() == pytest.approx(1.0)

    def test_x_derivative(self, cosine):
        assert complex(cosine.x_derivative(0.25, 3.0, 1)) == pytest.approx(-2 * np.pi)
        assert complex(cosine.x_derivative(0.0, 3.0, 2)) == pytest.approx(-4 * np.pi**2)

    def test_example13_matches_its_formula_at_high_frequency(self, example13):
        x = np.linspace(0, 1, 17)
        np.testing.assert_allclose(example13(x, 100.0), np.sin(2 * np.pi * x), atol=1e-14)
        np.testing.assert_allclose(example13(x, 0.0), 0.0, atol=1e-15)

    def test_declared_order_below_profile_order(self):
        with pytest.raises(ValueError, match="declared order"):
            CircleSymbol.from_texts({0: "xi"}, order=0.0)

    def test_order_defaults_to_profile_order(self):
        assert CircleSymbol.from_texts({0: "xi", 1: "0.5"}).declared_order == 1.0

    def test_non_real_symbol(self):
        a = CircleSymbol.from_texts({1: "0.5j"})
        assert not a.is_real()
        with pytest.raises(NonRealSymbolError) as exc:
            a.require_real()
        assert exc.value.max_imag == pytest.approx(0.5, rel=1e-2)

    def test_document_round_trip(self, example13):
        again = CircleSymbol.from_document(example13.to_document())
        x, xi = np.linspace(0, 1, 5), np.array([-10.0, 0.0, 3.0, 7.0])
        np.testing.assert_allclose(again(x[:, None], xi[None, :]), example13(x[:, None], xi[None, :]))

    def test_tabulated_document_round_trip(self, scattering):
        document = scattering.to_document()
        assert isinstance(document["coeffs"][0]["profile"], dict)
        again = CircleSymbol.from_document(document)
        x, xi = np.linspace(0, 1, 5), np.array([-1e3, 0.5, 2.0])
        np.testing.assert_allclose(again(x[:, None], xi[None, :]), scattering(x[:, None], xi[None, :]), atol=1e-14)


class TestFourierProject:
    def test_xi_independent_function(self):
        a = fourier_project(lambda x, xi: np.cos(2 * np.pi * x) + 0 * xi, 2, 16)
        assert isinstance(a.coefficient(1), Const)
        assert complex(a.coefficient(1)(0.0)) == pytest.approx(0.5)
        assert abs(complex(a.coefficient(2)(0.0))) < 1e-15
        assert a.tail_bound < 1e-15

    def test_scattering_matches_its_generator(self, scattering):
        f = scattering_function(1.0)
        x = np.linspace(0, 1, 11)[:, None]
        # tabulated coefficients are exact at the probes and interpolated in between
        xi = default_xi_probes()[::97][None, :]
        np.testing.assert_allclose(scattering(x, xi), f(x, xi), atol=1e-10)
        assert scattering.tail_bound < 1e-9

    def test_too_few_modes_exceed_the_tail_tolerance(self):
        with pytest.raises(ProjectionTailError) as exc:
            fourier_project(scattering_function(1.0), 8, 256)
        assert exc.value.bound > exc.value.tolerance

    def test_grid_must_resolve_the_modes(self):
        with pytest.raises(ValueError, match="4L"):
            fourier_project(scattering_function(1.0), 12, 40)


class TestDirectionalLimits:
    def test_two_direction_limits_differ(self, two_direction):
        limits = directional_limits(two_direction)
        assert limits.plus.coefficient(0) == 0
        assert limits.minus.coefficient(0) == pytest.approx(3.0)
        assert not limits.coincide

    def test_cosine_limits_coincide(self, cosine):
        limits = directional_limits(cosine, n_grid=64)
        assert limits.coincide
        np.testing.assert_allclose(limits.samples(1).real, np.cos(2 * np.pi * limits.grid), atol=1e-15)
