import numpy as np
import pytest

from psdo.errors import DirectionalLimitError
from psdo.symbols.grammar import parse_profile
from psdo.symbols.profile import Const, Scaled, bump, default_xi_probes, dirstep, jbracket, sup_abs, tabulated, xi
from psdo.symbols.smooth import BRIDGE_SLOPE, smooth_step, smooth_step_derivatives


class TestSmoothStep:
    def test_flat_ends_are_exact(self):
        values = smooth_step(np.array([-1.0, 0.0, 1.0, 2.0]))
        assert values.tolist() == [0.0, 0.0, 1.0, 1.0]

    def test_midpoint_value_and_slope(self):
        assert float(smooth_step(0.5)) == pytest.approx(0.5)
        assert float(smooth_step(0.5, order=1)) == pytest.approx(BRIDGE_SLOPE)

    @pytest.mark.parametrize("order", [1, 2, 3])
    def test_derivatives_match_finite_differences(self, order):
        s = np.linspace(0.2, 0.8, 7)
        h = 1e-5
        derivs = smooth_step_derivatives(s, order)
        numeric = (smooth_step(s + h, order - 1) - smooth_step(s - h, order - 1)) / (2 * h)
        np.testing.assert_allclose(derivs[order], numeric, rtol=1e-5, atol=1e-7)

    def test_negative_order_is_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            smooth_step_derivatives(0.5, -1)


class TestProfiles:
    def test_dirstep_limits_and_plateaus(self):
        p = dirstep(2, -2, 10)
        assert p.limit(1) == 2
        assert p.limit(-1) == -2
        np.testing.assert_allclose(p(np.array([-10.0, 0.0, 10.0])).real, [-2.0, 0.0, 2.0], atol=1e-15)

    def test_bump_support(self):
        p = bump(0, 1.5 * np.pi, 2 * np.pi)
        np.testing.assert_allclose(p(np.array([0.0, np.pi, -np.pi, 2 * np.pi, 10.0])).real, [1, 1, 1, 0, 0])
        assert p.limit(1) == 0

    @pytest.mark.parametrize(("r_in", "r_out"), [(6.0, 4.0), (2.0, 2.0), (-1.0, 1.0)])
    def test_bump_radii_are_checked(self, r_in, r_out):
        with pytest.raises(ValueError, match="r_in < r_out"):
            bump(0, r_in, r_out)

    def test_growing_profile_has_no_limit(self):
        with pytest.raises(DirectionalLimitError) as exc:
            jbracket(1).limit(1)
        assert exc.value.direction == 1

    def test_negative_order_decays(self):
        assert (2 * jbracket(-1)).limit(-1) == 0

    def test_orders(self):
        assert xi.order == 1
        assert (xi * jbracket(-1)).order == 0
        assert (3 + xi * xi).order == 2

    def test_constant_folding(self):
        folded = 2 * (3 * xi)
        assert isinstance(folded, Scaled)
        assert folded.scalar == 6
        assert isinstance(Const(1.0) + Const(2.0), Const)

    @pytest.mark.parametrize(
        "text",
        [
            "0.5*dirstep(1, 0, 1)",
            "-0.5j*(1 - bump(0, 1.5*pi, 2*pi))",
            "xi*jbracket(-1) + 3",
            "2*xi - dirstep(1, -1, 2)",
        ],
    )
    def test_text_form_reparses_to_the_same_function(self, text):
        p = parse_profile(text)
        again = parse_profile(p.to_text())
        probes = np.array([-50.0, -3.0, 0.0, 0.7, 4.5, 1e3])
        np.testing.assert_allclose(again(probes), p(probes), rtol=1e-14, atol=1e-14)


class TestTabulated:
    def test_single_value_collapses_to_const(self):
        assert isinstance(tabulated([0.0, 1.0, 2.0], [0.5, 0.5, 0.5]), Const)

    def test_constant_outside_the_table(self):
        p = tabulated([-1.0, 0.0, 1.0], [1.0, 2.0, 3.0])
        assert complex(p(5.0)) == pytest.approx(3.0)
        assert complex(p(-5.0)) == pytest.approx(1.0)
        assert p.limit(1) == 3
        assert p.limit(-1) == 1

    def test_has_no_text_form(self):
        with pytest.raises(TypeError):
            tabulated([0.0, 1.0], [0.0, 1.0]).to_text()

    def test_sup_uses_the_table(self):
        assert sup_abs(tabulated([0.0, 1.0], [0.25, -2.0])) == pytest.approx(2.0)


def test_default_probes_span_both_signs():
    probes = default_xi_probes()
    assert probes.max() == pytest.approx(1e6)
    assert probes.min() == pytest.approx(-1e6)
    assert np.all(np.diff(probes) > 0)
