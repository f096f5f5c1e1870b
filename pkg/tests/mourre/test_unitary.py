import math

import numpy as np
import pytest

from psdo.errors import CriticalIntervalError, UnimodularityError
from psdo.mourre import arc_localization_constant, in_arc, mourre_check_unitary, unitarity_defect
from psdo.symbols import directional_limits


def test_in_arc():
    np.testing.assert_array_equal(in_arc([0.0, 1.0, 1.5, 2.0], (0.5, 1.5)), [False, True, True, False])


def test_in_arc_wraps_through_pi():
    assert bool(in_arc(-3.0, (3.0, 3.5)))
    assert not bool(in_arc(0.0, (3.0, 3.5)))


def test_arc_localization_constant(scattering):
    C = arc_localization_constant(directional_limits(scattering), (-0.5, 0.5))
    assert C == pytest.approx(3 * math.pi**2, rel=1e-6)


class TestUnitarityDefect:
    def test_level_must_be_below_the_section(self, scattering):
        with pytest.raises(ValueError, match="must be smaller than K"):
            unitarity_defect(scattering, 16, 16)

    def test_requires_unimodular_limits(self, cosine):
        with pytest.raises(UnimodularityError):
            unitarity_defect(cosine, 16, 4)

    def test_small_at_high_frequency(self, scattering):
        assert unitarity_defect(scattering, 64, 32) < 1e-2


class TestMourreUnitary:
    @pytest.mark.parametrize("arc", [(1.0, 0.5), (0.0, 7.0)])
    def test_bad_arc(self, scattering, arc):
        with pytest.raises(ValueError, match="arc must satisfy"):
            mourre_check_unitary(scattering, arc, 16)

    def test_arc_through_a_critical_angle(self, scattering):
        with pytest.raises(CriticalIntervalError):
            mourre_check_unitary(scattering, (0.5, 1.5), 16)

    def test_report(self, scattering):
        report = mourre_check_unitary(scattering, (-0.5, 0.5), 48)
        assert report.route == "polar"
        assert report.C == pytest.approx(3 * math.pi**2, rel=1e-6)
        assert [entry.n for entry in report.lambda_min] == [6, 12, 24]
        extras = report.unitary_extras
        assert extras is not None
        assert extras.polar_circle_distance <= 1e-10
        # the truncation itself is not unitary
        assert extras.truncated_circle_distance > extras.polar_circle_distance
        assert extras.polar_distance > 0
        assert extras.eigenvalues_in_arc > 0
        assert extras.arc_hausdorff == max(extras.arc_coverage, extras.arc_containment)
