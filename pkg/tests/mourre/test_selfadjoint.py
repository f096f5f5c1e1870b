import math

import numpy as np
import pytest

from psdo.app.presets import build_symbol
from psdo.app.settings import SymbolConfig
from psdo.errors import CriticalIntervalError
from psdo.mourre import commutator_symbol_residual, exact_commutator, mourre_check_selfadjoint
from psdo.mourre.models import verdict_for
from psdo.symbols import CircleSymbol, mourre_conjugate_symbol


class TestExactCommutator:
    def test_hermitian(self, cosine):
        G = exact_commutator(mourre_conjugate_symbol(cosine), cosine, 16)
        assert G.K == 16
        np.testing.assert_allclose(G.dense, G.dense.conj().T, atol=1e-12)

    def test_cosine_residual_vanishes(self, cosine):
        assert commutator_symbol_residual(cosine, 32) <= 1e-8

    def test_residual_decays_with_a_subleading_term(self):
        # a = cos(2 pi x) (1 + <xi>^-1): the <xi>^-1 part leaves an O(1/K) residual
        a = CircleSymbol.from_texts({1: "0.5 + 0.5 * jbracket(-1)", -1: "0.5 + 0.5 * jbracket(-1)"})
        coarse = commutator_symbol_residual(a, 128)
        fine = commutator_symbol_residual(a, 256)
        assert fine > 1e-8
        assert coarse / fine >= 1.6


class TestMourreSelfadjoint:
    @pytest.fixture(scope="class")
    def report(self):
        return mourre_check_selfadjoint(build_symbol(SymbolConfig(preset="cosine")), (-0.5, 0.5), (-0.8, 0.8), 32)

    def test_localization_constant(self, report):
        assert report.C == pytest.approx(4 * math.pi**2 * 0.36, rel=1e-6)

    def test_compression_levels(self, report):
        assert [entry.n for entry in report.lambda_min] == [4, 8, 16]

    def test_verdict_matches_the_table(self, report):
        assert (report.verdict, report.monotone) == verdict_for(report.lambda_min, report.C)
        assert report.residual is not None
        assert report.residual <= 1e-8
        assert report.route == "eig"
        assert report.cutoff == "chi = 1 on [-0.5, 0.5], supp chi = [-0.8, 0.8]"

    def test_enclosing_meets_a_critical_value(self, cosine):
        with pytest.raises(CriticalIntervalError) as exc:
            mourre_check_selfadjoint(cosine, (-0.5, 0.5), (-1.1, 0.8), 32)
        assert exc.value.hits
        assert min(abs(h + 1.0) for h in exc.value.hits) < 1e-6

    def test_section_too_small_for_the_cutoff(self, cosine):
        with pytest.raises(ValueError, match="need K >= 16"):
            mourre_check_selfadjoint(cosine, (-0.5, 0.5), (-0.8, 0.8), 8)
