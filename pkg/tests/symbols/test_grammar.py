import math

import numpy as np
import pytest

from psdo.errors import ProfileArgumentError, ProfileSyntaxError
from psdo.symbols import parse_profile


class TestParseProfile:
    @pytest.mark.parametrize(
        ("text", "probe", "expected"),
        [
            ("0.5", 3.0, 0.5),
            ("2*pi", 0.0, 2 * math.pi),
            ("-0.5j", 1.0, -0.5j),
            ("xi + 1", 2.0, 3.0),
            ("xi / 4", 2.0, 0.5),
            ("const(2) * (1 - bump(0, 1, 2))", 0.5, 0.0),
            ("const(2) * (1 - bump(0, 1, 2))", 3.0, 2.0),
            ("jbracket(2)", 2.0, 5.0),
            ("dirstep(1, 0, 1)", 5.0, 1.0),
            ("--xi", 2.0, 2.0),
        ],
    )
    def test_evaluates(self, text, probe, expected):
        assert complex(parse_profile(text)(probe)) == pytest.approx(expected)

    def test_whitespace_is_ignored(self):
        a = parse_profile("  0.5 *dirstep( 1,0 ,1 )")
        b = parse_profile("0.5*dirstep(1, 0, 1)")
        np.testing.assert_allclose(a(np.linspace(-3, 3, 13)), b(np.linspace(-3, 3, 13)))

    def test_atom_arguments_may_be_expressions(self):
        p = parse_profile("bump(0, 1.5*pi, 2*pi)")
        assert p.r_in == pytest.approx(1.5 * math.pi)
        assert p.r_out == pytest.approx(2 * math.pi)


class TestParseErrors:
    @pytest.mark.parametrize(
        ("text", "offset"),
        [
            ("", 0),
            ("1 + @", 4),
            ("foo(1)", 0),
            ("xi * (1 + xi", 12),
            ("0.5 xi", 4),
            ("2 ξ", 2),
            ("bump(xi, 1, 2)", 5),
            ("xi / xi", 3),
        ],
    )
    def test_syntax_errors_carry_the_offset(self, text, offset):
        with pytest.raises(ProfileSyntaxError) as exc:
            parse_profile(text)
        assert exc.value.offset == offset

    def test_bump_radii_out_of_order(self):
        with pytest.raises(ProfileArgumentError, match="r_in < r_out"):
            parse_profile("bump(0, 6, 4)")

    def test_wrong_arity(self):
        with pytest.raises(ProfileArgumentError, match="takes 3 argument"):
            parse_profile("dirstep(1, 0)")

    def test_zero_width_dirstep(self):
        with pytest.raises(ProfileArgumentError, match="width"):
            parse_profile("dirstep(1, 0, 0)")

    def test_division_by_zero(self):
        with pytest.raises(ProfileArgumentError, match="division by zero"):
            parse_profile("xi / (1 - 1)")
