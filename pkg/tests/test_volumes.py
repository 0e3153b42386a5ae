import math
from fractions import Fraction

import pytest

from lievol.exact import ExactScalar
from lievol.roots import Series
from lievol.volumes import (closed_form_volume, group_volume, log_volume,
                            ratio_exponent, ratio_scale, sphere_volume)


def ES(q, k=0, s=1):
    return ExactScalar(Fraction(q), k, s)


class TestSphereVolume:
    def test_circle(self):
        assert sphere_volume(1) == ES(2, 1)  # S^1 -> 2 pi

    def test_s3(self):
        assert sphere_volume(2) == ES(2, 2)  # 2 pi^2

    def test_s7(self):
        assert sphere_volume(4) == ES(Fraction(2, 6), 4)  # pi^4 / 3

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            sphere_volume(0)


class TestFrozenValues:
    """Pinned volumes, each checked against both evaluation routes."""

    CASES = [
        (Series("A", 2), ES(4, 2, 2)),                    # 4 sqrt2 pi^2
        (Series("A", 3), ES(16, 5, 3)),                   # 16 sqrt3 pi^5
        (Series("A", 4), ES(Fraction(2 ** 10, 12), 9, 1)),  # sqrt4 -> 2
        (Series("B", 2), ES(Fraction(2 ** 9, 6), 6, 1)),  # 2^9 pi^6 / 3!
        (Series("B", 3), ES(Fraction(2 ** 16, 6 * 120), 12, 1)),
        (Series("C", 2), ES(Fraction(2 ** 4, 6), 6, 1)),  # 8 pi^6 / 3
        (Series("C", 3), ES(Fraction(2 ** 9, 6 * 120), 12, 1)),
        (Series("D", 4), ES(Fraction(2 ** 17, 6 * 6 * 120), 16, 1)),
    ]

    @pytest.mark.parametrize("series,value", CASES,
                             ids=[s.group_name for s, _ in CASES])
    def test_pinned(self, series, value):
        assert closed_form_volume(series) == value
        assert group_volume(series).exact == value

    def test_su2_decimal(self):
        v = closed_form_volume(Series("A", 2)).to_float()
        assert abs(v - 4 * math.sqrt(2) * math.pi ** 2) < 1e-12


class TestPipelineVsClosedForm:
    @pytest.mark.parametrize("tag", "ABCD")
    @pytest.mark.parametrize("n", range(2, 13))
    def test_exact_equality(self, tag, n):
        if tag == "D" and n < 4:
            pytest.skip("below minimum rank")
        s = Series(tag, n)
        assert group_volume(s).exact == closed_form_volume(s)

    @pytest.mark.parametrize("tag,n", [("A", 7), ("B", 6), ("C", 6), ("D", 6)])
    def test_log_route_agrees(self, tag, n):
        s = Series(tag, n)
        lv = log_volume(s)
        assert abs(lv - closed_form_volume(s).log()) < 1e-10 * abs(lv)


class TestCenterQuotient:
    def test_gamma_divides_out(self):
        s = Series("A", 4)
        full = group_volume(s, 1).exact
        quot = group_volume(s, 2).exact
        assert full == quot * ES(2)

    def test_gamma_validation(self):
        with pytest.raises(ValueError):
            group_volume(Series("A", 4), 3)  # 3 does not divide |Z| = 4
        with pytest.raises(ValueError):
            group_volume(Series("B", 3), 4)
        group_volume(Series("D", 5), 4)  # |Z(Spin(10))| = 4: fine


class TestRatioExponent:
    def test_a2_exact_value(self):
        # (V(SU(3))/V(SU(2)))^{1/5} = (sqrt(3/2) (2 pi)^3 / 2)^{1/5}
        want = (math.sqrt(1.5) * (2 * math.pi) ** 3 / 2) ** 0.2
        assert abs(ratio_exponent(Series("A", 2)) - want) < 1e-12

    def test_b3_matches_exact_quotient(self):
        q = (closed_form_volume(Series("B", 3))
             / closed_form_volume(Series("B", 2)))
        want = q.to_float() ** (1 / 11)
        assert abs(ratio_exponent(Series("B", 3)) - want) < 1e-12

    def test_scales(self):
        assert ratio_scale(Series("A", 7)) == 7
        assert ratio_scale(Series("C", 7)) == 14

    @pytest.mark.parametrize("tag", "ABCD")
    def test_asymptote_at_50(self, tag):
        s = Series(tag, 50)
        quot = ratio_exponent(s) / math.sqrt(
            2 * math.pi * math.e / ratio_scale(s))
        assert 0.98 <= quot <= 1.02

    @pytest.mark.parametrize("tag", "ABCD")
    def test_monotone_decreasing(self, tag):
        lo = 5
        vals = [ratio_exponent(Series(tag, n)) for n in range(lo, 61)]
        assert all(a > b for a, b in zip(vals, vals[1:]))


def test_volume_result_json():
    d = group_volume(Series("C", 2)).to_json()
    assert d["group"] == "USp(4)"
    assert d["exact"] == {"q": "8/3", "pi_pow": 6, "sqrt": 1}
    assert d["exact_str"] == "8/3 * pi^6"
