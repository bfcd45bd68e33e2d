from fractions import Fraction

import pytest

from sldic.channel import ChannelParams
from sldic.errors import ParameterError, UnsupportedCaseError
from sldic.rates import formula_rate, is_conjecture, sweep
from sldic.schemes import Regime, build, moderate_layout
from test_schemes import supported_params


@pytest.mark.parametrize("m,n,C,rate", [
    (4, 2, 0, 2), (4, 2, 1, 3), (4, 2, 2, 4),
    (5, 4, 0, 2), (5, 4, 1, 3), (5, 4, 4, 5),
    (2, 4, 2, Fraction(5, 2)),
    (3, 3, 2, 0), (2, 4, 0, 0), (0, 4, 3, 0),
])
def test_formula_rate(m, n, C, rate):
    assert formula_rate(ChannelParams(m, n, C)).value == rate


@pytest.mark.parametrize("p", [ChannelParams(3, 5, 1), ChannelParams(2, 6, 1), ChannelParams(3, 6, 1)])
def test_formula_unsupported(p):
    with pytest.raises(UnsupportedCaseError):
        formula_rate(p)


@pytest.mark.parametrize("p", list(supported_params()), ids=str)
def test_formula_matches_construction(p):
    assert formula_rate(p).value == build(p).rate.value


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 9) for n in range(0, m)])
def test_full_cooperation_endpoint(m, n):
    assert formula_rate(ChannelParams(m, n, n)).value == max(m, n)


@pytest.mark.parametrize("m", [2, 4, 6])
def test_very_high_endpoint(m):
    assert formula_rate(ChannelParams(m, 2 * m, 2 * m)).value == 2 * m


@pytest.mark.parametrize("m,n", [(4, 3), (5, 4), (6, 5), (7, 5), (9, 7), (12, 11)])
def test_moderate_general_form_reduces_at_zero_cooperation(m, n):
    p = ChannelParams(m, n, 0)
    lay = moderate_layout(p)
    assert formula_rate(p).value == m - n + lay.blocks * (m - n) + lay.extra


@pytest.mark.parametrize("m,n", [(4, 2), (6, 4), (5, 1), (6, 5), (5, 4), (9, 7)])
def test_monotone_in_cooperation(m, n):
    rates = [pt.value for pt in sweep(m, n, n + 2, certify=False)]
    assert rates == sorted(rates)


class TestSweep:
    def test_4_2(self):
        pts = sweep(4, 2, 2)
        assert [pt.value for pt in pts] == [2, 3, 4]
        assert all(pt.verified == "yes" for pt in pts)

    def test_6_5_reaches_max_at_5(self):
        pts = sweep(6, 5, 5)
        assert [pt.value for pt in pts] == [2, 3, 4, 4, 5, 6]

    def test_2_4(self):
        pts = sweep(2, 4, 4)
        assert [pt.value for pt in pts] == [0, 1, Fraction(5, 2), 3, 4]
        assert [pt.conjecture for pt in pts] == [False, True, False, True, False]
        assert all(pt.verified == "yes" for pt in pts)

    def test_unsupported_points_are_flagged(self):
        pts = sweep(3, 5, 2)
        assert [pt.supported for pt in pts] == [False] * 3
        assert {pt.regime for pt in pts} == {Regime.HIGH}
        assert pts[0].verified == "na"

    def test_negative_cmax(self):
        with pytest.raises(ParameterError):
            sweep(4, 2, -1)


def test_conjecture_flags():
    assert not is_conjecture(ChannelParams(4, 2, 1))
    assert is_conjecture(ChannelParams(4, 8, 6))
    assert not is_conjecture(ChannelParams(4, 8, 8))
