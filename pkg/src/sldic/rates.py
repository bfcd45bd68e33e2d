"""Closed-form achievable secrecy rates and sweeps over the cooperation capacity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .analysis import DEFAULT_MAX_STATES, verify
from .channel import ChannelParams
from .errors import ParameterError, SldicError, UnsupportedCaseError
from .schemes import Regime, RateResult, build, classify_regime, moderate_layout, validate_budget


@dataclass(frozen=True)
class RatePoint:
    C: int
    rate: RateResult | None
    regime: Regime | None
    supported: bool
    verified: str = "na"  # "yes", "no" or "na"
    conjecture: bool = False

    @property
    def value(self) -> Fraction | None:
        return None if self.rate is None else self.rate.value


def formula_rate(p: ChannelParams) -> RateResult:
    regime = classify_regime(p)
    m, n, c = p.m, p.n, p.coop
    if regime is Regime.WEAK:
        return RateResult(m - n + c)
    if regime is Regime.MODERATE:
        lay = moderate_layout(p)
        return RateResult(m - n + lay.blocks * (m - n) + lay.extra + c)
    if regime is Regime.UNITY:
        return RateResult(0)
    if regime is Regime.HIGH:
        raise UnsupportedCaseError(regime, f"{p}: no rate expression for 1 < alpha < 2")
    if m == 0:
        return RateResult(0)
    if n != 2 * m or m % 2:
        raise UnsupportedCaseError(regime, f"{p}: only n = 2m with even m is covered")
    if c == 0:
        return RateResult(0)
    if 2 * c <= m or 2 * c >= 3 * m:
        return RateResult(c)
    # two-slot time sharing: m + (C - m/2)/2 per user
    return RateResult(2 * m + (c - m // 2), 2)


def is_conjecture(p: ChannelParams) -> bool:
    """True where the rate comes from a construction the paper only sketches."""
    if classify_regime(p) is not Regime.VERY_HIGH or p.m == 0:
        return False
    c = p.coop
    return 0 < c < p.n and (2 * c <= p.m or 2 * c >= 3 * p.m)


def sweep(m: int, n: int, cmax: int, certify: bool = True,
          max_states: int = DEFAULT_MAX_STATES) -> list[RatePoint]:
    """Rate for every ``C`` in ``[0, cmax]``.

    With ``certify`` each supported point is rebuilt and verified; ``verified``
    is ``"yes"`` only when the scheme decodes, stays secret, and delivers the
    formula rate.
    """
    if cmax < 0:
        raise ParameterError("cmax must be nonnegative")
    points = []
    for C in range(cmax + 1):
        p = ChannelParams(m, n, C)
        regime = classify_regime(p)
        try:
            rate = formula_rate(p)
        except UnsupportedCaseError:
            points.append(RatePoint(C, None, regime, False))
            continue
        verified = "na"
        if certify:
            try:
                scheme = build(p)
                report = verify(scheme, max_states)
                good = (report.ok and validate_budget(scheme)
                        and scheme.rate.value == rate.value)
            except SldicError:
                good = False
            verified = "yes" if good else "no"
        points.append(RatePoint(C, rate, regime, True, verified, is_conjecture(p)))
    return points
