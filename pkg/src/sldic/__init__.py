"""Secure transmission schemes for the two-user symmetric linear deterministic
interference channel with rate-limited transmitter cooperation, with exact
verification of perfect secrecy and decodability."""

from .analysis import VerificationReport, check_decodability, check_secrecy_enum, check_secrecy_rank, verify
from .channel import ChannelParams, GaussianParams, from_gaussian, transmit
from .rates import formula_rate, sweep
from .schemes import Regime, RateResult, SchemeDescription, build, classify_regime, validate_budget

__all__ = [
    "ChannelParams",
    "GaussianParams",
    "RateResult",
    "Regime",
    "SchemeDescription",
    "VerificationReport",
    "build",
    "check_decodability",
    "check_secrecy_enum",
    "check_secrecy_rank",
    "classify_regime",
    "formula_rate",
    "from_gaussian",
    "sweep",
    "transmit",
    "validate_budget",
    "verify",
]
