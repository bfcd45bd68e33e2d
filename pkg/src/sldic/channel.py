"""Two-user symmetric linear deterministic interference channel.

Receiver ``j`` sees its own transmitter through ``D**(q-m)`` and the other
transmitter through ``D**(q-n)``; the two contributions add modulo 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError, ParameterError
from .gf2 import BitMatrix, BitVector, downshift, matvec


@dataclass(frozen=True)
class ChannelParams:
    m: int
    n: int
    C: int = 0

    def __post_init__(self):
        for name in ("m", "n", "C"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ParameterError(f"{name} must be a nonnegative integer, got {value!r}")

    @property
    def q(self) -> int:
        return max(self.m, self.n)

    @property
    def alpha(self) -> Fraction | None:
        """``n/m`` as an exact fraction; ``None`` when there is no direct link."""
        if self.m == 0:
            return None
        return Fraction(self.n, self.m)

    @property
    def coop(self) -> int:
        """Cooperative bits a scheme actually uses; anything above ``n`` is discarded."""
        return min(self.n, self.C)

    def __str__(self) -> str:
        return f"m={self.m} n={self.n} C={self.C}"


@dataclass(frozen=True)
class GaussianParams:
    hd2: float
    hc2: float
    CG: float = 0.0


def _floor_log2(x: float) -> int:
    # frexp is exact, so powers of two do not suffer from log2 rounding
    mantissa, exponent = math.frexp(x)
    return exponent - 1


def from_gaussian(g: GaussianParams) -> ChannelParams:
    """Map direct/cross power gains and the cooperative-link rate to ``(m, n, C)``."""
    if not (g.hd2 > 0 and g.hc2 > 0):
        raise ParameterError("channel power gains must be positive")
    if not g.CG >= 0:
        raise ParameterError("cooperative link rate must be nonnegative")
    m = max(0, _floor_log2(g.hd2))
    n = max(0, _floor_log2(g.hc2))
    return ChannelParams(m, n, int(math.floor(g.CG)))


def transfer_matrices(p: ChannelParams) -> tuple[BitMatrix, BitMatrix]:
    """``(D**(q-m), D**(q-n))``: the direct-link and cross-link operators."""
    q = p.q
    return downshift(q, q - p.m), downshift(q, q - p.n)


def transmit(x1: BitVector, x2: BitVector, p: ChannelParams) -> tuple[BitVector, BitVector]:
    if x1.length != p.q or x2.length != p.q:
        raise DimensionError(f"inputs must have length q={p.q}")
    direct, cross = transfer_matrices(p)
    y1 = matvec(direct, x1) ^ matvec(cross, x2)
    y2 = matvec(direct, x2) ^ matvec(cross, x1)
    return y1, y2
