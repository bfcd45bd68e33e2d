"""Exact decodability and secrecy checks for linear schemes.

Two independent routes are provided.  The rank route uses the fact that for a
uniform source vector ``s`` and a linear observation ``y = M s`` the entropy
``H(y)`` is ``rank(M)`` bits, so every mutual information of interest is a
difference of ranks.  The enumeration route makes no use of linearity: it runs
every source realisation through the observation map and computes entropies
from the exact joint counts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .channel import ChannelParams, transfer_matrices, transmit
from .errors import CapacityExceededError, ConsistencyError
from .gf2 import BitMatrix, BitVector, colspace_contains, matvec, rank, vstack
from .schemes import RateResult, SchemeDescription, SourceLayout, Slot

DEFAULT_MAX_STATES = 2 ** 24


class Method(str, enum.Enum):
    ENUMERATION = "enumeration"
    RANK = "rank"
    BOTH = "both"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ReceiverView:
    """Everything receiver ``receiver`` observes, stacked over all slots."""

    receiver: int
    M: BitMatrix
    layout: SourceLayout

    def split(self, user: int) -> tuple[BitMatrix, BitMatrix]:
        """``(A, B)``: columns of ``user``'s message, and all remaining columns."""
        msg = self.layout.message_columns(user)
        rest = [k for k in range(self.layout.total) if k not in set(msg)]
        return self.M.select_columns(msg), self.M.select_columns(rest)

    def unintended(self) -> tuple[BitMatrix, BitMatrix]:
        return self.split(3 - self.receiver)

    def intended(self) -> tuple[BitMatrix, BitMatrix]:
        return self.split(self.receiver)


@dataclass(frozen=True)
class VerificationReport:
    decodable_1: bool
    decodable_2: bool
    secret_1: bool
    secret_2: bool
    mi_bits_1: Fraction  # I(W1 ; everything receiver 2 sees)
    mi_bits_2: Fraction  # I(W2 ; everything receiver 1 sees)
    method: Method
    state_count: int = 0
    equivocation_1: Fraction = Fraction(0)  # H(W1 | receiver 1's observation)
    equivocation_2: Fraction = Fraction(0)
    message_entropy_1: Fraction | None = None
    message_entropy_2: Fraction | None = None

    @property
    def ok(self) -> bool:
        return self.decodable_1 and self.decodable_2 and self.secret_1 and self.secret_2

    def failures(self) -> list[str]:
        out = []
        for user in (1, 2):
            if not getattr(self, f"decodable_{user}"):
                out.append(f"W{user} not decodable at receiver {user}")
            if not getattr(self, f"secret_{user}"):
                out.append(f"W{user} leaks {getattr(self, f'mi_bits_{user}')} bits "
                           f"to receiver {3 - user}")
        return out

    def to_dict(self) -> dict[str, Any]:
        def bits(x: Fraction | None):
            return None if x is None else f"{x.numerator}/{x.denominator} bits"

        return {
            "decodable_1": self.decodable_1,
            "decodable_2": self.decodable_2,
            "secret_1": self.secret_1,
            "secret_2": self.secret_2,
            "mi_bits_1": bits(self.mi_bits_1),
            "mi_bits_2": bits(self.mi_bits_2),
            "equivocation_1": bits(self.equivocation_1),
            "equivocation_2": bits(self.equivocation_2),
            "method": self.method.value,
            "state_count": self.state_count,
        }


def receiver_views(s: SchemeDescription) -> tuple[ReceiverView, ReceiverView]:
    s.check_shapes()
    direct, cross = transfer_matrices(s.params)
    blocks1, blocks2 = [], []
    for slot in s.slots:
        blocks1.append((direct @ slot.G1) ^ (cross @ slot.G2))
        blocks2.append((direct @ slot.G2) ^ (cross @ slot.G1))
    return (ReceiverView(1, vstack(*blocks1), s.layout),
            ReceiverView(2, vstack(*blocks2), s.layout))


# -- rank route ---------------------------------------------------------------

def _rank_decodable(view: ReceiverView) -> tuple[bool, Fraction]:
    A, B = view.intended()
    # H(W | y) = |W| + rank(B) - rank([A|B])
    equivocation = A.ncols + rank(B) - rank(view.M)
    return equivocation == 0, Fraction(equivocation)


def _rank_leakage(view: ReceiverView) -> tuple[bool, Fraction]:
    A, B = view.unintended()
    # I(W ; y) = H(y) - H(y | W) = rank([A|B]) - rank(B)
    leaked = rank(view.M) - rank(B)
    secret = colspace_contains(B, A)
    if secret != (leaked == 0):
        raise ConsistencyError("rank leakage and column-space test disagree")
    return secret, Fraction(leaked)


def check_decodability(s: SchemeDescription) -> tuple[bool, bool]:
    v1, v2 = receiver_views(s)
    return _rank_decodable(v1)[0], _rank_decodable(v2)[0]


def check_secrecy_rank(s: SchemeDescription) -> tuple[bool, bool]:
    """Per-message secrecy verdicts: W1 against receiver 2, W2 against receiver 1."""
    v1, v2 = receiver_views(s)
    return _rank_leakage(v2)[0], _rank_leakage(v1)[0]


def _rank_report(s: SchemeDescription) -> VerificationReport:
    v1, v2 = receiver_views(s)
    dec1, eq1 = _rank_decodable(v1)
    dec2, eq2 = _rank_decodable(v2)
    sec1, mi1 = _rank_leakage(v2)
    sec2, mi2 = _rank_leakage(v1)
    return VerificationReport(dec1, dec2, sec1, sec2, mi1, mi2, Method.RANK,
                              equivocation_1=eq1, equivocation_2=eq2,
                              message_entropy_1=Fraction(s.layout.w1_len),
                              message_entropy_2=Fraction(s.layout.w2_len))


# -- enumeration route ----------------------------------------------------------

def entropy_bits(counts: np.ndarray, total: int) -> Fraction:
    """Exact entropy of the empirical distribution ``counts / total``.

    ``total`` must be a power of two and every count a power of two (true for
    any linear map of uniform bits), so each term is rational.
    """
    if total & (total - 1):
        raise ValueError("total must be a power of two")
    log_total = total.bit_length() - 1
    h = Fraction(0)
    values, multiplicity = np.unique(np.asarray(counts), return_counts=True)
    for c, k in zip(values.tolist(), multiplicity.tolist()):
        c = int(c)
        if c <= 0 or c & (c - 1):
            raise ValueError(f"count {c} is not a power of two; entropy is irrational")
        h += Fraction(k * c, total) * (log_total - (c.bit_length() - 1))
    return h


def _simulated_columns(s: SchemeDescription) -> tuple[list[int], list[int]]:
    """Per source bit, the packed observation of each receiver.

    Obtained by encoding a unit source vector and pushing it through the
    channel slot by slot, not from the composed observation matrices.
    """
    q, total = s.params.q, s.layout.total
    cols1, cols2 = [], []
    for k in range(total):
        unit = BitVector(total, 1 << k)
        y1 = y2 = 0
        for t, slot in enumerate(s.slots):
            a, b = transmit(matvec(slot.G1, unit), matvec(slot.G2, unit), s.params)
            y1 |= a.value << (t * q)
            y2 |= b.value << (t * q)
        cols1.append(y1)
        cols2.append(y2)
    return cols1, cols2


def _observations(cols: list[int]) -> np.ndarray:
    """``obs[s]`` for every source integer ``s`` (bit k of ``s`` = source bit k)."""
    obs = np.zeros(1, dtype=np.uint64)
    for col in cols:
        obs = np.concatenate([obs, obs ^ np.uint64(col)])
    return obs


def _distinct(a: np.ndarray, b: np.ndarray | None = None, b_width: int = 0) -> np.ndarray:
    """Counts of the distinct values of ``a`` (or of the pairs ``(a, b)``)."""
    if b is None:
        return np.unique(a, return_counts=True)[1]
    a_width = int(a.max()).bit_length() if a.size else 0
    if a_width + b_width <= 64:
        key = (a << np.uint64(b_width)) | b if b_width < 64 else a
        return np.unique(key, return_counts=True)[1]
    return np.unique(np.stack([a, b], axis=1), axis=0, return_counts=True)[1]


def _segment_values(states: np.ndarray, layout: SourceLayout, user: int) -> np.ndarray:
    seg = "W1" if user == 1 else "W2"
    mask = np.uint64((1 << layout.length(seg)) - 1)
    return (states >> np.uint64(layout.offset(seg))) & mask


def check_secrecy_enum(s: SchemeDescription,
                       max_states: int = DEFAULT_MAX_STATES) -> VerificationReport:
    """Exhaustive joint-distribution check over all ``2**total`` source vectors."""
    total = s.layout.total
    n_states = 1 << total
    if n_states > max_states:
        raise CapacityExceededError(
            f"2^{total} source realisations exceed the bound of {max_states}")
    s.check_shapes()
    if s.params.q * len(s.slots) > 64 or total > 64:
        raise CapacityExceededError("observation does not fit a 64-bit word")

    cols1, cols2 = _simulated_columns(s)
    states = np.arange(n_states, dtype=np.uint64)
    y = {1: _observations(cols1), 2: _observations(cols2)}
    w = {1: _segment_values(states, s.layout, 1), 2: _segment_values(states, s.layout, 2)}
    width = {1: s.layout.w1_len, 2: s.layout.w2_len}
    H_y = {j: entropy_bits(_distinct(y[j]), n_states) for j in (1, 2)}
    H_w = {i: entropy_bits(_distinct(w[i]), n_states) for i in (1, 2)}

    def joint(i: int, j: int) -> Fraction:
        return entropy_bits(_distinct(y[j], w[i], width[i]), n_states)

    eq1 = joint(1, 1) - H_y[1]
    eq2 = joint(2, 2) - H_y[2]
    mi1 = H_w[1] + H_y[2] - joint(1, 2)
    mi2 = H_w[2] + H_y[1] - joint(2, 1)
    return VerificationReport(eq1 == 0, eq2 == 0, mi1 == 0, mi2 == 0, mi1, mi2,
                              Method.ENUMERATION, n_states, eq1, eq2, H_w[1], H_w[2])


def _verdicts(r: VerificationReport) -> tuple:
    return (r.decodable_1, r.decodable_2, r.secret_1, r.secret_2,
            r.mi_bits_1, r.mi_bits_2, r.equivocation_1, r.equivocation_2)


def verify(s: SchemeDescription, max_states: int = DEFAULT_MAX_STATES) -> VerificationReport:
    """Rank verdicts, cross-checked by enumeration whenever the state space fits."""
    ranked = _rank_report(s)
    if (1 << s.layout.total) > max_states:
        return ranked
    try:
        enumerated = check_secrecy_enum(s, max_states)
    except CapacityExceededError:
        return ranked
    if _verdicts(ranked) != _verdicts(enumerated):
        raise ConsistencyError(
            f"rank and enumeration disagree for {s.params}: {_verdicts(ranked)} "
            f"vs {_verdicts(enumerated)}")
    return VerificationReport(*_verdicts(ranked)[:6], Method.BOTH, enumerated.state_count,
                              ranked.equivocation_1, ranked.equivocation_2,
                              enumerated.message_entropy_1, enumerated.message_entropy_2)


def random_scheme(rng: np.random.Generator, max_q: int = 5, max_total: int = 16,
                  max_slots: int = 2, density: float | None = None) -> SchemeDescription:
    """A random (usually insecure) linear scheme for cross-checking the two routes.

    The cooperative ledger is filled in so the result passes ``validate_budget``
    with ``C`` set to the largest per-slot usage.
    """
    while True:
        m, n = (int(v) for v in rng.integers(0, max_q + 1, size=2))
        if max(m, n) > 0:
            break
    q = max(m, n)
    lengths = [int(v) for v in rng.integers(0, 5, size=4)]
    while sum(lengths) > max_total:
        k = int(rng.integers(0, 4))
        lengths[k] = max(0, lengths[k] - 1)
    layout = SourceLayout(*lengths)
    nslots = int(rng.integers(1, max_slots + 1))
    p = rng.uniform(0.1, 0.6) if density is None else density
    raw = []
    for _ in range(nslots):
        mats = [BitMatrix.from_array(rng.random((q, layout.total)) < p) if layout.total
                else BitMatrix.zeros(q, 0) for _ in (1, 2)]
        raw.append(mats)
    usage = 0
    slots = []
    for G1, G2 in raw:
        s1 = frozenset(G1.nonzero_columns() & layout.peer_columns(1))
        s2 = frozenset(G2.nonzero_columns() & layout.peer_columns(2))
        usage = max(usage, len(s1), len(s2))
        slots.append(Slot(G1, G2, s1, s2))
    return SchemeDescription(ChannelParams(m, n, usage), layout, tuple(slots),
                             RateResult(0, nslots))
