"""Secure transmission schemes expressed as GF(2) generator matrices.

Every scheme is linear in a global source vector laid out as
``[W1 | W2 | D | E]``: the message bits of user 1 and user 2 followed by the
private random bits of transmitter 1 and transmitter 2.  For each time slot,
``G1`` and ``G2`` (``q`` rows, top level first) map the source vector to the
two transmitted vectors.  A transmitter may reference the other side's bits
(its message or random pool) only if they crossed the cooperative link, and
the per-slot ledger records which ones did.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .channel import ChannelParams
from .errors import MalformedSchemeError, ParameterError, RegimeError, UnsupportedCaseError
from .gf2 import BitMatrix, level_to_entry

SEGMENTS = ("W1", "W2", "D", "E")


class Regime(str, enum.Enum):
    WEAK = "weak"
    MODERATE = "moderate"
    UNITY = "unity"
    HIGH = "high"
    VERY_HIGH = "very_high"

    def __str__(self) -> str:
        return self.value


def classify_regime(p: ChannelParams) -> Regime:
    if p.m == 0 and p.n == 0:
        raise ParameterError("degenerate channel: m = n = 0")
    alpha = p.alpha
    if alpha is None:
        # no direct link at all; interference is infinitely stronger
        return Regime.VERY_HIGH
    if alpha <= Fraction(2, 3):
        return Regime.WEAK
    if alpha < 1:
        return Regime.MODERATE
    if alpha == 1:
        return Regime.UNITY
    if alpha < 2:
        return Regime.HIGH
    return Regime.VERY_HIGH


@dataclass(frozen=True)
class RateResult:
    """Per-user message bits delivered over ``denominator`` channel uses."""

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        if self.numerator < 0 or self.denominator <= 0:
            raise ValueError(f"invalid rate {self.numerator}/{self.denominator}")

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def as_text(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    @classmethod
    def from_text(cls, text: str) -> RateResult:
        num, _, den = text.partition("/")
        return cls(int(num), int(den or 1))

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class SourceLayout:
    w1_len: int = 0
    w2_len: int = 0
    d_len: int = 0
    e_len: int = 0

    def __post_init__(self):
        if min(self.w1_len, self.w2_len, self.d_len, self.e_len) < 0:
            raise ValueError("segment lengths must be nonnegative")

    @property
    def total(self) -> int:
        return self.w1_len + self.w2_len + self.d_len + self.e_len

    def length(self, segment: str) -> int:
        return {"W1": self.w1_len, "W2": self.w2_len, "D": self.d_len, "E": self.e_len}[segment]

    def offset(self, segment: str) -> int:
        off = 0
        for seg in SEGMENTS:
            if seg == segment:
                return off
            off += self.length(seg)
        raise KeyError(segment)

    def columns(self, *segments: str) -> list[int]:
        cols = []
        for seg in segments:
            start = self.offset(seg)
            cols.extend(range(start, start + self.length(seg)))
        return cols

    def message_columns(self, user: int) -> list[int]:
        return self.columns("W1" if user == 1 else "W2")

    def peer_columns(self, tx: int) -> set[int]:
        """Source bits that transmitter ``tx`` only knows through cooperation."""
        return set(self.columns("W2", "E") if tx == 1 else self.columns("W1", "D"))


@dataclass(frozen=True)
class Slot:
    """One channel use: both generator matrices plus the link traffic it needs.

    ``shared_to_1`` holds the source columns sent from transmitter 2 to
    transmitter 1 over the cooperative link during this slot, and vice versa.
    """

    G1: BitMatrix
    G2: BitMatrix
    shared_to_1: frozenset[int] = frozenset()
    shared_to_2: frozenset[int] = frozenset()

    def generator(self, tx: int) -> BitMatrix:
        return self.G1 if tx == 1 else self.G2

    def shared_to(self, tx: int) -> frozenset[int]:
        return self.shared_to_1 if tx == 1 else self.shared_to_2


@dataclass(frozen=True)
class SchemeDescription:
    params: ChannelParams
    layout: SourceLayout
    slots: tuple[Slot, ...]
    rate: RateResult
    regime: Regime | None = None
    note: str = ""
    conjecture: bool = False

    def check_shapes(self) -> None:
        q, total = self.params.q, self.layout.total
        if not self.slots:
            raise MalformedSchemeError("scheme has no time slots")
        for k, slot in enumerate(self.slots):
            for tx in (1, 2):
                G = slot.generator(tx)
                if G.shape != (q, total):
                    raise MalformedSchemeError(
                        f"slot {k} G{tx} has shape {G.shape}, expected {(q, total)}")
                if not slot.shared_to(tx) <= set(range(total)):
                    raise MalformedSchemeError(f"slot {k} ledger references unknown columns")

    def to_dict(self) -> dict[str, Any]:
        return {
            "params": {"m": self.params.m, "n": self.params.n, "C": self.params.C},
            "regime": None if self.regime is None else self.regime.value,
            "note": self.note,
            "conjecture": self.conjecture,
            "layout": {
                "w1_len": self.layout.w1_len,
                "w2_len": self.layout.w2_len,
                "d_len": self.layout.d_len,
                "e_len": self.layout.e_len,
                "order": list(SEGMENTS),
            },
            "slots": [
                {
                    "G1": slot.G1.row_strings(),
                    "G2": slot.G2.row_strings(),
                    "shared_to_1": sorted(slot.shared_to_1),
                    "shared_to_2": sorted(slot.shared_to_2),
                }
                for slot in self.slots
            ],
            "rate": self.rate.as_text(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SchemeDescription:
        params = ChannelParams(**data["params"])
        lay = data["layout"]
        layout = SourceLayout(lay["w1_len"], lay["w2_len"], lay["d_len"], lay["e_len"])
        slots = tuple(
            Slot(
                BitMatrix.from_row_strings(s["G1"], layout.total),
                BitMatrix.from_row_strings(s["G2"], layout.total),
                frozenset(s.get("shared_to_1", ())),
                frozenset(s.get("shared_to_2", ())),
            )
            for s in data["slots"]
        )
        regime = data.get("regime")
        return cls(
            params,
            layout,
            slots,
            RateResult.from_text(data["rate"]),
            None if regime is None else Regime(regime),
            data.get("note", ""),
            data.get("conjecture", False),
        )


class _Draft:
    """Accumulates symbolic bit placements, then packs them into matrices.

    Bits are named ``(segment, label)``.  Labels inside a segment are sorted
    when columns are assigned, so builders can name bits after the level they
    ride on and still get a stable column order.
    """

    def __init__(self, params: ChannelParams, nslots: int = 1):
        self.params = params
        self.nslots = nslots
        self._labels: dict[str, set] = {seg: set() for seg in SEGMENTS}
        self._puts: list[tuple[int, int, int, str, Any]] = []

    def put(self, slot: int, tx: int, level: int, *bits: tuple[str, Any]) -> None:
        """XOR ``bits`` onto ``level`` of transmitter ``tx`` in ``slot``."""
        row = level_to_entry(self.params.q, level) - 1
        for seg, label in bits:
            self._labels[seg].add(label)
            self._puts.append((slot, tx, row, seg, label))

    def finish(self, rate: RateResult, regime: Regime, note: str = "",
               conjecture: bool = False) -> SchemeDescription:
        index = {seg: {lab: k for k, lab in enumerate(sorted(self._labels[seg]))}
                 for seg in SEGMENTS}
        layout = SourceLayout(*(len(index[seg]) for seg in SEGMENTS))
        q, total = self.params.q, layout.total
        rows = [[[0] * q for _ in (1, 2)] for _ in range(self.nslots)]
        for slot, tx, row, seg, label in self._puts:
            col = layout.offset(seg) + index[seg][label]
            rows[slot][tx - 1][row] ^= 1 << col

        slots = []
        already = {1: set(), 2: set()}
        for k in range(self.nslots):
            G1 = BitMatrix(q, total, tuple(rows[k][0]))
            G2 = BitMatrix(q, total, tuple(rows[k][1]))
            shared = {}
            for tx, G in ((1, G1), (2, G2)):
                fresh = (G.nonzero_columns() & layout.peer_columns(tx)) - already[tx]
                already[tx] |= fresh
                shared[tx] = frozenset(fresh)
            slots.append(Slot(G1, G2, shared[1], shared[2]))
        return SchemeDescription(self.params, layout, tuple(slots), rate, regime, note, conjecture)


def _empty(p: ChannelParams, regime: Regime, note: str = "") -> SchemeDescription:
    return _Draft(p).finish(RateResult(0, 1), regime, note)


def _require(p: ChannelParams, regime: Regime) -> None:
    actual = classify_regime(p)
    if actual is not regime:
        raise RegimeError(f"{p} is in the {actual} regime, not {regime}")


def _cancelation_layers(draft: _Draft, clean: int, c: int) -> None:
    """Own data on levels ``[1 : clean + c]``, peer data precoded onto ``[1 : c]``.

    The peer's bit on level ``clean + i`` reaches this transmitter's receiver on
    level ``i``, where the precoded copy cancels it.
    """
    for tx, own, peer in ((1, "W1", "W2"), (2, "W2", "W1")):
        for level in range(1, clean + c + 1):
            draft.put(0, tx, level, (own, level))
        for level in range(1, c + 1):
            draft.put(0, tx, level, (peer, clean + level))


def build_weak(p: ChannelParams) -> SchemeDescription:
    _require(p, Regime.WEAK)
    r, c = p.m - p.n, p.coop
    draft = _Draft(p)
    _cancelation_layers(draft, r, c)
    return draft.finish(RateResult(r + c), Regime.WEAK)


@dataclass(frozen=True)
class ModerateLayout:
    """Bookkeeping for the moderate-regime block structure."""

    r1: int
    r2: int
    l: int
    g: int
    blocks: int
    remainder: int
    extra: int

    @property
    def block_size(self) -> int:
        return 3 * self.r2


def moderate_layout(p: ChannelParams) -> ModerateLayout:
    r = p.m - p.n
    g = max(0, p.n - (r + p.coop))
    blocks, remainder = divmod(g, 3 * r)
    extra = min(max(remainder - r, 0), r)
    return ModerateLayout(r, r, 2 * p.n - p.m, g, blocks, remainder, extra)


def build_moderate(p: ChannelParams) -> SchemeDescription:
    _require(p, Regime.MODERATE)
    lay = moderate_layout(p)
    r, c, m = lay.r2, p.coop, p.m
    draft = _Draft(p)
    _cancelation_layers(draft, r, c)
    for tx, own, rnd in ((1, "W1", "D"), (2, "W2", "E")):
        # from the top: r data levels, r random levels, r silent levels
        for b in range(lay.blocks):
            top = m - b * lay.block_size
            for k in range(r):
                draft.put(0, tx, top - k, (own, top - k))
                draft.put(0, tx, top - r - k, (rnd, top - r - k))
        # partial block: `extra` data levels with matching random levels r below
        top = m - lay.blocks * lay.block_size
        for k in range(lay.extra):
            draft.put(0, tx, top - k, (own, top - k))
            draft.put(0, tx, top - r - k, (rnd, top - r - k))
    rate = r + lay.blocks * r + lay.extra + c
    return draft.finish(RateResult(rate), Regime.MODERATE)


def build_unity(p: ChannelParams) -> SchemeDescription:
    _require(p, Regime.UNITY)
    return _empty(p, Regime.UNITY, "both receivers observe x1 xor x2")


def _check_alpha2(p: ChannelParams) -> None:
    if p.m == 0 or p.n != 2 * p.m or p.m % 2:
        raise UnsupportedCaseError(
            Regime.VERY_HIGH,
            f"{p}: very-high interference is only constructed for n = 2m with even m")


def _alpha2_random_sharing(p: ChannelParams) -> SchemeDescription:
    m, C = p.m, p.C
    draft = _Draft(p)
    for tx, peer, own, rnd in ((1, 2, "W1", "D"), (2, 1, "W2", "E")):
        for j in range(1, C + 1):
            # own data masked by a random bit; the peer sends the same random
            # bit low so it cancels at this transmitter's receiver
            draft.put(0, tx, m + j, (own, j), (rnd, j))
            draft.put(0, peer, j, (rnd, j))
    return draft.finish(RateResult(C), Regime.VERY_HIGH, "random-bit sharing", conjecture=True)


def _alpha2_time_sharing(p: ChannelParams) -> SchemeDescription:
    m = p.m
    c1 = p.C - m // 2
    draft = _Draft(p, nslots=2)
    roles = {1: ("W1", "D"), 2: ("W2", "E")}
    for slot, (lead, follow) in enumerate(((1, 2), (2, 1))):
        data_l, rnd_l = roles[lead]
        data_f, rnd_f = roles[follow]
        masks = {}
        for j in range(1, m + 1):
            # lead's own random bits on odd levels, the follower's on even levels
            masks[j] = (rnd_l, (slot, j)) if j % 2 else (rnd_f, (slot, j))
            draft.put(slot, lead, j, masks[j])
            draft.put(slot, follow, m + j, (data_f, (slot, j)), masks[j])
        for j in range(1, m - c1 + 1):
            draft.put(slot, lead, m + j, (data_l, (slot, j)), masks[j])
            draft.put(slot, follow, j, masks[j])
        for j in range(m - c1 + 1, m + 1):
            relayed_f = (data_f, (slot, m + j))
            draft.put(slot, lead, m + j, relayed_f)
            draft.put(slot, follow, j, relayed_f, (data_l, (slot, j)))
    return draft.finish(RateResult(2 * m + c1, 2), Regime.VERY_HIGH, "two-slot time sharing")


def _alpha2_zero_forcing(p: ChannelParams) -> SchemeDescription:
    m, c = p.m, p.coop
    draft = _Draft(p)
    # pick x so that each receiver sees exactly its own data on levels [1 : c]:
    # x1 = y2_target + D^m y1_target, x2 = y1_target + D^m y2_target
    for tx, own, peer in ((1, "W1", "W2"), (2, "W2", "W1")):
        for k in range(1, c + 1):
            draft.put(0, tx, k, (peer, k))
        for k in range(1, c - m + 1):
            draft.put(0, tx, k, (own, k + m))
    return draft.finish(RateResult(c), Regime.VERY_HIGH, "data sharing with pre-cancelation",
                        conjecture=c < p.n)


def build_very_high_alpha2(p: ChannelParams) -> SchemeDescription:
    _check_alpha2(p)
    m, C = p.m, p.C
    if C == 0:
        return _empty(p, Regime.VERY_HIGH, "no cooperation")
    if 2 * C <= m:
        return _alpha2_random_sharing(p)
    if 2 * C < 3 * m:
        return _alpha2_time_sharing(p)
    return _alpha2_zero_forcing(p)


def build(p: ChannelParams) -> SchemeDescription:
    regime = classify_regime(p)
    if regime is Regime.WEAK:
        return build_weak(p)
    if regime is Regime.MODERATE:
        return build_moderate(p)
    if regime is Regime.UNITY:
        return build_unity(p)
    if regime is Regime.HIGH:
        raise UnsupportedCaseError(regime, f"{p}: no construction for 1 < alpha < 2")
    if p.m == 0:
        return _empty(p, regime, "no direct link")
    return build_very_high_alpha2(p)


def validate_budget(s: SchemeDescription) -> bool:
    """Check per-slot link capacity and that every peer bit was shared in time."""
    C = s.params.C
    for tx in (1, 2):
        peer = s.layout.peer_columns(tx)
        known: set[int] = set()
        for slot in s.slots:
            shared = slot.shared_to(tx)
            if len(shared) > C or not shared <= peer:
                return False
            known |= shared
            if not (slot.generator(tx).nonzero_columns() & peer) <= known:
                return False
    return True
