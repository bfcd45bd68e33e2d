"""Bit-packed linear algebra over GF(2).

Vectors and matrix rows are stored as Python integers used as bitsets.  For a
``BitVector`` entry 1 (the top of the column, as written on paper) lives in bit
0.  For a ``BitMatrix`` each row is an integer whose bit ``k`` is the entry in
column ``k``.  Channel levels are counted from the bottom, so level ``i`` of a
length-``q`` vector is entry ``q - i + 1``; ``level_to_entry`` does the
conversion and every other module goes through it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, InvalidShiftError


def level_to_entry(q: int, level: int) -> int:
    """1-based entry index (top first) of a 1-based level (bottom first)."""
    if not 1 <= level <= q:
        raise DimensionError(f"level {level} outside [1, {q}]")
    return q - level + 1


def _mask(width: int) -> int:
    return (1 << width) - 1


@dataclass(frozen=True)
class BitVector:
    length: int
    value: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise DimensionError("negative vector length")
        if self.value < 0 or self.value >> self.length:
            raise DimensionError("vector value has bits beyond its length")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitVector:
        bits = list(bits)
        value = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"entry {i + 1} is {b!r}, expected 0 or 1")
            value |= b << i
        return cls(len(bits), value)

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length, 0)

    def tolist(self) -> list[int]:
        """Entries top to bottom."""
        return [(self.value >> i) & 1 for i in range(self.length)]

    def entry(self, index: int) -> int:
        if not 1 <= index <= self.length:
            raise IndexError(index)
        return (self.value >> (index - 1)) & 1

    def level(self, level: int) -> int:
        return self.entry(level_to_entry(self.length, level))

    def __xor__(self, other: BitVector) -> BitVector:
        if self.length != other.length:
            raise DimensionError(f"length {self.length} vs {other.length}")
        return BitVector(self.length, self.value ^ other.value)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.tolist())


@dataclass(frozen=True)
class BitMatrix:
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise DimensionError(f"expected {self.nrows} rows, got {len(self.rows)}")
        limit = _mask(self.ncols)
        for r in self.rows:
            if r < 0 or r & ~limit:
                raise DimensionError("row has bits beyond the column count")

    # -- construction ------------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> BitMatrix:
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != ncols:
                raise DimensionError("ragged rows")
            packed.append(sum(int(b) << k for k, b in enumerate(row) if b))
        return cls(len(rows), ncols, tuple(packed))

    @classmethod
    def from_array(cls, arr) -> BitMatrix:
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise DimensionError("expected a 2-d array")
        return cls.from_rows((arr % 2).astype(int).tolist(), arr.shape[1])

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[int]) -> BitMatrix:
        """Build from column bitsets (bit ``i`` of a column is row ``i``)."""
        rows = [0] * nrows
        for k, col in enumerate(columns):
            for i in range(nrows):
                if (col >> i) & 1:
                    rows[i] |= 1 << k
        return cls(nrows, len(columns), tuple(rows))

    # -- access ------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def entry(self, i: int, j: int) -> int:
        """0-based row/column access."""
        return (self.rows[i] >> j) & 1

    def tolist(self) -> list[list[int]]:
        return [[(r >> k) & 1 for k in range(self.ncols)] for r in self.rows]

    def toarray(self) -> np.ndarray:
        return np.array(self.tolist(), dtype=np.uint8).reshape(self.nrows, self.ncols)

    def column(self, j: int) -> int:
        """Column ``j`` as a bitset over rows."""
        return sum(((r >> j) & 1) << i for i, r in enumerate(self.rows))

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        return not any(self.rows)

    def nonzero_columns(self) -> set[int]:
        acc = 0
        for r in self.rows:
            acc |= r
        return {k for k in range(self.ncols) if (acc >> k) & 1}

    def row_strings(self) -> list[str]:
        return ["".join(str((r >> k) & 1) for k in range(self.ncols)) for r in self.rows]

    @classmethod
    def from_row_strings(cls, rows: Sequence[str], ncols: int) -> BitMatrix:
        return cls.from_rows([[int(c) for c in s] for s in rows], ncols)

    # -- algebra -----------------------------------------------------------

    def with_flipped(self, i: int, j: int) -> BitMatrix:
        rows = list(self.rows)
        rows[i] ^= 1 << j
        return BitMatrix(self.nrows, self.ncols, tuple(rows))

    def select_columns(self, cols: Sequence[int]) -> BitMatrix:
        rows = []
        for r in self.rows:
            rows.append(sum(((r >> c) & 1) << k for k, c in enumerate(cols)))
        return BitMatrix(self.nrows, len(cols), tuple(rows))

    def __xor__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"shape {self.shape} vs {other.shape}")
        return BitMatrix(self.nrows, self.ncols,
                         tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    __add__ = __xor__

    def __matmul__(self, other):
        if isinstance(other, BitVector):
            return matvec(self, other)
        if isinstance(other, BitMatrix):
            return matmul(self, other)
        return NotImplemented


def matvec(M: BitMatrix, v: BitVector) -> BitVector:
    if M.ncols != v.length:
        raise DimensionError(f"matrix has {M.ncols} columns, vector length {v.length}")
    out = 0
    for i, r in enumerate(M.rows):
        out |= ((r & v.value).bit_count() & 1) << i
    return BitVector(M.nrows, out)


def matmul(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    if A.ncols != B.nrows:
        raise DimensionError(f"inner dimensions {A.ncols} and {B.nrows} differ")
    rows = []
    for a in A.rows:
        acc = 0
        k = 0
        while a:
            if a & 1:
                acc ^= B.rows[k]
            a >>= 1
            k += 1
        rows.append(acc)
    return BitMatrix(A.nrows, B.ncols, tuple(rows))


def hstack(*mats: BitMatrix) -> BitMatrix:
    if not mats:
        raise ValueError("nothing to stack")
    nrows = mats[0].nrows
    if any(m.nrows != nrows for m in mats):
        raise DimensionError("row counts differ")
    rows = [0] * nrows
    offset = 0
    for m in mats:
        for i, r in enumerate(m.rows):
            rows[i] |= r << offset
        offset += m.ncols
    return BitMatrix(nrows, offset, tuple(rows))


def vstack(*mats: BitMatrix) -> BitMatrix:
    if not mats:
        raise ValueError("nothing to stack")
    ncols = mats[0].ncols
    if any(m.ncols != ncols for m in mats):
        raise DimensionError("column counts differ")
    rows = tuple(r for m in mats for r in m.rows)
    return BitMatrix(len(rows), ncols, rows)


def downshift(q: int, s: int) -> BitMatrix:
    """``D**s`` for the ``q x q`` downshift matrix ``D``.

    Applied to a vector it moves every entry ``s`` places towards the bottom,
    dropping the lowest ``s`` entries and zero-filling the top.
    """
    if q < 0:
        raise DimensionError("negative dimension")
    if not 0 <= s <= q:
        raise InvalidShiftError(f"shift {s} outside [0, {q}]")
    rows = tuple(1 << (j - s) if j >= s else 0 for j in range(q))
    return BitMatrix(q, q, rows)


def _reduce(rows: Iterable[int]) -> dict[int, int]:
    """Echelon basis keyed by leading bit."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            if lead in pivots:
                row ^= pivots[lead]
            else:
                pivots[lead] = row
                break
    return pivots


def rank(M: BitMatrix) -> int:
    return len(_reduce(M.rows))


def colspace_contains(B: BitMatrix, A: BitMatrix) -> bool:
    """True iff every column of ``A`` lies in the column space of ``B``."""
    if A.nrows != B.nrows:
        raise DimensionError(f"row counts {B.nrows} and {A.nrows} differ")
    return rank(hstack(B, A)) == rank(B)


def solve(M: BitMatrix, y: BitVector) -> BitVector | None:
    """Some ``x`` with ``M x = y``, or ``None`` when the system is inconsistent."""
    if y.length != M.nrows:
        raise DimensionError(f"matrix has {M.nrows} rows, vector length {y.length}")
    # augment each row with its right-hand side bit above the coefficient bits
    rhs_bit = M.ncols
    aug = [r | (((y.value >> i) & 1) << rhs_bit) for i, r in enumerate(M.rows)]
    pivots: list[tuple[int, int]] = []
    for row in aug:
        for col, prow in pivots:
            if (row >> col) & 1:
                row ^= prow
        coeff = row & _mask(M.ncols)
        if not coeff:
            if row:
                return None
            continue
        col = (coeff & -coeff).bit_length() - 1
        pivots = [(c, p ^ row if (p >> col) & 1 else p) for c, p in pivots]
        pivots.append((col, row))
    x = 0
    for col, prow in pivots:
        x |= ((prow >> rhs_bit) & 1) << col
    return BitVector(M.ncols, x)
