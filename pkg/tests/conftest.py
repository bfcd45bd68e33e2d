import itertools

import numpy as np
import pytest


def span_rank(arr) -> int:
    """Rank over GF(2) by counting every distinct combination of columns."""
    arr = np.asarray(arr, dtype=np.uint8) % 2
    if arr.size == 0:
        return 0
    cols = [tuple(c) for c in arr.T]
    seen = set()
    for mask in itertools.product((0, 1), repeat=len(cols)):
        v = np.zeros(arr.shape[0], dtype=np.uint8)
        for bit, c in zip(mask, cols):
            if bit:
                v ^= np.array(c, dtype=np.uint8)
        seen.add(v.tobytes())
    return len(seen).bit_length() - 1


def shift_matrix(q: int, s: int) -> np.ndarray:
    """D**s built by repeated dense multiplication of the one-step downshift."""
    D = np.zeros((q, q), dtype=np.int64)
    for j in range(1, q):
        D[j, j - 1] = 1
    out = np.eye(q, dtype=np.int64)
    for _ in range(s):
        out = (D @ out) % 2
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
