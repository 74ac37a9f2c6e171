"""Small GF(2) linear algebra helpers on int bitsets.

A vector of length ``n`` is a Python int whose bit ``j`` holds coordinate ``j``.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence

import numpy as np


def pack_rows(matrix: np.ndarray) -> List[int]:
    """Pack each row of a 0/1 matrix into an int (bit j = column j)."""
    matrix = np.asarray(matrix)
    weights = [1 << j for j in range(matrix.shape[1])]
    return [sum(w for w, b in zip(weights, row) if b) for row in matrix.tolist()]


def pack_columns(matrix: np.ndarray) -> List[int]:
    return pack_rows(np.asarray(matrix).T)


def support_mask(indices: Iterable[int]) -> int:
    mask = 0
    for j in indices:
        mask |= 1 << j
    return mask


def reduce_basis(rows: Iterable[int]) -> dict:
    """Echelon basis keyed by leading bit; zero rows are dropped."""
    basis: dict = {}
    for v in rows:
        while v:
            lead = v.bit_length() - 1
            if lead not in basis:
                basis[lead] = v
                break
            v ^= basis[lead]
    return basis


def rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) via Gaussian elimination."""
    return len(reduce_basis(rows))


def in_span(vec: int, rows: Sequence[int] | dict) -> bool:
    """True iff ``vec`` lies in the GF(2) span of ``rows``.

    ``rows`` may be a basis already returned by :func:`reduce_basis`.
    """
    basis = rows if isinstance(rows, dict) else reduce_basis(rows)
    while vec:
        lead = vec.bit_length() - 1
        if lead not in basis:
            return False
        vec ^= basis[lead]
    return True


def same_row_space(a: Sequence[int], b: Sequence[int]) -> bool:
    """Mutual containment of two row spaces."""
    ba, bb = reduce_basis(a), reduce_basis(b)
    return all(in_span(v, bb) for v in ba.values()) and all(
        in_span(v, ba) for v in bb.values()
    )


def span(rows: Sequence[int]) -> List[int]:
    """All 2^len(rows) combinations of ``rows`` (Gray-code order)."""
    out = [0]
    acc = 0
    for g in range(1, 1 << len(rows)):
        acc ^= rows[(g & -g).bit_length() - 1]
        out.append(acc)
    return out


__all__ = [
    "pack_rows",
    "pack_columns",
    "support_mask",
    "reduce_basis",
    "rank",
    "in_span",
    "same_row_space",
    "span",
]
