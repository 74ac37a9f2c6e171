"""The m-fold product of [r+1, r] single-parity-check codes.

Symbols are addressed by coordinates in Z_{r+1}^m, stored as tuples of ints.
A coordinate's position in a word is its mixed-radix value with the first
digit most significant, so words, matrix columns and matrix rows all follow
lexicographic coordinate order.  Axes are numbered 1..m in the public API.

Information symbols sit at Z_r^m (all digits < r); every other coordinate is
a parity symbol and owns exactly one row of the parity-check matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import FrozenSet, List, Sequence, Tuple

import numpy as np

from .errors import (
    DimensionError,
    InvalidCoordinateError,
    InvalidParametersError,
    NotParityCoordinateError,
)

Coord = Tuple[int, ...]

#: Default cap on the code length n = (r+1)^m.
MAX_SYMBOLS = 2 ** 20


@dataclass(frozen=True)
class CodeParams:
    """Parameters (r, m) of the code; n, k and t are derived."""

    r: int
    m: int
    max_symbols: int = field(default=MAX_SYMBOLS, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.r, (int, np.integer)) or self.r < 2:
            raise InvalidParametersError(f"r must be an integer >= 2, got {self.r!r}")
        if not isinstance(self.m, (int, np.integer)) or self.m < 1:
            raise InvalidParametersError(f"m must be an integer >= 1, got {self.m!r}")
        if (self.r + 1) ** self.m > self.max_symbols:
            raise InvalidParametersError(
                f"(r+1)^m = {(self.r + 1) ** self.m} exceeds the limit of "
                f"{self.max_symbols} symbols"
            )

    @property
    def n(self) -> int:
        return (self.r + 1) ** self.m

    @property
    def k(self) -> int:
        return self.r ** self.m

    @property
    def t(self) -> int:
        """Number of erasures always repairable sequentially."""
        return 2 ** self.m - 1

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.r + 1,) * self.m


# --------------------------------------------------------------------------
# coordinates
# --------------------------------------------------------------------------


def check_coord(p: CodeParams, a: Sequence[int]) -> Coord:
    a = tuple(int(x) for x in a)
    if len(a) != p.m:
        raise InvalidCoordinateError(f"coordinate {a} has {len(a)} digits, expected {p.m}")
    for x in a:
        if not 0 <= x <= p.r:
            raise InvalidCoordinateError(f"digit {x} of {a} outside [0, {p.r}]")
    return a


def coord_rank(p: CodeParams, a: Sequence[int]) -> int:
    """Mixed-radix value of ``a`` in base r+1, first digit most significant."""
    a = check_coord(p, a)
    value = 0
    for x in a:
        value = value * (p.r + 1) + x
    return value


def coord_unrank(p: CodeParams, index: int) -> Coord:
    if not 0 <= index < p.n:
        raise InvalidCoordinateError(f"rank {index} outside [0, {p.n})")
    digits = []
    for _ in range(p.m):
        index, x = divmod(index, p.r + 1)
        digits.append(x)
    return tuple(reversed(digits))


def all_coords(p: CodeParams) -> List[Coord]:
    """Z_{r+1}^m in rank order."""
    return list(itertools.product(range(p.r + 1), repeat=p.m))


def is_parity_coord(p: CodeParams, a: Sequence[int]) -> bool:
    return p.r in check_coord(p, a)


def _check_axis(p: CodeParams, i: int) -> int:
    if not 1 <= i <= p.m:
        raise InvalidCoordinateError(f"axis {i} outside [1, {p.m}]")
    return i


def format_coord(p: CodeParams, a: Sequence[int]) -> str:
    """Text token for a coordinate: compact digits when r <= 8, else comma-joined."""
    a = check_coord(p, a)
    if p.r <= 8:
        return "".join(str(x) for x in a)
    return ",".join(str(x) for x in a)


def parse_coord(p: CodeParams, token: str) -> Coord:
    """Parse "0,2,1" (always accepted) or "021" (accepted when r <= 8)."""
    token = token.strip()
    if not token:
        raise InvalidCoordinateError("empty coordinate token")
    try:
        if "," in token or p.m == 1:
            digits = [int(x) for x in token.split(",")]
        elif p.r <= 8:
            digits = [int(ch) for ch in token]
        else:
            raise InvalidCoordinateError(
                f"compact token {token!r} only allowed when r <= 8; use commas"
            )
    except ValueError as exc:
        raise InvalidCoordinateError(f"bad coordinate token {token!r}") from exc
    return check_coord(p, digits)


# --------------------------------------------------------------------------
# T(alpha), L(alpha) and lines
# --------------------------------------------------------------------------


def t_set(p: CodeParams, a: Sequence[int]) -> FrozenSet[int]:
    """Axes (1-based) on which the parity coordinate ``a`` has a digit below r."""
    a = check_coord(p, a)
    if p.r not in a:
        raise NotParityCoordinateError(f"{a} lies in Z_r^m, not a parity coordinate")
    return frozenset(j + 1 for j, x in enumerate(a) if x < p.r)


def l_set(p: CodeParams, a: Sequence[int]) -> List[Coord]:
    """Information coordinates that agree with ``a`` on every axis of T(a).

    Returned in rank order; there are r^(m - |T(a)|) of them.
    """
    fixed = t_set(p, a)
    a = tuple(a)
    choices = [(a[j],) if j + 1 in fixed else range(p.r) for j in range(p.m)]
    return list(itertools.product(*choices))


def line_coords(p: CodeParams, a: Sequence[int], i: int) -> List[Coord]:
    """The r+1 coordinates agreeing with ``a`` off axis ``i``, in rank order."""
    a = check_coord(p, a)
    j = _check_axis(p, i) - 1
    return [a[:j] + (x,) + a[j + 1:] for x in range(p.r + 1)]


# --------------------------------------------------------------------------
# parity-check matrix
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ParityCheckMatrix:
    """H with rows indexed by the parity coordinates, both axes in rank order."""

    params: CodeParams
    rows: np.ndarray
    row_index: Tuple[Coord, ...]

    def __post_init__(self):
        self.rows.setflags(write=False)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows.shape

    def row_for(self, a: Sequence[int]) -> np.ndarray:
        return self.rows[self.row_index.index(tuple(a))]

    def syndrome(self, word) -> np.ndarray:
        return (self.rows.astype(np.int64) @ np.asarray(word, dtype=np.int64)) % 2

    def __eq__(self, other):
        if not isinstance(other, ParityCheckMatrix):
            return NotImplemented
        return (
            self.params == other.params
            and self.row_index == other.row_index
            and np.array_equal(self.rows, other.rows)
        )

    __hash__ = None


@lru_cache(maxsize=32)
def build_parity_check(p: CodeParams) -> ParityCheckMatrix:
    """Row for parity coordinate a has ones exactly on L(a) and at a itself."""
    index = tuple(a for a in all_coords(p) if p.r in a)
    rows = np.zeros((len(index), p.n), dtype=np.uint8)
    for row, a in zip(rows, index):
        row[coord_rank(p, a)] = 1
        for b in l_set(p, a):
            row[coord_rank(p, b)] = 1
    return ParityCheckMatrix(p, rows, index)


# --------------------------------------------------------------------------
# encoding
# --------------------------------------------------------------------------


@lru_cache(maxsize=32)
def information_positions(p: CodeParams) -> np.ndarray:
    """Word positions of Z_r^m, in rank order."""
    grid = np.indices(p.shape).reshape(p.m, -1)
    pos = np.flatnonzero((grid < p.r).all(axis=0))
    pos.setflags(write=False)
    return pos


def _as_bits(bits, length: int, what: str) -> np.ndarray:
    if isinstance(bits, str):
        bits = [int(ch) for ch in bits]
    arr = np.asarray(bits)
    if arr.ndim != 1 or arr.shape[0] != length:
        raise DimensionError(f"{what} must have length {length}, got shape {arr.shape}")
    if not np.isin(arr, (0, 1)).all():
        raise DimensionError(f"{what} must be binary")
    return arr.astype(np.uint8)


def encode(p: CodeParams, info) -> np.ndarray:
    """Systematic encoder: ``info`` (length k) is placed at Z_r^m in rank order.

    Each parity symbol a receives the XOR of the information symbols in L(a).
    The sum is accumulated one axis at a time: after sweeping axis j, the
    slice with digit r on axis j holds the parity of the slices below it.
    """
    info = _as_bits(info, p.k, "info")
    cube = np.zeros(p.shape, dtype=np.uint8)
    cube[(slice(0, p.r),) * p.m] = info.reshape((p.r,) * p.m)
    for axis in range(p.m):
        lower = [slice(None)] * p.m
        top = [slice(None)] * p.m
        lower[axis] = slice(0, p.r)
        top[axis] = p.r
        cube[tuple(top)] = cube[tuple(lower)].sum(axis=axis) % 2
    return cube.reshape(-1)


def extract_info(p: CodeParams, word) -> np.ndarray:
    word = _as_bits(word, p.n, "word")
    return word[information_positions(p)]


def is_codeword(p: CodeParams, word) -> bool:
    """True iff H . word = 0 over GF(2)."""
    word = _as_bits(word, p.n, "word")
    return not build_parity_check(p).syndrome(word).any()


__all__ = [
    "Coord",
    "CodeParams",
    "MAX_SYMBOLS",
    "ParityCheckMatrix",
    "check_coord",
    "coord_rank",
    "coord_unrank",
    "all_coords",
    "is_parity_coord",
    "format_coord",
    "parse_coord",
    "t_set",
    "l_set",
    "line_coords",
    "build_parity_check",
    "information_positions",
    "encode",
    "extract_info",
    "is_codeword",
]
