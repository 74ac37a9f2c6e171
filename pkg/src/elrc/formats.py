"""Line-oriented text formats for matrices, words, erasure patterns and plans.

Matrix file::

    r m n k
    <n-k lines of n characters from {0,1}>

Word file: one line of n characters, '0', '1', or '?' for an erased symbol.
Pattern file: whitespace-separated coordinate tokens.
Plan file: one step per line, ``repair <coord> axis <i> from <coord> ...``.
"""

from __future__ import annotations

from typing import FrozenSet, List

import numpy as np

from .code import CodeParams, Coord, ParityCheckMatrix, all_coords, coord_rank, format_coord, parse_coord
from .errors import FormatError, InvalidParametersError
from .repair import ERASED, RepairPlan, RepairStep

_WORD_CHARS = {"0": 0, "1": 1, "?": ERASED}


def format_matrix(h: ParityCheckMatrix) -> str:
    p = h.params
    lines = [f"{p.r} {p.m} {p.n} {p.k}"]
    lines += ["".join("1" if b else "0" for b in row) for row in h.rows.tolist()]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> ParityCheckMatrix:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    header = lines[0].split() if lines else []
    if len(header) != 4:
        raise FormatError("matrix header must be 'r m n k'")
    try:
        r, m, n, k = (int(x) for x in header)
        p = CodeParams(r, m)
    except (ValueError, InvalidParametersError) as exc:
        raise FormatError(f"bad matrix header: {exc}") from exc
    if (n, k) != (p.n, p.k):
        raise FormatError(f"header n={n} k={k} inconsistent with r={r} m={m}")
    body = lines[1:]
    if len(body) != n - k or any(len(row) != n or set(row) - {"0", "1"} for row in body):
        raise FormatError(f"matrix body must be {n - k} lines of {n} binary characters")
    rows = np.array([[int(ch) for ch in row] for row in body], dtype=np.uint8)
    index = tuple(a for a in all_coords(p) if r in a)
    return ParityCheckMatrix(p, rows, index)


def format_word(word) -> str:
    chars = {0: "0", 1: "1", ERASED: "?"}
    return "".join(chars[int(b)] for b in word)


def parse_word(p: CodeParams, text: str) -> np.ndarray:
    """Word text to an int8 array; '?' becomes :data:`ERASED`."""
    text = text.strip()
    if len(text) != p.n:
        raise FormatError(f"word must have {p.n} symbols, got {len(text)}")
    try:
        return np.array([_WORD_CHARS[ch] for ch in text], dtype=np.int8)
    except KeyError as exc:
        raise FormatError(f"bad word symbol {exc.args[0]!r}") from None


def parse_bits(text: str, length: int) -> np.ndarray:
    text = "".join(text.split())
    if len(text) != length or set(text) - {"0", "1"}:
        raise FormatError(f"expected {length} binary characters")
    return np.array([int(ch) for ch in text], dtype=np.uint8)


def erased_positions(p: CodeParams, word: np.ndarray) -> FrozenSet[Coord]:
    coords = all_coords(p)
    return frozenset(coords[j] for j in np.flatnonzero(np.asarray(word) == ERASED))


def format_pattern(p: CodeParams, erased) -> str:
    ordered = sorted(erased, key=lambda a: coord_rank(p, a))
    return " ".join(format_coord(p, a) for a in ordered) + "\n"


def parse_pattern(p: CodeParams, text: str) -> FrozenSet[Coord]:
    return frozenset(parse_coord(p, tok) for tok in text.split())


def format_plan(p: CodeParams, plan: RepairPlan) -> str:
    lines = []
    for s in plan.steps:
        sources = " ".join(format_coord(p, b) for b in s.sources)
        lines.append(f"repair {format_coord(p, s.target)} axis {s.axis} from {sources}")
    return "".join(line + "\n" for line in lines)


def parse_plan(p: CodeParams, text: str) -> RepairPlan:
    steps: List[RepairStep] = []
    for n_line, line in enumerate(text.splitlines(), 1):
        toks = line.split()
        if not toks:
            continue
        if len(toks) < 5 or toks[0] != "repair" or toks[2] != "axis" or toks[4] != "from":
            raise FormatError(f"line {n_line}: expected 'repair <coord> axis <i> from <coord> ...'")
        try:
            axis = int(toks[3])
        except ValueError:
            raise FormatError(f"line {n_line}: bad axis {toks[3]!r}") from None
        steps.append(
            RepairStep(
                parse_coord(p, toks[1]), axis, tuple(parse_coord(p, t) for t in toks[5:])
            )
        )
    return RepairPlan(tuple(steps))


__all__ = [
    "format_matrix",
    "parse_matrix",
    "format_word",
    "parse_word",
    "parse_bits",
    "erased_positions",
    "format_pattern",
    "parse_pattern",
    "format_plan",
    "parse_plan",
]
