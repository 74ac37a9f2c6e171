"""Line repair sets, sequential repair planning/execution, and parallel repair.

Every symbol a lies on m lines, one per axis.  The other r symbols of a line
XOR to x_a, so each line minus a is a repair set of size r, and the m sets of
a symbol are pairwise disjoint.

The sequential planner is greedy: while erasures remain, repair the erased
symbol of smallest rank that has a line free of other erasures (smallest axis
first), then drop it from the erased set.  A free line exists for every
erasure set of size at most 2^m - 1, and removing a repaired symbol keeps the
set within that bound, so the loop never stalls on such sets.  (Induct on m,
splitting E by its last digit: either some slice holds between 1 and
2^(m-1) - 1 erasures and the smaller cube supplies the free line, or all
erasures share one slice and the line along the last axis is free.)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .code import (
    CodeParams,
    Coord,
    all_coords,
    check_coord,
    coord_rank,
    coord_unrank,
    is_codeword,
    line_coords,
)
from .errors import DimensionError, InconsistentWordError, PlanOrderError

#: Marker stored at erased positions of a masked word.
ERASED = -1


@lru_cache(maxsize=32)
def neighbour_table(p: CodeParams) -> np.ndarray:
    """``table[j, i]`` holds the ranks of line i (0-based) through symbol j, minus j."""
    table = np.empty((p.n, p.m, p.r), dtype=np.int32)
    for j, a in enumerate(all_coords(p)):
        for i in range(p.m):
            table[j, i] = [coord_rank(p, b) for b in line_coords(p, a, i + 1) if b != a]
    table.setflags(write=False)
    return table


@lru_cache(maxsize=32)
def _line_masks(p: CodeParams) -> Tuple[Tuple[int, ...], ...]:
    return tuple(
        tuple(sum(1 << int(b) for b in row) for row in per_axis)
        for per_axis in neighbour_table(p)
    )


def repair_sets(p: CodeParams, a: Sequence[int]) -> List[Tuple[Coord, ...]]:
    """The m line repair sets of ``a``, one per axis, each in rank order."""
    a = check_coord(p, a)
    return [tuple(b for b in line_coords(p, a, i) if b != a) for i in range(1, p.m + 1)]


def erasure_pattern(p: CodeParams, coords: Iterable[Sequence[int]]) -> FrozenSet[Coord]:
    """Validate coordinates and return them as a set."""
    return frozenset(check_coord(p, a) for a in coords)


@dataclass(frozen=True)
class RepairStep:
    target: Coord
    axis: int
    sources: Tuple[Coord, ...]


@dataclass(frozen=True)
class RepairPlan:
    steps: Tuple[RepairStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[RepairStep]:
        return iter(self.steps)

    @property
    def targets(self) -> List[Coord]:
        return [s.target for s in self.steps]


@dataclass(frozen=True)
class Stuck:
    """Planner result when no remaining erasure has a free line."""

    remaining: FrozenSet[Coord]
    partial: RepairPlan


def _step(p: CodeParams, target: Coord, axis: int) -> RepairStep:
    sources = tuple(b for b in line_coords(p, target, axis) if b != target)
    return RepairStep(target, axis, sources)


@lru_cache(maxsize=32)
def _step_table(p: CodeParams) -> Tuple[Tuple[RepairStep, ...], ...]:
    return tuple(
        tuple(_step(p, a, i) for i in range(1, p.m + 1)) for a in all_coords(p)
    )


def plan_sequential(p: CodeParams, erased: Iterable[Sequence[int]]) -> Union[RepairPlan, Stuck]:
    """Greedy sequential repair plan for the erasure set ``erased``.

    Returns a full :class:`RepairPlan`, or :class:`Stuck` carrying the
    unrepaired remainder and the steps found before stalling.  Always
    succeeds when ``len(erased) <= p.t``.
    """
    masks = _line_masks(p)
    table = _step_table(p)
    remaining = sorted({coord_rank(p, a) for a in erased})
    live_mask = 0
    for j in remaining:
        live_mask |= 1 << j
    steps: List[RepairStep] = []
    while remaining:
        found = None
        for pos, j in enumerate(remaining):
            for axis, mask in enumerate(masks[j]):
                if not mask & live_mask:
                    found = pos, j, axis
                    break
            if found:
                break
        if found is None:
            return Stuck(
                frozenset(coord_unrank(p, j) for j in remaining), RepairPlan(tuple(steps))
            )
        pos, j, axis = found
        steps.append(table[j][axis])
        live_mask &= ~(1 << j)
        del remaining[pos]
    return RepairPlan(tuple(steps))


def validate_plan(p: CodeParams, erased: Iterable[Sequence[int]], plan: RepairPlan) -> None:
    """Raise unless ``plan`` is a legal sequential repair order for ``erased``.

    Each step must use the line through its target on its axis, must target a
    still-erased symbol, and may only read live or already-repaired symbols.
    The plan need not cover all of ``erased``.
    """
    pending = set(erasure_pattern(p, erased))
    for n_step, step in enumerate(plan.steps, 1):
        target = check_coord(p, step.target)
        expected = _step(p, target, step.axis)
        if set(step.sources) != set(expected.sources) or len(step.sources) != p.r:
            raise PlanOrderError(f"step {n_step}: sources are not the axis-{step.axis} line of {target}")
        if target not in pending:
            raise PlanOrderError(f"step {n_step}: {target} is not an unrepaired erasure")
        pending.discard(target)
        blocked = pending.intersection(step.sources)
        if blocked:
            raise PlanOrderError(
                f"step {n_step}: repairing {target} reads still-erased {sorted(blocked)}"
            )


def mask_word(p: CodeParams, word, erased: Iterable[Sequence[int]]) -> np.ndarray:
    """Copy of ``word`` with :data:`ERASED` at every erased position."""
    out = np.array(word, dtype=np.int8)
    if out.shape != (p.n,):
        raise DimensionError(f"word must have length {p.n}, got shape {out.shape}")
    for a in erasure_pattern(p, erased):
        out[coord_rank(p, a)] = ERASED
    return out


def execute_plan(
    p: CodeParams, word, erased: Iterable[Sequence[int]], plan: RepairPlan
) -> np.ndarray:
    """Run ``plan`` on a masked word; each target becomes the XOR of its sources.

    Values at erased positions are ignored.  Positions the plan does not
    reach stay :data:`ERASED`.  When every erasure is repaired the result is
    checked against the parity-check matrix.
    """
    erased = erasure_pattern(p, erased)
    out = np.array(word, dtype=np.int8)
    if out.shape != (p.n,):
        raise DimensionError(f"word must have length {p.n}, got shape {out.shape}")
    pending = {coord_rank(p, a) for a in erased}
    out[list(pending)] = ERASED
    if not np.isin(out, (0, 1, ERASED)).all() or (out == ERASED).sum() != len(pending):
        raise DimensionError("live positions of the word must hold 0 or 1")
    for n_step, step in enumerate(plan.steps, 1):
        target = coord_rank(p, step.target)
        if target not in pending:
            raise PlanOrderError(f"step {n_step}: {step.target} is not an unrepaired erasure")
        value = 0
        for b in step.sources:
            j = coord_rank(p, b)
            if j in pending:
                raise PlanOrderError(f"step {n_step}: source {b} is still erased")
            value ^= int(out[j])
        out[target] = value
        pending.discard(target)
    if not pending and not is_codeword(p, out):
        raise InconsistentWordError("repaired word is not a codeword")
    return out


class ParallelCheck(NamedTuple):
    repairable: bool
    witness: Dict[Coord, Optional[int]]


def parallel_repairable(p: CodeParams, erased: Iterable[Sequence[int]]) -> ParallelCheck:
    """Can every erasure be repaired at once from live symbols only?

    ``witness`` maps each erased symbol to its smallest free axis, or None.
    """
    erased = erasure_pattern(p, erased)
    masks = _line_masks(p)
    e_mask = 0
    for a in erased:
        e_mask |= 1 << coord_rank(p, a)
    witness: Dict[Coord, Optional[int]] = {}
    for a in sorted(erased):
        free = [i for i, mask in enumerate(masks[coord_rank(p, a)], 1) if not mask & e_mask]
        witness[a] = free[0] if free else None
    return ParallelCheck(all(v is not None for v in witness.values()), witness)


__all__ = [
    "ERASED",
    "RepairStep",
    "RepairPlan",
    "Stuck",
    "ParallelCheck",
    "neighbour_table",
    "repair_sets",
    "erasure_pattern",
    "plan_sequential",
    "validate_plan",
    "mask_word",
    "execute_plan",
    "parallel_repairable",
]
