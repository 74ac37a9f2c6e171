"""Verification oracles, rate/length bounds, and the comparison tables.

Nothing here is used by the encoder or the repair engine; these routines
check them from the outside.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import gf2
from .code import CodeParams, Coord, all_coords, build_parity_check, check_coord, coord_rank, encode, format_coord, parse_coord
from .errors import BudgetExceededError, FormatError
from .repair import neighbour_table

#: Default cap on the number of patterns an exhaustive run may visit.
DEFAULT_BUDGET = 10 ** 8
DEFAULT_SAMPLES = 10 ** 5
_CHUNK = 1 << 17


# --------------------------------------------------------------------------
# vectorised line checks over batches of erasure patterns
# --------------------------------------------------------------------------


def _free_lines(nbr: np.ndarray, patterns: np.ndarray) -> np.ndarray:
    """Boolean (C, s, m): is line i through the j-th erased symbol free of erasures?"""
    count, n = patterns.shape[0], nbr.shape[0]
    erased = np.zeros((count, n), dtype=bool)
    rows = np.arange(count)[:, None]
    erased[rows, patterns] = True
    hit = erased[rows[:, :, None, None], nbr[patterns]]
    return ~hit.any(axis=-1)


def _sequential_failures(nbr: np.ndarray, patterns: np.ndarray) -> np.ndarray:
    """Rows of ``patterns`` where no erased symbol has a free line."""
    if patterns.size == 0:
        return patterns
    ok = _free_lines(nbr, patterns).any(axis=(1, 2))
    return patterns[~ok]


def _parallel_failures(nbr: np.ndarray, patterns: np.ndarray) -> np.ndarray:
    """Rows of ``patterns`` where some erased symbol has every line blocked."""
    if patterns.size == 0:
        return patterns
    ok = _free_lines(nbr, patterns).any(axis=2).all(axis=1)
    return patterns[~ok]


def _combos_with_first(n: int, size: int, first: int) -> np.ndarray:
    """All ``size``-subsets of range(n) whose smallest element is ``first``, lex order."""
    rest = itertools.combinations(range(first + 1, n), size - 1)
    count = comb(n - first - 1, size - 1)
    flat = np.fromiter(itertools.chain.from_iterable(rest), dtype=np.int32, count=count * (size - 1))
    out = np.empty((count, size), dtype=np.int32)
    out[:, 0] = first
    out[:, 1:] = flat.reshape(count, size - 1)
    return out


def _exhaustive_task(args) -> np.ndarray:
    kind, nbr, n, size, first = args
    check = _sequential_failures if kind == "sequential" else _parallel_failures
    patterns = _combos_with_first(n, size, first)
    return np.concatenate(
        [check(nbr, patterns[i:i + _CHUNK]) for i in range(0, len(patterns), _CHUNK)]
        or [np.empty((0, size), dtype=np.int32)]
    )


def _run_exhaustive(kind: str, p: CodeParams, size: int, jobs: int) -> List[Tuple[int, ...]]:
    nbr = np.asarray(neighbour_table(p))
    tasks = [(kind, nbr, p.n, size, first) for first in range(p.n - size + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_exhaustive_task, tasks))
    else:
        results = [_exhaustive_task(t) for t in tasks]
    return [tuple(int(x) for x in row) for res in results for row in res]


def count_patterns(n: int, max_size: int) -> int:
    """Number of nonempty subsets of an n-set with at most ``max_size`` elements."""
    return sum(comb(n, s) for s in range(1, max_size + 1))


# --------------------------------------------------------------------------
# ELRC verification
# --------------------------------------------------------------------------


@dataclass
class VerificationReport:
    """Outcome of checking every (or a sample of) erasure pattern up to a size.

    ``failures`` holds patterns with no erased symbol on an erasure-free line,
    as sorted coordinate tuples, ordered by size then lexicographically by rank.
    """

    params: CodeParams
    mode: str
    max_size_checked: int
    patterns_checked: int
    failures: List[Tuple[Coord, ...]] = field(default_factory=list)
    seed: Optional[int] = None
    samples: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_text(self) -> str:
        p = self.params
        seed = "-" if self.seed is None else str(self.seed)
        samples = "-" if self.samples is None else str(self.samples)
        lines = [
            f"{p.r} {p.m} {self.mode} {self.max_size_checked} {seed} {samples}",
            f"checked {self.patterns_checked}",
        ]
        for pattern in self.failures:
            lines.append("FAIL " + " ".join(format_coord(p, a) for a in pattern))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "VerificationReport":
        lines = [line.split() for line in text.splitlines() if line.strip()]
        try:
            r, m, mode, max_size, seed, samples = lines[0]
            p = CodeParams(int(r), int(m))
            if lines[1][0] != "checked" or len(lines[1]) != 2:
                raise ValueError("second line must be 'checked <count>'")
            checked = int(lines[1][1])
            failures = []
            for toks in lines[2:]:
                if toks[0] != "FAIL":
                    raise ValueError(f"unexpected line {' '.join(toks)!r}")
                failures.append(tuple(parse_coord(p, t) for t in toks[1:]))
            return cls(
                p,
                mode,
                int(max_size),
                checked,
                failures,
                None if seed == "-" else int(seed),
                None if samples == "-" else int(samples),
            )
        except (ValueError, IndexError) as exc:
            raise FormatError(f"bad verification report: {exc}") from exc


def _sample_patterns(rng: np.random.Generator, n: int, size: int, count: int) -> np.ndarray:
    """``count`` uniform ``size``-subsets of range(n), each row sorted."""
    keys = rng.random((count, n))
    return np.sort(np.argpartition(keys, size - 1, axis=1)[:, :size], axis=1).astype(np.int32)


def verify_elrc(
    p: CodeParams,
    max_size: Optional[int] = None,
    mode: str = "exhaustive",
    *,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> VerificationReport:
    """Check that every erasure pattern E with 1 <= |E| <= max_size has an
    erased symbol whose line on some axis avoids the rest of E.

    That condition for all sizes up to t is what makes the code an ELRC with
    tolerance t, so a clean report for ``max_size <= p.t`` is expected.

    ``mode="exhaustive"`` visits every pattern once and refuses to start when
    the pattern count exceeds ``budget``.  ``mode="random"`` draws ``samples``
    uniform patterns per size from ``numpy.random.default_rng(seed)``;
    failures found there are de-duplicated.
    """
    if max_size is None:
        max_size = p.t
    if not 1 <= max_size <= p.n:
        raise ValueError(f"max_size must lie in [1, {p.n}]")
    coords = all_coords(p)

    def to_coords(rows) -> List[Tuple[Coord, ...]]:
        return [tuple(coords[j] for j in row) for row in rows]

    if mode == "exhaustive":
        total = count_patterns(p.n, max_size)
        if total > budget:
            raise BudgetExceededError(
                f"exhaustive check needs {total} patterns, budget is {budget}; "
                "use mode='random' or raise the budget"
            )
        failures = []
        for size in range(1, max_size + 1):
            failures += to_coords(_run_exhaustive("sequential", p, size, jobs))
        return VerificationReport(p, mode, max_size, total, failures)

    if mode == "random":
        rng = np.random.default_rng(seed)
        nbr = np.asarray(neighbour_table(p))
        failures = []
        for size in range(1, max_size + 1):
            found = set()
            for start in range(0, samples, _CHUNK):
                batch = _sample_patterns(rng, p.n, size, min(_CHUNK, samples - start))
                found.update(tuple(int(x) for x in row) for row in _sequential_failures(nbr, batch))
            failures += to_coords(sorted(found))
        return VerificationReport(
            p, mode, max_size, samples * max_size, failures, seed=seed, samples=samples
        )

    raise ValueError(f"unknown mode {mode!r}; expected 'exhaustive' or 'random'")


# --------------------------------------------------------------------------
# parallel tolerance
# --------------------------------------------------------------------------


def parallel_tolerance(
    p: CodeParams, budget: int = DEFAULT_BUDGET, jobs: int = 1
) -> Tuple[int, Tuple[Coord, ...]]:
    """Largest s such that every s-erasure pattern is repairable in parallel.

    Returns ``(s, counterexample)`` where the counterexample is the first
    pattern of size s + 1 (lexicographic by rank) in which some erased symbol
    has all of its lines blocked.
    """
    coords = all_coords(p)
    visited = 0
    for size in range(1, p.n + 1):
        visited += comb(p.n, size)
        if visited > budget:
            raise BudgetExceededError(
                f"parallel tolerance search exceeds budget {budget} at size {size}"
            )
        failures = _run_exhaustive("parallel", p, size, jobs)
        if failures:
            return size - 1, tuple(coords[j] for j in failures[0])
    raise AssertionError("the full erasure pattern is never parallel repairable")


# --------------------------------------------------------------------------
# general repair sets
# --------------------------------------------------------------------------


def is_repair_set(p: CodeParams, target: Sequence[int], support: Iterable[Sequence[int]]) -> bool:
    """Does some dual codeword have a 1 at ``target`` and live inside support + target?

    Equivalently, the column of H at ``target`` is not in the span of the
    columns outside support + target.
    """
    target = check_coord(p, target)
    keep = {coord_rank(p, target)} | {coord_rank(p, b) for b in support}
    cols = _columns(p)
    outside = [cols[j] for j in range(p.n) if j not in keep]
    return not gf2.in_span(cols[coord_rank(p, target)], outside)


@lru_cache(maxsize=32)
def _columns(p: CodeParams) -> Tuple[int, ...]:
    return tuple(gf2.pack_columns(build_parity_check(p).rows))


def general_repair_set_oracle(
    p: CodeParams, target: Sequence[int], live: Iterable[Sequence[int]]
) -> Optional[Tuple[Coord, ...]]:
    """Smallest repair set of ``target`` inside ``live`` with at most r symbols.

    Candidates are tried by size, then lexicographically by rank; the first
    one passing :func:`is_repair_set` is returned, or None.
    """
    target = check_coord(p, target)
    pool = sorted({check_coord(p, b) for b in live}, key=lambda b: coord_rank(p, b))
    if target in pool:
        raise ValueError("target must not be live")
    for size in range(1, p.r + 1):
        for cand in itertools.combinations(pool, size):
            if is_repair_set(p, target, cand):
                return cand
    return None


def dual_codewords(p: CodeParams) -> List[int]:
    """Every vector of the row space of H, as int bitsets over word positions."""
    if p.n - p.k > 20:
        raise BudgetExceededError(f"dual code has 2^{p.n - p.k} words; refusing to enumerate")
    return gf2.span(gf2.pack_rows(build_parity_check(p).rows))


def brute_force_repair_set(
    p: CodeParams, target: Sequence[int], live: Iterable[Sequence[int]], duals: Optional[List[int]] = None
) -> Optional[Tuple[Coord, ...]]:
    """Same contract as :func:`general_repair_set_oracle`, by scanning the whole dual code."""
    target = check_coord(p, target)
    t_bit = 1 << coord_rank(p, target)
    if duals is None:
        duals = dual_codewords(p)
    supports = [d & ~t_bit for d in duals if d & t_bit]
    pool = sorted({check_coord(p, b) for b in live}, key=lambda b: coord_rank(p, b))
    for size in range(1, p.r + 1):
        for cand in itertools.combinations(pool, size):
            mask = gf2.support_mask(coord_rank(p, b) for b in cand)
            if any(s & ~mask == 0 for s in supports):
                return cand
    return None


# --------------------------------------------------------------------------
# minimum distance
# --------------------------------------------------------------------------


def generator_matrix(p: CodeParams) -> np.ndarray:
    """k x n systematic generator: row j encodes the j-th unit information word."""
    return np.stack([encode(p, row) for row in np.eye(p.k, dtype=np.uint8)])


def min_distance_bruteforce(p: CodeParams, max_k: int = 20) -> int:
    """Minimum weight over all 2^k - 1 nonzero codewords."""
    if p.k > max_k:
        raise BudgetExceededError(f"k = {p.k} exceeds the enumeration limit {max_k}")
    rows = gf2.pack_rows(generator_matrix(p))
    return min(bin(w).count("1") for w in gf2.span(rows)[1:])


def codewords(p: CodeParams, max_k: int = 20) -> np.ndarray:
    """All 2^k codewords as a (2^k, n) uint8 array."""
    if p.k > max_k:
        raise BudgetExceededError(f"k = {p.k} exceeds the enumeration limit {max_k}")
    info = (np.arange(2 ** p.k)[:, None] >> np.arange(p.k - 1, -1, -1)) & 1
    return (info.astype(np.int64) @ generator_matrix(p).astype(np.int64) % 2).astype(np.uint8)


# --------------------------------------------------------------------------
# bounds and tables
# --------------------------------------------------------------------------


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _exact_log(k: int, r: int) -> Optional[int]:
    m, v = 0, 1
    while v < k:
        v *= r
        m += 1
    return m if v == k else None


@dataclass(frozen=True)
class BoundsRow:
    """Length and rate limits for given locality r, tolerance t and dimension k.

    ``n_construction`` is (r+1)^m when k = r^m for some m >= 1, else None.
    """

    r: int
    t: int
    k: int
    n_construction: Optional[int]
    n_min_parallel: int
    availability_rate_bound: Fraction
    n_min_t2: int
    n_min_t3: int


def bounds_row(r: int, t: int, k: int) -> BoundsRow:
    """Evaluate the length/rate bounds with exact rational arithmetic.

    * locality with tolerance t (parallel): k/n <= r/(r+t)
    * availability t: k/n <= 1 / prod_{j=1..t} (1 + 1/(j r))
    * sequential, t = 2: k/n <= r/(r+2)
    * sequential, t = 3: n >= k + ceil((2k + ceil(k/r)) / r)
    """
    for name, v in (("r", r), ("t", t), ("k", k)):
        if int(v) != v or v < 1:
            raise ValueError(f"{name} must be a positive integer")
    prod = Fraction(1)
    for j in range(1, t + 1):
        prod *= 1 + Fraction(1, j * r)
    m = _exact_log(k, r)
    return BoundsRow(
        r=r,
        t=t,
        k=k,
        n_construction=(r + 1) ** m if m else None,
        n_min_parallel=_ceil_frac(Fraction(k * (r + t), r)),
        availability_rate_bound=1 / prod,
        n_min_t2=_ceil_frac(Fraction(k * (r + 2), r)),
        n_min_t3=k + _ceil_frac(Fraction(2 * k + _ceil_frac(Fraction(k, r)), r)),
    )


@dataclass(frozen=True)
class Table1Row:
    m: int
    t: int
    k: int
    n_elrc: int
    n_min_ra: int
    n_min_clrc: int


@dataclass(frozen=True)
class Table2Row:
    m: int
    k: int
    n: int
    sequential: int
    parallel: int
    sequential_check: str
    parallel_check: str


def table1(r: int = 2, ms: Sequence[int] = (2, 3, 4, 5)) -> List[Table1Row]:
    """Code length of this construction against the parallel-repair length bound.

    Both comparison columns use k/n <= r/(r+t).
    """
    rows = []
    for m in ms:
        p = CodeParams(r, m)
        b = bounds_row(r, p.t, p.k)
        rows.append(Table1Row(m, p.t, p.k, p.n, b.n_min_parallel, b.n_min_parallel))
    return rows


def table2(
    r: int = 2,
    ms: Sequence[int] = (2, 3, 4, 5),
    certify: bool = False,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    jobs: int = 1,
) -> List[Table2Row]:
    """Sequential (2^m - 1) against parallel (m) erasure tolerance.

    With ``certify=True`` each entry is backed by a computation where that is
    affordable: exhaustive verification for m <= 3, seeded random sampling for
    m = 4, and the parallel search for m <= 3.  Other entries are formula-only.
    The check columns record which route produced each value; a failed check
    raises AssertionError.
    """
    rows = []
    for m in ms:
        p = CodeParams(r, m)
        seq_check = par_check = "formula"
        if certify:
            if count_patterns(p.n, p.t) <= 2 * 10 ** 6:
                report = verify_elrc(p, p.t, "exhaustive", jobs=jobs)
                seq_check = "exhaustive"
            elif m <= 4:
                report = verify_elrc(p, p.t, "random", samples=samples, seed=seed, jobs=jobs)
                seq_check = "random"
            else:
                report = None
            if report is not None and not report.ok:
                raise AssertionError(f"ELRC verification failed for r={r}, m={m}")
            if count_patterns(p.n, m + 1) <= 10 ** 6:
                tol, _ = parallel_tolerance(p, jobs=jobs)
                if tol != m:
                    raise AssertionError(f"parallel tolerance {tol} != {m} for r={r}")
                par_check = "exhaustive"
        rows.append(Table2Row(m, p.k, p.n, p.t, m, seq_check, par_check))
    return rows


_T1_HEAD = ("m", "t", "k", "ELRC length", "(r,t+1)_a length", "(r,t)-CLRC length")
_T2_HEAD = ("m", "k", "n", "sequential tolerance", "parallel tolerance")


def _aligned(header: Sequence[str], body: List[Sequence[str]]) -> str:
    widths = [max(len(row[j]) for row in [header, *body]) for j in range(len(header))]
    return "".join(
        "  ".join(cell.rjust(w) for cell, w in zip(row, widths)) + "\n" for row in [header, *body]
    )


def format_table1(rows: Sequence[Table1Row], fmt: str = "text") -> str:
    if fmt == "csv":
        lines = ["m,t,k,n_elrc,n_min_ra,n_min_clrc"]
        lines += [f"{x.m},{x.t},{x.k},{x.n_elrc},{x.n_min_ra},{x.n_min_clrc}" for x in rows]
        return "\n".join(lines) + "\n"
    body = [
        (str(x.m), str(x.t), str(x.k), str(x.n_elrc), f">= {x.n_min_ra}", f">= {x.n_min_clrc}")
        for x in rows
    ]
    return _aligned(_T1_HEAD, body)


def format_table2(rows: Sequence[Table2Row], fmt: str = "text") -> str:
    if fmt == "csv":
        lines = ["m,k,n,sequential,parallel"]
        lines += [f"{x.m},{x.k},{x.n},{x.sequential},{x.parallel}" for x in rows]
        return "\n".join(lines) + "\n"
    body = [(str(x.m), str(x.k), str(x.n), str(x.sequential), str(x.parallel)) for x in rows]
    return _aligned(_T2_HEAD, body)


def format_bounds(b: BoundsRow, fmt: str = "text") -> str:
    fields = [
        ("r", b.r),
        ("t", b.t),
        ("k", b.k),
        ("n_construction", "-" if b.n_construction is None else b.n_construction),
        ("n_min_parallel", b.n_min_parallel),
        ("availability_rate_bound", b.availability_rate_bound),
        ("n_min_t2", b.n_min_t2),
        ("n_min_t3", b.n_min_t3),
    ]
    if fmt == "csv":
        return ",".join(k for k, _ in fields) + "\n" + ",".join(str(v) for _, v in fields) + "\n"
    width = max(len(k) for k, _ in fields)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in fields)


__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_SAMPLES",
    "VerificationReport",
    "BoundsRow",
    "Table1Row",
    "Table2Row",
    "count_patterns",
    "verify_elrc",
    "parallel_tolerance",
    "is_repair_set",
    "general_repair_set_oracle",
    "dual_codewords",
    "brute_force_repair_set",
    "generator_matrix",
    "min_distance_bruteforce",
    "codewords",
    "bounds_row",
    "table1",
    "table2",
    "format_table1",
    "format_table2",
    "format_bounds",
]
