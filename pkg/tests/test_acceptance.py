"""Exit criteria for the package, one test per criterion.

Each test prints a single PASS/FAIL line; run with ``pytest -s`` to see them.
"""

import time
from pathlib import Path

import numpy as np

from elrc import (
    CodeParams,
    RepairPlan,
    RepairStep,
    Stuck,
    all_coords,
    build_parity_check,
    coord_rank,
    execute_plan,
    gf2,
    line_coords,
    mask_word,
    parse_coord,
    plan_sequential,
    repair_sets,
    validate_plan,
)
from elrc.analysis import (
    brute_force_repair_set,
    codewords,
    dual_codewords,
    format_table1,
    general_repair_set_oracle,
    is_repair_set,
    min_distance_bruteforce,
    parallel_tolerance,
    table1,
    verify_elrc,
)
from elrc.cli import main
from elrc.formats import format_pattern

GOLDEN = Path(__file__).parent / "golden"


def verdict(number, text, ok):
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")
    assert ok, f"criterion {number} failed: {text}"


def test_01_parameter_identities(capsys):
    expected = {2: "9 4", 3: "27 8", 4: "81 16", 5: "243 32"}
    got = {}
    for m in expected:
        assert main(["params", "-r", "2", "-m", str(m)]) == 0
        got[m] = " ".join(capsys.readouterr().out.split()[:2])
    with capsys.disabled():
        verdict(1, f"params (n k) for r=2, m=2..5: {got}", got == expected)


def test_02_sequential_tolerance_exhaustive(capsys):
    results = []
    for r, m, size, limit, count in [(2, 2, 3, 1.0, 129), (2, 3, 7, 60.0, 1285623), (3, 2, 3, None, 696)]:
        start = time.perf_counter()
        report = verify_elrc(CodeParams(r, m), size, "exhaustive")
        elapsed = time.perf_counter() - start
        ok = report.ok and report.patterns_checked == count and (limit is None or elapsed < limit)
        results.append(ok)
        with capsys.disabled():
            print(f"\n    r={r} m={m} max={size}: {report.patterns_checked} patterns, "
                  f"{len(report.failures)} failures, {elapsed:.2f}s")
    with capsys.disabled():
        verdict(2, "exhaustive verification failure-free within time limits", all(results))


def test_03_sequential_tolerance_random(capsys):
    start = time.perf_counter()
    report = verify_elrc(CodeParams(2, 4), 15, "random", samples=10 ** 5, seed=2024)
    elapsed = time.perf_counter() - start
    ok = report.ok and report.patterns_checked == 15 * 10 ** 5 and elapsed < 300
    with capsys.disabled():
        verdict(3, f"r=2 m=4, 1e5 samples x sizes 1..15, {len(report.failures)} failures, {elapsed:.1f}s", ok)


def test_04_tightness(capsys):
    ok = True
    checked = 0
    for m in (2, 3):
        p = CodeParams(2, m)
        words = codewords(p)
        weights = words.sum(axis=1)
        minimal = words[weights == 2 ** m]
        cs = all_coords(p)
        for c in minimal:
            support = [cs[j] for j in np.flatnonzero(c)]
            is_subcube = all(len({a[i] for a in support}) == 2 for i in range(m))
            stuck = isinstance(plan_sequential(p, support), Stuck)
            off = np.flatnonzero(c == 0)
            # the zero word and c are distinct codewords that agree off the support
            ambiguous = not c[off].any() and c.any()
            ok &= is_subcube and stuck and ambiguous
            checked += 1
        ok &= len(minimal) == 3 ** m
    with capsys.disabled():
        verdict(4, f"{checked} minimum-weight supports all stuck and ambiguous", bool(ok))


def test_05_parallel_tolerance(capsys):
    ok = True
    notes = []
    for m in (2, 3):
        p = CodeParams(2, m)
        tol, witness = parallel_tolerance(p)
        erased = set(witness)
        blocked = [a for a in witness if all(set(s) & erased for s in repair_sets(p, a))]
        ok &= tol == m and len(witness) == m + 1 and bool(blocked)
        notes.append(f"m={m}: {tol}, counterexample {format_pattern(p, witness).strip()}")
    with capsys.disabled():
        verdict(5, "; ".join(notes), ok)


def test_06_table1(capsys):
    text = format_table1(table1())
    golden = (GOLDEN / "table1.txt").read_text()
    bounds = [row.n_min_ra for row in table1()]
    with capsys.disabled():
        verdict(6, f"Table 1 byte-exact, bounds {bounds}", text == golden and bounds == [10, 36, 136, 528])


def test_07_structure(capsys):
    ok = True
    for r in (2, 3, 4):
        for m in (1, 2, 3):
            p = CodeParams(r, m)
            rows = gf2.pack_rows(build_parity_check(p).rows)
            ok &= gf2.rank(rows) == p.n - p.k
            lines = set()
            for a in all_coords(p):
                for i in range(1, m + 1):
                    line = line_coords(p, a, i)
                    ok &= len(set(line)) == r + 1
                    lines.add(gf2.support_mask(coord_rank(p, b) for b in line))
            if r in (2, 3):
                ok &= gf2.same_row_space(rows, sorted(lines))
    with capsys.disabled():
        verdict(7, "rank(H)=n-k, row space = line checks, |line|=r+1", bool(ok))


EXAMPLE2_EQUATIONS = [
    ("011", "111", "211"),
    ("121", "111", "101"),
    ("021", "121", "221"),
    ("020", "021", "022"),
    ("120", "121", "122"),
    ("010", "011", "012"),
    ("110", "111", "112"),
]


def test_08_example_plan(capsys):
    p = CodeParams(2, 3)
    erased = [parse_coord(p, t) for t in "020 120 010 110 021 121 011".split()]
    steps = []
    for target, *sources in EXAMPLE2_EQUATIONS:
        t = parse_coord(p, target)
        src = tuple(parse_coord(p, s) for s in sources)
        axis = next(i for i in range(1, 4) if set(line_coords(p, t, i)) == {t, *src})
        steps.append(RepairStep(t, axis, src))
    plan = RepairPlan(tuple(steps))
    validate_plan(p, erased, plan)
    words = codewords(p)
    restored = all(
        np.array_equal(execute_plan(p, mask_word(p, x, erased), erased, plan), x) for x in words
    )
    with capsys.disabled():
        verdict(8, f"printed 7-step plan is legal and restores all {len(words)} codewords", restored)


def test_09_oracle_equivalence(capsys):
    p = CodeParams(2, 2)
    duals = dual_codewords(p)
    cs = all_coords(p)
    rng = np.random.default_rng(9)
    agree = 0
    for _ in range(1000):
        target = cs[rng.integers(p.n)]
        others = [a for a in cs if a != target]
        live = [a for a, keep in zip(others, rng.random(len(others)) < rng.uniform(0.1, 1.0)) if keep]
        agree += general_repair_set_oracle(p, target, live) == brute_force_repair_set(p, target, live, duals)
    lines_ok = all(is_repair_set(p, a, s) for a in cs for s in repair_sets(p, a))
    with capsys.disabled():
        verdict(9, f"oracle agrees with dual enumeration on {agree}/1000; line sets feasible: {lines_ok}",
                agree == 1000 and lines_ok)


def test_10_min_distance(capsys):
    got = [min_distance_bruteforce(CodeParams(2, m)) for m in (1, 2, 3)]
    with capsys.disabled():
        verdict(10, f"minimum distances {got}", got == [2, 4, 8])


def test_11_cli_round_trip(capsys, tmp_path):
    rng = np.random.default_rng(11)
    p = CodeParams(2, 3)
    cs = all_coords(p)
    common = ["-r", "2", "-m", "3"]
    files = {name: tmp_path / name for name in ("info", "word", "pattern", "masked", "plan", "repaired")}
    successes = 0
    for _ in range(1000):
        info = rng.integers(0, 2, p.k)
        size = int(rng.integers(0, p.t + 1))
        erased = [cs[j] for j in rng.choice(p.n, size, replace=False)]
        files["info"].write_text("".join(map(str, info)) + "\n")
        files["pattern"].write_text(format_pattern(p, erased))
        codes = [
            main(["encode", *common, "--in", str(files["info"]), "--out", str(files["word"])]),
            main(["erase", *common, "--in", str(files["word"]), "--pattern", str(files["pattern"]),
                  "--out", str(files["masked"])]),
            main(["plan", *common, "--pattern", str(files["pattern"]), "--out", str(files["plan"])]),
            main(["repair", *common, "--in", str(files["masked"]), "--plan", str(files["plan"]),
                  "--out", str(files["repaired"])]),
            main(["check", *common, "--in", str(files["repaired"])]),
        ]
        masked = files["masked"].read_text().strip()
        repaired = files["repaired"].read_text().strip()
        ok = (
            codes == [0] * 5
            and masked.count("?") == size
            and "?" not in repaired
            and repaired == files["word"].read_text().strip()
        )
        successes += ok
    capsys.readouterr()
    with capsys.disabled():
        verdict(11, f"{successes}/1000 encode-erase-plan-repair-check cycles succeeded", successes == 1000)
