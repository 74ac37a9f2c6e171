"""Command-line front end.

Exit codes: 0 success, 1 operational failure (bad input, not a codeword,
stuck plan, failed verification), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import analysis
from .code import CodeParams, all_coords, build_parity_check, encode, format_coord, is_codeword, parse_coord
from .errors import ELRCError
from .formats import (
    erased_positions,
    format_matrix,
    format_pattern,
    format_plan,
    format_word,
    parse_bits,
    parse_pattern,
    parse_plan,
    parse_word,
)
from .repair import Stuck, execute_plan, mask_word, parallel_repairable, plan_sequential, validate_plan


class _Failure(Exception):
    """Operational failure already described for the user."""


def _read(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _params(args) -> CodeParams:
    return CodeParams(args.r, args.m)


def _pattern(args, p: CodeParams):
    if args.pattern is None:
        return frozenset()
    return parse_pattern(p, _read(args.pattern))


def cmd_params(args) -> int:
    p = _params(args)
    _write(args.out, f"{p.n} {p.k} {p.t}\n")
    return 0


def cmd_matrix(args) -> int:
    _write(args.out, format_matrix(build_parity_check(_params(args))))
    return 0


def cmd_encode(args) -> int:
    p = _params(args)
    info = parse_bits(_read(args.inp), p.k)
    _write(args.out, format_word(encode(p, info)) + "\n")
    return 0


def cmd_check(args) -> int:
    p = _params(args)
    word = parse_bits(_read(args.inp), p.n)
    ok = is_codeword(p, word)
    _write(args.out, "codeword\n" if ok else "not a codeword\n")
    return 0 if ok else 1


def cmd_erase(args) -> int:
    p = _params(args)
    if args.pattern is None:
        raise _Failure("erase needs --pattern")
    word = parse_word(p, _read(args.inp))
    _write(args.out, format_word(mask_word(p, word, _pattern(args, p))) + "\n")
    return 0


def cmd_plan(args) -> int:
    p = _params(args)
    if args.pattern is None:
        raise _Failure("plan needs --pattern")
    result = plan_sequential(p, _pattern(args, p))
    if isinstance(result, Stuck):
        _write(args.out, format_plan(p, result.partial))
        raise _Failure("stuck; unrepairable remainder: " + format_pattern(p, result.remaining).strip())
    _write(args.out, format_plan(p, result))
    return 0


def cmd_repair(args) -> int:
    p = _params(args)
    word = parse_word(p, _read(args.inp))
    erased = erased_positions(p, word)
    if args.plan is not None:
        plan = parse_plan(p, _read(args.plan))
        validate_plan(p, erased, plan)
    else:
        plan = plan_sequential(p, erased)
        if isinstance(plan, Stuck):
            raise _Failure("stuck; unrepairable remainder: " + format_pattern(p, plan.remaining).strip())
    repaired = execute_plan(p, word, erased, plan)
    _write(args.out, format_word(repaired) + "\n")
    if len(plan) < len(erased):
        raise _Failure("plan does not cover every erasure")
    return 0


def cmd_verify(args) -> int:
    p = _params(args)
    report = analysis.verify_elrc(
        p,
        args.max_size if args.max_size is not None else p.t,
        args.mode,
        samples=args.samples,
        seed=args.seed,
        budget=args.budget,
        jobs=args.jobs,
    )
    _write(args.out, report.to_text())
    return 0 if report.ok else 1


def cmd_parallel_check(args) -> int:
    p = _params(args)
    result = parallel_repairable(p, _pattern(args, p))
    lines = []
    for a, axis in result.witness.items():
        lines.append(f"{format_coord(p, a)} " + ("blocked" if axis is None else f"axis {axis}"))
    lines.append("repairable" if result.repairable else "not repairable")
    _write(args.out, "\n".join(lines) + "\n")
    return 0 if result.repairable else 1


def cmd_oracle(args) -> int:
    p = _params(args)
    if args.target is None:
        raise _Failure("oracle needs --target")
    target = parse_coord(p, args.target)
    erased = _pattern(args, p) | {target}
    live = [a for a in all_coords(p) if a not in erased]
    found = analysis.general_repair_set_oracle(p, target, live)
    if found is None:
        _write(args.out, "none\n")
        return 1
    _write(args.out, " ".join(format_coord(p, a) for a in found) + "\n")
    return 0


def cmd_bounds(args) -> int:
    p = _params(args)
    t = args.t if args.t is not None else p.t
    k = args.k if args.k is not None else p.k
    _write(args.out, analysis.format_bounds(analysis.bounds_row(p.r, t, k), args.format))
    return 0


def cmd_tables(args) -> int:
    ms = args.ms
    t1 = analysis.format_table1(analysis.table1(args.r, ms), args.format)
    t2 = analysis.format_table2(
        analysis.table2(args.r, ms, certify=args.certify, samples=args.samples, seed=args.seed, jobs=args.jobs),
        args.format,
    )
    _write(args.out, t1 + "\n" + t2)
    return 0


def cmd_mindist(args) -> int:
    _write(args.out, f"{analysis.min_distance_bruteforce(_params(args))}\n")
    return 0


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elrc",
        description="Binary product-of-parity-check codes with sequential local repair.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    io = argparse.ArgumentParser(add_help=False)
    io.add_argument("--out", help="output file (default stdout)")

    code = argparse.ArgumentParser(add_help=False, parents=[io])
    code.add_argument("-r", type=int, required=True, help="locality, r >= 2")
    code.add_argument("-m", type=int, required=True, help="number of product factors, m >= 1")

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--samples", type=_positive, default=analysis.DEFAULT_SAMPLES)
    sampling.add_argument("--seed", type=int, default=0)
    sampling.add_argument("--jobs", type=_positive, default=1)

    def add(name, func, parents, help_text):
        sp = sub.add_parser(name, parents=parents, help=help_text)
        sp.set_defaults(func=func)
        return sp

    add("params", cmd_params, [code], "print n k t")
    add("matrix", cmd_matrix, [code], "write the parity-check matrix")
    add("encode", cmd_encode, [code], "encode k information bits").add_argument("--in", dest="inp")
    add("check", cmd_check, [code], "exit 0 iff the word is a codeword").add_argument("--in", dest="inp")
    sp = add("erase", cmd_erase, [code], "mask a word on an erasure pattern")
    sp.add_argument("--in", dest="inp")
    sp.add_argument("--pattern")
    add("plan", cmd_plan, [code], "plan a sequential repair").add_argument("--pattern")
    sp = add("repair", cmd_repair, [code], "repair a masked word")
    sp.add_argument("--in", dest="inp")
    sp.add_argument("--plan", help="plan file (default: plan greedily)")
    sp = add("verify", cmd_verify, [code, sampling], "check every pattern up to a size")
    sp.add_argument("--max-size", type=_positive)
    sp.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    sp.add_argument("--budget", type=_positive, default=analysis.DEFAULT_BUDGET)
    add("parallel-check", cmd_parallel_check, [code], "per-symbol free axes").add_argument("--pattern")
    sp = add("oracle", cmd_oracle, [code], "smallest general repair set among live symbols")
    sp.add_argument("--target")
    sp.add_argument("--pattern", help="other erased symbols")
    sp = add("bounds", cmd_bounds, [code], "length and rate bounds")
    sp.add_argument("--t", type=_positive)
    sp.add_argument("--k", type=_positive)
    sp.add_argument("--format", choices=("text", "csv"), default="text")
    sp = add("tables", cmd_tables, [io, sampling], "length and tolerance comparison tables")
    sp.add_argument("-r", type=int, default=2)
    sp.add_argument("--ms", type=_positive, nargs="+", default=[2, 3, 4, 5])
    sp.add_argument("--format", choices=("text", "csv"), default="text")
    sp.add_argument("--certify", action="store_true")
    add("mindist", cmd_mindist, [code], "brute-force minimum distance")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.r < 2:
        parser.error("-r must be >= 2")
    if getattr(args, "m", 1) < 1:
        parser.error("-m must be >= 1")
    try:
        return args.func(args)
    except (_Failure, ELRCError, OSError) as exc:
        print(f"elrc: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
