"""Command-line front end.

stdout carries exactly one status line (``s VERIFIED`` / ``s NOT VERIFIED``)
for the checking commands; everything else goes to stderr. Exit codes:
0 verified, 1 not verified, 2 usage, IO or parse error.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional

from . import __version__
from .core import LratError
from .dimacs import format_dimacs, read_dimacs
from .lrat import ProofStream, read_proof
from .modes import RunResult, apply_unverified, run_entailment, run_partitioned, run_refutation, split_proof

EXIT_VERIFIED = 0
EXIT_NOT_VERIFIED = 1
EXIT_ERROR = 2


def _err(msg: str) -> None:
    print("c " + msg, file=sys.stderr)


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lratcheck", description="Check LRAT clausal proofs.")
    p.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = p.add_subparsers(dest="command", required=True, metavar="{check,entail,pcheck,apply}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("cnf", help="DIMACS CNF file")
    common.add_argument("lrat", help="LRAT proof file")
    common.add_argument("--lenient", action="store_true", help="downgrade strictness errors to warnings")
    common.add_argument("-v", "--verbose", action="store_true", help="print timing and counts to stderr")

    sub.add_parser("check", parents=[common], help="verify a refutation")
    e = sub.add_parser("entail", parents=[common], help="verify that the proof reduces CNF to TARGET")
    e.add_argument("--target", required=True, help="target DIMACS CNF")
    pc = sub.add_parser("pcheck", parents=[common], help="verify a refutation in independent parts")
    pc.add_argument("--split", type=int, nargs="+", required=True, metavar="N",
                    help="cut the proof after its first N lines (repeatable)")
    pc.add_argument("--jobs", type=int, default=1)
    pc.add_argument("--targets", nargs="+", metavar="CNF",
                    help="one DIMACS file per part to use as entailment target")
    a = sub.add_parser("apply", parents=[common], help="apply the proof without checking; emit DIMACS")
    a.add_argument("-o", "--output", help="write DIMACS here instead of stdout")

    o = sub.add_parser("oracle")
    o.add_argument("cnf")
    g = sub.add_parser("gen-chain")
    g.add_argument("--vars", type=int, default=1000)
    g.add_argument("--additions", type=int, default=100_000)
    g.add_argument("--cnf", required=True)
    g.add_argument("--proof", required=True)
    return p


def _report(res: RunResult, args, elapsed: float) -> int:
    for d in res.diagnostics:
        _err("warning: " + d)
    if args.verbose:
        _err("additions %d, deletion lines %d, checked %d, %.3f s"
             % (res.additions, res.deletion_lines, res.steps_checked, elapsed))
    if res.verified:
        print("s VERIFIED")
        return EXIT_VERIFIED
    if res.failure is not None:
        _err("error: " + res.failure.describe())
    print("s NOT VERIFIED")
    if res.failure is not None and res.failure.parse_error:
        return EXIT_ERROR
    return EXIT_NOT_VERIFIED


def _run_check(args) -> int:
    strict = not args.lenient
    t0 = time.perf_counter()
    cnf = read_dimacs(args.cnf, strict=strict)
    for w in cnf.warnings:
        _err("warning: " + w)
    if args.command == "pcheck":
        if args.jobs < 1:
            raise ValueError("--jobs must be positive")
        with open(args.lrat, encoding="ascii") as f:
            lines = read_proof(f, strict=strict)
        parts = split_proof(lines, args.split)
        targets = None
        if args.targets:
            targets = [read_dimacs(t, strict=strict) for t in args.targets]
        res = run_partitioned(cnf, parts, jobs=args.jobs, strict=strict, targets=targets)
    else:
        stream = ProofStream.open(args.lrat, strict=strict)
        try:
            if args.command == "check":
                res = run_refutation(cnf, stream, strict)
            else:
                target = read_dimacs(args.target, strict=strict)
                res = run_entailment(cnf, stream, target, strict)
        finally:
            stream.close()
    return _report(res, args, time.perf_counter() - t0)


def _run_apply(args) -> int:
    strict = not args.lenient
    cnf = read_dimacs(args.cnf, strict=strict)
    with ProofStream.open(args.lrat, strict=strict) as stream:
        db = apply_unverified(cnf, stream, strict)
    text = format_dimacs(db.clauses(), max(cnf.num_vars_declared, db.num_vars()))
    if args.output:
        with open(args.output, "w", encoding="ascii") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _run_oracle(args) -> int:
    from .oracle import brute_force_sat

    cnf = read_dimacs(args.cnf, strict=False)
    res = brute_force_sat(cnf.clauses, num_vars=cnf.num_vars_declared)
    if res.satisfiable:
        print("s SATISFIABLE")
        lits = [v if val else -v for v, val in sorted(res.witness.items())]
        print("v " + " ".join(map(str, lits + [0])))
        return 10
    print("s UNSATISFIABLE")
    return 20


def _run_gen(args) -> int:
    from .synth import write_chain

    with open(args.cnf, "w") as c, open(args.proof, "w") as p:
        write_chain(c, p, args.vars, args.additions)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command in ("check", "entail", "pcheck"):
            return _run_check(args)
        if args.command == "apply":
            return _run_apply(args)
        if args.command == "oracle":
            return _run_oracle(args)
        return _run_gen(args)
    except (OSError, LratError, ValueError) as e:
        _err("error: %s" % e)
        if args.command in ("check", "entail", "pcheck"):
            print("s NOT VERIFIED")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
