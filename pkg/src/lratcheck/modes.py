"""Whole-proof drivers: refutation, entailment and partitioned checking."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .checker import check_addition
from .core import Addition, Clause, ClauseDb, DbError, Deletion, LratError, ParseError, Trail
from .dimacs import CnfDocument

ProofLine = Union[Addition, Deletion]
Formula = Union[CnfDocument, ClauseDb]


@dataclass
class Failure:
    reason: str
    line_id: Optional[int] = None
    lineno: Optional[int] = None
    clause_id: Optional[int] = None
    message: str = ""
    part: Optional[int] = None
    parse_error: bool = False

    def describe(self) -> str:
        where = []
        if self.part is not None:
            where.append("part %d" % self.part)
        if self.lineno is not None:
            where.append("line %d" % self.lineno)
        if self.line_id is not None:
            where.append("id %d" % self.line_id)
        what = self.reason
        if self.clause_id is not None:
            what += " %d" % self.clause_id
        if self.message:
            what += " (%s)" % self.message
        return "%s: %s" % (", ".join(where), what) if where else what


@dataclass
class RunResult:
    verified: bool
    final_db: Optional[ClauseDb]
    empty_clause_derived: bool = False
    steps_checked: int = 0
    additions: int = 0
    deletion_lines: int = 0
    failure: Optional[Failure] = None
    diagnostics: List[str] = field(default_factory=list)


def _load(formula: Formula, strict: bool) -> Tuple[ClauseDb, Optional[int]]:
    if isinstance(formula, ClauseDb):
        db = formula.copy()
        db.strict = strict
        return db, None
    return formula.to_db(strict), formula.num_vars_declared


def _drive(db: ClauseDb, proof: Iterable, strict: bool, verify: bool, declared_vars: Optional[int]) -> RunResult:
    trail = Trail()
    res = RunResult(False, db)
    diags = res.diagnostics
    last_added = 0
    var_limit = declared_vars
    index = 0
    lineno: Optional[int] = None
    pl = None
    try:
        for item in proof:
            index += 1
            if type(item) is tuple:
                lineno, pl = item
            else:
                pl = item
                lineno = getattr(proof, "lineno", index)
            if verify and res.empty_clause_derived:
                diags.append("line %d: proof continues after the empty clause; rest ignored" % lineno)
                break
            if type(pl) is Deletion:
                if pl.id < last_added:
                    msg = "deletion id %d below last added id %d" % (pl.id, last_added)
                    if strict:
                        raise DbError("DeletionIdBeforeAddition", msg, pl.id)
                    diags.append("line %d: %s" % (lineno, msg))
                for w in db.delete(pl.targets):
                    diags.append("line %d: %s" % (lineno, w))
                res.deletion_lines += 1
                continue
            if verify:
                verdict = check_addition(db, trail, pl, strict)
                res.steps_checked += 1
                if not verdict.ok:
                    res.failure = Failure(verdict.reason, pl.id, lineno, verdict.clause_id)
                    return res
            db.insert(pl.id, pl.clause)
            res.additions += 1
            last_added = pl.id
            if not pl.clause:
                res.empty_clause_derived = True
            if var_limit is not None and strict and pl.clause:
                top = max(abs(lit) for lit in pl.clause)
                if top > var_limit:
                    diags.append("line %d: variable %d exceeds declared count %d" % (lineno, top, declared_vars))
                    var_limit = top
    except LratError as e:
        if not verify:
            raise
        lineno = getattr(e, "lineno", 0) or lineno
        line_id = pl.id if pl is not None and not isinstance(e, ParseError) else None
        res.failure = Failure(
            e.code, line_id, lineno, e.clause_id, e.message, parse_error=isinstance(e, ParseError)
        )
        return res
    res.verified = True
    return res


def run_refutation(cnf: Formula, proof: Iterable, strict: bool = True) -> RunResult:
    """Check every line; verified iff all pass and the empty clause is added."""
    db, declared = _load(cnf, strict)
    res = _drive(db, proof, strict, True, declared)
    if res.verified and not res.empty_clause_derived:
        res.verified = False
        res.failure = Failure("NoEmptyClause", message="proof ends without the empty clause")
    return res


def _clause_key(clause: Sequence[int]) -> frozenset:
    return frozenset(clause)


def _target_clauses(target) -> List[Clause]:
    if isinstance(target, CnfDocument):
        return list(target.clauses)
    if isinstance(target, ClauseDb):
        return target.clauses()
    return [tuple(c) for c in target]


def missing_target(db: ClauseDb, target) -> Optional[int]:
    """1-based index of the first target clause absent from ``db``, else None."""
    have = {_clause_key(c) for c in db.clauses()}
    for k, clause in enumerate(_target_clauses(target), 1):
        if _clause_key(clause) not in have:
            return k
    return None


def run_entailment(cnf: Formula, proof: Iterable, target, strict: bool = True) -> RunResult:
    """Verified iff all lines pass and either the empty clause was derived or
    every target clause (as a literal set) is active at the end."""
    db, declared = _load(cnf, strict)
    res = _drive(db, proof, strict, True, declared)
    if not res.verified or res.empty_clause_derived:
        return res
    k = missing_target(res.final_db, target)
    if k is not None:
        res.verified = False
        clause = _target_clauses(target)[k - 1]
        res.failure = Failure("MissingTargetClause", clause_id=k, message="clause %s" % list(clause))
    return res


def apply_unverified(cnf: Formula, proof: Iterable, strict: bool = True) -> ClauseDb:
    """Apply all additions and deletions without checking hints.

    Raises LratError on parse and id-discipline errors.
    """
    db, _ = _load(cnf, strict)
    _drive(db, proof, strict, False, None)
    return db


def split_proof(lines: Sequence, offsets: Sequence[int]) -> List[list]:
    """Cut ``lines`` before each offset (a count of preceding lines)."""
    cuts = sorted(set(offsets))
    if any(c <= 0 or c >= len(lines) for c in cuts):
        raise ValueError("split offsets must lie strictly inside 1..%d" % (len(lines) - 1))
    bounds = [0, *cuts, len(lines)]
    return [list(lines[a:b]) for a, b in zip(bounds, bounds[1:])]


def _verify_part(args) -> RunResult:
    start, part, target, strict = args
    res = run_entailment(start, part, target, strict)
    res.final_db = None
    return res


def run_partitioned(
    cnf: Formula,
    parts: Sequence[Sequence],
    jobs: int = 1,
    strict: bool = True,
    targets: Optional[Sequence] = None,
) -> RunResult:
    """Apply parts sequentially, then verify each part's entailment.

    ``targets`` optionally replaces the computed intermediate formulas as the
    entailment targets; each part still starts from the computed formula.
    """
    if not parts:
        raise ValueError("need at least one part")
    if jobs < 1:
        raise ValueError("jobs must be positive")
    if targets is not None and len(targets) != len(parts):
        raise ValueError("need one target per part")

    starts: List[ClauseDb] = []
    db, _ = _load(cnf, strict)
    has_empty = False
    for i, part in enumerate(parts, 1):
        starts.append(db)
        try:
            db = apply_unverified(db, part, strict)
        except LratError as e:
            fail = Failure(
                e.code, None, getattr(e, "lineno", None), e.clause_id, e.message,
                part=i, parse_error=isinstance(e, ParseError),
            )
            return RunResult(False, db, failure=fail)
        if any(not c for c in db.clauses()):
            has_empty = True
    finals = [*starts[1:], db]

    work = [
        (starts[i], list(parts[i]), targets[i] if targets is not None else finals[i], strict)
        for i in range(len(parts))
    ]
    if jobs == 1 or len(work) == 1:
        results = [_verify_part(w) for w in work]
    else:
        with ProcessPoolExecutor(max_workers=min(jobs, len(work))) as pool:
            results = list(pool.map(_verify_part, work))

    out = RunResult(False, db)
    for i, r in enumerate(results, 1):
        out.steps_checked += r.steps_checked
        out.additions += r.additions
        out.deletion_lines += r.deletion_lines
        out.empty_clause_derived = out.empty_clause_derived or r.empty_clause_derived
        out.diagnostics.extend("part %d: %s" % (i, d) for d in r.diagnostics)
        if not r.verified and out.failure is None:
            out.failure = replace(r.failure, part=i)
    if out.failure is None and not has_empty:
        out.failure = Failure("NoEmptyClause", message="no part adds the empty clause")
    out.verified = out.failure is None
    return out
