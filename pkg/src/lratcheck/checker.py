"""Hint-guided AT and RAT checking of single addition steps.

Propagation only ever looks at the clauses named by the hints, in the order
given. The one exception is the RAT candidate scan, which walks the active
formula once in increasing id order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .core import (
    Addition,
    Clause,
    ClauseDb,
    HintStructure,
    LratError,
    Trail,
    negate_clause_onto_trail,
)


class HintError(LratError):
    pass


class PropagationOutcome(NamedTuple):
    conflict: bool
    assigned: int


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: Optional[str] = None
    clause_id: Optional[int] = None
    line_id: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok

    def at_line(self, line_id: int) -> "Verdict":
        return Verdict(self.ok, self.reason, self.clause_id, line_id)

    def describe(self) -> str:
        if self.ok:
            return "Accepted"
        s = self.reason or "Rejected"
        if self.clause_id is not None:
            s += " %d" % self.clause_id
        return s


ACCEPTED = Verdict(True)


def _reject(reason: str, clause_id: Optional[int] = None) -> Verdict:
    return Verdict(False, reason, clause_id)


def propagate_hints(db: ClauseDb, trail: Trail, hints: Sequence[int], strict: bool = True) -> PropagationOutcome:
    """Process ``hints`` left to right on ``trail``.

    Each hint clause must be unit (assign its literal) or falsified (conflict,
    and then it must be the last hint). Raises HintError otherwise. The trail
    is left extended; callers roll back.
    """
    true = trail.true
    stack = trail.stack
    get = db.get
    assigned = 0
    last = len(hints) - 1
    for k, cid in enumerate(hints):
        clause = get(cid)
        if clause is None:
            raise HintError("UnknownClause", "hint names no active clause", cid)
        unit = 0
        multi = False
        sat = False
        for lit in clause:
            if lit in true:
                sat = True
                break
            if -lit not in true:
                if unit == 0:
                    unit = lit
                elif unit != lit:
                    multi = True
        if sat:
            if strict:
                raise HintError("SatisfiedHint", "hint clause already satisfied", cid)
            continue
        if multi:
            raise HintError("NonUnitHint", "two or more unassigned literals", cid)
        if unit == 0:
            if k != last:
                raise HintError("HintsAfterConflict", "%d hints after conflict" % (last - k), cid)
            return PropagationOutcome(True, assigned)
        true.add(unit)
        stack.append(unit)
        assigned += 1
    return PropagationOutcome(False, assigned)


def check_at(db: ClauseDb, trail: Trail, clause: Clause, prefix: Sequence[int], strict: bool = True) -> Verdict:
    depth = len(trail.stack)
    try:
        if negate_clause_onto_trail(clause, trail):
            # satisfied by the entry trail: tautological relative to it
            return ACCEPTED
        out = propagate_hints(db, trail, prefix, strict)
    except HintError as e:
        return _reject(e.code, e.clause_id)
    finally:
        trail.rollback(depth)
    return ACCEPTED if out.conflict else _reject("NoConflictAtEnd")


def _check_group(db, trail, neg, cid, d, units, strict) -> Optional[Verdict]:
    true = trail.true
    for lit in d:
        if lit != neg and lit in true:
            if units and strict:
                return _reject("DeadHints", cid)
            return None
    stack = trail.stack
    depth = len(stack)
    try:
        for lit in d:
            if lit == neg:
                continue
            if lit in true:
                # D holds a complementary pair: the resolvent is a tautology
                if units and strict:
                    return _reject("DeadHints", cid)
                return None
            if -lit not in true:
                true.add(-lit)
                stack.append(-lit)
        if not units:
            return _reject("EmptyGroupNotTautological", cid)
        try:
            out = propagate_hints(db, trail, units, strict)
        except HintError as e:
            return _reject(e.code, e.clause_id)
        if not out.conflict:
            return _reject("GroupNoConflict", cid)
        return None
    finally:
        trail.rollback(depth)


def check_rat(db: ClauseDb, trail: Trail, clause: Clause, hints: HintStructure, strict: bool = True) -> Verdict:
    """RAT check on the first literal of ``clause``.

    The candidates named by the groups must be exactly the active clauses
    containing the negated pivot. Group order is irrelevant here; the parser
    enforces sortedness in strict mode.
    """
    if not clause:
        return _reject("EmptyClauseNeedsAT")
    neg = -clause[0]
    depth = len(trail.stack)
    try:
        negate_clause_onto_trail(clause, trail)
        try:
            out = propagate_hints(db, trail, hints.prefix, strict)
        except HintError as e:
            return _reject(e.code, e.clause_id)
        if out.conflict:
            if hints.groups and strict:
                return _reject("PrefixConflictWithGroups")
            return ACCEPTED

        groups = hints.groups
        if any(groups[i][0] >= groups[i + 1][0] for i in range(len(groups) - 1)):
            groups = sorted(groups, key=lambda g: g[0])
        gi, ng = 0, len(groups)
        for cid, d in db.items():
            if neg not in d:
                continue
            if gi < ng and groups[gi][0] < cid:
                return _reject("SpuriousCandidate", groups[gi][0])
            if gi == ng or groups[gi][0] != cid:
                return _reject("MissingCandidate", cid)
            bad = _check_group(db, trail, neg, cid, d, groups[gi][1], strict)
            if bad is not None:
                return bad
            gi += 1
        if gi < ng:
            return _reject("SpuriousCandidate", groups[gi][0])
        return ACCEPTED
    finally:
        trail.rollback(depth)


def check_addition(db: ClauseDb, trail: Trail, line: Addition, strict: bool = True) -> Verdict:
    """Validate one addition line; the caller inserts the clause on success."""
    clause, hints = line.clause, line.hints
    if not clause:
        if hints.groups:
            return _reject("EmptyClauseNeedsAT").at_line(line.id)
        return check_at(db, trail, clause, hints.prefix, strict).at_line(line.id)
    if hints.groups:
        return check_rat(db, trail, clause, hints, strict).at_line(line.id)
    at = check_at(db, trail, clause, hints.prefix, strict)
    if at.ok or at.reason != "NoConflictAtEnd":
        return at.at_line(line.id)
    # not AT with these hints; maybe RAT with no candidates
    rat = check_rat(db, trail, clause, hints, strict)
    return (rat if rat.ok else at).at_line(line.id)


class Checker:
    """Owns a clause database and a trail and applies proof lines to them."""

    def __init__(self, db: ClauseDb, strict: bool = True):
        self.db = db
        self.trail = Trail()
        self.strict = strict

    def propagate_hints(self, hints: Sequence[int]) -> PropagationOutcome:
        return propagate_hints(self.db, self.trail, hints, self.strict)

    def check_at(self, clause: Clause, prefix: Sequence[int]) -> Verdict:
        return check_at(self.db, self.trail, tuple(clause), prefix, self.strict)

    def check_rat(self, clause: Clause, hints: HintStructure) -> Verdict:
        return check_rat(self.db, self.trail, tuple(clause), hints, self.strict)

    def check_addition(self, line: Addition) -> Verdict:
        return check_addition(self.db, self.trail, line, self.strict)

    def add(self, line: Addition) -> Verdict:
        verdict = self.check_addition(line)
        if verdict.ok:
            self.db.insert(line.id, line.clause)
        return verdict
