"""Shared domain types: literals, clauses, the clause database and the trail.

Literals are nonzero ints and clauses are tuples of literals. Clause ids are
positive ints. Nothing here knows about file formats.
"""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

Literal = int
ClauseId = int
Clause = Tuple[int, ...]


class LratError(Exception):
    """Base error. ``code`` is a stable machine-readable reason name."""

    def __init__(self, code: str, message: str = "", clause_id: Optional[int] = None):
        self.code = code
        self.message = message
        self.clause_id = clause_id
        super().__init__(self.describe())

    def describe(self) -> str:
        parts = [self.code]
        if self.clause_id is not None:
            parts.append(str(self.clause_id))
        if self.message:
            parts.append("(%s)" % self.message)
        return " ".join(parts)


class DbError(LratError):
    pass


class ParseError(LratError):
    def __init__(self, code: str, message: str = "", lineno: int = 0, clause_id=None):
        self.lineno = lineno
        super().__init__(code, message, clause_id)

    def describe(self) -> str:
        base = super().describe()
        return "line %d: %s" % (self.lineno, base) if self.lineno else base


def negate(lit: Literal) -> Literal:
    return -lit


def variable(lit: Literal) -> int:
    return lit if lit > 0 else -lit


def has_clash(clause: Sequence[Literal]) -> bool:
    """True if two literals of ``clause`` share a variable."""
    return len({abs(lit) for lit in clause}) != len(clause)


class ClauseDb:
    """Index-addressable set of active clauses.

    Ids are never reused. In strict mode every insertion must use an id above
    every id inserted so far; lenient mode only requires an unused id.
    """

    def __init__(self, strict: bool = True):
        self.strict = strict
        self.max_id = 0
        self._active: Dict[int, Clause] = {}
        # one byte per id ever inserted; distinguishes unknown ids from deleted ones
        self._seen = bytearray()
        self._ordered = True

    @classmethod
    def from_clauses(cls, clauses: Iterable[Sequence[Literal]], strict: bool = True) -> "ClauseDb":
        db = cls(strict=strict)
        for i, clause in enumerate(clauses, 1):
            db.insert(i, clause)
        return db

    def copy(self) -> "ClauseDb":
        other = ClauseDb(self.strict)
        other.max_id = self.max_id
        other._active = dict(self._active)
        other._seen = bytearray(self._seen)
        other._ordered = self._ordered
        return other

    def _was_inserted(self, cid: int) -> bool:
        return cid < len(self._seen) and self._seen[cid] == 1

    def insert(self, cid: ClauseId, clause: Sequence[Literal]) -> None:
        if cid < 1:
            raise DbError("ZeroId", "clause ids start at 1", cid)
        if self._was_inserted(cid):
            raise DbError("IdReuse", "id already used", cid)
        if cid <= self.max_id:
            if self.strict:
                raise DbError("IdReuse", "id %d not above max id %d" % (cid, self.max_id), cid)
            self._ordered = False
        if cid >= len(self._seen):
            self._seen.extend(bytes(max(cid + 1 - len(self._seen), len(self._seen))))
        self._seen[cid] = 1
        self._active[cid] = tuple(clause)
        if cid > self.max_id:
            self.max_id = cid

    def delete(self, targets: Iterable[ClauseId]) -> List[str]:
        """Deactivate ``targets``. Returns warnings (lenient mode only)."""
        warnings = []
        for cid in targets:
            if cid in self._active:
                del self._active[cid]
                continue
            code = "DoubleDelete" if self._was_inserted(cid) else "UnknownClause"
            if self.strict:
                raise DbError(code, "cannot delete", cid)
            warnings.append("%s %d" % (code, cid))
        return warnings

    def get(self, cid: ClauseId) -> Optional[Clause]:
        """Active clause under ``cid`` or None."""
        return self._active.get(cid)

    def __contains__(self, cid: ClauseId) -> bool:
        return cid in self._active

    def __len__(self) -> int:
        return len(self._active)

    def items(self) -> Iterator[Tuple[ClauseId, Clause]]:
        """Active (id, clause) pairs in increasing id order."""
        if self._ordered:
            return iter(list(self._active.items()))
        return iter(sorted(self._active.items()))

    def ids(self) -> List[ClauseId]:
        return [cid for cid, _ in self.items()]

    def clauses(self) -> List[Clause]:
        return [clause for _, clause in self.items()]

    def num_vars(self) -> int:
        return max((abs(lit) for c in self._active.values() for lit in c), default=0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClauseDb):
            return NotImplemented
        return self._active == other._active

    def __repr__(self) -> str:
        return "ClauseDb(%d active, max_id=%d)" % (len(self._active), self.max_id)


class Trail:
    """Partial assignment with checkpoint/rollback.

    The assignment is stored as the set of literals currently true, so
    ``lit in trail.true`` means lit is true and ``-lit in trail.true`` means
    it is false. ``stack`` records assignment order for rollback.
    """

    __slots__ = ("true", "stack")

    def __init__(self) -> None:
        self.true = set()
        self.stack: List[Literal] = []

    def value(self, lit: Literal) -> Optional[bool]:
        if lit in self.true:
            return True
        if -lit in self.true:
            return False
        return None

    def assign(self, lit: Literal) -> None:
        """Make ``lit`` true. The variable must be unassigned."""
        if lit in self.true or -lit in self.true:
            raise ValueError("variable %d already assigned" % abs(lit))
        self.true.add(lit)
        self.stack.append(lit)

    def checkpoint(self) -> int:
        return len(self.stack)

    def rollback(self, depth: int) -> None:
        stack = self.stack
        if len(stack) > depth:
            self.true.difference_update(stack[depth:])
            del stack[depth:]

    def snapshot(self) -> frozenset:
        return frozenset(self.true)

    def __len__(self) -> int:
        return len(self.stack)


def negate_clause_onto_trail(clause: Sequence[Literal], trail: Trail) -> bool:
    """Assign every literal of ``clause`` false.

    Literals already false are skipped. Returns True when some literal was
    already true, i.e. the clause is satisfied by the trail and cannot be
    fully negated; those literals are left untouched.
    """
    true = trail.true
    satisfied = False
    for lit in clause:
        if lit in true:
            satisfied = True
        elif -lit not in true:
            true.add(-lit)
            trail.stack.append(-lit)
    return satisfied


class HintStructure(NamedTuple):
    """Hints of an addition line.

    ``prefix`` are the positive hints before the first negative one. Each
    group is ``(candidate, units)``: a negative hint ``-candidate`` followed
    by the positive hints up to the next negative hint.
    """

    prefix: Tuple[int, ...] = ()
    groups: Tuple[Tuple[int, Tuple[int, ...]], ...] = ()

    def tokens(self) -> List[int]:
        out = list(self.prefix)
        for cand, units in self.groups:
            out.append(-cand)
            out.extend(units)
        return out


class Addition(NamedTuple):
    id: int
    clause: Clause
    hints: HintStructure = HintStructure()

    def to_line(self) -> str:
        toks = [self.id, *self.clause, 0, *self.hints.tokens(), 0]
        return " ".join(map(str, toks))


class Deletion(NamedTuple):
    id: int
    targets: Tuple[int, ...] = ()

    def to_line(self) -> str:
        return " ".join(map(str, [self.id, "d", *self.targets, 0]))
