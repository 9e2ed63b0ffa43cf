"""DIMACS CNF reading and writing."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import IO, Iterable, List, Sequence, Union

from .core import Clause, ClauseDb, ParseError

INT64_MAX = 2**63 - 1


@dataclass
class CnfDocument:
    num_vars_declared: int
    clauses: List[Clause]
    num_clauses_declared: int = -1
    warnings: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.num_clauses_declared < 0:
            self.num_clauses_declared = len(self.clauses)

    @property
    def max_var(self) -> int:
        return max((abs(lit) for c in self.clauses for lit in c), default=0)

    def to_db(self, strict: bool = True) -> ClauseDb:
        return ClauseDb.from_clauses(self.clauses, strict=strict)

    def __eq__(self, other):
        if not isinstance(other, CnfDocument):
            return NotImplemented
        return (self.num_vars_declared, self.clauses) == (other.num_vars_declared, other.clauses)


Source = Union[str, bytes, IO, Iterable[str]]


def _lines(source: Source) -> Iterable[str]:
    if isinstance(source, bytes):
        return io.StringIO(source.decode("ascii"))
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def _to_int(tok: str, lineno: int) -> int:
    try:
        value = int(tok)
    except ValueError:
        raise ParseError("NonIntegerToken", repr(tok), lineno) from None
    if not -INT64_MAX <= value <= INT64_MAX:
        raise ParseError("IntegerOverflow", tok, lineno)
    return value


def parse_dimacs(source: Source, strict: bool = True) -> CnfDocument:
    """Parse DIMACS text. Clauses may span lines; the 0 terminator decides.

    Clauses are kept verbatim, duplicates and tautologies included.
    """
    header = None
    clauses: List[Clause] = []
    current: List[int] = []
    lineno = 0
    for lineno, raw in enumerate(_lines(source), 1):
        if isinstance(raw, bytes):
            raw = raw.decode("ascii")
        toks = raw.split()
        if not toks or toks[0].startswith("c"):
            continue
        if toks[0] == "p":
            if header is not None:
                raise ParseError("DuplicateHeader", "", lineno)
            if len(toks) != 4 or toks[1] != "cnf":
                raise ParseError("MissingHeader", "malformed header %r" % raw.strip(), lineno)
            nv, nc = _to_int(toks[2], lineno), _to_int(toks[3], lineno)
            if nv < 0 or nc < 0:
                raise ParseError("MissingHeader", "negative header count", lineno)
            header = (nv, nc)
            continue
        if header is None:
            raise ParseError("MissingHeader", "clause data before 'p cnf' line", lineno)
        for tok in toks:
            lit = _to_int(tok, lineno)
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                current.append(lit)
    if header is None:
        raise ParseError("MissingHeader", "no 'p cnf' line", lineno)
    if current:
        raise ParseError("LiteralAfterEof", "unterminated clause %s" % current, lineno)

    doc = CnfDocument(header[0], clauses, header[1])
    problems = []
    if header[1] != len(clauses):
        problems.append("declared %d clauses, found %d" % (header[1], len(clauses)))
    if doc.max_var > header[0]:
        problems.append("declared %d variables, found variable %d" % (header[0], doc.max_var))
    for msg in problems:
        if strict:
            raise ParseError("HeaderMismatch", msg, lineno)
        doc.warnings.append("HeaderMismatch " + msg)
    return doc


def read_dimacs(path, strict: bool = True) -> CnfDocument:
    with open(path, "r", encoding="ascii") as f:
        return parse_dimacs(f, strict=strict)


def format_dimacs(clauses: Sequence[Sequence[int]], num_vars: int = -1) -> str:
    if num_vars < 0:
        num_vars = max((abs(lit) for c in clauses for lit in c), default=0)
    out = ["p cnf %d %d" % (num_vars, len(clauses))]
    for clause in clauses:
        out.append(" ".join(map(str, [*clause, 0])))
    return "\n".join(out) + "\n"


def dump_dimacs(doc: CnfDocument) -> str:
    return format_dimacs(doc.clauses, doc.num_vars_declared)
