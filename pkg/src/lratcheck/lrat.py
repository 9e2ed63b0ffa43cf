"""Streaming LRAT proof parser.

One proof line per physical line::

    <id> <lit>* 0 <pos-id>* (<neg-id> <pos-id>*)* 0     addition
    <id> d <id>* 0                                      deletion

Spaces, tabs and a trailing ``\\r`` are insignificant. Blank lines are skipped.
"""

from __future__ import annotations

import io
from typing import IO, Iterable, Iterator, List, Sequence, Tuple, Union

from .core import Addition, Deletion, HintStructure, ParseError

ProofLine = Union[Addition, Deletion]

INT64_MAX = 2**63 - 1


def _ints(toks: Sequence[str], lineno: int) -> List[int]:
    out = []
    for tok in toks:
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError("NonIntegerToken", repr(tok), lineno) from None
    return out


def split_hints(hints: Sequence[int]) -> HintStructure:
    """Split a flat hint list at its negative entries."""
    if not hints or min(hints) > 0:
        return HintStructure(tuple(hints), ())
    prefix: List[int] = []
    groups: List[Tuple[int, Tuple[int, ...]]] = []
    current = prefix
    cand = 0
    for h in hints:
        if h < 0:
            if cand:
                groups.append((cand, tuple(current)))
            cand = -h
            current = []
        else:
            current.append(h)
    if cand:
        groups.append((cand, tuple(current)))
        return HintStructure(tuple(prefix), tuple(groups))
    return HintStructure(tuple(prefix), ())


def parse_proof_line(line: Union[str, Sequence[str]], strict: bool = True, lineno: int = 0) -> ProofLine:
    toks = line.split() if isinstance(line, str) else list(line)
    if not toks:
        raise ParseError("EmptyLine", "", lineno)

    deletion = len(toks) > 1 and toks[1] == "d"
    if deletion:
        del toks[1]
    try:
        nums = list(map(int, toks))
    except ValueError:
        nums = _ints(toks, lineno)
    if max(nums) > INT64_MAX or min(nums) < -INT64_MAX:
        raise ParseError("IntegerOverflow", "", lineno)
    lead = nums[0]
    if lead <= 0:
        raise ParseError("ZeroId", "line id must be positive", lineno)

    if deletion:
        if len(nums) < 2 or nums[-1] != 0:
            raise ParseError("MissingTerminator", "deletion not 0-terminated", lineno, lead)
        targets = nums[1:-1]
        if targets and min(targets) <= 0:
            for t in targets:
                if t < 0:
                    raise ParseError("NegativeIdInDeletion", "", lineno, -t)
                if t == 0:
                    raise ParseError("TrailingTokens", "tokens after terminating 0", lineno, lead)
        return Deletion(lead, tuple(targets))

    try:
        z = nums.index(0, 1)
    except ValueError:
        raise ParseError("MissingTerminator", "clause not 0-terminated", lineno, lead) from None
    hints = nums[z + 1:]
    if not hints or hints[-1] != 0:
        raise ParseError("MissingTerminator", "hints not 0-terminated", lineno, lead)
    hints.pop()
    if 0 in hints:
        raise ParseError("TrailingTokens", "tokens after terminating 0", lineno, lead)
    clause = tuple(nums[1:z])

    if len({abs(lit) for lit in clause}) != len(clause):
        raise ParseError("DuplicateOrComplementaryLiteral", str(list(clause)), lineno, lead)
    if strict:
        for a, b in zip(clause[1:], clause[2:]):
            if abs(a) >= abs(b):
                raise ParseError("UnsortedClause", str(list(clause)), lineno, lead)

    hs = split_hints(hints)
    if strict:
        cands = [c for c, _ in hs.groups]
        for a, b in zip(cands, cands[1:]):
            if a >= b:
                raise ParseError("UnsortedCandidates", "-%d before -%d" % (a, b), lineno, lead)
    return Addition(lead, clause, hs)


class ProofStream:
    """Iterate ``ProofLine`` values from a text source without loading it all.

    ``lineno`` is the physical line of the most recent proof line and
    ``last_line_id`` its leading id. Strict mode requires leading ids to be
    nondecreasing.
    """

    def __init__(self, source: Union[str, bytes, IO, Iterable[str]], strict: bool = True):
        if isinstance(source, bytes):
            source = io.StringIO(source.decode("ascii"))
        elif isinstance(source, str):
            source = io.StringIO(source)
        self._source = source
        self.strict = strict
        self.lineno = 0
        self.last_line_id = 0

    @classmethod
    def open(cls, path, strict: bool = True) -> "ProofStream":
        return cls(open(path, "r", encoding="ascii"), strict=strict)

    def __enter__(self) -> "ProofStream":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def close(self) -> None:
        close = getattr(self._source, "close", None)
        if close is not None:
            close()

    def __iter__(self) -> Iterator[ProofLine]:
        strict = self.strict
        lineno = self.lineno
        for raw in self._source:
            lineno += 1
            if isinstance(raw, bytes):
                raw = raw.decode("ascii")
            toks = raw.split()
            if not toks:
                continue
            self.lineno = lineno
            pl = parse_proof_line(toks, strict, lineno)
            if strict and pl.id < self.last_line_id:
                raise ParseError(
                    "DecreasingLineId", "%d after %d" % (pl.id, self.last_line_id), lineno, pl.id
                )
            self.last_line_id = pl.id
            yield pl


def read_proof(source, strict: bool = True) -> List[Tuple[int, ProofLine]]:
    """Parse a whole proof into ``(lineno, line)`` pairs. For small inputs."""
    stream = ProofStream(source, strict)
    return [(stream.lineno, pl) for pl in stream]


def format_proof(lines: Iterable[ProofLine]) -> str:
    return "".join(pl.to_line() + "\n" for pl in lines)


def parse_hints(text: str) -> HintStructure:
    """Convenience: ``"-2 6 8 -5 1 8"`` -> HintStructure."""
    return split_hints([int(t) for t in text.split()])
