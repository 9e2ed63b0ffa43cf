"""Brute-force satisfiability by enumerating every assignment.

Test support only. Assignments are enumerated as integers ``0 .. 2**n - 1``
with variable 1 as the most significant bit, so the first witness found is
the lexicographically smallest (false < true).
"""

from __future__ import annotations

import os
from typing import Dict, Iterable, NamedTuple, Optional, Sequence, Union

import numpy as np

from .core import ClauseDb, LratError

DEFAULT_MAX_VARS = 16


class BudgetExceeded(LratError):
    pass


class SatResult(NamedTuple):
    satisfiable: bool
    witness: Optional[Dict[int, bool]]

    def __bool__(self) -> bool:
        return self.satisfiable


def default_max_vars() -> int:
    return int(os.environ.get("LRAT_MAX_VARS", DEFAULT_MAX_VARS))


def _clauses(formula) -> list:
    if isinstance(formula, ClauseDb):
        return formula.clauses()
    clauses = getattr(formula, "clauses", formula)
    return [tuple(c) for c in clauses]


def brute_force_sat(formula: Union[ClauseDb, Iterable[Sequence[int]]], max_vars: Optional[int] = None, num_vars: int = 0) -> SatResult:
    clauses = _clauses(formula)
    if max_vars is None:
        max_vars = default_max_vars()
    n = max([num_vars] + [abs(lit) for c in clauses for lit in c])
    if n > max_vars:
        raise BudgetExceeded("BudgetExceeded", "%d variables > %d" % (n, max_vars))
    if any(len(c) == 0 for c in clauses):
        return SatResult(False, None)

    codes = np.arange(1 << n, dtype=np.int64)
    # bits[v] is the value of variable v under each assignment
    bits = [None] + [((codes >> (n - v)) & 1).astype(bool) for v in range(1, n + 1)]
    ok = np.ones(1 << n, dtype=bool)
    for clause in clauses:
        sat = np.zeros(1 << n, dtype=bool)
        for lit in clause:
            sat |= bits[lit] if lit > 0 else ~bits[-lit]
        ok &= sat
        if not ok.any():
            return SatResult(False, None)
    first = int(np.argmax(ok))
    if not ok[first]:
        return SatResult(False, None)
    witness = {v: bool((first >> (n - v)) & 1) for v in range(1, n + 1)}
    return SatResult(True, witness)


def satisfies(assignment: Dict[int, bool], clauses: Iterable[Sequence[int]]) -> bool:
    return all(any(assignment.get(abs(lit), False) == (lit > 0) for lit in c) for c in clauses)


def redundancy_oracle(formula, clause: Sequence[int], max_vars: Optional[int] = None) -> bool:
    """True iff the formula is unsatisfiable or stays satisfiable with ``clause``."""
    clauses = _clauses(formula)
    n = max([abs(lit) for c in clauses for lit in c] + [abs(lit) for lit in clause] + [0])
    if not brute_force_sat(clauses, max_vars, n):
        return True
    return brute_force_sat(clauses + [tuple(clause)], max_vars, n).satisfiable
