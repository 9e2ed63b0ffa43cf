"""Checker for LRAT clausal proofs of unsatisfiability."""

__version__ = "0.1.0"

from .checker import Checker, PropagationOutcome, Verdict, check_addition, check_at, check_rat, propagate_hints
from .core import (
    Addition,
    ClauseDb,
    DbError,
    Deletion,
    HintStructure,
    LratError,
    ParseError,
    Trail,
    negate_clause_onto_trail,
)
from .dimacs import CnfDocument, parse_dimacs, read_dimacs
from .lrat import ProofStream, parse_proof_line, read_proof
from .modes import RunResult, apply_unverified, run_entailment, run_partitioned, run_refutation, split_proof

__all__ = [
    "Addition", "Checker", "ClauseDb", "CnfDocument", "DbError", "Deletion", "HintStructure",
    "LratError", "ParseError", "ProofStream", "PropagationOutcome", "RunResult", "Trail", "Verdict",
    "apply_unverified", "check_addition", "check_at", "check_rat", "negate_clause_onto_trail",
    "parse_dimacs", "parse_proof_line", "propagate_hints", "read_dimacs", "read_proof",
    "run_entailment", "run_partitioned", "run_refutation", "split_proof",
]
