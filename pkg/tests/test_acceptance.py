"""One test per acceptance criterion; conftest prints a PASS/FAIL line for each."""

import random
import subprocess
import sys
import time

import pytest

from lratcheck.checker import check_addition, check_rat
from lratcheck.core import Addition, ClauseDb, HintStructure, ParseError, Trail
from lratcheck.dimacs import parse_dimacs, read_dimacs
from lratcheck.lrat import ProofStream, read_proof
from lratcheck.modes import apply_unverified, run_entailment, run_partitioned, run_refutation, split_proof
from lratcheck.oracle import brute_force_sat, redundancy_oracle
from lratcheck.synth import chain_cnf, write_chain

from conftest import FIXTURES, fixture_text
from reference import random_step, reference_at, reference_rat

SEED = 20240601

# (name, proof fixture, original text, mutated text); each original occurs once
MUTATIONS = [
    ("fig1 drop hint 3 of line 9", "fig1.lrat", "1 6 3 0", "1 6 0"),
    ("fig1 drop hint 8 of line 11", "fig1.lrat", "10 9 4 8 0", "10 9 4 0"),
    ("fig1 drop hint 5 of line 13", "fig1.lrat", "11 12 2 4 5 0", "11 12 2 4 0"),
    ("fig1 line 10 cites deleted 1", "fig1.lrat", "9 8 6 0", "9 8 1 0"),
    ("fig1 line 12 cites deleted 8", "fig1.lrat", "11 7 5 3 0", "11 8 5 3 0"),
    ("fig1 truncate hints of line 9", "fig1.lrat", "1 6 3 0\n", "1 6 3\n"),
    ("fig1 truncate deletion 9", "fig1.lrat", "d 1 0", "d 1"),
    ("fig1 drop clause 0 of line 13", "fig1.lrat", "13     0 11", "13       11"),
    ("fig2 drop group -5", "fig2.lrat", "-5 1 8 ", ""),
    ("fig2 drop token -5", "fig2.lrat", "-5 1 8", "1 8"),
    ("fig2 drop group -7", "fig2.lrat", "-7 6 1 0", "0"),
    ("fig2 reorder groups", "fig2.lrat", "-2 6 8 -5 1 8", "-5 1 8 -2 6 8"),
    ("fig2 drop hint 8 of group -2", "fig2.lrat", "-2 6 8", "-2 6"),
    ("fig2 drop hint 3 of line 10", "fig2.lrat", "9 7 5 3 0", "9 7 5 0"),
    ("fig2 negate pivot", "fig2.lrat", "9 1 0 -2", "9 -1 0 -2"),
    ("fig2 candidate -2 as -3", "fig2.lrat", "-2 6 8", "-3 6 8"),
    ("fig2 line 11 cites deleted 8", "fig2.lrat", "9 10 2 4 5 0", "9 10 2 4 8 0"),
    ("fig2 truncate deletion 9", "fig2.lrat", "d 8 6 1 0", "d 8 6 1"),
    # swapping the first two literals is neutral on both figures (AT lines
    # ignore order and the only RAT clause is a unit), so use rat2
    ("rat2 swap pivot of line 10", "rat2.lrat", "10 1 -2 0", "10 -2 1 0"),
]


def _reference_accepts(formula, line):
    prefix, groups = list(line.hints.prefix), list(line.hints.groups)
    if not groups and reference_at(formula, line.clause, prefix):
        return True
    if not line.clause:
        return False
    return reference_rat(formula, line.clause, prefix, groups)


@pytest.mark.parametrize("name", ["fig1", "fig2"])
def test_fixture_verification(name):
    cnf_text, proof_text = fixture_text(name + ".cnf"), fixture_text(name + ".lrat")
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        res = run_refutation(parse_dimacs(cnf_text), ProofStream(proof_text))
        best = min(best, time.perf_counter() - t0)
        assert res.verified and res.empty_clause_derived
    print("%s verified in %.2f ms" % (name, best * 1e3))
    assert best < 0.010


def test_mutation_suite():
    cnf = read_dimacs(FIXTURES / "fig1.cnf")
    assert len(MUTATIONS) >= 12
    for name, fixture, old, new in MUTATIONS:
        text = fixture_text(fixture)
        assert text.count(old) == 1, name
        mutated = text.replace(old, new)
        res = run_refutation(cnf, ProofStream(mutated))
        assert not res.verified, name
        print("%-32s -> %s" % (name, res.failure.describe()))
        if res.failure.parse_error:
            continue
        # every step accepted before the failure is redundant, and the
        # independent reference rejects the failing addition as well
        lines = read_proof(mutated)
        db = cnf.to_db()
        for lineno, pl in lines:
            if lineno == res.failure.lineno:
                if isinstance(pl, Addition) and res.failure.reason != "IdReuse":
                    assert not _reference_accepts(dict(db.items()), pl), name
                break
            if isinstance(pl, Addition):
                assert redundancy_oracle(db, pl.clause), name
            db = apply_unverified(db, [pl])


def _corpus(count):
    rng = random.Random(SEED)
    for _ in range(count):
        n, clauses, active, clause, prefix, groups = random_step(rng)
        db = ClauseDb.from_clauses(clauses)
        db.delete([cid for cid in range(1, len(clauses) + 1) if cid not in active])
        yield db, active, clause, prefix, groups, len(clauses) + 1


def test_soundness_random_steps():
    accepted = rejected = informative = 0
    for db, active, clause, prefix, groups, cid in _corpus(1000):
        line = Addition(cid, clause, HintStructure(tuple(prefix), tuple(groups)))
        try:
            ok = check_addition(db, Trail(), line).ok
        except ParseError:
            ok = False
        if ok:
            accepted += 1
            formula = list(active.values())
            assert redundancy_oracle(formula, clause), (active, line)
            # on an unsatisfiable formula the oracle holds vacuously
            informative += brute_force_sat(formula).satisfiable
        else:
            rejected += 1
    print("accepted %d (%d on satisfiable formulas), rejected %d, violations 0"
          % (accepted, informative, rejected))
    assert accepted > 100 and rejected > 100 and informative > 50


def test_completeness_scan_equivalence():
    compared = agree_true = 0
    for db, active, clause, prefix, groups, _ in _corpus(1000):
        if not clause:
            continue
        hints = HintStructure(tuple(prefix), tuple(groups))
        ours = check_rat(db, Trail(), clause, hints).ok
        ref = reference_rat(active, clause, prefix, groups)
        assert ours == ref, (active, clause, prefix, groups)
        compared += 1
        agree_true += ours
    print("compared %d instances, %d accepted by both" % (compared, agree_true))
    assert agree_true > 0 and agree_true < compared


def test_partition_equivalence():
    cnf = read_dimacs(FIXTURES / "fig1.cnf")
    lines = read_proof(fixture_text("fig1.lrat"))
    whole = run_refutation(cnf, lines)
    assert whole.verified
    cuts = range(1, len(lines))
    assert len(cuts) == 8
    for cut in cuts:
        for jobs in (1, 2):
            res = run_partitioned(cnf, split_proof(lines, [cut]), jobs=jobs)
            assert res.verified == whole.verified, (cut, jobs)
            assert (res.additions, res.deletion_lines) == (whole.additions, whole.deletion_lines)


RSS_CHILD = r"""
import resource, sys
from lratcheck.dimacs import read_dimacs
from lratcheck.lrat import ProofStream
from lratcheck.modes import run_refutation
with ProofStream.open(sys.argv[2]) as s:
    res = run_refutation(read_dimacs(sys.argv[1]), s)
assert res.verified
print(resource.getrusage(resource.RUSAGE_SELF).ru_maxrss)
"""


def test_performance(tmp_path):
    cnf = tmp_path / "chain.cnf"
    sizes = {}
    for adds in (100_000, 200_000):
        proof = tmp_path / ("chain%d.lrat" % adds)
        with open(cnf, "w") as c, open(proof, "w") as p:
            write_chain(c, p, 1000, adds)
        sizes[adds] = proof
    assert cnf.read_text() == chain_cnf(1000)

    with ProofStream.open(sizes[100_000]) as stream:
        t0 = time.perf_counter()
        res = run_refutation(read_dimacs(cnf), stream)
        elapsed = time.perf_counter() - t0
    assert res.verified and res.additions == 100_000
    print("100k additions in %.2f s" % elapsed)
    assert elapsed < 5.0

    rss = {}
    for adds, proof in sizes.items():
        out = subprocess.run([sys.executable, "-c", RSS_CHILD, str(cnf), str(proof)],
                             capture_output=True, text=True, check=True)
        rss[adds] = int(out.stdout.split()[-1])
    growth = rss[200_000] / rss[100_000] - 1
    print("peak RSS %d KiB -> %d KiB (%+.1f%%)" % (rss[100_000], rss[200_000], growth * 100))
    assert abs(growth) <= 0.10


def test_bpt_not_reproducible_surrogate(tmp_path):
    # The large external transformation proof is out of reach; exercise the
    # same machinery instead: a transformation proof checked by entailment
    # against its computed target, and the same proof checked in parts.
    cnf = read_dimacs(FIXTURES / "fig1.cnf")
    lines = read_proof(fixture_text("fig1.lrat"))
    transform = lines[:6]
    target = apply_unverified(cnf, transform)
    assert run_entailment(cnf, transform, target).verified
    assert not run_entailment(cnf, transform[:4], target).verified
    assert run_partitioned(cnf, split_proof(lines, [2, 4, 6]), jobs=2).verified
    print("external proof not reproduced; entailment and partition surrogates pass")


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "lratcheck", *map(str, args)], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_cli_contract(tmp_path):
    cnf = FIXTURES / "fig1.cnf"
    assert _cli("check", cnf, FIXTURES / "fig1.lrat") == (0, "s VERIFIED\n", "")

    assert _cli("check", cnf, FIXTURES / "fig2-broken.lrat") == (
        1, "s NOT VERIFIED\n", "c error: line 1, id 9: MissingCandidate 5\n")

    deleted = tmp_path / "deleted.lrat"
    deleted.write_text("9 1 2 0 1 6 3 0\n9 d 1 0\n10 1 3 0 9 8 1 0\n")
    assert _cli("check", cnf, deleted) == (1, "s NOT VERIFIED\n", "c error: line 3, id 10: UnknownClause 1\n")

    short = tmp_path / "short.lrat"
    short.write_text("9 1 2 0 1 6 0\n")
    assert _cli("check", cnf, short) == (1, "s NOT VERIFIED\n", "c error: line 1, id 9: NoConflictAtEnd\n")

    broken = tmp_path / "broken.lrat"
    broken.write_text("9 1 2 0 1 6 3\n")
    code, out, err = _cli("check", cnf, broken)
    assert (code, out) == (2, "s NOT VERIFIED\n") and "MissingTerminator" in err

    code, out, err = _cli("check", cnf, tmp_path / "missing.lrat")
    assert (code, out) == (2, "s NOT VERIFIED\n")
