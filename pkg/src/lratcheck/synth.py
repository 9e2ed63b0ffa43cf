"""Synthetic chain formulas and proofs for benchmarking.

The formula over ``n`` variables is the implication chain

    (x1), (-x_i | x_{i+1}) for i < n, (-x_n)

which is unsatisfiable. The proof cycles over the chain positions: at each
position it re-derives the link clause from its previous copy (and deletes
the old copy), then derives and immediately deletes a skip clause
``(-x_i | x_{i+w})`` using ``w`` consecutive links as hints. It finishes by
walking unit clauses down the chain and deriving the empty clause. Every
hint list has at most 8 entries and the active formula stays at ``n + 1``
clauses.
"""

from __future__ import annotations

from typing import IO, Iterator

MAX_SKIP = 7


def chain_cnf(n: int) -> str:
    lines = ["p cnf %d %d" % (n, n + 1), "1 0"]
    lines += ["-%d %d 0" % (i, i + 1) for i in range(1, n)]
    lines.append("-%d 0" % n)
    return "\n".join(lines) + "\n"


def chain_proof(n: int, additions: int) -> Iterator[str]:
    """Yield LRAT lines with exactly ``additions`` addition steps."""
    if n < 2:
        raise ValueError("need at least 2 variables")
    if additions < n:
        raise ValueError("need at least %d additions to refute the chain" % n)
    # link[i] = current id of (-x_i | x_{i+1}); unit x1 is clause 1, (-x_n) is n+1
    link = [0] + [i + 1 for i in range(1, n)]
    next_id = n + 2
    budget = additions - n
    pos = 1
    while budget > 0:
        cid = next_id
        next_id += 1
        yield "%d -%d %d 0 %d 0\n" % (cid, pos, pos + 1, link[pos])
        yield "%d d %d 0\n" % (cid, link[pos])
        link[pos] = cid
        budget -= 1
        if budget > 0:
            w = min(1 + pos % MAX_SKIP, n - pos)
            cid = next_id
            next_id += 1
            hints = " ".join(str(link[j]) for j in range(pos, pos + w))
            yield "%d -%d %d 0 %s 0\n" % (cid, pos, pos + w, hints)
            yield "%d d %d 0\n" % (cid, cid)
            budget -= 1
        pos = pos + 1 if pos < n - 1 else 1

    unit = 1
    for i in range(1, n):
        cid = next_id
        next_id += 1
        yield "%d %d 0 %d %d 0\n" % (cid, i + 1, unit, link[i])
        yield "%d d %d %d 0\n" % (cid, unit, link[i])
        unit = cid
    yield "%d 0 %d %d 0\n" % (next_id, unit, n + 1)


def write_chain(cnf_out: IO, proof_out: IO, n: int, additions: int) -> None:
    cnf_out.write(chain_cnf(n))
    proof_out.writelines(chain_proof(n, additions))
