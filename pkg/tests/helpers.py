"""Shared strategies and small oracles for the test suite."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from gammakit.circuits import Circuit, Instruction
from gammakit.gamma import GammaParams, decode_instruction, instruction_count


def random_circuit_with_inputs(n: int, s: int, rng: random.Random) -> Circuit:
    """Uniform draw from each instruction codebook; test-only helper."""
    instructions = []
    for r in range(1, s + 1):
        code = rng.randrange(instruction_count(r, n))
        instructions.append(decode_instruction(code, r, n))
    return Circuit(n, tuple(instructions))


@st.composite
def circuits(draw, max_n: int = 3, max_s: int = 8):
    n = draw(st.integers(0, max_n))
    s = draw(st.integers(1, max_s))
    instructions = []
    for r in range(1, s + 1):
        code = draw(st.integers(0, instruction_count(r, n) - 1))
        instructions.append(decode_instruction(code, r, n))
    return Circuit(n, tuple(instructions))


def brute_force_falsified(params: GammaParams, assignment) -> set[int]:
    """Positions of all stream clauses false under the assignment."""
    from gammakit.gamma import enumerate_clauses

    out = set()
    for cl in enumerate_clauses(params):
        if not any(
            (assignment.get(abs(l)) == 1) == (l > 0) for l in cl.lits
        ):
            out.add(cl.position)
    return out


SMALL_GRID = [
    GammaParams(0, 1, 3),
    GammaParams(0, 1, 9),
    GammaParams(0, 2, 6),
    GammaParams(0, 2, 12),
    GammaParams(1, 2, 6),
    GammaParams(2, 3, 9),
]


def corrupt_proof(r, rng: random.Random):
    """Copy of a valid proof with one guaranteed-breaking field corruption.

    Returns (refutation, step index corrupted).  Every corruption makes
    the corrupted step itself invalid, so the checker must reject.
    """
    from gammakit.clauses import Clause
    from gammakit.proofs import INIT, ONEAX, RES, WEAK, ProofStep, Refutation

    steps = list(r.steps)
    while True:
        idx = rng.randrange(len(steps))
        step = steps[idx]
        kind = step.just[0]
        if kind == RES:
            if rng.random() < 0.5 or not step.clause.lits:
                bad = Clause(step.clause.lits | {"w99"}, step.clause.one)
            else:
                bad = Clause(frozenset(list(step.clause.lits)[1:]), step.clause.one)
            steps[idx] = ProofStep(bad, step.just)
            break
        if kind == INIT:
            i = step.just[1]
            others = [j for j in range(1, len(r.premises) + 1)
                      if r.premises[j - 1] != r.premises[i - 1]]
            if not others:
                continue
            steps[idx] = ProofStep(step.clause, (INIT, rng.choice(others)))
            break
        if kind == ONEAX:
            steps[idx] = ProofStep(Clause(step.clause.lits, False), step.just)
            break
        if kind == WEAK:
            premise = steps[step.just[1] - 1].clause
            if not premise.lits:
                continue
            drop = rng.choice(sorted(premise.lits))
            steps[idx] = ProofStep(Clause(step.clause.lits - {drop}, step.clause.one),
                                   step.just)
            break
    return Refutation(r.premises, steps), idx
