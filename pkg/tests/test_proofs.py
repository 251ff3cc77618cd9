import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gammakit.circuits import Circuit, Instruction, encode_df
from gammakit.clauses import Clause, clause
from gammakit.errors import CheckError
from gammakit.proofs import (INIT, ONEAX, RES, WEAK, ERRefutation, ProofStep,
                             Refutation, UNIQUENESS_STEPS_PER_GATE, check_er,
                             check_refutation, check_step, check_steps,
                             format_proof, parse_proof, resolve,
                             substitute_constants, uniqueness_proof)
from helpers import circuits, random_circuit_with_inputs


def tiny_refutation():
    prem = [clause("x1"), clause("-x1")]
    steps = [
        ProofStep(clause("x1"), (INIT, 1)),
        ProofStep(clause("-x1"), (INIT, 2)),
        ProofStep(Clause(), (RES, 1, 2, "x1")),
    ]
    return Refutation(prem, steps)


def test_one_axiom_accepted():
    assert check_step([], [], ProofStep(clause("1", "x3"), (ONEAX,))) is None


def test_one_axiom_needs_constant():
    assert check_step([], [], ProofStep(clause("x3"), (ONEAX,))) is not None


def test_resolution_to_empty():
    assert check_refutation(tiny_refutation()) is None


def test_weakening_must_be_superset():
    steps = [ProofStep(clause("x1", "y1"), (ONEAX,))]  # invalid on purpose later
    steps = [ProofStep(clause("1", "x1", "y1"), (ONEAX,)),
             ProofStep(clause("x1"), (WEAK, 1))]
    v = check_steps([], steps)
    assert v is not None and v.step == 2 and "superset" in v.reason


def test_forward_reference_rejected():
    steps = [
        ProofStep(clause("x1"), (INIT, 1)),
        ProofStep(Clause(), (RES, 1, 3, "x1")),
        ProofStep(clause("-x1"), (INIT, 2)),
    ]
    v = check_refutation(Refutation([clause("x1"), clause("-x1")], steps))
    assert v is not None and v.step == 2


def test_resolution_carries_one_flag():
    c = resolve(clause("x1", "1"), clause("-x1"), "x1")
    assert c.one and not c.lits


def test_er_with_one_extension():
    # one extension y1 := x1; the refutation routes both halves through it
    defs = Circuit(2, (Instruction("input", (1,)),))
    delta = [clause("x1", "x2"), clause("x1", "-x2"),
             clause("-x1", "x2"), clause("-x1", "-x2")]
    df = encode_df(defs)
    steps = [
        ProofStep(delta[0], (INIT, 1)),
        ProofStep(delta[1], (INIT, 2)),
        ProofStep(delta[2], (INIT, 3)),
        ProofStep(delta[3], (INIT, 4)),
        ProofStep(df[0], (INIT, 5)),      # {y1, -x1}
        ProofStep(df[1], (INIT, 6)),      # {-y1, x1}
        ProofStep(clause("x1"), (RES, 1, 2, "x2")),
        ProofStep(clause("-x1"), (RES, 3, 4, "x2")),
        ProofStep(clause("y1"), (RES, 7, 5, "x1")),
        ProofStep(clause("-y1", "x1"), (INIT, 6)),
        ProofStep(clause("x1"), (RES, 9, 10, "y1")),
        ProofStep(Clause(), (RES, 11, 8, "x1")),
    ]
    assert check_er(ERRefutation(delta, defs, steps)) is None


def test_er_rejects_non_input_premise_vars():
    e = ERRefutation([clause("y1")], None, [ProofStep(clause("y1"), (INIT, 1))])
    v = check_er(e)
    assert v is not None and v.step == 0


def test_substitute_example():
    prem = [clause("x1"), clause("-x1", "y1"), clause("-y1")]
    steps = [
        ProofStep(prem[0], (INIT, 1)),
        ProofStep(prem[1], (INIT, 2)),
        ProofStep(prem[2], (INIT, 3)),
        ProofStep(clause("y1"), (RES, 1, 2, "x1")),
        ProofStep(Clause(), (RES, 4, 3, "y1")),
    ]
    r = Refutation(prem, steps)
    out = substitute_constants(r, {"y1": 0})
    assert check_refutation(out) is None
    assert out.premises == [clause("x1"), clause("-x1"), clause("1")]


def test_substitute_empty_is_identity():
    r = tiny_refutation()
    out = substitute_constants(r, {})
    assert out.premises == r.premises and out.steps == r.steps


def test_substitute_pivot_becomes_weakening():
    r = tiny_refutation()
    out = substitute_constants(r, {"x1": 1})
    # the resolution on x1 must now be a weakening from the x1-false side
    assert out.steps[2].just == (WEAK, 2)
    assert check_refutation(out) is None


@given(st.integers(1, 3), st.integers(0, 400), st.data())
def test_substitute_random(n, seed, data):
    from gammakit.fixtures import complete_contradiction, dp_refutation, random_unsat_3cnf

    if n == 3 and seed % 2:
        delta, r = random_unsat_3cnf(4, seed)
    else:
        delta = complete_contradiction(n)
        r = dp_refutation(delta)
    names = sorted({v for c in delta for v in c.variables()})
    chosen = data.draw(st.sets(st.sampled_from(names), max_size=4))
    rho = {v: data.draw(st.integers(0, 1)) for v in sorted(chosen)}
    out = substitute_constants(r, rho)
    assert check_refutation(out) is None


def test_uniqueness_const1():
    c = Circuit(0, (Instruction("const1"),))
    r = uniqueness_proof(c)
    assert check_steps(r.premises, r.steps) is None
    derived = {s.clause for s in r.steps}
    assert clause("y1", "-z1") in derived and clause("-y1", "z1") in derived


def test_uniqueness_copy_gate():
    c = Circuit(1, (Instruction("input", (1,)),))
    r = uniqueness_proof(c)
    assert check_steps(r.premises, r.steps) is None
    derived = {s.clause for s in r.steps}
    assert clause("y1", "-z1") in derived and clause("-y1", "z1") in derived


@given(circuits(max_n=3, max_s=10))
def test_uniqueness_random(circ):
    r = uniqueness_proof(circ)
    assert check_steps(r.premises, r.steps) is None
    derived = {s.clause for s in r.steps}
    for i in (1, circ.s):
        assert clause(f"y{i}", f"-z{i}") in derived
        assert clause(f"-y{i}", f"z{i}") in derived
    assert len(r.steps) <= UNIQUENESS_STEPS_PER_GATE * circ.s


def test_uniqueness_scaling_constant():
    rng = random.Random(7)
    for n in range(4):
        circ = random_circuit_with_inputs(n, 50, rng)
        r = uniqueness_proof(circ)
        assert check_steps(r.premises, r.steps) is None
        assert len(r.steps) <= UNIQUENESS_STEPS_PER_GATE * circ.s


def test_proof_text_round_trip():
    r = tiny_refutation()
    text = format_proof(r)
    back = parse_proof(text)
    assert back.premises == r.premises and back.steps == r.steps


@given(st.integers(0, 10_000))
def test_check_step_rejects_corruptions(seed):
    from helpers import corrupt_proof

    r = uniqueness_proof(Circuit(1, (Instruction("input", (1,)), Instruction("not", (1,)))))
    assert check_steps(r.premises, r.steps) is None
    bad, idx = corrupt_proof(r, random.Random(seed))
    v = check_steps(bad.premises, bad.steps)
    assert v is not None and v.step <= idx + 1
