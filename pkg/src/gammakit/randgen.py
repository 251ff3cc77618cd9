"""Random always-unsatisfiable CNFs from input-free circuits.

The process draws, per position, a uniformly random legal instruction,
fixes the corresponding definition bits inside the family Gamma(0,s,k),
and emits the residual clause set.  Every instance is unsatisfiable:
a satisfying assignment would describe a k-step refutation of the
definition CNF of an actual circuit, which evaluates happily.

Randomness runs through one numpy substream per instruction index, so
identical seeds give identical circuits and growing s never perturbs
the instructions already drawn.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .circuits import Circuit, inline_circuit, triple_contents
from .dimacs import write_dimacs
from .errors import ParamError
from .gamma import (GammaParams, encode_instruction, enumerate_clauses,
                    numbering_comment)


@dataclass(frozen=True)
class RandomProcessConfig:
    s: int
    k: int
    seed: int
    simplify: bool = True

    def params(self) -> GammaParams:
        return GammaParams(0, self.s, self.k)


def random_circuit(s: int, seed: int) -> Circuit:
    """Input-free circuit with uniformly random legal instructions."""
    if s < 1:
        raise ParamError("need s >= 1")
    from .gamma import decode_instruction, instruction_count

    instructions = []
    for r in range(1, s + 1):
        stream = np.random.Generator(np.random.PCG64(
            np.random.SeedSequence(entropy=seed, spawn_key=(r,))))
        code = int(stream.integers(instruction_count(r, 0)))
        instructions.append(decode_instruction(code, r, 0))
    return Circuit(0, tuple(instructions))


def definition_bits(params: GammaParams, circuit: Circuit) -> dict[int, int]:
    """Values of every variable of steps 1..3s under the circuit's CNF."""
    if circuit.n != 0 or circuit.s != params.s:
        raise ParamError("circuit shape does not match the parameters")
    bits: dict[int, int] = {}
    for r, ins in enumerate(circuit.instructions, start=1):
        code = encode_instruction(ins, r, 0)
        contents = triple_contents(ins, r, 0)
        for pos in (1, 2, 3):
            u = 3 * (r - 1) + pos
            for v in range(1, params.t + 1):
                bits[params.var_p(u, v)] = (code >> (v - 1)) & 1
            for i in params.q_indices():
                bits[params.var_q(u, i)] = int(i in contents[pos - 1])
    return bits


@dataclass
class GammaOfCircuit:
    config: RandomProcessConfig
    circuit: Circuit
    clauses: list[tuple[int, ...]]
    num_vars: int

    def comment_lines(self) -> list[str]:
        cfg = self.config
        return ([f"seed={cfg.seed} s={cfg.s} k={cfg.k} "
                 f"circuit={inline_circuit(self.circuit)}"]
                + numbering_comment(cfg.params()))

    def write_dimacs(self, sink) -> None:
        write_dimacs(sink, self.num_vars, len(self.clauses), self.clauses,
                     comments=self.comment_lines())


def gamma_of_circuit(config: RandomProcessConfig, circuit: Circuit) -> GammaOfCircuit:
    """Substitute the circuit's definition bits into the family.

    With simplify (the default), satisfied clauses are dropped and false
    literals deleted, leaving only variables of steps above 3s; without
    it, the full family is emitted together with unit clauses pinning
    the substituted bits (the two forms are equisatisfiable).
    """
    params = config.params()
    bits = definition_bits(params, circuit)
    if not config.simplify:
        clauses = [c.lits for c in enumerate_clauses(params)]
        clauses += [((v if b else -v),) for v, b in sorted(bits.items())]
        return GammaOfCircuit(config, circuit, clauses, params.num_vars)
    residual = []
    for cl in enumerate_clauses(params):
        out = []
        satisfied = False
        for lit in cl.lits:
            b = bits.get(abs(lit))
            if b is None:
                out.append(lit)
            elif (lit > 0) == bool(b):
                satisfied = True
                break
        if not satisfied:
            residual.append(tuple(out))
    return GammaOfCircuit(config, circuit, residual, params.num_vars)


def generate_instance(config: RandomProcessConfig) -> GammaOfCircuit:
    return gamma_of_circuit(config, random_circuit(config.s, config.seed))
