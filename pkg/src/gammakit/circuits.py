"""Straight-line circuits and their clause encoding.

A circuit computes values ``y_1 .. y_s`` from inputs ``x_1 .. x_n``; each
instruction assigns y_i one of: a constant, an input, the negation of an
earlier y, or the disjunction/conjunction of two earlier y's.

``encode_df`` produces the canonical definition CNF: three clauses per
instruction (dummy ``{1}`` clauses pad instructions that need fewer),
so instruction r owns exactly the clauses at positions 3r-2, 3r-1, 3r.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .clauses import Clause, make_lit
from .errors import FormatError, ParamError

KINDS = ("const0", "const1", "input", "not", "or", "and")


@dataclass(frozen=True)
class Instruction:
    kind: str
    args: tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParamError(f"unknown instruction kind {self.kind!r}")
        arity = {"const0": 0, "const1": 0, "input": 1, "not": 1, "or": 2, "and": 2}
        if len(self.args) != arity[self.kind]:
            raise ParamError(f"{self.kind} takes {arity[self.kind]} arguments")


@dataclass(frozen=True)
class Circuit:
    n: int
    instructions: tuple[Instruction, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ParamError("n must be >= 0")
        if not self.instructions:
            raise ParamError("a circuit needs at least one instruction")
        for i, ins in enumerate(self.instructions, start=1):
            if ins.kind == "input":
                if not 1 <= ins.args[0] <= self.n:
                    raise ParamError(f"y_{i}: input x_{ins.args[0]} out of range")
            elif ins.kind in ("not", "or", "and"):
                for j in ins.args:
                    if not 1 <= j < i:
                        raise ParamError(f"y_{i}: reference y_{j} not earlier")

    @property
    def s(self) -> int:
        return len(self.instructions)


def evaluate(circuit: Circuit, inputs: Sequence[int]) -> tuple[list[int], int]:
    """All y-values plus the output bit y_s."""
    if len(inputs) != circuit.n:
        raise ParamError(f"expected {circuit.n} input bits, got {len(inputs)}")
    y: list[int] = []
    for ins in circuit.instructions:
        if ins.kind == "const0":
            y.append(0)
        elif ins.kind == "const1":
            y.append(1)
        elif ins.kind == "input":
            y.append(int(inputs[ins.args[0] - 1]))
        elif ins.kind == "not":
            y.append(1 - y[ins.args[0] - 1])
        elif ins.kind == "or":
            y.append(y[ins.args[0] - 1] | y[ins.args[1] - 1])
        else:
            y.append(y[ins.args[0] - 1] & y[ins.args[1] - 1])
    return y, y[-1]


def triple_contents(ins: Instruction, r: int, n: int) -> tuple[frozenset[int], ...]:
    """The three definition clauses of instruction r, as index sets.

    Indices follow the occurrence convention used throughout: 0 stands
    for the constant 1, +/-u (u <= n) for x_u occurring positively or
    negatively, +/-(n+j) for y_j.  Dummy positions are {0}, i.e. {1}.
    """
    yr = n + r

    def yj(j: int) -> int:
        return n + j

    if ins.kind == "const0":
        return (frozenset({-yr}), frozenset({0}), frozenset({0}))
    if ins.kind == "const1":
        return (frozenset({yr}), frozenset({0}), frozenset({0}))
    if ins.kind == "input":
        u = ins.args[0]
        return (frozenset({yr, -u}), frozenset({-yr, u}), frozenset({0}))
    if ins.kind == "not":
        j = yj(ins.args[0])
        return (frozenset({yr, j}), frozenset({-yr, -j}), frozenset({0}))
    if ins.kind == "or":
        j, l = yj(ins.args[0]), yj(ins.args[1])
        return (frozenset({-j, yr}), frozenset({-l, yr}), frozenset({-yr, j, l}))
    # and: dual of the or triple
    j, l = yj(ins.args[0]), yj(ins.args[1])
    return (frozenset({-yr, j}), frozenset({-yr, l}), frozenset({yr, -j, -l}))


def content_to_clause(content: frozenset[int], n: int, tag: str = "y") -> Clause:
    lits = set()
    one = False
    for i in content:
        if i == 0:
            one = True
        elif abs(i) <= n:
            lits.add(make_lit("x", abs(i), i > 0))
        else:
            lits.add(make_lit(tag, abs(i) - n, i > 0))
    return Clause(frozenset(lits), one)


def encode_df(circuit: Circuit, tag: str = "y") -> list[Clause]:
    """The definition CNF: exactly 3s clauses of width <= 3."""
    out = []
    for r, ins in enumerate(circuit.instructions, start=1):
        for content in triple_contents(ins, r, circuit.n):
            out.append(content_to_clause(content, circuit.n, tag))
    return out


def format_instruction(i: int, ins: Instruction) -> str:
    if ins.kind == "const0":
        rhs = "0"
    elif ins.kind == "const1":
        rhs = "1"
    elif ins.kind == "input":
        rhs = f"x{ins.args[0]}"
    elif ins.kind == "not":
        rhs = f"not y{ins.args[0]}"
    else:
        rhs = f"{ins.kind} y{ins.args[0]} y{ins.args[1]}"
    return f"{i} := {rhs}"


def format_circuit(circuit: Circuit) -> str:
    lines = [f"circuit n={circuit.n} s={circuit.s}"]
    lines += [format_instruction(i, ins) for i, ins in enumerate(circuit.instructions, 1)]
    return "\n".join(lines) + "\n"


def _parse_instruction_rhs(toks: list[str], where: str) -> Instruction:
    def yref(tok: str) -> int:
        if not tok.startswith("y"):
            raise FormatError(f"{where}: expected y-reference, got {tok!r}")
        return int(tok[1:])

    if toks == ["0"]:
        return Instruction("const0")
    if toks == ["1"]:
        return Instruction("const1")
    if len(toks) == 1 and toks[0].startswith("x"):
        return Instruction("input", (int(toks[0][1:]),))
    if len(toks) == 2 and toks[0] == "not":
        return Instruction("not", (yref(toks[1]),))
    if len(toks) == 3 and toks[0] in ("or", "and"):
        return Instruction(toks[0], (yref(toks[1]), yref(toks[2])))
    raise FormatError(f"{where}: cannot parse instruction {' '.join(toks)!r}")


def parse_circuit(text: str) -> Circuit:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("circuit"):
        raise FormatError("missing 'circuit n=<n> s=<s>' header")
    head = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
    try:
        n, s = int(head["n"]), int(head["s"])
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad circuit header: {lines[0]!r}") from exc
    if len(lines) - 1 != s:
        raise FormatError(f"header says s={s} but {len(lines) - 1} instruction lines follow")
    instructions = []
    for i, ln in enumerate(lines[1:], start=1):
        toks = ln.split()
        if len(toks) < 3 or toks[0] != str(i) or toks[1] != ":=":
            raise FormatError(f"instruction line {i}: expected '{i} := ...', got {ln!r}")
        instructions.append(_parse_instruction_rhs(toks[2:], f"instruction {i}"))
    return Circuit(n, tuple(instructions))


def inline_circuit(circuit: Circuit) -> str:
    """Single-line form used in CNF comment headers."""
    return ";".join(format_instruction(i, ins) for i, ins in enumerate(circuit.instructions, 1))


def parse_inline_circuit(text: str, n: int) -> Circuit:
    instructions = []
    for i, part in enumerate(text.split(";"), start=1):
        toks = part.split()
        if len(toks) < 3 or toks[0] != str(i) or toks[1] != ":=":
            raise FormatError(f"bad inline instruction {part!r}")
        instructions.append(_parse_instruction_rhs(toks[2:], f"inline instruction {i}"))
    return Circuit(n, tuple(instructions))
