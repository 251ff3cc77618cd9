"""Refutations in resolution with weakening and 1-axioms, and their checkers.

The calculus has four justifications:

* ``init i``    -- the clause is premise number i (1-based),
* ``oneax``     -- any clause containing the constant 1,
* ``weak v``    -- a superset of the clause at earlier step v,
* ``res v w l`` -- standard resolution of steps v and w on pivot literal
  l: (clause(v) - {l}) | (clause(w) - {neg l}); the constant-1 flag of
  either premise carries over.

Checkers report the first violation instead of raising, so they can be
used both as assertions and as negative-test oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .circuits import Circuit, encode_df
from .clauses import Clause, format_clause, lit_var, neg, parse_clause
from .errors import CheckError, FormatError

INIT, ONEAX, WEAK, RES = "init", "oneax", "weak", "res"

#: step budget of uniqueness_proof per instruction (documented constant)
UNIQUENESS_STEPS_PER_GATE = 14


@dataclass(frozen=True)
class ProofStep:
    clause: Clause
    just: tuple  # (INIT, i) | (ONEAX,) | (WEAK, v) | (RES, v, w, pivot)


@dataclass
class Refutation:
    premises: list[Clause]
    steps: list[ProofStep]

    @property
    def final(self) -> Clause:
        return self.steps[-1].clause if self.steps else Clause()


@dataclass(frozen=True)
class Violation:
    step: int  # 1-based step index, 0 for structural problems
    reason: str

    def __str__(self) -> str:
        return f"step {self.step}: {self.reason}"


def resolve(cv: Clause, cw: Clause, pivot: str) -> Clause:
    """The resolvent; assumes pivot in cv and its negation in cw."""
    lits = (cv.lits - {pivot}) | (cw.lits - {neg(pivot)})
    return Clause(frozenset(lits), cv.one or cw.one)


def check_step(premises: list[Clause], earlier: list[ProofStep], step: ProofStep) -> Optional[str]:
    """None if the step is valid, else a description of the violation."""
    kind = step.just[0]
    if kind == INIT:
        i = step.just[1]
        if not 1 <= i <= len(premises):
            return f"init index {i} out of range 1..{len(premises)}"
        if step.clause != premises[i - 1]:
            return f"clause differs from premise {i} ({format_clause(premises[i - 1])})"
        return None
    if kind == ONEAX:
        if not step.clause.one:
            return "1-axiom clause does not contain the constant 1"
        return None
    if kind == WEAK:
        v = step.just[1]
        if not 1 <= v <= len(earlier):
            return f"weakening reference {v} is not an earlier step"
        if not earlier[v - 1].clause.subsumes(step.clause):
            return f"not a superset of step {v}"
        return None
    if kind == RES:
        _, v, w, pivot = step.just
        if not 1 <= v <= len(earlier):
            return f"resolution reference {v} is not an earlier step"
        if not 1 <= w <= len(earlier):
            return f"resolution reference {w} is not an earlier step"
        cv, cw = earlier[v - 1].clause, earlier[w - 1].clause
        if pivot not in cv:
            return f"pivot {pivot} not in step {v}"
        if neg(pivot) not in cw:
            return f"literal {neg(pivot)} not in step {w}"
        if step.clause != resolve(cv, cw, pivot):
            return f"clause is not the resolvent of steps {v} and {w} on {pivot}"
        return None
    return f"unknown justification {kind!r}"


def check_steps(premises: list[Clause], steps: list[ProofStep]) -> Optional[Violation]:
    """Validate every step of a derivation (no final-clause requirement)."""
    for idx, step in enumerate(steps, start=1):
        reason = check_step(premises, steps[: idx - 1], step)
        if reason is not None:
            return Violation(idx, reason)
    return None


def check_refutation(r: Refutation) -> Optional[Violation]:
    v = check_steps(r.premises, r.steps)
    if v is not None:
        return v
    if not r.steps:
        return Violation(0, "no steps")
    if not r.final.is_empty():
        return Violation(len(r.steps), "final clause is not empty")
    return None


def ensure_checked(r: Refutation) -> None:
    v = check_refutation(r)
    if v is not None:
        raise CheckError(v.step, v.reason)


@dataclass
class ERRefutation:
    """Extension definitions plus a refutation over premises + their CNF.

    The refutation's premise list is, by convention, the input clause
    set delta followed by the 3s definition clauses of ``defs`` (tag y).
    Freshness and ordering of the extension variables are exactly the
    well-formedness conditions of ``defs`` as a circuit.
    """

    delta: list[Clause]
    defs: Optional[Circuit]
    steps: list[ProofStep]

    def premises(self) -> list[Clause]:
        df = encode_df(self.defs) if self.defs is not None else []
        return list(self.delta) + df


def check_er(e: ERRefutation) -> Optional[Violation]:
    for d in e.delta:
        for var in d.variables():
            if not var.startswith("x"):
                return Violation(0, f"premise variable {var} is not an input variable")
    return check_refutation(Refutation(e.premises(), e.steps))


def substitute_constants(r: Refutation, rho: dict[str, int]) -> Refutation:
    """Apply a partial assignment to a checked refutation.

    Literals false under rho are deleted; a clause with a true literal
    gains the constant 1 (surviving unassigned literals are kept).
    Resolutions whose pivot variable is assigned become weakenings from
    the premise whose pivot occurrence died; every other justification
    is preserved.  The result refutes the substituted premise list.
    """
    ensure_checked(r)

    def sub(c: Clause) -> Clause:
        lits, one = set(), c.one
        for lit in c.lits:
            val = rho.get(lit_var(lit))
            if val is None:
                lits.add(lit)
            elif bool(val) == (not lit.startswith("-")):
                one = True
            # false literals are dropped
        return Clause(frozenset(lits), one)

    new_premises = [sub(p) for p in r.premises]
    new_steps: list[ProofStep] = []
    for step in r.steps:
        just = step.just
        if just[0] == RES:
            _, v, w, pivot = just
            val = rho.get(lit_var(pivot))
            if val is not None:
                pivot_true = bool(val) == (not pivot.startswith("-"))
                # the premise whose pivot occurrence became false
                # subsumes the substituted resolvent
                just = (WEAK, w if pivot_true else v)
        new_steps.append(ProofStep(sub(step.clause), just))
    return Refutation(new_premises, new_steps)


def uniqueness_proof(circuit: Circuit, tag_a: str = "y", tag_b: str = "z") -> Refutation:
    """Derive, for every i, the two clauses stating that both definition
    copies compute the same value: {a_i, -b_i} and {-a_i, b_i}.

    Premises are encode_df(circuit, tag_a) + encode_df(circuit, tag_b);
    the derivation takes at most UNIQUENESS_STEPS_PER_GATE steps per
    instruction and passes check_steps.
    """
    prem_a = encode_df(circuit, tag_a)
    prem_b = encode_df(circuit, tag_b)
    premises = prem_a + prem_b
    steps: list[ProofStep] = []
    pos_ab: dict[int, int] = {}  # step index of {a_i, -b_i}
    pos_ba: dict[int, int] = {}  # step index of {-a_i, b_i}

    def push(cl: Clause, just: tuple) -> int:
        steps.append(ProofStep(cl, just))
        return len(steps)

    def init_a(r: int, pos: int) -> int:
        idx = 3 * (r - 1) + pos
        return push(prem_a[idx - 1], (INIT, idx))

    def init_b(r: int, pos: int) -> int:
        idx = 3 * (r - 1) + pos
        return push(prem_b[idx - 1], (INIT, len(prem_a) + idx))

    def res(v: int, w: int, pivot: str) -> int:
        cl = resolve(steps[v - 1].clause, steps[w - 1].clause, pivot)
        return push(cl, (RES, v, w, pivot))

    def lit(tag: str, i: int, positive: bool) -> str:
        return f"{tag}{i}" if positive else f"-{tag}{i}"

    for r, ins in enumerate(circuit.instructions, start=1):
        if ins.kind in ("const0", "const1"):
            positive = ins.kind == "const1"
            ua = init_a(r, 1)  # {a_r} or {-a_r}
            ub = init_b(r, 1)
            # {a_r, -b_r} extends whichever unit it contains
            pos_ab[r] = push(Clause(frozenset({lit(tag_a, r, True), lit(tag_b, r, False)})),
                             (WEAK, ua if positive else ub))
            pos_ba[r] = push(Clause(frozenset({lit(tag_a, r, False), lit(tag_b, r, True)})),
                             (WEAK, ub if positive else ua))
        elif ins.kind == "input":
            u = ins.args[0]
            c1 = init_a(r, 1)                       # {a_r, -x_u}
            c2 = init_b(r, 2)                       # {-b_r, x_u}
            pos_ab[r] = res(c1, c2, f"-x{u}")
            c3 = init_a(r, 2)                       # {-a_r, x_u}
            c4 = init_b(r, 1)                       # {b_r, -x_u}
            pos_ba[r] = res(c3, c4, f"x{u}")
        elif ins.kind == "not":
            j = ins.args[0]
            c1 = init_a(r, 1)                       # {a_r, a_j}
            t = res(c1, pos_ba[j], lit(tag_a, j, True))    # {a_r, b_j}
            c2 = init_b(r, 2)                       # {-b_r, -b_j}
            pos_ab[r] = res(t, c2, lit(tag_b, j, True))    # {a_r, -b_r}
            c3 = init_a(r, 2)                       # {-a_r, -a_j}
            t = res(pos_ab[j], c3, lit(tag_a, j, True))    # {-a_r, -b_j}
            c4 = init_b(r, 1)                       # {b_r, b_j}
            pos_ba[r] = res(c4, t, lit(tag_b, j, True))    # {-a_r, b_r}
        else:  # or / and
            j, l = ins.args
            refs = [j] if j == l else [j, l]
            if ins.kind == "or":
                # from {-a_r, a_j, a_l}: swap a's for b's, then pull b_r in
                cur = init_a(r, 3)
                for v in refs:
                    cur = res(cur, pos_ba[v], lit(tag_a, v, True))
                for pos, v in ((1, j), (2, l)) if j != l else ((1, j),):
                    cur = res(cur, init_b(r, pos), lit(tag_b, v, True))
                pos_ba[r] = cur                     # {-a_r, b_r}
                cur = init_b(r, 3)
                for v in refs:
                    cur = res(cur, pos_ab[v], lit(tag_b, v, True))
                for pos, v in ((1, j), (2, l)) if j != l else ((1, j),):
                    cur = res(cur, init_a(r, pos), lit(tag_a, v, True))
                pos_ab[r] = cur                     # {a_r, -b_r}
            else:
                # from {a_r, -a_j, -a_l}
                cur = init_a(r, 3)
                for v in refs:
                    cur = res(cur, pos_ab[v], lit(tag_a, v, False))
                for pos, v in ((1, j), (2, l)) if j != l else ((1, j),):
                    cur = res(cur, init_b(r, pos), lit(tag_b, v, False))
                pos_ab[r] = cur                     # {a_r, -b_r}
                cur = init_b(r, 3)
                for v in refs:
                    cur = res(cur, pos_ba[v], lit(tag_b, v, False))
                for pos, v in ((1, j), (2, l)) if j != l else ((1, j),):
                    cur = res(cur, init_a(r, pos), lit(tag_a, v, False))
                pos_ba[r] = cur                     # {-a_r, b_r}
    return Refutation(premises, steps)


# --- text format ----------------------------------------------------------
#
# header: "proof premises=<m>"
# then m premise lines:  "<p#> <lits|empty> ; premise"
# then step lines:       "<s#> <lits|empty> ; init <i> | oneax | weak <v>
#                                            | res <v> <w> <pivot>"
# Literal tokens are as in clauses.py, the bare token 1 for the constant.


def format_proof(r: Refutation) -> str:
    lines = [f"proof premises={len(r.premises)}"]
    for i, p in enumerate(r.premises, start=1):
        lines.append(f"{i} {format_clause(p)} ; premise")
    for i, step in enumerate(r.steps, start=1):
        just = " ".join(str(tok) for tok in step.just)
        lines.append(f"{i} {format_clause(step.clause)} ; {just}")
    return "\n".join(lines) + "\n"


def _parse_just(toks: list[str], where: str) -> tuple:
    if toks == [ONEAX]:
        return (ONEAX,)
    if len(toks) == 2 and toks[0] in (INIT, WEAK):
        return (toks[0], int(toks[1]))
    if len(toks) == 4 and toks[0] == RES:
        return (RES, int(toks[1]), int(toks[2]), toks[3])
    raise FormatError(f"{where}: bad justification {' '.join(toks)!r}")


def parse_proof(text: str) -> Refutation:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("proof"):
        raise FormatError("missing 'proof premises=<m>' header")
    head = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
    try:
        m = int(head["premises"])
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad proof header: {lines[0]!r}") from exc
    premises: list[Clause] = []
    steps: list[ProofStep] = []
    for ln in lines[1:]:
        if ";" not in ln:
            raise FormatError(f"missing ';' in line {ln!r}")
        left, right = ln.split(";", 1)
        ltoks, rtoks = left.split(), right.split()
        if not ltoks:
            raise FormatError(f"missing step number in {ln!r}")
        number = int(ltoks[0])
        if len(ltoks) < 2:
            raise FormatError(f"missing clause (use 'empty') in {ln!r}")
        cl = parse_clause(ltoks[1:])
        if rtoks == ["premise"]:
            if number != len(premises) + 1 or steps:
                raise FormatError(f"premise line {number} out of order")
            premises.append(cl)
        else:
            if number != len(steps) + 1:
                raise FormatError(f"step line {number} out of order")
            steps.append(ProofStep(cl, _parse_just(rtoks, f"step {number}")))
    if len(premises) != m:
        raise FormatError(f"header says premises={m} but {len(premises)} premise lines found")
    return Refutation(premises, steps)
