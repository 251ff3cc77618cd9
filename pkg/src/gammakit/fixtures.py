"""Built-in unsatisfiable families and a refutation builder for them.

The reduction pipeline takes a clause set plus a refutation as input;
these helpers supply desk-scale instances: complete contradictions,
a two-pigeons-one-hole principle, and seeded random unsatisfiable
3-CNFs.  ``dp_refutation`` produces a checkable refutation by variable
elimination, which is enough at these sizes.
"""

from __future__ import annotations

import itertools
import random
from typing import Optional

from .circuits import Circuit, Instruction
from .clauses import Clause, clause, lit_var, make_lit, neg
from .errors import ParamError
from .proofs import INIT, RES, ERRefutation, ProofStep, Refutation, resolve


def complete_contradiction(n: int) -> list[Clause]:
    """All 2^n clauses over x_1..x_n: unsatisfiable, width n."""
    if n < 1:
        raise ParamError("need n >= 1")
    out = []
    for signs in itertools.product((True, False), repeat=n):
        out.append(Clause(frozenset(make_lit("x", i + 1, s) for i, s in enumerate(signs))))
    return out


def pigeonhole_clauses(pigeons: int, holes: int) -> list[Clause]:
    """Each pigeon in some hole, no two pigeons share one; x_{(p-1)*holes+h}."""

    def var(p: int, h: int) -> int:
        return (p - 1) * holes + h

    out = [Clause(frozenset(make_lit("x", var(p, h)) for h in range(1, holes + 1)))
           for p in range(1, pigeons + 1)]
    for h in range(1, holes + 1):
        for p1, p2 in itertools.combinations(range(1, pigeons + 1), 2):
            out.append(clause(f"-x{var(p1, h)}", f"-x{var(p2, h)}"))
    return out


def dp_refutation(delta: list[Clause]) -> Optional[Refutation]:
    """Refutation by ordered variable elimination; None if satisfiable.

    Tautologies are dropped and duplicate clauses share one derivation,
    which keeps the step count small on desk-scale inputs.
    """
    steps: list[ProofStep] = []
    derived: dict[frozenset, int] = {}

    def push(cl: Clause, just: tuple) -> int:
        if cl.lits in derived:
            return derived[cl.lits]
        steps.append(ProofStep(cl, just))
        derived[cl.lits] = len(steps)
        return len(steps)

    live: dict[frozenset, int] = {}
    for i, p in enumerate(delta, start=1):
        if p.one or any(neg(l) in p.lits for l in p.lits):
            continue  # satisfied or tautological premises never help
        pos = push(p, (INIT, i))
        live[p.lits] = pos
        if p.is_empty():
            return Refutation(delta, steps)

    variables = sorted({lit_var(l) for c in delta for l in c.lits})
    for v in variables:
        with_pos = {ls: pos for ls, pos in live.items() if v in ls}
        with_neg = {ls: pos for ls, pos in live.items() if "-" + v in ls}
        rest = {ls: pos for ls, pos in live.items()
                if ls not in with_pos and ls not in with_neg}
        for (ls1, p1), (ls2, p2) in itertools.product(with_pos.items(), with_neg.items()):
            r = resolve(Clause(ls1), Clause(ls2), v)
            if any(neg(l) in r.lits for l in r.lits):
                continue
            if r.lits not in derived:
                pos = push(r, (RES, p1, p2, v))
            else:
                pos = derived[r.lits]
            if r.is_empty():
                return Refutation(delta, steps)
            rest.setdefault(r.lits, pos)
        live = rest
    return None


def er_from_resolution(delta: list[Clause], refutation: Refutation,
                       n: Optional[int] = None) -> ERRefutation:
    """Wrap a plain resolution refutation as an extension-style one.

    A single constant gate keeps the definition block non-empty; its
    clauses are appended after delta and never used.
    """
    if n is None:
        n = max((int(v[1:]) for c in delta for v in c.variables()), default=0)
    defs = Circuit(n, (Instruction("const1"),))
    return ERRefutation(list(delta), defs, list(refutation.steps))


def minimize_core(delta: list[Clause]) -> list[Clause]:
    """Greedy unsatisfiable core: drop clauses whose removal keeps UNSAT."""
    core = list(delta)
    i = 0
    while i < len(core):
        trial = core[:i] + core[i + 1:]
        if trial and dp_refutation(trial) is not None:
            core = trial
        else:
            i += 1
    return core


def random_unsat_3cnf(num_vars: int, seed: int,
                      max_clauses: int = 60) -> tuple[list[Clause], Refutation]:
    """Sample random 3-clauses until unsatisfiable, then shrink to a core.

    Returns the core together with a refutation of it; keeping the set
    minimal keeps the downstream reduction instances desk-sized.
    """
    if num_vars < 3:
        raise ParamError("need at least 3 variables")
    rng = random.Random(seed)
    delta: list[Clause] = []
    while len(delta) < max_clauses:
        vs = rng.sample(range(1, num_vars + 1), 3)
        delta.append(Clause(frozenset(
            make_lit("x", v, rng.random() < 0.5) for v in vs)))
        if dp_refutation(delta) is not None:
            core = minimize_core(delta)
            return core, dp_refutation(core)
    raise ParamError(f"no unsatisfiable set within {max_clauses} clauses (seed {seed})")
