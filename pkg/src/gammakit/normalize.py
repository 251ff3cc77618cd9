"""Rewriting extension-style refutations into a rigid narrow layout.

The reduction machinery consumes a *normalized* object: rows 1..3s are
the definition clauses of the extension gates, the next |delta| rows
are the input clauses, every later row is a justified proof step of
width at most max(w, 3) (w = input clause width), and the final row is
empty.

Normalization first prunes the input proof to the ancestor cone of its
first empty clause (which in particular removes every clause carrying
the constant 1: the constant propagates to all descendants, so none of
them can be the empty clause).  If all surviving clauses are already
narrow the cone is reassembled directly.  Otherwise every surviving
line is re-derived as a *unit* clause over a fresh disjunction chain:
gate g_h says "one of the first h literals of the line holds", and all
plumbing between chains (reordering, weakening, resolving) happens in
clauses of at most three literals, so the width bound holds no matter
how wide the input proof was.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .circuits import Circuit, Instruction, content_to_clause, triple_contents
from .clauses import Clause, lit_sign, lit_var, make_lit, neg, sorted_lits, var_family, var_index
from .errors import CheckError, ParamError, SoundnessError
from .proofs import (INIT, ONEAX, RES, WEAK, ERRefutation, ProofStep,
                     Refutation, Violation, check_er, check_step, resolve)


@dataclass(frozen=True)
class NormRow:
    clause: Clause
    kind: str  # "def" | "delta" | "step"
    just: Optional[tuple] = None  # for steps, with 1-based row references


@dataclass
class NormalizedER:
    delta: list[Clause]
    gates: Circuit
    rows: list[NormRow]

    @property
    def s(self) -> int:
        return self.gates.s

    @property
    def k(self) -> int:
        return len(self.rows)

    def width_bound(self) -> int:
        return max(3, max((c.width for c in self.delta), default=0))


def check_normalized(ner: NormalizedER) -> Optional[Violation]:
    from .circuits import encode_df

    s3 = 3 * ner.s
    df = encode_df(ner.gates)
    if len(ner.rows) < s3 + len(ner.delta) + 1:
        return Violation(0, "too few rows")
    bound = ner.width_bound()
    for idx, row in enumerate(ner.rows, start=1):
        if idx <= s3:
            if row.kind != "def" or row.clause != df[idx - 1]:
                return Violation(idx, "definition row mismatch")
        elif idx <= s3 + len(ner.delta):
            if row.kind != "delta" or row.clause != ner.delta[idx - s3 - 1]:
                return Violation(idx, "input clause row mismatch")
        else:
            if row.kind != "step" or row.just is None:
                return Violation(idx, "missing justification")
            earlier = [ProofStep(r.clause, (ONEAX,)) for r in ner.rows[: idx - 1]]
            reason = check_step([], earlier, ProofStep(row.clause, row.just))
            if reason is not None:
                return Violation(idx, reason)
        if row.clause.width > bound:
            return Violation(idx, f"width {row.clause.width} exceeds {bound}")
    if not ner.rows[-1].clause.is_empty():
        return Violation(len(ner.rows), "final row is not empty")
    return None


def as_refutation(ner: NormalizedER) -> Refutation:
    """View of the normalized object for the generic checker."""
    premises = [r.clause for r in ner.rows if r.kind != "step"]
    steps = []
    for idx, row in enumerate(ner.rows, start=1):
        if row.kind == "step":
            steps.append(ProofStep(row.clause, row.just))
        else:
            steps.append(ProofStep(row.clause, (INIT, idx)))
    return Refutation(premises, steps)


def pad_normalized(ner: NormalizedER, k: int) -> NormalizedER:
    """Extend to exactly k rows by re-weakening the final empty row."""
    if k < ner.k:
        raise ParamError(f"cannot shrink from {ner.k} to {k} rows")
    rows = list(ner.rows)
    while len(rows) < k:
        rows.append(NormRow(Clause(), "step", (WEAK, len(rows))))
    return NormalizedER(ner.delta, ner.gates, rows)


# --- proof graph and cone ---------------------------------------------------


@dataclass
class _Line:
    clause: Clause
    source: tuple  # ("delta", i) | ("def", j) | ("step", just)


def _cone(lines: list[_Line], top: int) -> list[int]:
    need = {top}
    order = []
    for idx in range(top, 0, -1):
        if idx not in need:
            continue
        order.append(idx)
        src = lines[idx - 1].source
        if src[0] == "step":
            just = src[1]
            if just[0] == WEAK:
                need.add(just[1])
            elif just[0] == RES:
                need.update((just[1], just[2]))
    return order[::-1]


# --- narrow re-derivation ----------------------------------------------------


@dataclass
class _Entry:
    lit: str
    litvar: int          # gate index whose value equals the literal
    kind: str            # "direct" | "xpos" | "yneg" | "xneg"
    cgate: int = 0       # the copy gate underlying an xneg entry
    orvar: int = 0       # 0 at height 1, else the accumulator gate
    prev: int = 0        # variable index at the previous height


@dataclass
class _Chain:
    entries: list[_Entry]

    @property
    def height(self) -> int:
        return len(self.entries)

    def var_at(self, h: int) -> int:
        e = self.entries[h - 1]
        return e.orvar if e.orvar else e.litvar

    @property
    def top(self) -> int:
        return self.var_at(self.height)

    def height_of(self, lit: str) -> int:
        for h, e in enumerate(self.entries, start=1):
            if e.lit == lit:
                return h
        raise SoundnessError(f"literal {lit} not on chain")


def _chain_order(c: Clause) -> list[str]:
    return sorted_lits(c)


class _Assembler:
    """Builds gates and symbolic steps; positions are assigned at the end."""

    def __init__(self, n: int, gates: list[Instruction]):
        self.n = n
        self.gates = list(gates)
        self.steps: list[tuple[Clause, tuple]] = []
        self._bridges: dict[tuple[int, int], tuple] = {}
        self._lit_gates: dict[Instruction, int] = {}

    # -- gates ---------------------------------------------------------------

    def _gate(self, ins: Instruction) -> int:
        self.gates.append(ins)
        return len(self.gates)

    def _shared_gate(self, ins: Instruction) -> int:
        # copy and negation gates define the same value wherever they
        # appear, so chains may share them; or-chains stay per-line
        if ins not in self._lit_gates:
            self._lit_gates[ins] = self._gate(ins)
        return self._lit_gates[ins]

    def df_clause(self, r: int, pos: int) -> Clause:
        content = triple_contents(self.gates[r - 1], r, self.n)[pos - 1]
        return content_to_clause(content, self.n, "y")

    def df_ref(self, r: int, pos: int) -> tuple:
        """A definition row, rerouted through a bridge step for copy gates.

        Under the reduction substitution, copy-gate definition rows do
        not encode their own clause (their contents track the oracle),
        so inference steps may only reference them through a weakening
        restating the clause; that bridge gets a selector block of its
        own in the substitution.
        """
        if self.gates[r - 1].kind != "input":
            return ("def", r, pos)
        key = (r, pos)
        if key not in self._bridges:
            self._bridges[key] = self.emit(self.df_clause(r, pos),
                                           (WEAK, ("def", r, pos)))
        return self._bridges[key]

    def emit(self, clause: Clause, just: tuple) -> tuple:
        self.steps.append((clause, just))
        return ("step", len(self.steps))

    def res(self, aref: tuple, a: Clause, bref: tuple, b: Clause,
            pivot: str) -> tuple[tuple, Clause]:
        out = resolve(a, b, pivot)
        return self.emit(out, (RES, aref, bref, pivot)), out

    def res_df(self, aref: tuple, a: Clause, r: int, pos: int,
               pivot: str) -> tuple[tuple, Clause]:
        return self.res(aref, a, self.df_ref(r, pos), self.df_clause(r, pos), pivot)

    # -- literal gates ---------------------------------------------------------

    def make_entry(self, lit: str, prev_var: int) -> _Entry:
        fam, idx = var_family(lit_var(lit)), var_index(lit_var(lit))
        if lit_sign(lit) and fam == "y":
            e = _Entry(lit, idx, "direct")
        elif lit_sign(lit):
            e = _Entry(lit, self._shared_gate(Instruction("input", (idx,))), "xpos")
        elif fam == "y":
            e = _Entry(lit, self._shared_gate(Instruction("not", (idx,))), "yneg")
        else:
            c = self._shared_gate(Instruction("input", (idx,)))
            e = _Entry(lit, self._shared_gate(Instruction("not", (c,))), "xneg", cgate=c)
        if prev_var:
            e.prev = prev_var
            e.orvar = self._gate(Instruction("or", (prev_var, e.litvar)))
        return e

    def make_chain(self, lits: list[str], prefix: Optional[list[_Entry]] = None) -> _Chain:
        entries = list(prefix) if prefix else []
        for lit in lits:
            prev = 0
            if entries:
                prev = entries[-1].orvar or entries[-1].litvar
            entries.append(self.make_entry(lit, prev))
        return _Chain(entries)

    # -- single-literal conversions -------------------------------------------

    def lit_to_litvar(self, ref: tuple, cur: Clause, e: _Entry) -> tuple[tuple, Clause]:
        if e.kind == "direct":
            return ref, cur
        if e.kind == "xpos":
            return self.res_df(ref, cur, e.litvar, 1, e.lit)
        if e.kind == "yneg":
            return self.res_df(ref, cur, e.litvar, 1, e.lit)
        ref, cur = self.res_df(ref, cur, e.cgate, 2, e.lit)       # -> {-y_c, ...}
        return self.res_df(ref, cur, e.litvar, 1, make_lit("y", e.cgate, False))

    def litvar_to_lit(self, ref: tuple, cur: Clause, e: _Entry) -> tuple[tuple, Clause]:
        if e.kind == "direct":
            return ref, cur
        yl = make_lit("y", e.litvar)
        if e.kind in ("xpos", "yneg"):
            return self.res_df(ref, cur, e.litvar, 2, yl)
        ref, cur = self.res_df(ref, cur, e.litvar, 2, yl)          # -> {-y_c, ...}
        return self.res_df(ref, cur, e.cgate, 1, make_lit("y", e.cgate, False))

    # -- chain machinery --------------------------------------------------------

    def lift(self, ref: tuple, cur: Clause, chain: _Chain, h: int) -> tuple[tuple, Clause]:
        """Replace the chain variable at height h by the one at h + 1."""
        e = chain.entries[h]  # entry of height h+1
        return self.res_df(ref, cur, e.orvar, 1, make_lit("y", chain.var_at(h)))

    def unit_from_literals(self, ref: tuple, cur: Clause, chain: _Chain) -> tuple[tuple, Clause]:
        """From the literal clause covered by the chain to {chain.top}."""
        if not chain.entries:
            return ref, cur
        ref, cur = self.lit_to_litvar(ref, cur, chain.entries[0])
        for h in range(2, chain.height + 1):
            e = chain.entries[h - 1]
            ref, cur = self.lit_to_litvar(ref, cur, e)
            ref, cur = self.res_df(ref, cur, e.orvar, 2, make_lit("y", e.litvar))
            ref, cur = self.res_df(ref, cur, e.orvar, 1, make_lit("y", e.prev))
        return ref, cur

    def walk_into(self, ref: tuple, cur: Clause, a_entries: list[_Entry],
                  target: _Chain, acc: int) -> tuple[tuple, Clause]:
        """Narrow transfer of a chain unit into a target chain.

        ``cur`` holds the variable at the top of ``a_entries`` plus, when
        acc > 0, the target-chain variable at height acc.  Every literal
        under the source chain must sit on the target chain.  The result
        is the unit {target.top}; no intermediate exceeds three literals.
        """
        a = _Chain(a_entries)
        for h in range(a.height, 0, -1):
            e = a.entries[h - 1]
            if h >= 2:
                # peel: {var_h, ...} -> {var_{h-1}, litvar_h, ...}
                ref, cur = self.res_df(ref, cur, e.orvar, 3, make_lit("y", a.var_at(h)))
            ref, cur = self.litvar_to_lit(ref, cur, e)
            hb = target.height_of(e.lit)
            ref, cur = self.lit_to_litvar(ref, cur, target.entries[hb - 1])
            if hb >= 2:
                ref, cur = self.res_df(ref, cur, target.entries[hb - 1].orvar, 2,
                                       make_lit("y", target.entries[hb - 1].litvar))
            if acc == 0:
                acc = hb
            else:
                lo, hi = min(acc, hb), max(acc, hb)
                while lo < hi:
                    ref, cur = self.lift(ref, cur, target, lo)
                    lo += 1
                acc = hi
        while acc < target.height:
            ref, cur = self.lift(ref, cur, target, acc)
            acc += 1
        return ref, cur

    def transfer(self, ref: tuple, cur: Clause, source: _Chain, target: _Chain) -> tuple[tuple, Clause]:
        return self.walk_into(ref, cur, source.entries, target, 0)


def _narrow_rederive(delta: list[Clause], n: int, base_gates: list[Instruction],
                     lines: list[_Line], order: list[int]) -> tuple[_Assembler, tuple]:
    asm = _Assembler(n, base_gates)
    units: dict[int, tuple[tuple, Clause, _Chain]] = {}
    last_ref: tuple = ("step", 0)

    def premise_ref(src: tuple) -> tuple:
        if src[0] == "delta":
            return ("delta", src[1])
        return asm.df_ref((src[1] + 2) // 3, (src[1] - 1) % 3 + 1)

    for idx in order:
        line = lines[idx - 1]
        cl = line.clause
        src = line.source
        if src[0] != "step":
            chain = asm.make_chain(_chain_order(cl))
            ref, cur = asm.unit_from_literals(premise_ref(src), cl, chain)
            units[idx] = (ref, cur, chain)
            last_ref = ref
            continue
        just = src[1]
        if just[0] == WEAK:
            vref, vcur, vchain = units[just[1]]
            chain = asm.make_chain(_chain_order(cl))
            ref, cur = asm.transfer(vref, vcur, vchain, chain)
            units[idx] = (ref, cur, chain)
            last_ref = ref
            continue
        # resolution
        _, v, w, pivot = just
        vref, vcur, vchain = units[v]
        wref, wcur, wchain = units[w]
        cv, cw = lines[v - 1].clause, lines[w - 1].clause
        rv = asm.make_chain([l for l in _chain_order(cv) if l != pivot] + [pivot])
        rw = asm.make_chain([l for l in _chain_order(cw) if l != neg(pivot)] + [neg(pivot)])
        aref, acur = asm.transfer(vref, vcur, vchain, rv)
        bref, bcur = asm.transfer(wref, wcur, wchain, rw)
        # peel the pivots
        if rv.height >= 2:
            aref, acur = asm.res_df(aref, acur, rv.entries[-1].orvar, 3,
                                    make_lit("y", rv.top))
        aref, acur = asm.litvar_to_lit(aref, acur, rv.entries[-1])
        if rw.height >= 2:
            bref, bcur = asm.res_df(bref, bcur, rw.entries[-1].orvar, 3,
                                    make_lit("y", rw.top))
        bref, bcur = asm.litvar_to_lit(bref, bcur, rw.entries[-1])
        ref, cur = asm.res(aref, acur, bref, bcur, pivot)
        if cl.is_empty():
            units[idx] = (ref, cur, _Chain([]))
            last_ref = ref
            continue
        prefix = rw.entries[:-1]
        covered = {e.lit for e in prefix}
        ext = [l for l in _chain_order(cl) if l not in covered]
        main = asm.make_chain(ext, prefix=prefix)
        acc = len(prefix)
        ref, cur = asm.walk_into(ref, cur, rv.entries[:-1], main, acc)
        units[idx] = (ref, cur, main)
        last_ref = ref
    return asm, last_ref


# --- entry point -------------------------------------------------------------


def normalize_er(delta: list[Clause], er: ERRefutation,
                 validate: bool = True) -> NormalizedER:
    """Rewrite an extension-style refutation of delta into normal form."""
    if validate:
        if list(er.delta) != list(delta):
            raise ParamError("the refutation was built for a different clause set")
        v = check_er(er)
        if v is not None:
            raise CheckError(v.step, f"input refutation does not check: {v.reason}")
    for d in delta:
        if d.one:
            raise ParamError("input clauses must not contain the constant 1")

    n = er.defs.n if er.defs is not None else 0
    for c in delta:
        for var in c.variables():
            n = max(n, var_index(var))

    base_gates = list(er.defs.instructions) if er.defs is not None else []
    s0 = len(base_gates)

    # proof graph: delta rows, definition rows, then the steps
    lines: list[_Line] = []
    for i, d in enumerate(delta, start=1):
        lines.append(_Line(d, ("delta", i)))
    df = ERRefutation(list(delta), er.defs, []).premises()[len(delta):]
    for j, d in enumerate(df, start=1):
        lines.append(_Line(d, ("def", j)))
    n_prem = len(lines)
    for step in er.steps:
        just = step.just
        if just[0] == INIT:
            # collapse initial steps onto their premise line
            lines.append(lines[just[1] - 1])
            continue
        if just[0] == WEAK:
            just = (WEAK, n_prem + just[1])
        elif just[0] == RES:
            just = (RES, n_prem + just[1], n_prem + just[2], just[3])
        lines.append(_Line(step.clause, ("step", just)))

    top = next((i for i, ln in enumerate(lines, start=1) if ln.clause.is_empty()), None)
    if top is None:
        raise CheckError(0, "the refutation contains no empty clause")
    order = _cone(lines, top)
    if any(lines[i - 1].clause.one for i in order):
        raise SoundnessError("a clause with the constant 1 reached the empty clause")

    bound = max(3, max((c.width for c in delta), default=0))
    narrow = all(lines[i - 1].clause.width <= bound for i in order)

    if narrow:
        asm = _Assembler(n, base_gates)
        refs: dict[int, tuple] = {}
        last_ref = None
        for idx in order:
            line = lines[idx - 1]
            src = line.source
            if src[0] == "delta":
                refs[idx] = ("delta", src[1])
            elif src[0] == "def":
                refs[idx] = asm.df_ref((src[1] + 2) // 3, (src[1] - 1) % 3 + 1)
            else:
                just = src[1]
                if just[0] == WEAK:
                    just = (WEAK, refs[just[1]])
                elif just[0] == RES:
                    just = (RES, refs[just[1]], refs[just[2]], just[3])
                refs[idx] = asm.emit(line.clause, just)
            last_ref = refs[idx]
        if last_ref[0] != "step":
            asm.emit(Clause(), (WEAK, last_ref))
    else:
        asm, _ = _narrow_rederive(delta, n, base_gates, lines, order)

    if not asm.gates:
        asm.gates.append(Instruction("const1"))
    gates = Circuit(n, tuple(asm.gates))

    s3 = 3 * gates.s
    offset = s3 + len(delta)

    def materialize(ref: tuple) -> int:
        if ref[0] == "def":
            return 3 * (ref[1] - 1) + ref[2]
        if ref[0] == "delta":
            return s3 + ref[1]
        return offset + ref[1]

    from .circuits import encode_df

    rows = [NormRow(c, "def") for c in encode_df(gates)]
    rows += [NormRow(d, "delta") for d in delta]
    for cl, just in asm.steps:
        if just[0] == WEAK:
            just = (WEAK, materialize(just[1]))
        elif just[0] == RES:
            just = (RES, materialize(just[1]), materialize(just[2]), just[3])
        rows.append(NormRow(cl, "step", just))
    return NormalizedER(list(delta), gates, rows)
