"""Clause-substitution reductions from an input CNF to a family instance.

A substitution maps every family variable to a constant, a literal of
the input CNF, or a disjunction of such literals (possibly including
the constant 1); its width is the largest disjunction used.  A
substitution *reduces* the input set delta to the family when every
family clause, after substitution, is one of:

* (a) a 1-axiom: some negative occurrence maps to constant 0 or some
  positive occurrence contains constant 1,
* (b) a tautology certified by an item pair: an antecedent disjunction
  whose literals, minus those forced false by singleton co-items, all
  occur in one succedent disjunction (complementary singleton pairs are
  the degenerate case),
* (c) a clause containing some member of delta inside its substituted
  positive occurrences -- the only case a truth assignment can falsify.

``build_substitution`` realizes this for any normalized refutation;
``verify_reduction`` streams the family and certifies every clause;
``apply_oracle`` turns a falsified family clause back into a falsified
input clause with at most width-many assignment queries per variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .circuits import Instruction
from .clauses import Clause, lit_var, make_lit, neg, sorted_lits
from .errors import (CheckError, FormatError, ParamError, SoundnessError,
                     UnclassifiableClause)
from .gamma import (GammaParams, Inference, encode_inference,
                    encode_instruction, enumerate_clauses, row_of)
from .normalize import NormalizedER
from .proofs import ONEAX, WEAK
from .search import FalsifiedClause, find_falsified

CONST0 = Clause()
CONST1 = Clause(one=True)


def sel(zvar: str, abits: Sequence[int], bbits: Sequence[int]) -> tuple[Clause, ...]:
    """Coordinate-wise selector: value abits when z holds, bbits when not."""
    if len(abits) != len(bbits):
        raise ParamError("selector halves differ in length")
    out = []
    for a, b in zip(abits, bbits):
        if a == b:
            out.append(CONST1 if a else CONST0)
        elif a:
            out.append(Clause(frozenset({zvar})))
        else:
            out.append(Clause(frozenset({neg(zvar)})))
    return tuple(out)


def bits_of(code: int, t: int) -> tuple[int, ...]:
    return tuple((code >> (v - 1)) & 1 for v in range(1, t + 1))


@dataclass
class ClauseSubstitution:
    """Total map from family variables to substitution items."""

    params: GammaParams
    items: dict[tuple, Clause]

    @property
    def width(self) -> int:
        return max((len(it.lits) for it in self.items.values()), default=0)

    def item(self, key: tuple) -> Clause:
        return self.items[key]

    def by_var(self) -> list[Optional[Clause]]:
        """Dense view indexed by DIMACS variable number."""
        p = self.params
        dense: list[Optional[Clause]] = [None] * (p.num_vars + 1)
        for key, it in self.items.items():
            if key[0] == "q":
                dense[p.var_q(key[1], key[2])] = it
            else:
                dense[p.var_p(key[1], key[2])] = it
        if any(v is None for v in dense[1:]):
            raise ParamError("substitution is not total")
        return dense


def params_for(ner: NormalizedER) -> GammaParams:
    return GammaParams(0, ner.s, ner.k)


def _x_index(lit: str) -> int:
    return int(lit_var(lit)[1:])


def build_substitution(delta: list[Clause], ner: NormalizedER,
                       params: Optional[GammaParams] = None) -> ClauseSubstitution:
    """The reduction substitution of a normalized refutation of delta."""
    if params is None:
        params = params_for(ner)
    if (params.n, params.s, params.k) != (0, ner.s, ner.k):
        raise ParamError(
            f"parameters (0, {ner.s}, {ner.k}) required, got "
            f"({params.n}, {params.s}, {params.k})")
    if list(ner.delta) != list(delta):
        raise ParamError("normalized object was built for a different clause set")

    t = params.t
    items: dict[tuple, Clause] = {}

    def set_block(u: int, blocks: Sequence[Clause]) -> None:
        for v, it in enumerate(blocks, start=1):
            items[("p", u, v)] = it

    def const_block(u: int, code: int) -> None:
        set_block(u, [CONST1 if b else CONST0 for b in bits_of(code, t)])

    def q_items_verbatim(u: int, cl: Clause) -> None:
        ylits: set[int] = set()
        xlits: set[str] = set()
        for lit in cl.lits:
            v = lit_var(lit)
            if v.startswith("x"):
                xlits.add(lit)
            else:
                idx = int(v[1:])
                ylits.add(idx if lit == v else -idx)
        for i in params.q_indices():
            if i == 0:
                items[("q", u, 0)] = Clause(frozenset(xlits), cl.one)
            else:
                items[("q", u, i)] = CONST1 if i in ylits else CONST0

    s3 = 3 * ner.s

    def copy_gate_of(v: int):
        if v <= s3:
            g = ner.gates.instructions[row_of(v) - 1]
            if g.kind == "input":
                return g
        return None

    for u, row in enumerate(ner.rows, start=1):
        if u <= s3:
            r = row_of(u)
            gate = ner.gates.instructions[r - 1]
            pos = (u - 1) % 3 + 1
            if gate.kind == "input":
                xl = make_lit("x", gate.args[0])
                code1 = encode_instruction(Instruction("const1"), r, 0)
                code0 = encode_instruction(Instruction("const0"), r, 0)
                set_block(u, sel(xl, bits_of(code1, t), bits_of(code0, t)))
                for i in params.q_indices():
                    items[("q", u, i)] = CONST0
                if pos == 1:
                    items[("q", u, r)] = Clause(frozenset({xl}))
                    items[("q", u, -r)] = Clause(frozenset({neg(xl)}))
                else:
                    items[("q", u, 0)] = CONST1
            else:
                const_block(u, encode_instruction(gate, r, 0))
                q_items_verbatim(u, row.clause)
        elif row.kind == "delta":
            const_block(u, 0)  # inference code 0 names the 1-axiom rule
            q_items_verbatim(u, row.clause)
        else:
            just = row.just
            if just[0] == ONEAX:
                const_block(u, 0)
            elif just[0] == WEAK:
                gate = copy_gate_of(just[1])
                if gate is None:
                    const_block(u, encode_inference(Inference("weak", v=just[1]), u, params))
                else:
                    # bridge step restating a copy-gate definition clause:
                    # one oracle value reads it off the definition row, the
                    # other sees its input literal satisfied, i.e. a 1-axiom
                    if row.clause != ner.rows[just[1] - 1].clause:
                        raise ParamError(
                            f"step {u} weakens a copy definition row without "
                            f"restating it; normalize the refutation first")
                    pos = (just[1] - 1) % 3 + 1
                    if pos == 3:
                        raise ParamError(f"step {u} references a dummy definition row")
                    xl = make_lit("x", gate.args[0])
                    oneax_bits = bits_of(0, t)
                    if pos == 1:
                        # x true: read the clause off its own row; x false:
                        # the input literal is satisfied, a 1-axiom
                        weak_bits = bits_of(
                            encode_inference(Inference("weak", v=just[1]), u, params), t)
                        set_block(u, sel(xl, weak_bits, oneax_bits))
                    else:
                        # x false: the encoded first row of the triple is
                        # exactly this clause minus its satisfied literal
                        weak_bits = bits_of(
                            encode_inference(Inference("weak", v=just[1] - 1), u, params), t)
                        set_block(u, sel(xl, oneax_bits, weak_bits))
            else:
                _, v, w, pivot = just
                if copy_gate_of(v) is not None or copy_gate_of(w) is not None:
                    raise ParamError(
                        f"step {u} resolves against a copy definition row; "
                        f"normalize the refutation first")
                var = lit_var(pivot)
                if var.startswith("y"):
                    i = int(var[1:])
                    if pivot.startswith("-"):
                        i = -i
                    const_block(u, encode_inference(Inference("res", v=v, w=w, i=i), u, params))
                else:
                    # pivot on an input variable: the row reads as a
                    # weakening from whichever premise the oracle kills
                    e, f = (v, w) if pivot == var else (w, v)
                    code_f = encode_inference(Inference("weak", v=f), u, params)
                    code_e = encode_inference(Inference("weak", v=e), u, params)
                    set_block(u, sel(make_lit("x", _x_index(pivot)),
                                     bits_of(code_f, t), bits_of(code_e, t)))
            q_items_verbatim(u, row.clause)
    return ClauseSubstitution(params, items)


# --- classification ----------------------------------------------------------


@dataclass(frozen=True)
class CertRecord:
    position: int
    case: str        # "a" | "b" | "c"
    w1: int = -1     # b: literal slot of the antecedent item; c: 1-based delta index
    w2: int = -1     # b: literal slot of the succedent item, -1 when unneeded


@dataclass
class ReductionCertificate:
    params: GammaParams
    records: list[CertRecord]

    def counts(self) -> dict:
        out = {"a": 0, "b": 0, "c": 0}
        for r in self.records:
            out[r.case] += 1
        return out


def _split_items(lits: Iterable[int], dense: list[Optional[Clause]]):
    ante, succ = [], []
    for slot, lit in enumerate(lits):
        item = dense[abs(lit)]
        (succ if lit > 0 else ante).append((slot, item))
    return ante, succ


def classify(lits: Sequence[int], dense: list[Optional[Clause]],
             delta: list[Clause]) -> Optional[CertRecord]:
    """Case of one substituted clause, or None if unclassifiable."""
    ante, succ = _split_items(lits, dense)
    for _, item in ante:
        if not item.one and not item.lits:
            return CertRecord(-1, "a")
    for _, item in succ:
        if item.one:
            return CertRecord(-1, "a")
    dead = set()
    for _, item in ante:
        if not item.one and len(item.lits) == 1:
            dead.add(neg(next(iter(item.lits))))
    for _, item in succ:
        if len(item.lits) == 1:
            dead.add(next(iter(item.lits)))
    for slot_a, item in ante:
        if item.one:
            continue  # a true constraint certifies nothing
        live = item.lits - dead
        if not live:
            return CertRecord(-1, "b", slot_a)
        for slot_s, target in succ:
            if live <= target.lits:
                return CertRecord(-1, "b", slot_a, slot_s)
    singles: dict[str, int] = {}
    for slot_s, item in succ:
        if len(item.lits) == 1:
            singles.setdefault(next(iter(item.lits)), slot_s)
    for lit, slot in singles.items():
        if neg(lit) in singles:
            a, b = sorted((slot, singles[neg(lit)]))
            return CertRecord(-1, "b", a, b)
    flat = set()
    for _, item in succ:
        flat |= item.lits
    for di, d in enumerate(delta, start=1):
        if not d.one and d.lits <= flat:
            return CertRecord(-1, "c", di)
    return None


def verify_reduction(delta: list[Clause], params: GammaParams,
                     subst: ClauseSubstitution) -> ReductionCertificate:
    """Certify every family clause; raises UnclassifiableClause otherwise."""
    dense = subst.by_var()
    records = []
    for cl in enumerate_clauses(params):
        rec = classify(cl.lits, dense, delta)
        if rec is None:
            raise UnclassifiableClause(cl.position, cl.describe(params))
        records.append(CertRecord(cl.position, rec.case, rec.w1, rec.w2))
    return ReductionCertificate(params, records)


def check_certificate_record(lits: Sequence[int], dense: list[Optional[Clause]],
                             delta: list[Clause], rec: CertRecord) -> bool:
    """Independent witness validation for one certified clause."""
    ante, succ = _split_items(lits, dense)
    if rec.case == "a":
        return (any(not it.one and not it.lits for _, it in ante)
                or any(it.one for _, it in succ))
    if rec.case == "c":
        flat = set()
        for _, item in succ:
            flat |= item.lits
        d = delta[rec.w1 - 1]
        return not d.one and d.lits <= flat
    # case b
    if rec.w1 < 0 or rec.w1 >= len(lits):
        return False
    if lits[rec.w1] > 0:
        # complementary succedent singletons
        if rec.w2 < 0 or lits[rec.w2] < 0:
            return False
        i1 = dense[abs(lits[rec.w1])]
        i2 = dense[abs(lits[rec.w2])]
        return (len(i1.lits) == 1 == len(i2.lits)
                and next(iter(i1.lits)) == neg(next(iter(i2.lits))))
    item = dense[abs(lits[rec.w1])]
    if item.one:
        return False
    dead = set()
    for _, it in ante:
        if not it.one and len(it.lits) == 1:
            dead.add(neg(next(iter(it.lits))))
    for _, it in succ:
        if len(it.lits) == 1:
            dead.add(next(iter(it.lits)))
    live = item.lits - dead
    if rec.w2 == -1:
        return not live
    if rec.w2 >= len(lits) or lits[rec.w2] < 0:
        return False
    return live <= dense[abs(lits[rec.w2])].lits


def substituted_value(lits: Sequence[int], dense: list[Optional[Clause]],
                      alpha: dict[str, int]) -> bool:
    """Truth of a substituted clause under an input assignment."""

    def item_value(item: Clause) -> bool:
        if item.one:
            return True
        return any(bool(alpha[lit_var(l)]) == (not l.startswith("-"))
                   for l in item.lits)

    for lit in lits:
        val = item_value(dense[abs(lit)])
        if (lit > 0) == val:
            return True
    return False


# --- the relativized oracle reduction ----------------------------------------


class _CountingOracle:
    def __init__(self, alpha: dict[str, int]):
        self.alpha = alpha
        self.total = 0
        self.current = 0

    def query(self, var: str) -> int:
        self.total += 1
        self.current += 1
        return self.alpha[var]


class SubstitutedAssignment:
    """The composed assignment alpha o sigma, evaluated lazily."""

    def __init__(self, subst: ClauseSubstitution, alpha: dict[str, int]):
        self.params = subst.params
        self._dense = subst.by_var()
        self.oracle = _CountingOracle(alpha)
        self.max_queries_per_var = 0

    def get(self, var: int) -> int:
        item = self._dense[var]
        if item.one:
            return 1
        self.oracle.current = 0
        value = 0
        for lit in item.lits:
            if bool(self.oracle.query(lit_var(lit))) == (not lit.startswith("-")):
                value = 1
                break
        self.max_queries_per_var = max(self.max_queries_per_var, self.oracle.current)
        return value


@dataclass(frozen=True)
class OracleResult:
    falsified_gamma: FalsifiedClause
    delta_index: int         # 1-based index into delta
    delta_clause: Clause
    total_queries: int
    max_queries_per_var: int


def apply_oracle(params: GammaParams, subst: ClauseSubstitution,
                 alpha: dict[str, int], delta: list[Clause],
                 certificate: ReductionCertificate) -> OracleResult:
    """Map an assignment to a delta clause it falsifies.

    Only case-(c) clauses of a verified reduction can be falsified, so
    the certificate record at the located position names the clause.
    """
    composed = SubstitutedAssignment(subst, alpha)
    found = find_falsified(params, composed)
    rec = certificate.records[found.clause.position]
    if rec.position != found.clause.position or rec.case != "c":
        raise CheckError(0, f"no falsified input clause at stream position "
                            f"{found.clause.position} (case {rec.case}); "
                            f"certification error")
    d = delta[rec.w1 - 1]
    if any(bool(alpha[lit_var(l)]) == (not l.startswith("-")) for l in d.lits):
        raise SoundnessError("certified clause is not falsified by the assignment")
    return OracleResult(found, rec.w1, d, composed.oracle.total,
                        composed.max_queries_per_var)


# --- text formats -------------------------------------------------------------


def _format_item(item: Clause) -> str:
    if item.one and not item.lits:
        return "1"
    if not item.one and not item.lits:
        return "0"
    if not item.one and len(item.lits) == 1:
        return next(iter(item.lits))
    toks = sorted_lits(item) + (["T"] if item.one else [])
    return "( " + " ".join(toks) + " )"


def _parse_item(toks: list[str]) -> Clause:
    if toks == ["0"]:
        return CONST0
    if toks == ["1"]:
        return CONST1
    if len(toks) == 1:
        return Clause(frozenset(toks))
    if toks[0] != "(" or toks[-1] != ")":
        raise FormatError(f"bad substitution item {' '.join(toks)!r}")
    one = "T" in toks[1:-1]
    lits = frozenset(t for t in toks[1:-1] if t != "T")
    return Clause(lits, one)


def format_substitution(subst: ClauseSubstitution) -> str:
    p = subst.params
    lines = []
    for u in range(1, p.k + 1):
        for i in p.q_indices():
            lines.append(f"q {u} {i} = {_format_item(subst.items[('q', u, i)])}")
    for u in range(1, p.k + 1):
        for v in range(1, p.t + 1):
            lines.append(f"p {u} {v} = {_format_item(subst.items[('p', u, v)])}")
    return "\n".join(lines) + "\n"


def parse_substitution(text: str, params: GammaParams) -> ClauseSubstitution:
    items: dict[tuple, Clause] = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        toks = ln.split()
        if len(toks) < 5 or toks[0] not in ("q", "p") or toks[3] != "=":
            raise FormatError(f"bad substitution line {ln!r}")
        key = (toks[0], int(toks[1]), int(toks[2]))
        items[key] = _parse_item(toks[4:])
    subst = ClauseSubstitution(params, items)
    subst.by_var()  # totality check
    return subst


def format_certificate(cert: ReductionCertificate) -> str:
    lines = []
    for r in cert.records:
        if r.case == "a":
            lines.append(f"{r.position} a")
        elif r.case == "b":
            lines.append(f"{r.position} b {r.w1} {r.w2}")
        else:
            lines.append(f"{r.position} c {r.w1}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str, params: GammaParams) -> ReductionCertificate:
    records = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        toks = ln.split()
        pos, case = int(toks[0]), toks[1]
        if case == "a" and len(toks) == 2:
            records.append(CertRecord(pos, "a"))
        elif case == "b" and len(toks) == 4:
            records.append(CertRecord(pos, "b", int(toks[2]), int(toks[3])))
        elif case == "c" and len(toks) == 3:
            records.append(CertRecord(pos, "c", int(toks[2])))
        else:
            raise FormatError(f"bad certificate line {ln!r}")
    return ReductionCertificate(params, records)
