"""The refutation-existence clause families Gamma(n, s, k).

Variables describe a hypothetical k-step refutation (in resolution with
weakening and 1-axioms) of the definition CNF of an unspecified size-s
circuit with n inputs:

* ``q(u, i)`` says object i occurs in the u-th proof clause, where
  i = 0 is the constant 1, +/-i (i <= n) an x-literal and +/-(n+j) a
  y-literal;
* ``p(u, 1..t)`` is a t-bit selector naming the instruction (u <= 3s)
  or the inference (u > 3s) behind clause u, via the codebooks below.
  t = ceil(3*log2 k).

Clause groups, emitted in this order:

* g1  -- selector blocks of definition rows name a valid instruction,
* g2  -- definition rows contain exactly the named instruction's clause,
* g2p -- the three selector blocks of a triple agree bitwise,
* g3  -- selector blocks of inference rows name a valid inference,
* g4a -- resolution rows relate to their premises by the resolution rule,
* g4b -- weakening rows contain their premise,
* g4c -- 1-axiom rows contain the constant 1,
* g5  -- the last row is the empty clause.

Without g2p the three blocks of a triple may name different
instructions and small instances become satisfiable.  g4a encodes the
standard resolution rule (pivot membership of the conclusion copied
from the far premise) rather than forcing the pivot absent, and the
constant-1 slot is propagated forward-only; both choices are needed to
keep every family member unsatisfiable while keeping the reduction
machinery classifiable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional

from .circuits import Instruction, triple_contents
from .errors import ParamError

GROUPS = ("g1", "g2", "g2p", "g3", "g4a", "g4b", "g4c", "g5")


@dataclass(frozen=True)
class GammaParams:
    n: int
    s: int
    k: int

    def __post_init__(self):
        if self.n < 0 or self.s < 1 or self.k < 1:
            raise ParamError("need n >= 0, s >= 1, k >= 1")
        if self.s <= self.n:
            raise ParamError(f"need s > n, got s={self.s}, n={self.n}")
        if self.k < 3 * self.s:
            raise ParamError(f"need k >= 3s, got k={self.k}, s={self.s}")
        room = 1 << self.t
        if instruction_count(self.s, self.n) > room:
            raise ParamError("selector width t cannot encode all instructions")
        if self.k > 3 * self.s and inference_count(self.k, self) > room:
            raise ParamError("selector width t cannot encode all inferences")

    @property
    def t(self) -> int:
        # ceil(3*log2 k), computed exactly
        return (self.k ** 3 - 1).bit_length()

    @property
    def nq(self) -> int:
        """q-variables per step: 2(n+s)+1."""
        return 2 * (self.n + self.s) + 1

    @property
    def num_vars(self) -> int:
        return self.k * self.nq + self.k * self.t

    def var_q(self, u: int, i: int) -> int:
        return (u - 1) * self.nq + (i + self.n + self.s) + 1

    def var_p(self, u: int, v: int) -> int:
        return self.k * self.nq + (u - 1) * self.t + v

    def q_indices(self) -> range:
        return range(-(self.n + self.s), self.n + self.s + 1)

    def max_width(self) -> int:
        return 3 + self.t


# --- codebooks -------------------------------------------------------------


def instruction_count(r: int, n: int) -> int:
    return 2 + n + (r - 1) + 2 * (r - 1) ** 2


def decode_instruction(code: int, r: int, n: int) -> Optional[Instruction]:
    """Canonical order: 0, 1, inputs, negations, ors, ands; None if invalid."""
    if code < 0:
        return None
    if code == 0:
        return Instruction("const0")
    if code == 1:
        return Instruction("const1")
    code -= 2
    if code < n:
        return Instruction("input", (code + 1,))
    code -= n
    if code < r - 1:
        return Instruction("not", (code + 1,))
    code -= r - 1
    sq = (r - 1) ** 2
    if code < sq:
        return Instruction("or", (code // (r - 1) + 1, code % (r - 1) + 1))
    code -= sq
    if code < sq:
        return Instruction("and", (code // (r - 1) + 1, code % (r - 1) + 1))
    return None


def encode_instruction(ins: Instruction, r: int, n: int) -> int:
    if ins.kind == "const0":
        return 0
    if ins.kind == "const1":
        return 1
    if ins.kind == "input":
        return 1 + ins.args[0]
    if ins.kind == "not":
        return 1 + n + ins.args[0]
    base = 2 + n + (r - 1)
    j, l = ins.args
    off = (j - 1) * (r - 1) + (l - 1)
    if ins.kind == "or":
        return base + off
    return base + (r - 1) ** 2 + off


class Inference(NamedTuple):
    kind: str  # "oneax" | "weak" | "res"
    v: int = 0
    w: int = 0
    i: int = 0  # pivot occurrence index, never 0 for res


def inference_count(u: int, params: GammaParams) -> int:
    return u + 2 * (params.n + params.s) * (u - 1) ** 2


def resolution_count(u: int, params: GammaParams) -> int:
    return 2 * (params.n + params.s) * (u - 1) ** 2


def decode_inference(code: int, u: int, params: GammaParams) -> Optional[Inference]:
    """Order: 1-axiom, weakenings by premise, resolutions in (i, v, w) order."""
    if code < 0:
        return None
    if code == 0:
        return Inference("oneax")
    if code <= u - 1:
        return Inference("weak", v=code)
    rank = code - u
    ns = params.n + params.s
    if rank >= 2 * ns * (u - 1) ** 2:
        return None
    sq = (u - 1) ** 2
    ir, rem = divmod(rank, sq)
    v, w = divmod(rem, u - 1)
    i = ir - ns if ir < ns else ir - ns + 1
    return Inference("res", v=v + 1, w=w + 1, i=i)


def encode_inference(inf: Inference, u: int, params: GammaParams) -> int:
    if inf.kind == "oneax":
        return 0
    if inf.kind == "weak":
        return inf.v
    ns = params.n + params.s
    ir = inf.i + ns if inf.i < 0 else inf.i + ns - 1
    return u + ir * (u - 1) ** 2 + (inf.v - 1) * (u - 1) + (inf.w - 1)


# --- clause records --------------------------------------------------------


class GammaClause(NamedTuple):
    group: str
    u: int            # owner step (for g2p: the first block of the triple)
    payload: tuple    # group-specific coordinates, see builders
    lits: tuple       # DIMACS literals, antecedent-negated
    position: int     # 0-based position in the enumeration order

    def width(self) -> int:
        return len(self.lits)

    def describe(self, params: GammaParams) -> str:
        return f"{self.group} u={self.u} payload={self.payload} clause={self.lits}"


def block_lits(params: GammaParams, u: int, code: int) -> tuple:
    """Literals asserting 'block u differs from code'."""
    out = []
    for v in range(1, params.t + 1):
        bit = (code >> (v - 1)) & 1
        pv = params.var_p(u, v)
        out.append(-pv if bit else pv)
    return tuple(out)


def row_of(u: int) -> int:
    """Instruction index r owning definition row u."""
    return (u + 2) // 3


def prescribed_content(params: GammaParams, u: int, code: int) -> frozenset:
    r = row_of(u)
    ins = decode_instruction(code, r, params.n)
    return triple_contents(ins, r, params.n)[(u - 1) % 3]


# --- layout (counts and stream offsets) ------------------------------------


@lru_cache(maxsize=None)
def _layout(params: GammaParams):
    room = 1 << params.t
    nq = params.nq
    s3 = 3 * params.s
    g1_pref = [0]
    g2_pref = [0]
    for u in range(1, s3 + 1):
        ic = instruction_count(row_of(u), params.n)
        g1_pref.append(g1_pref[-1] + room - ic)
        g2_pref.append(g2_pref[-1] + ic * nq)
    g3_pref = [0]
    g4a_pref = [0]
    g4b_pref = [0]
    pc = 6 * (params.n + params.s) + 2  # g4a clauses per resolution code
    for u in range(s3 + 1, params.k + 1):
        g3_pref.append(g3_pref[-1] + room - inference_count(u, params))
        g4a_pref.append(g4a_pref[-1] + resolution_count(u, params) * pc)
        g4b_pref.append(g4b_pref[-1] + (u - 1) * nq)
    counts = {
        "g1": g1_pref[-1],
        "g2": g2_pref[-1],
        "g2p": 4 * params.t * params.s,
        "g3": g3_pref[-1],
        "g4a": g4a_pref[-1],
        "g4b": g4b_pref[-1],
        "g4c": params.k - s3,
        "g5": nq,
    }
    offsets = {}
    acc = 0
    for g in GROUPS:
        offsets[g] = acc
        acc += counts[g]
    return g1_pref, g2_pref, g3_pref, g4a_pref, g4b_pref, counts, offsets, acc


def clause_count(params: GammaParams) -> dict:
    """Exact per-group and total clause counts."""
    *_, counts, _offsets, total = _layout(params)
    out = dict(counts)
    out["total"] = total
    return out


def group_offset(params: GammaParams, group: str) -> int:
    return _layout(params)[6][group]


# --- builders: one per group, each computing its own stream position -------


def g1_clause(params: GammaParams, u: int, code: int) -> GammaClause:
    g1_pref = _layout(params)[0]
    ic = instruction_count(row_of(u), params.n)
    pos = group_offset(params, "g1") + g1_pref[u - 1] + (code - ic)
    return GammaClause("g1", u, (code,), block_lits(params, u, code), pos)


def g2_clause(params: GammaParams, u: int, code: int, i: int) -> GammaClause:
    g2_pref = _layout(params)[1]
    ns = params.n + params.s
    pos = group_offset(params, "g2") + g2_pref[u - 1] + code * params.nq + (i + ns)
    qlit = params.var_q(u, i)
    if i not in prescribed_content(params, u, code):
        qlit = -qlit
    return GammaClause("g2", u, (code, i), block_lits(params, u, code) + (qlit,), pos)


_G2P_PAIRS = ((0, 1), (1, 0), (0, 2), (2, 0))  # offsets within the triple


def g2p_clause(params: GammaParams, r: int, v: int, variant: int) -> GammaClause:
    a_off, b_off = _G2P_PAIRS[variant]
    ua, ub = 3 * r - 2 + a_off, 3 * r - 2 + b_off
    pos = group_offset(params, "g2p") + ((r - 1) * params.t + (v - 1)) * 4 + variant
    lits = (-params.var_p(ua, v), params.var_p(ub, v))
    return GammaClause("g2p", 3 * r - 2, (r, v, variant), lits, pos)


def g3_clause(params: GammaParams, u: int, code: int) -> GammaClause:
    g3_pref = _layout(params)[2]
    idx = u - 3 * params.s - 1
    pos = group_offset(params, "g3") + g3_pref[idx] + (code - inference_count(u, params))
    return GammaClause("g3", u, (code,), block_lits(params, u, code), pos)


def _g4a_passing(params: GammaParams, i: int) -> list:
    """(j, variant-count) pairs in emission order for pivot index i."""
    out = []
    for j in params.q_indices():
        if j in (i, -i):
            continue
        out.append((j, 2 if j == 0 else 3))
    return out


def g4a_clause(params: GammaParams, u: int, code: int, sub: int) -> GammaClause:
    g4a_pref = _layout(params)[3]
    pc = 6 * (params.n + params.s) + 2
    idx = u - 3 * params.s - 1
    rank = code - u
    pos = group_offset(params, "g4a") + g4a_pref[idx] + rank * pc + sub
    inf = decode_inference(code, u, params)
    v, w, i = inf.v, inf.w, inf.i
    blk = block_lits(params, u, code)
    q = params.var_q
    if sub == 0:
        extra = (q(v, i),)
    elif sub == 1:
        extra = (q(w, -i),)
    elif sub == 2:
        extra = (-q(w, i), q(u, i))      # pivot in far premise passes on
    elif sub == 3:
        extra = (-q(u, i), q(w, i))
    elif sub == 4:
        extra = (-q(v, -i), q(u, -i))
    elif sub == 5:
        extra = (-q(u, -i), q(v, -i))
    else:
        rest = sub - 6
        for j, cnt in _g4a_passing(params, i):
            if rest < cnt:
                if rest == 0:
                    extra = (-q(v, j), q(u, j))
                elif rest == 1:
                    extra = (-q(w, j), q(u, j))
                else:
                    extra = (-q(u, j), q(v, j), q(w, j))
                break
            rest -= cnt
        else:
            raise ParamError(f"g4a sub-index {sub} out of range")
    return GammaClause("g4a", u, (code, sub), blk + extra, pos)


def g4b_clause(params: GammaParams, u: int, code: int, i: int) -> GammaClause:
    g4b_pref = _layout(params)[4]
    idx = u - 3 * params.s - 1
    ns = params.n + params.s
    pos = group_offset(params, "g4b") + g4b_pref[idx] + (code - 1) * params.nq + (i + ns)
    v = code  # weakening codes name their premise directly
    lits = block_lits(params, u, code) + (-params.var_q(v, i), params.var_q(u, i))
    return GammaClause("g4b", u, (code, i), lits, pos)


def g4c_clause(params: GammaParams, u: int) -> GammaClause:
    pos = group_offset(params, "g4c") + (u - 3 * params.s - 1)
    lits = block_lits(params, u, 0) + (params.var_q(u, 0),)
    return GammaClause("g4c", u, (0,), lits, pos)


def g5_clause(params: GammaParams, i: int) -> GammaClause:
    ns = params.n + params.s
    pos = group_offset(params, "g5") + (i + ns)
    return GammaClause("g5", params.k, (i,), (-params.var_q(params.k, i),), pos)


# --- enumeration -----------------------------------------------------------


def enumerate_clauses(params: GammaParams) -> Iterator[GammaClause]:
    """The full family as a restartable stream, in the documented order."""
    room = 1 << params.t
    s3 = 3 * params.s
    for u in range(1, s3 + 1):
        ic = instruction_count(row_of(u), params.n)
        for code in range(ic, room):
            yield g1_clause(params, u, code)
    for u in range(1, s3 + 1):
        ic = instruction_count(row_of(u), params.n)
        for code in range(ic):
            for i in params.q_indices():
                yield g2_clause(params, u, code, i)
    for r in range(1, params.s + 1):
        for v in range(1, params.t + 1):
            for variant in range(4):
                yield g2p_clause(params, r, v, variant)
    for u in range(s3 + 1, params.k + 1):
        for code in range(inference_count(u, params), room):
            yield g3_clause(params, u, code)
    pc = 6 * (params.n + params.s) + 2
    for u in range(s3 + 1, params.k + 1):
        for rank in range(resolution_count(u, params)):
            for sub in range(pc):
                yield g4a_clause(params, u, u + rank, sub)
    for u in range(s3 + 1, params.k + 1):
        for v in range(1, u):
            for i in params.q_indices():
                yield g4b_clause(params, u, v, i)
    for u in range(s3 + 1, params.k + 1):
        yield g4c_clause(params, u)
    for i in params.q_indices():
        yield g5_clause(params, i)


def clause_at(params: GammaParams, position: int) -> GammaClause:
    """Random access into the enumeration order."""
    g1p, g2p_, g3p, g4ap, g4bp, counts, offsets, total = _layout(params)
    if not 0 <= position < total:
        raise ParamError(f"position {position} out of range 0..{total - 1}")
    group = GROUPS[0]
    for g in GROUPS:
        if position >= offsets[g]:
            group = g
    rel = position - offsets[group]
    s3 = 3 * params.s
    if group == "g1":
        u = next(u for u in range(1, s3 + 1) if g1p[u] > rel)
        code = instruction_count(row_of(u), params.n) + (rel - g1p[u - 1])
        return g1_clause(params, u, code)
    if group == "g2":
        u = next(u for u in range(1, s3 + 1) if g2p_[u] > rel)
        code, i_off = divmod(rel - g2p_[u - 1], params.nq)
        return g2_clause(params, u, code, i_off - (params.n + params.s))
    if group == "g2p":
        rv, variant = divmod(rel, 4)
        r, v = divmod(rv, params.t)
        return g2p_clause(params, r + 1, v + 1, variant)
    if group == "g3":
        idx = next(j for j in range(1, len(g3p)) if g3p[j] > rel)
        u = s3 + idx
        code = inference_count(u, params) + (rel - g3p[idx - 1])
        return g3_clause(params, u, code)
    if group == "g4a":
        pc = 6 * (params.n + params.s) + 2
        idx = next(j for j in range(1, len(g4ap)) if g4ap[j] > rel)
        u = s3 + idx
        rank, sub = divmod(rel - g4ap[idx - 1], pc)
        return g4a_clause(params, u, u + rank, sub)
    if group == "g4b":
        idx = next(j for j in range(1, len(g4bp)) if g4bp[j] > rel)
        u = s3 + idx
        code, i_off = divmod(rel - g4bp[idx - 1], params.nq)
        return g4b_clause(params, u, code + 1, i_off - (params.n + params.s))
    if group == "g4c":
        return g4c_clause(params, s3 + 1 + rel)
    return g5_clause(params, rel - (params.n + params.s))


def numbering_comment(params: GammaParams) -> list[str]:
    nq = params.nq
    return [
        f"gamma n={params.n} s={params.s} k={params.k} t={params.t}",
        f"var q(u,i) = (u-1)*{nq} + (i+{params.n + params.s}) + 1"
        f" for u in 1..{params.k}, i in -{params.n + params.s}..{params.n + params.s}",
        f"var p(u,v) = {params.k * nq} + (u-1)*{params.t} + v for v in 1..{params.t}",
    ]


def to_dimacs(params: GammaParams, sink) -> None:
    """Write the family as DIMACS CNF; clause order = enumeration order."""
    from .dimacs import write_dimacs

    total = clause_count(params)["total"]
    write_dimacs(
        sink,
        params.num_vars,
        total,
        (c.lits for c in enumerate_clauses(params)),
        comments=numbering_comment(params),
    )
