"""Total search-problem evaluators: find a falsified family clause.

Every total assignment of a family's variables falsifies some clause
(the families are unsatisfiable), and one can be located in time
O(k*(n+s+t)) by walking the encoded proof object row by row instead of
enumerating clauses: check selector agreement, selector validity,
content consistency against the named instruction/inference, then the
final-row emptiness constraints.

The implicit variant reads the assignment from a circuit describing a
2^m x 2^m bit array: row u-1 holds the bits of step u, columns 0..2s
the occurrence bits q(u, -s..s), columns 2s+1..2s+3m the selector bits
p(u, 1..t).  Columns beyond 2^m - 1 cannot be addressed with m input
bits and read as 0 (the array only fits completely for m >= 6).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .circuits import Circuit, evaluate
from .errors import ParamError, SoundnessError
from .gamma import (
    GammaClause,
    GammaParams,
    decode_inference,
    g1_clause,
    g2_clause,
    g2p_clause,
    g3_clause,
    g4a_clause,
    g4b_clause,
    g4c_clause,
    g5_clause,
    inference_count,
    instruction_count,
    prescribed_content,
)

DEFAULT_M_CAP = 8


@dataclass(frozen=True)
class FalsifiedClause:
    clause: GammaClause
    reason: str


class ExplicitAssignment:
    """Total assignment backed by a bit sequence indexed by variable."""

    def __init__(self, params: GammaParams, bits: Sequence[int]):
        if len(bits) != params.num_vars:
            raise ParamError(f"expected {params.num_vars} bits, got {len(bits)}")
        self.params = params
        self._bits = bytes(int(b) for b in bits)

    @classmethod
    def from_text(cls, params: GammaParams, text: str) -> "ExplicitAssignment":
        bits = [int(c) for c in text.strip() if c in "01"]
        return cls(params, bits)

    def get(self, var: int) -> int:
        return self._bits[var - 1]

    def to_text(self) -> str:
        return "".join(str(b) for b in self._bits)


def implicit_params(m: int) -> GammaParams:
    if m % 2 != 0:
        raise ParamError(f"m must be even, got {m}")
    if m < 4:
        raise ParamError(f"m must be >= 4, got {m}")
    return GammaParams(n=0, s=1 << (m // 2), k=1 << m)


class ImplicitAssignment:
    """Assignment read on demand from a circuit with 2m inputs."""

    def __init__(self, m: int, circuit: Circuit, m_cap: int = DEFAULT_M_CAP):
        if m > m_cap:
            raise ParamError(f"m={m} exceeds the configured cap {m_cap}")
        self.params = implicit_params(m)
        if circuit.n != 2 * m:
            raise ParamError(f"circuit must have {2 * m} inputs, has {circuit.n}")
        self.m = m
        self.circuit = circuit
        self._cache: dict[tuple[int, int], int] = {}

    def _bit(self, row: int, col: int) -> int:
        if col >= (1 << self.m):
            return 0
        key = (row, col)
        if key not in self._cache:
            row_bits = [(row >> (self.m - 1 - b)) & 1 for b in range(self.m)]
            col_bits = [(col >> (self.m - 1 - b)) & 1 for b in range(self.m)]
            _, out = evaluate(self.circuit, row_bits + col_bits)
            self._cache[key] = out
        return self._cache[key]

    def get(self, var: int) -> int:
        p = self.params
        if var <= p.k * p.nq:
            u, rest = divmod(var - 1, p.nq)
            return self._bit(u, rest)          # column i + s for q(u, i)
        rest = var - p.k * p.nq - 1
        u, v = divmod(rest, p.t)
        return self._bit(u, p.nq + v)          # columns 2s+1 .. 2s+t


def materialize(implicit: ImplicitAssignment) -> ExplicitAssignment:
    """The explicit table the implicit assignment describes."""
    p = implicit.params
    return ExplicitAssignment(p, [implicit.get(v) for v in range(1, p.num_vars + 1)])


def find_falsified(params: GammaParams, a) -> FalsifiedClause:
    """Locate a falsified clause of the family under a total assignment."""

    def block(u: int) -> int:
        code = 0
        for v in range(1, params.t + 1):
            code |= a.get(params.var_p(u, v)) << (v - 1)
        return code

    q = params.var_q
    s3 = 3 * params.s
    for r in range(1, params.s + 1):
        u0 = 3 * r - 2
        for v in range(1, params.t + 1):
            b0 = a.get(params.var_p(u0, v))
            b1 = a.get(params.var_p(u0 + 1, v))
            b2 = a.get(params.var_p(u0 + 2, v))
            variant = None
            if b0 == 1 and b1 == 0:
                variant = 0
            elif b1 == 1 and b0 == 0:
                variant = 1
            elif b0 == 1 and b2 == 0:
                variant = 2
            elif b2 == 1 and b0 == 0:
                variant = 3
            if variant is not None:
                return FalsifiedClause(
                    g2p_clause(params, r, v, variant),
                    f"selector blocks of triple {r} disagree at bit {v}",
                )
        ic = instruction_count(r, params.n)
        codes = {}
        for u in (u0, u0 + 1, u0 + 2):
            codes[u] = block(u)
            if codes[u] >= ic:
                return FalsifiedClause(
                    g1_clause(params, u, codes[u]),
                    f"block {u} encodes no valid instruction for y_{r}",
                )
        for u in (u0, u0 + 1, u0 + 2):
            content = prescribed_content(params, u, codes[u])
            for i in params.q_indices():
                if (i in content) != bool(a.get(q(u, i))):
                    return FalsifiedClause(
                        g2_clause(params, u, codes[u], i),
                        f"row {u} disagrees with its instruction at index {i}",
                    )
    for u in range(s3 + 1, params.k + 1):
        code = block(u)
        if code >= inference_count(u, params):
            return FalsifiedClause(
                g3_clause(params, u, code),
                f"block {u} encodes no valid inference",
            )
        inf = decode_inference(code, u, params)
        if inf.kind == "oneax":
            if not a.get(q(u, 0)):
                return FalsifiedClause(
                    g4c_clause(params, u),
                    f"row {u} claims 1-axiom but lacks the constant 1",
                )
        elif inf.kind == "weak":
            v = inf.v
            for i in params.q_indices():
                if a.get(q(v, i)) and not a.get(q(u, i)):
                    return FalsifiedClause(
                        g4b_clause(params, u, code, i),
                        f"row {u} drops index {i} of its weakening premise {v}",
                    )
        else:
            v, w, i = inf.v, inf.w, inf.i

            def fail(sub: int, why: str, u=u, code=code) -> FalsifiedClause:
                return FalsifiedClause(g4a_clause(params, u, code, sub),
                                       f"row {u} resolution: {why}")

            if not a.get(q(v, i)):
                return fail(0, f"pivot {i} missing from premise {v}")
            if not a.get(q(w, -i)):
                return fail(1, f"pivot {-i} missing from premise {w}")
            if a.get(q(w, i)) and not a.get(q(u, i)):
                return fail(2, f"index {i} not inherited from premise {w}")
            if a.get(q(u, i)) and not a.get(q(w, i)):
                return fail(3, f"index {i} not justified by premise {w}")
            if a.get(q(v, -i)) and not a.get(q(u, -i)):
                return fail(4, f"index {-i} not inherited from premise {v}")
            if a.get(q(u, -i)) and not a.get(q(v, -i)):
                return fail(5, f"index {-i} not justified by premise {v}")
            sub = 6
            for j in params.q_indices():
                if j in (i, -i):
                    continue
                qv, qw, qu = a.get(q(v, j)), a.get(q(w, j)), a.get(q(u, j))
                if qv and not qu:
                    return fail(sub, f"index {j} of premise {v} not passed on")
                if qw and not qu:
                    return fail(sub + 1, f"index {j} of premise {w} not passed on")
                if j != 0:
                    if qu and not (qv or qw):
                        return fail(sub + 2, f"index {j} appears from nowhere")
                    sub += 3
                else:
                    sub += 2
    for i in params.q_indices():
        if a.get(q(params.k, i)):
            return FalsifiedClause(
                g5_clause(params, i),
                f"final row is not empty (index {i} set)",
            )
    raise SoundnessError("assignment satisfies the family; the generator is broken")


@dataclass(frozen=True)
class ImplicitResult:
    falsified: FalsifiedClause
    position: int
    index_bits: str  # the position as a 5m-bit string


def find_falsified_implicit(m: int, circuit: Circuit,
                            m_cap: int = DEFAULT_M_CAP) -> ImplicitResult:
    a = ImplicitAssignment(m, circuit, m_cap)
    found = find_falsified(a.params, a)
    pos = found.clause.position
    if pos >= 1 << (5 * m):
        raise SoundnessError(f"stream position {pos} needs more than {5 * m} bits")
    return ImplicitResult(found, pos, format(pos, f"0{5 * m}b"))
