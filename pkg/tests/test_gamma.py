import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gammakit.errors import ParamError
from gammakit.gamma import (GammaParams, Inference, clause_at, clause_count,
                            decode_inference, decode_instruction,
                            encode_inference, encode_instruction,
                            enumerate_clauses, inference_count,
                            instruction_count, resolution_count)
from helpers import SMALL_GRID


def test_params_validation():
    with pytest.raises(ParamError):
        GammaParams(0, 1, 2)      # k < 3s
    with pytest.raises(ParamError):
        GammaParams(1, 1, 3)      # s <= n
    with pytest.raises(ParamError):
        GammaParams(-1, 1, 3)


def test_t_is_ceil_3_log2_k():
    import math
    for k in (3, 4, 6, 9, 12, 16, 64, 100):
        p = GammaParams(0, max(1, k // 3), k) if k >= 3 else None
        expected = math.ceil(3 * math.log2(k))
        assert p.t == expected


def test_variable_numbering_spot_values():
    p = GammaParams(0, 1, 3)
    assert p.num_vars == 24
    assert p.var_q(1, -1) == 1
    assert p.var_q(1, 0) == 2
    assert p.var_q(1, 1) == 3
    assert p.var_q(3, 1) == 9
    assert p.var_p(1, 1) == 10
    assert p.var_p(3, 5) == 24


@pytest.mark.parametrize("r,n,size", [(1, 0, 2), (2, 0, 5), (3, 2, 14)])
def test_instruction_codebook_sizes(r, n, size):
    assert instruction_count(r, n) == size
    decoded = [decode_instruction(c, r, n) for c in range(size)]
    assert all(d is not None for d in decoded)
    assert len(set(decoded)) == size
    assert decode_instruction(size, r, n) is None


@given(st.integers(1, 12), st.integers(0, 4))
def test_instruction_codebook_bijective(r, n):
    size = instruction_count(r, n)
    for code in range(size):
        ins = decode_instruction(code, r, n)
        assert encode_instruction(ins, r, n) == code


def test_inference_codebook_size_by_enumeration():
    p = GammaParams(0, 1, 9)
    u = 4
    size = inference_count(u, p)
    decoded = [decode_inference(c, u, p) for c in range(size)]
    assert all(d is not None for d in decoded)
    assert len(set(decoded)) == size
    assert size == 22  # 1 + 3 + 2*(0+1)*9
    # paper-style upper bound
    assert size <= 2 + (u - 1) + (2 + p.n + p.s) * (u - 1) ** 2
    assert decode_inference(size, u, p) is None
    assert decode_inference(0, u, p) == Inference("oneax")


@given(st.sampled_from(SMALL_GRID), st.data())
def test_inference_codebook_bijective(params, data):
    if params.k == 3 * params.s:
        return
    u = data.draw(st.integers(3 * params.s + 1, params.k))
    for code in range(inference_count(u, params)):
        inf = decode_inference(code, u, params)
        assert encode_inference(inf, u, params) == code


def test_clause_count_013_frozen():
    p = GammaParams(0, 1, 3)
    counts = clause_count(p)
    # hand-computed: g1 = 3*(2^5-2), g2 = 3*2*3, g2p = 4*5*1, g5 = 3
    assert counts["g1"] == 90
    assert counts["g2"] == 18
    assert counts["g2p"] == 20
    assert counts["g3"] == counts["g4a"] == counts["g4b"] == counts["g4c"] == 0
    assert counts["g5"] == 3
    assert counts["total"] == 131


@pytest.mark.parametrize("params", SMALL_GRID, ids=str)
def test_stream_matches_counts_and_positions(params):
    counts = clause_count(params)
    seen = 0
    per_group = {g: 0 for g in counts if g != "total"}
    for expected_pos, cl in enumerate(enumerate_clauses(params)):
        assert cl.position == expected_pos
        per_group[cl.group] += 1
        seen += 1
        assert len(cl.lits) <= params.max_width()
    assert seen == counts["total"]
    for g, c in per_group.items():
        assert c == counts[g]


@pytest.mark.parametrize("params", [GammaParams(0, 1, 3), GammaParams(0, 1, 9),
                                    GammaParams(1, 2, 6)], ids=str)
def test_clause_at_inverts_stream(params):
    for cl in enumerate_clauses(params):
        again = clause_at(params, cl.position)
        assert again == cl


def test_counts_monotone_in_k():
    for n, s in [(0, 1), (0, 2), (1, 2)]:
        totals = [clause_count(GammaParams(n, s, k))["total"]
                  for k in range(3 * s, 3 * s + 6)]
        assert totals == sorted(totals)


def test_total_below_k5():
    # documented constant C = 1 across the test grid
    for params in SMALL_GRID:
        assert clause_count(params)["total"] <= params.k ** 5


def test_g5_unit_clauses_013():
    p = GammaParams(0, 1, 3)
    g5 = [c for c in enumerate_clauses(p) if c.group == "g5"]
    assert [c.lits for c in g5] == [(-p.var_q(3, -1),), (-p.var_q(3, 0),),
                                    (-p.var_q(3, 1),)]


def test_stream_tail_is_g5():
    p = GammaParams(0, 2, 6)
    clauses = list(enumerate_clauses(p))
    nq = p.nq
    assert all(c.group == "g5" for c in clauses[-nq:])
    assert len(clauses[-1].lits) == 1


def test_g4a_per_code_clause_count():
    params = GammaParams(0, 1, 9)
    per_code = 6 * (params.n + params.s) + 2
    g4a = [c for c in enumerate_clauses(params) if c.group == "g4a"]
    total_codes = sum(resolution_count(u, params)
                      for u in range(3 * params.s + 1, params.k + 1))
    assert len(g4a) == total_codes * per_code
