"""Command-line entry point exposing every toolkit operation.

Exit codes: 0 success, 1 domain error (invalid parameters, failed
check, unclassifiable clause ...), 2 I/O or environment error.  Domain
errors print a single machine-parseable line: ``error: <code>: <detail>``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .circuits import parse_circuit
from .clauses import Clause, format_clause, make_lit
from .dimacs import parse_dimacs
from .errors import FormatError, GammaError
from .gamma import GammaParams, clause_count, to_dimacs
from .proofs import (ERRefutation, Refutation, check_er, check_refutation,
                     format_proof, parse_proof, uniqueness_proof)
from .search import (DEFAULT_M_CAP, ExplicitAssignment, find_falsified,
                     find_falsified_implicit)


def _read(path: str) -> str:
    return Path(path).read_text()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def read_delta(path: str) -> list[Clause]:
    """Input clause set from DIMACS; variable v becomes x<v>."""
    _, clauses, _ = parse_dimacs(_read(path))
    return [Clause(frozenset(make_lit("x", abs(l), l > 0) for l in cl))
            for cl in clauses]


def parse_er_file(text: str, delta: list[Clause]) -> ERRefutation:
    """Extension refutation file: an ``er`` header, the definition
    instructions, then a ``steps`` section in the proof line format.
    Initial steps index delta first, then the definition clauses."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("er"):
        raise FormatError("missing 'er n=<n> defs=<s>' header")
    head = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
    try:
        n, s = int(head["n"]), int(head["defs"])
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad er header: {lines[0]!r}") from exc
    if len(lines) < 1 + s + 1 or lines[1 + s] != "steps":
        raise FormatError("expected the definition lines followed by 'steps'")
    defs = None
    if s:
        defs = parse_circuit("\n".join([f"circuit n={n} s={s}"] + lines[1:1 + s]))
    proof_text = "\n".join([f"proof premises=0"] + lines[s + 2:])
    steps = parse_proof(proof_text).steps
    return ERRefutation(list(delta), defs, steps)


def format_er_file(er: ERRefutation) -> str:
    from .circuits import format_instruction

    n = er.defs.n if er.defs else 0
    s = er.defs.s if er.defs else 0
    lines = [f"er n={n} defs={s}"]
    if er.defs:
        lines += [format_instruction(i, ins)
                  for i, ins in enumerate(er.defs.instructions, 1)]
    lines.append("steps")
    for i, step in enumerate(er.steps, start=1):
        just = " ".join(str(tok) for tok in step.just)
        lines.append(f"{i} {format_clause(step.clause)} ; {just}")
    return "\n".join(lines) + "\n"


def _params(args) -> GammaParams:
    return GammaParams(args.n, args.s, args.k)


def cmd_gen_gamma(args) -> int:
    params = _params(args)
    if args.out is None or args.out == "-":
        to_dimacs(params, sys.stdout)
    else:
        with open(args.out, "w") as fh:
            to_dimacs(params, fh)
    return 0


def cmd_stats(args) -> int:
    params = _params(args)
    counts = clause_count(params)
    parts = [f"vars={params.num_vars}", f"t={params.t}",
             f"width-max={params.max_width()}"]
    parts += [f"{g}={counts[g]}" for g in
              ("g1", "g2", "g2p", "g3", "g4a", "g4b", "g4c", "g5", "total")]
    print(" ".join(parts))
    return 0


def cmd_encode_circuit(args) -> int:
    circuit = parse_circuit(_read(args.circuit))
    from .circuits import encode_df
    from .dimacs import dimacs_text

    df = encode_df(circuit, args.tag)
    def num(lit: str) -> int:
        positive = not lit.startswith("-")
        var = lit if positive else lit[1:]
        idx = int(var[1:])
        value = idx if var.startswith("x") else circuit.n + idx
        return value if positive else -value

    clauses = []
    extra = 0
    for cl in df:
        lits = sorted((num(l) for l in cl.lits), key=abs)
        if cl.one:
            # dummy clauses carry the constant 1: satisfied by construction,
            # exported as a fresh always-true selector variable pair
            extra = 1
            lits = [circuit.n + circuit.s + 1] + lits
        clauses.append(tuple(lits))
    comments = [f"definition CNF of {args.circuit}",
                f"x1..x{circuit.n} -> 1..{circuit.n}; "
                f"{args.tag}1..{args.tag}{circuit.s} -> {circuit.n + 1}..{circuit.n + circuit.s}"]
    if extra:
        comments.append(f"constant-1 slots -> variable {circuit.n + circuit.s + 1} "
                        f"(asserted true)")
        clauses.append((circuit.n + circuit.s + 1,))
    _write(args.out, dimacs_text(circuit.n + circuit.s + extra, len(clauses),
                                 clauses, comments))
    return 0


def cmd_check_proof(args) -> int:
    r = parse_proof(_read(args.proof))
    if args.delta:
        r = Refutation(read_delta(args.delta), r.steps)
    v = check_refutation(r)
    if v is not None:
        print(f"error: check: step {v.step}: {v.reason}")
        return 1
    print(f"ok steps={len(r.steps)}")
    return 0


def cmd_check_er(args) -> int:
    delta = read_delta(args.delta)
    er = parse_er_file(_read(args.er), delta)
    v = check_er(er)
    if v is not None:
        print(f"error: check: step {v.step}: {v.reason}")
        return 1
    print(f"ok steps={len(er.steps)} defs={er.defs.s if er.defs else 0}")
    return 0


def cmd_uniq_proof(args) -> int:
    circuit = parse_circuit(_read(args.circuit))
    proof = uniqueness_proof(circuit)
    from .proofs import check_steps

    v = check_steps(proof.premises, proof.steps)
    if v is not None:  # never expected; the generator is checked in tests
        print(f"error: soundness: step {v.step}: {v.reason}")
        return 1
    _write(args.out, format_proof(proof))
    if args.out not in (None, "-"):
        print(f"ok steps={len(proof.steps)} gates={circuit.s}")
    return 0


def cmd_reduce(args) -> int:
    from .normalize import normalize_er, pad_normalized
    from .reduction import build_substitution, format_substitution

    delta = read_delta(args.delta)
    er = parse_er_file(_read(args.er), delta)
    ner = normalize_er(delta, er)
    if args.pad_k:
        ner = pad_normalized(ner, args.pad_k)
    subst = build_substitution(delta, ner)
    _write(args.out, format_substitution(subst))
    if args.norm_out:
        from .normalize import as_refutation

        _write(args.norm_out, format_proof(as_refutation(ner)))
    print(f"n=0 s={ner.s} k={ner.k} width={subst.width}")
    return 0


def cmd_verify_reduction(args) -> int:
    from .reduction import (format_certificate, parse_substitution,
                            verify_reduction)

    delta = read_delta(args.delta)
    params = _params(args)
    subst = parse_substitution(_read(args.sub), params)
    cert = verify_reduction(delta, params, subst)
    if args.cert:
        _write(args.cert, format_certificate(cert))
    counts = cert.counts()
    print(f"ok a={counts['a']} b={counts['b']} c={counts['c']}")
    return 0


def cmd_oracle_reduce(args) -> int:
    from .reduction import apply_oracle, parse_certificate, parse_substitution

    delta = read_delta(args.delta)
    params = _params(args)
    subst = parse_substitution(_read(args.sub), params)
    cert = parse_certificate(_read(args.cert), params)
    bits = [int(c) for c in args.alpha.strip() if c in "01"]
    variables = sorted({v for c in delta for v in c.variables()},
                       key=lambda v: int(v[1:]))
    if len(bits) != len(variables):
        raise FormatError(f"alpha needs {len(variables)} bits, got {len(bits)}")
    alpha = dict(zip(variables, bits))
    result = apply_oracle(params, subst, alpha, delta, cert)
    print(f"gamma-position={result.falsified_gamma.clause.position} "
          f"delta-index={result.delta_index} "
          f"clause={format_clause(result.delta_clause)} "
          f"queries={result.total_queries} "
          f"max-per-var={result.max_queries_per_var}")
    return 0


def cmd_search_eval(args) -> int:
    params = _params(args)
    a = ExplicitAssignment.from_text(params, _read(args.assignment))
    found = find_falsified(params, a)
    print(f"position={found.clause.position} group={found.clause.group} "
          f"u={found.clause.u} reason={found.reason!r}")
    return 0


def cmd_search_eval_implicit(args) -> int:
    circuit = parse_circuit(_read(args.circuit))
    result = find_falsified_implicit(args.m, circuit, m_cap=args.cap_m)
    cl = result.falsified.clause
    print(f"position={result.position} index-bits={result.index_bits} "
          f"group={cl.group} u={cl.u} reason={result.falsified.reason!r}")
    return 0


def cmd_randgen(args) -> int:
    from .randgen import RandomProcessConfig, generate_instance

    config = RandomProcessConfig(s=args.s, k=args.k, seed=args.seed,
                                 simplify=not args.unsimplified)
    instance = generate_instance(config)
    if args.out is None or args.out == "-":
        instance.write_dimacs(sys.stdout)
    else:
        instance.write_dimacs(args.out)
        print(f"clauses={len(instance.clauses)} vars={instance.num_vars}")
    return 0


def cmd_bench(args) -> int:
    from .bench import SolverSpec, run_benchmark

    grid = []
    for cell in args.grid.split(","):
        s, k = cell.split(":")
        grid.append((int(s), int(k)))
    seeds = list(range(args.seeds)) if args.seed_list is None else [
        int(x) for x in args.seed_list.split(",")]
    solvers = [SolverSpec(f"solver{i}" if len(args.solver_cmd) > 1 else "solver",
                          tmpl)
               for i, tmpl in enumerate(args.solver_cmd, start=1)]
    result = run_benchmark(grid, seeds, solvers, args.timeout, args.workdir,
                           jobs=args.jobs)
    result.write_csv(args.out if args.out else sys.stdout)
    if result.alarms:
        print(f"error: soundness: {len(result.alarms)} SAT verdicts on "
              f"always-unsatisfiable instances", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="gammakit", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add_params(p):
        p.add_argument("-n", type=int, required=True)
        p.add_argument("-s", type=int, required=True)
        p.add_argument("-k", type=int, required=True)

    p = sub.add_parser("gen-gamma", help="write a family instance as DIMACS")
    add_params(p)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_gen_gamma)

    p = sub.add_parser("stats", help="clause/width/variable counts")
    add_params(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("encode-circuit", help="definition CNF of a circuit")
    p.add_argument("circuit")
    p.add_argument("--tag", default="y")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_encode_circuit)

    p = sub.add_parser("check-proof", help="check a refutation file")
    p.add_argument("proof")
    p.add_argument("--delta", help="premises from a DIMACS file instead")
    p.set_defaults(func=cmd_check_proof)

    p = sub.add_parser("check-er", help="check an extension refutation")
    p.add_argument("er")
    p.add_argument("--delta", required=True)
    p.set_defaults(func=cmd_check_er)

    p = sub.add_parser("uniq-proof", help="derive computation uniqueness")
    p.add_argument("circuit")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_uniq_proof)

    p = sub.add_parser("reduce", help="build the clause substitution")
    p.add_argument("--delta", required=True)
    p.add_argument("--er", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--norm-out")
    p.add_argument("--pad-k", type=int)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify-reduction", help="certify every family clause")
    p.add_argument("--delta", required=True)
    p.add_argument("--sub", required=True)
    add_params(p)
    p.add_argument("--cert")
    p.set_defaults(func=cmd_verify_reduction)

    p = sub.add_parser("oracle-reduce", help="map an assignment to a falsified input clause")
    p.add_argument("--delta", required=True)
    p.add_argument("--sub", required=True)
    p.add_argument("--cert", required=True)
    add_params(p)
    p.add_argument("--alpha", required=True)
    p.set_defaults(func=cmd_oracle_reduce)

    p = sub.add_parser("search-eval", help="falsified clause under a bit-string assignment")
    add_params(p)
    p.add_argument("--assignment", required=True)
    p.set_defaults(func=cmd_search_eval)

    p = sub.add_parser("search-eval-implicit", help="falsified clause under a circuit-described assignment")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--circuit", required=True)
    p.add_argument("--cap-m", type=int, default=DEFAULT_M_CAP)
    p.set_defaults(func=cmd_search_eval_implicit)

    p = sub.add_parser("randgen", help="random always-unsatisfiable instance")
    p.add_argument("-s", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--unsimplified", action="store_true")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_randgen)

    p = sub.add_parser("bench", help="run solvers over a grid of random instances")
    p.add_argument("--grid", required=True, help="comma list of s:k cells")
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--seed-list")
    p.add_argument("--solver-cmd", action="append", required=True,
                   help="command template with {input}")
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--workdir", default="bench-instances")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GammaError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
