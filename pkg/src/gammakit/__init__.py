"""gammakit: clause families asserting short refutations of circuit
definition CNFs, checkers for the underlying proof systems, reductions
with machine-checkable certificates, search-problem evaluators and an
always-unsatisfiable random CNF generator."""

from .circuits import Circuit, Instruction, encode_df, evaluate, parse_circuit
from .clauses import Clause, clause
from .errors import (CheckError, FormatError, GammaError, ParamError,
                     SoundnessError, UnclassifiableClause)
from .gamma import GammaParams, clause_count, enumerate_clauses, to_dimacs
from .proofs import (ERRefutation, ProofStep, Refutation, check_er,
                     check_refutation, check_step, substitute_constants,
                     uniqueness_proof)
from .search import (ExplicitAssignment, ImplicitAssignment, find_falsified,
                     find_falsified_implicit)

__all__ = [
    "Circuit", "Instruction", "encode_df", "evaluate", "parse_circuit",
    "Clause", "clause",
    "GammaError", "ParamError", "FormatError", "CheckError",
    "SoundnessError", "UnclassifiableClause",
    "GammaParams", "clause_count", "enumerate_clauses", "to_dimacs",
    "Refutation", "ProofStep", "ERRefutation", "check_step",
    "check_refutation", "check_er", "substitute_constants", "uniqueness_proof",
    "ExplicitAssignment", "ImplicitAssignment", "find_falsified",
    "find_falsified_implicit",
]
