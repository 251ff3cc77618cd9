"""Literals and clauses.

A literal is a string: a variable like ``x3`` or ``y7`` optionally
prefixed with ``-`` for negation.  Variable names are a family letter
(``x`` for inputs, ``y``/``z``/... for computed-value copies, gate
variables of extensions included) followed by a 1-based index.

Clauses are literal *sets*; the constant 1 that the proof system admits
inside clauses is not a literal but a flag on the clause.  It does not
count toward the clause width.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import FormatError

_LIT_RE = re.compile(r"^-?[a-z]+[0-9]+$")


def neg(lit: str) -> str:
    return lit[1:] if lit.startswith("-") else "-" + lit


def lit_var(lit: str) -> str:
    return lit[1:] if lit.startswith("-") else lit


def lit_sign(lit: str) -> bool:
    """True for a positive literal."""
    return not lit.startswith("-")


def var_family(var: str) -> str:
    return var.rstrip("0123456789")


def var_index(var: str) -> int:
    return int(var[len(var_family(var)):])


def make_lit(family: str, index: int, positive: bool = True) -> str:
    lit = f"{family}{index}"
    return lit if positive else "-" + lit


@dataclass(frozen=True)
class Clause:
    """A set of literals plus an optional constant-1 member."""

    lits: frozenset[str] = frozenset()
    one: bool = False

    @property
    def width(self) -> int:
        return len(self.lits)

    def __contains__(self, lit: str) -> bool:
        return lit in self.lits

    def subsumes(self, other: "Clause") -> bool:
        """Set inclusion, the constant 1 included."""
        if self.one and not other.one:
            return False
        return self.lits <= other.lits

    def is_empty(self) -> bool:
        return not self.lits and not self.one

    def variables(self) -> set[str]:
        return {lit_var(l) for l in self.lits}

    def __str__(self) -> str:
        return format_clause(self)


def clause(*lits: str, one: bool = False) -> Clause:
    """Build a clause from literal tokens; the token ``1`` sets the flag."""
    out = set()
    for lit in lits:
        if lit == "1":
            one = True
            continue
        if not _LIT_RE.match(lit):
            raise FormatError(f"bad literal {lit!r}")
        out.add(lit)
    return Clause(frozenset(out), one)


def sorted_lits(c: Clause) -> list[str]:
    return sorted(c.lits, key=lambda l: (var_family(lit_var(l)), var_index(lit_var(l)), not lit_sign(l)))


def format_clause(c: Clause) -> str:
    if c.is_empty():
        return "empty"
    toks = sorted_lits(c)
    if c.one:
        toks.append("1")
    return " ".join(toks)


def parse_clause(tokens: Iterable[str]) -> Clause:
    toks = list(tokens)
    if toks == ["empty"]:
        return Clause()
    return clause(*toks)


def evaluate_clause(c: Clause, assignment: dict[str, int]) -> bool:
    """Truth value under a total assignment; the constant 1 is true."""
    if c.one:
        return True
    for lit in c.lits:
        val = assignment[lit_var(lit)]
        if bool(val) == lit_sign(lit):
            return True
    return False
