"""Minimal DIMACS CNF reading and writing."""

from __future__ import annotations

import io
from typing import Iterable, Iterator

from .errors import FormatError


def write_dimacs(sink, num_vars: int, num_clauses: int, clauses: Iterable[Iterable[int]],
                 comments: list[str] | None = None) -> None:
    """Write CNF to a path or a text file object."""
    if isinstance(sink, (str, bytes)):
        with open(sink, "w") as fh:
            write_dimacs(fh, num_vars, num_clauses, clauses, comments)
        return
    for line in comments or []:
        sink.write(f"c {line}\n")
    sink.write(f"p cnf {num_vars} {num_clauses}\n")
    for cl in clauses:
        sink.write(" ".join(str(l) for l in cl) + " 0\n")


def dimacs_text(num_vars: int, num_clauses: int, clauses: Iterable[Iterable[int]],
                comments: list[str] | None = None) -> str:
    buf = io.StringIO()
    write_dimacs(buf, num_vars, num_clauses, clauses, comments)
    return buf.getvalue()


def parse_dimacs(source) -> tuple[int, list[tuple[int, ...]], list[str]]:
    """Return (num_vars, clauses, comment lines). Accepts a path or text."""
    if isinstance(source, str) and "\n" not in source:
        with open(source) as fh:
            text = fh.read()
    else:
        text = source
    num_vars = None
    declared = None
    clauses: list[tuple[int, ...]] = []
    comments: list[str] = []
    pending: list[int] = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        if ln.startswith("c"):
            comments.append(ln[1:].strip())
            continue
        if ln.startswith("p"):
            toks = ln.split()
            if len(toks) != 4 or toks[1] != "cnf":
                raise FormatError(f"bad problem line {ln!r}")
            num_vars, declared = int(toks[2]), int(toks[3])
            continue
        for tok in ln.split():
            v = int(tok)
            if v == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(v)
    if pending:
        raise FormatError("last clause not terminated by 0")
    if num_vars is None:
        raise FormatError("missing 'p cnf' line")
    if declared is not None and declared != len(clauses):
        raise FormatError(f"header declares {declared} clauses, found {len(clauses)}")
    return num_vars, clauses, comments
