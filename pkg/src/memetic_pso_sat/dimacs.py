"""DIMACS CNF reading and writing."""

from __future__ import annotations

import io
import logging
import re
from pathlib import Path
from typing import Iterable, Optional, TextIO, Union

from .exceptions import DimacsParseError
from .models import Clause, CnfFormula

logger = logging.getLogger(__name__)

LITERAL_PATTERN = re.compile(r"-?[0-9]+")
COUNT_PATTERN = re.compile(r"[0-9]+")


def parse_dimacs(text: Union[str, TextIO]) -> CnfFormula:
    """Parse DIMACS CNF text into a formula.

    Comment lines (``c ...``) may appear anywhere. Clauses are signed
    integers terminated by ``0`` and may span lines. A line starting with
    ``%`` (SATLIB trailer) ends the clause section. Repeated literals inside
    a clause are dropped; tautological clauses are kept.

    Args:
        text: DIMACS content or an open text stream

    Returns:
        The parsed formula, DIMACS variable i mapped to index i - 1

    Raises:
        DimacsParseError: On a missing or duplicate header, an out-of-range
            literal, an empty or unterminated clause, or a clause count that
            differs from the header

    """
    stream = io.StringIO(text) if isinstance(text, str) else text

    header: Optional[tuple[int, int]] = None
    clauses: list[Clause] = []
    pending: list[int] = []
    line_number = 0

    for line_number, raw_line in enumerate(stream, start=1):
        line = raw_line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if header is not None:
                raise DimacsParseError("duplicate problem line", line_number)
            header = _parse_header(line, line_number)
            continue
        if header is None:
            raise DimacsParseError("clause data before the 'p cnf' header", line_number)

        variable_count = header[0]
        for token in line.split():
            if not LITERAL_PATTERN.fullmatch(token):
                raise DimacsParseError(f"invalid literal {token!r}", line_number)
            value = int(token)
            if value == 0:
                if not pending:
                    raise DimacsParseError("empty clause", line_number)
                clauses.append(Clause.from_dimacs(pending))
                pending = []
            elif abs(value) > variable_count:
                raise DimacsParseError(
                    f"literal {value} out of range for {variable_count} variables",
                    line_number,
                )
            else:
                pending.append(value)

    if header is None:
        raise DimacsParseError("missing 'p cnf' header", max(line_number, 1))
    if pending:
        raise DimacsParseError("last clause is not terminated by 0", line_number)

    variable_count, clause_count = header
    if len(clauses) != clause_count:
        raise DimacsParseError(
            f"header declares {clause_count} clauses, found {len(clauses)}",
            line_number,
        )

    logger.debug(f"Parsed DIMACS formula: {variable_count} variables, {clause_count} clauses")
    return CnfFormula(variable_count=variable_count, clauses=tuple(clauses))


def _parse_header(line: str, line_number: int) -> tuple[int, int]:
    fields = line.split()
    if len(fields) != 4 or fields[0] != "p" or fields[1] != "cnf":
        raise DimacsParseError(f"malformed problem line {line!r}, expected 'p cnf <n> <m>'", line_number)
    if not (COUNT_PATTERN.fullmatch(fields[2]) and COUNT_PATTERN.fullmatch(fields[3])):
        raise DimacsParseError(
            f"counts in problem line {line!r} must be non-negative decimal integers", line_number,
        )
    return int(fields[2]), int(fields[3])


def write_dimacs(formula: CnfFormula, comments: Iterable[str] = ()) -> str:
    """Render ``formula`` as canonical DIMACS text (LF line endings).

    Each comment string becomes a ``c`` line ahead of the header.
    """
    lines = [f"c {comment}".rstrip() for comment in comments]
    lines.append(f"p cnf {formula.variable_count} {formula.clause_count}")
    for clause in formula.clauses:
        lines.append(" ".join(str(value) for value in clause.to_dimacs()) + " 0")
    return "\n".join(lines) + "\n"


def read_dimacs_file(file_path: Union[str, Path]) -> CnfFormula:
    """Load a DIMACS CNF file.

    Raises:
        FileNotFoundError: If the file doesn't exist
        DimacsParseError: If the content is malformed

    """
    file_path = Path(file_path)
    if not file_path.exists():
        raise FileNotFoundError(f"CNF file not found: {file_path}")
    with file_path.open("r", encoding="utf-8") as f:
        return parse_dimacs(f)


def write_dimacs_file(
    file_path: Union[str, Path],
    formula: CnfFormula,
    comments: Iterable[str] = (),
) -> None:
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with file_path.open("w", encoding="utf-8", newline="\n") as f:
        f.write(write_dimacs(formula, comments))
