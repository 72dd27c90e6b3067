"""
Reading and writing the DIMACS CNF format.

A file consists of comment lines starting with ``c``, a header
``p cnf <num_vars> <num_clauses>`` and the clauses as runs of signed integers,
each terminated by ``0``. Clauses may span multiple lines and a line may hold
multiple clauses. Everything after a lone ``%`` is ignored.

Models are exchanged in the SAT competition style, as ``v`` lines of signed
literals terminated by ``0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Union

from .cnf import Clause, Formula, Literal, Model
from .log import logger


class DimacsError(ValueError):
    """The input is not valid DIMACS."""


class MissingHeader(DimacsError):
    pass


class VarOutOfRange(DimacsError):
    pass


class ClauseCountMismatch(DimacsError):
    pass


class TrailingGarbage(DimacsError):
    pass


class ZeroInsideHeader(DimacsError):
    pass


class MalformedModel(DimacsError):
    pass


@dataclass
class DimacsDocument:
    """
    A parsed DIMACS file.

    :param formula: The clauses of the file
    :type formula: Formula
    :param comments: The comment lines, without the leading ``c``
    :type comments: list[str]
    """

    formula: Formula
    comments: list[str] = field(default_factory=list)


Source = Union[str, bytes, IO[str], IO[bytes]]


def _read_text(source: Source, error: type[DimacsError] = DimacsError) -> str:
    if isinstance(source, (str, bytes)):
        data = source
    else:
        data = source.read()
    if isinstance(data, bytes):
        try:
            return data.decode("utf8")
        except UnicodeDecodeError as exc:
            raise error(f"Input is not valid UTF-8: {exc}") from exc
    return data


def _parse_header(line: str) -> tuple[int, int]:
    parts = line.split()
    if len(parts) > 4 and parts[4] == "0":
        raise ZeroInsideHeader(f"Header must not be terminated by 0: {line!r}")
    if len(parts) != 4 or parts[1] != "cnf":
        raise DimacsError(f"Malformed header: {line!r}")
    try:
        num_vars, num_clauses = int(parts[2]), int(parts[3])
    except ValueError as exc:
        raise DimacsError(f"Malformed header: {line!r}") from exc
    if num_vars < 0 or num_clauses < 0:
        raise DimacsError(f"Negative counts in header: {line!r}")
    return num_vars, num_clauses


def parse_dimacs(source: Source, strict: bool = False) -> DimacsDocument:
    """
    Parse a DIMACS CNF document.

    In lenient mode (the default) a clause count that does not match the
    header, and a missing ``0`` after the last clause, only cause a warning.

    :param source: The document as text, bytes or a readable stream
    :type source: str | bytes | IO
    :param strict: Turn the leniencies above into errors
    :type strict: bool
    :raises MissingHeader: If clauses come before the header, or no header exists
    :raises VarOutOfRange: If a literal exceeds the declared number of variables
    :raises ClauseCountMismatch: In strict mode, if the clause count differs
    :raises TrailingGarbage: For non-integer tokens, or in strict mode an
        unterminated last clause
    :raises ZeroInsideHeader: If the header line carries a ``0``
    :rtype: DimacsDocument
    """
    comments: list[str] = []
    header: tuple[int, int] | None = None
    clauses: list[Clause] = []
    current: list[Literal] = []

    for line in _read_text(source).splitlines():
        stripped = line.strip()
        if not stripped:
            continue
        if stripped[0] == "c":
            comments.append(stripped[2:] if stripped.startswith("c ") else stripped[1:])
            continue
        if stripped[0] == "p":
            if header is not None:
                raise DimacsError("Duplicate header")
            header = _parse_header(stripped)
            continue
        if header is None:
            raise MissingHeader("Clauses before the 'p cnf' header")

        tokens = stripped.split()
        if "%" in tokens:
            tokens = tokens[: tokens.index("%")]
            _add_tokens(tokens, header[0], clauses, current)
            break
        _add_tokens(tokens, header[0], clauses, current)

    if header is None:
        raise MissingHeader("No 'p cnf' header found")
    num_vars, num_clauses = header

    if current:
        if strict:
            raise TrailingGarbage("Last clause is not terminated by 0")
        logger.warning("Last clause is not terminated by 0, accepting it anyway")
        clauses.append(Clause(tuple(current)))

    if len(clauses) != num_clauses:
        message = f"Header declares {num_clauses} clauses, found {len(clauses)}"
        if strict:
            raise ClauseCountMismatch(message)
        logger.warning(message)

    return DimacsDocument(formula=Formula(num_vars, tuple(clauses)), comments=comments)


def _add_tokens(
    tokens: list[str], num_vars: int, clauses: list[Clause], current: list[Literal]
) -> None:
    for token in tokens:
        try:
            value = int(token)
        except ValueError as exc:
            raise TrailingGarbage(f"Unexpected token {token!r}") from exc
        if value == 0:
            clauses.append(Clause(tuple(current)))
            current.clear()
            continue
        if abs(value) > num_vars:
            raise VarOutOfRange(f"Literal {value} exceeds the {num_vars} declared variables")
        current.append(Literal.from_int(value))


def serialize_dimacs(doc: DimacsDocument | Formula) -> str:
    """
    Write a document in DIMACS CNF.

    :param doc: The document, or just a formula without comments
    :type doc: DimacsDocument | Formula
    :rtype: str
    """
    if isinstance(doc, Formula):
        doc = DimacsDocument(formula=doc)
    formula = doc.formula
    lines = [f"c {comment}" if comment else "c" for comment in doc.comments]
    lines.append(f"p cnf {formula.num_vars} {len(formula.clauses)}")
    for clause in formula.clauses:
        lines.append(" ".join(str(value) for value in clause.to_ints() + [0]))
    return "\n".join(lines) + "\n"


def read_dimacs(path: str, strict: bool = False) -> DimacsDocument:
    """Parse the DIMACS file at ``path``, see :py:func:`parse_dimacs`."""
    with open(path, "rb") as file:
        return parse_dimacs(file, strict=strict)


def write_dimacs(path: str, doc: DimacsDocument | Formula) -> None:
    """Write ``doc`` to ``path``, see :py:func:`serialize_dimacs`."""
    with open(path, "w", encoding="utf8") as file:
        file.write(serialize_dimacs(doc))


def parse_model(source: Source, num_vars: int) -> Model:
    """
    Read a model certificate.

    Accepted are SAT competition ``v`` lines as well as plain signed literals,
    one or more per line. ``c`` and ``s`` lines are skipped, a ``0`` ends the
    model.

    :param source: The certificate
    :type source: str | bytes | IO
    :param num_vars: The number of variables the model has to cover
    :type num_vars: int
    :raises MalformedModel: If the certificate is unreadable, contradictory or
        not total
    :rtype: Model
    """
    literals: list[int] = []
    done = False
    for line in _read_text(source, MalformedModel).splitlines():
        tokens = line.split()
        if not tokens or tokens[0] in ("c", "s"):
            continue
        if tokens[0] == "v":
            tokens = tokens[1:]
        for token in tokens:
            try:
                value = int(token)
            except ValueError as exc:
                raise MalformedModel(f"Unexpected token {token!r} in model") from exc
            if value == 0:
                done = True
                break
            literals.append(value)
        if done:
            break
    try:
        return Model.from_literals(literals, num_vars)
    except ValueError as exc:
        raise MalformedModel(str(exc)) from exc


def format_model(model: Model) -> str:
    """Return the model as a single ``v`` line."""
    return " ".join(["v"] + [str(value) for value in model.to_literals()] + ["0"])
