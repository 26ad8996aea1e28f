"""Line-oriented text formats for schemas (``.fd``) and decompositions (``.dec``).

Schema file::

    # Example: students and fee reductions
    attributes: sid cid st cr rd
    fd: sid -> st
    fd: cid -> cr
    fd: st cr -> rd

Decomposition file::

    table R1: sid cid rd
    table R2: sid st

``#`` starts a comment, blank lines are ignored, names are separated by
whitespace. Candidate keys are always computed, never declared.
"""

from __future__ import annotations

import dataclasses
import re

from .errors import DuplicateAttributesLine, ParseError, UnknownAttributeError
from .model import FD, NAME_RE, Decomposition, Schema, make_decomposition, ordered, sorted_fds

_WORD = re.compile(r"\S+")


@dataclasses.dataclass(frozen=True)
class SchemaDocument:
    text: str
    schema: Schema
    attributes_at: tuple[int, int]
    fd_locations: tuple[tuple[FD, int, int], ...]  # (fd, line, col) in file order

    def location_of(self, fd: FD) -> tuple[int, int]:
        for f, line, col in self.fd_locations:
            if f == fd:
                return line, col
        raise KeyError(fd)


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield lineno, body


def _names(body: str, start: int, lineno: int) -> list[tuple[str, int]]:
    """Whitespace-separated names in ``body[start:]`` with 1-based columns."""
    out = []
    for m in _WORD.finditer(body, start):
        if not NAME_RE.match(m.group()):
            raise ParseError(lineno, m.start() + 1, "an attribute name", m.group())
        out.append((m.group(), m.start() + 1))
    return out


def _keyword(body: str, lineno: int, allowed: tuple[str, ...]) -> tuple[str, int]:
    stripped = body.lstrip()
    col = len(body) - len(stripped)
    for kw in allowed:
        if stripped.startswith(kw):
            return kw, col + len(kw)
    word = stripped.split()[0]
    raise ParseError(lineno, col + 1, " or ".join(repr(k) for k in allowed), word)


def parse_schema(text: str) -> SchemaDocument:
    attrs_line: tuple[int, int] | None = None
    universe: dict[str, int] = {}
    raw_fds: list[tuple[list[tuple[str, int]], list[tuple[str, int]], int, int]] = []

    for lineno, body in _lines(text):
        kw, pos = _keyword(body, lineno, ("attributes:", "fd:"))
        if kw == "attributes:":
            if attrs_line is not None:
                raise DuplicateAttributesLine(lineno, attrs_line[0])
            attrs_line = (lineno, body.index(kw) + 1)
            names = _names(body, pos, lineno)
            if not names:
                raise ParseError(lineno, len(body.rstrip()) + 1, "at least one attribute name")
            for name, col in names:
                if name in universe:
                    raise ParseError(lineno, col, "distinct attribute names", name)
                universe[name] = col
        else:
            arrow = body.find("->", pos)
            if arrow < 0:
                raise ParseError(lineno, len(body.rstrip()) + 1, "'->'")
            if body.find("->", arrow + 2) >= 0:
                raise ParseError(lineno, body.find("->", arrow + 2) + 1, "a single '->'", "->")
            lhs = _names(body[:arrow], pos, lineno)
            rhs = _names(body, arrow + 2, lineno)
            if not lhs:
                raise ParseError(lineno, arrow + 1, "an attribute name before '->'", "->")
            if not rhs:
                raise ParseError(lineno, len(body.rstrip()) + 1, "an attribute name after '->'")
            raw_fds.append((lhs, rhs, lineno, body.index(kw) + 1))

    if attrs_line is None:
        last = len(text.splitlines()) + 1
        raise ParseError(last, 1, "an 'attributes:' line")

    located = []
    for lhs, rhs, lineno, col in raw_fds:
        for name, c in lhs + rhs:
            if name not in universe:
                raise UnknownAttributeError(lineno, c, name)
        located.append((FD({n for n, _ in lhs}, {n for n, _ in rhs}), lineno, col))
    schema = Schema(frozenset(universe), frozenset(f for f, _, _ in located))
    return SchemaDocument(text, schema, attrs_line, tuple(located))


def render_schema(schema: Schema) -> str:
    lines = ["attributes: " + " ".join(ordered(schema.universe))]
    lines += [f"fd: {' '.join(ordered(f.lhs))} -> {' '.join(ordered(f.rhs))}" for f in sorted_fds(schema.fds)]
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str, schema: Schema) -> Decomposition:
    tables: dict[str, frozenset[str]] = {}
    for lineno, body in _lines(text):
        _, pos = _keyword(body, lineno, ("table",))
        colon = body.find(":", pos)
        if colon < 0:
            raise ParseError(lineno, len(body.rstrip()) + 1, "':' after the table name")
        name = body[pos:colon].strip()
        if not NAME_RE.match(name):
            raise ParseError(lineno, pos + 1, "a table name", name)
        if name in tables:
            raise ParseError(lineno, pos + 1, "a new table name", name)
        names = _names(body, colon + 1, lineno)
        if not names:
            raise ParseError(lineno, len(body.rstrip()) + 1, "at least one attribute name")
        for attr, col in names:
            if attr not in schema.universe:
                raise UnknownAttributeError(lineno, col, attr)
        tables[name] = frozenset(a for a, _ in names)
    if not tables:
        raise ParseError(1, 1, "at least one 'table' line")
    return make_decomposition(schema, tables)


def render_decomposition(d: Decomposition) -> str:
    lines = []
    for rel, tag in zip(d.relations, d.provenance):
        line = f"table {rel.name}: {' '.join(ordered(rel.attrs))}"
        if tag is not None:
            line += f"  # {tag}"
        lines.append(line)
    return "\n".join(lines) + "\n"
