"""Immutable values: attribute sets, functional dependencies, schemas and
decompositions.

Attribute sets are plain ``frozenset[str]``. Anything that is rendered or
iterated for output goes through :func:`ordered`, which fixes the canonical
lexicographic order.
"""

from __future__ import annotations

import dataclasses
import enum
import re
from collections.abc import Iterable, Mapping, Sequence
from typing import Union

from .errors import DecompositionError, NotAttributePreserving, SchemaError

AttributeSet = frozenset  # frozenset[str]
AttrLike = Union[str, Iterable[str]]

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def attrset(value: AttrLike) -> frozenset[str]:
    """Build an attribute set from ``"A1 A2"``, ``"A1,A2"`` or any iterable of names."""
    if isinstance(value, str):
        return frozenset(value.replace(",", " ").split())
    return frozenset(value)


def ordered(attrs: Iterable[str]) -> list[str]:
    return sorted(attrs)


def render_attrs(attrs: Iterable[str], braces: bool | None = None) -> str:
    """``{A1, A2}``; a single attribute renders bare unless ``braces`` is True."""
    names = ordered(attrs)
    if braces is None:
        braces = len(names) != 1
    body = ", ".join(names)
    return "{" + body + "}" if braces else body


@dataclasses.dataclass(frozen=True, order=False)
class FD:
    """A functional dependency ``lhs -> rhs``.

    Sides may be given as strings (``FD("A1 A2", "A5")``); they are stored as
    frozensets. Emptiness is not rejected here, only when the dependency is
    placed into a :class:`Schema`.
    """

    lhs: frozenset[str]
    rhs: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "lhs", attrset(self.lhs))
        object.__setattr__(self, "rhs", attrset(self.rhs))

    @property
    def attrs(self) -> frozenset[str]:
        return self.lhs | self.rhs

    def is_trivial(self) -> bool:
        return self.rhs <= self.lhs

    def sort_key(self):
        return (len(self.lhs), ordered(self.lhs), ordered(self.rhs))

    def __str__(self):
        return f"{render_attrs(self.lhs)} → {render_attrs(self.rhs)}"


FDSet = frozenset  # frozenset[FD]


def fdset(fds: Iterable[FD | tuple[AttrLike, AttrLike]] = ()) -> frozenset[FD]:
    out = []
    for item in fds:
        out.append(item if isinstance(item, FD) else FD(*item))
    return frozenset(out)


def sorted_fds(fds: Iterable[FD]) -> list[FD]:
    return sorted(fds, key=FD.sort_key)


# -- validation issues ------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class UnknownAttribute:
    fd: FD | None
    name: str

    def __str__(self):
        where = f" in {self.fd}" if self.fd is not None else ""
        return f"unknown attribute {self.name!r}{where}"


@dataclasses.dataclass(frozen=True)
class EmptyFdSide:
    fd: FD

    def __str__(self):
        side = "left" if not self.fd.lhs else "right"
        return f"empty {side}-hand side in {self.fd}"


@dataclasses.dataclass(frozen=True)
class EmptyUniverse:
    def __str__(self):
        return "attribute universe is empty"


@dataclasses.dataclass(frozen=True)
class InvalidAttributeName:
    name: str

    def __str__(self):
        return f"invalid attribute name {self.name!r}"


def schema_issues(universe: frozenset[str], fds: Iterable[FD]) -> list:
    issues: list = []
    if not universe:
        issues.append(EmptyUniverse())
    for name in ordered(universe):
        if not NAME_RE.match(name):
            issues.append(InvalidAttributeName(name))
    for f in sorted_fds(fds):
        if not f.lhs or not f.rhs:
            issues.append(EmptyFdSide(f))
        for name in ordered(f.attrs - universe):
            issues.append(UnknownAttribute(f, name))
    return issues


@dataclasses.dataclass(frozen=True)
class Schema:
    """The universe of attributes together with the dependency set over it."""

    universe: frozenset[str]
    fds: frozenset[FD] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "universe", attrset(self.universe))
        object.__setattr__(self, "fds", fdset(self.fds))
        issues = schema_issues(self.universe, self.fds)
        if issues:
            raise SchemaError(issues)

    def rename(self, mapping: Mapping[str, str]) -> Schema:
        def ren(s):
            return frozenset(mapping.get(a, a) for a in s)

        return Schema(ren(self.universe), frozenset(FD(ren(f.lhs), ren(f.rhs)) for f in self.fds))


def validate_schema(universe: AttrLike, fds: Iterable[FD | tuple] = ()) -> Schema:
    """Return a :class:`Schema`, or raise :class:`SchemaError` listing every violation."""
    return Schema(attrset(universe), fdset(fds))


# -- relations and decompositions -------------------------------------------


class Provenance(str, enum.Enum):
    """Which normalization rule produced a table."""

    KEY_FRAGMENT = "key-fragment"
    PARTIAL_SPLIT = "partial-dependency-split"
    TRANSITIVITY_SPLIT = "transitivity-split"
    RESIDUAL_KEY = "residual-key-table"
    SYNTHESIS = "synthesis"

    def __str__(self):
        return self.value


@dataclasses.dataclass(frozen=True)
class RelationSchema:
    name: str
    attrs: frozenset[str]
    candidate_keys: tuple[frozenset[str], ...]

    @classmethod
    def build(cls, name: str, attrs: AttrLike, fds: Iterable[FD]) -> RelationSchema:
        """Create a relation whose keys are computed from ``fds`` (never declared)."""
        from .closure import candidate_keys

        attrs = attrset(attrs)
        if not attrs:
            raise DecompositionError(f"relation {name} has no attributes")
        return cls(name, attrs, tuple(candidate_keys(attrs, frozenset(fds))))

    @property
    def prime(self) -> frozenset[str]:
        return frozenset().union(*self.candidate_keys)

    def __str__(self):
        return f"{self.name}({', '.join(ordered(self.attrs))})"


@dataclasses.dataclass(frozen=True)
class Decomposition:
    relations: tuple[RelationSchema, ...]
    provenance: tuple[Provenance | None, ...]

    def __post_init__(self):
        if len(self.relations) != len(self.provenance):
            raise DecompositionError("one provenance tag is required per relation")

    @property
    def attrs(self) -> frozenset[str]:
        return frozenset().union(*(r.attrs for r in self.relations))

    def attr_sets(self) -> list[frozenset[str]]:
        return [r.attrs for r in self.relations]

    def __iter__(self):
        return iter(self.relations)

    def __len__(self):
        return len(self.relations)

    def by_name(self, name: str) -> RelationSchema:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(name)


def make_decomposition(
    schema: Schema,
    tables: Mapping[str, AttrLike] | Sequence[AttrLike],
    provenance: Sequence[Provenance | None] | None = None,
) -> Decomposition:
    """Build an attribute-preserving decomposition of ``schema``.

    ``tables`` is either a name -> attributes mapping or a sequence of
    attribute sets, which are then named R1, R2, ... in order.
    """
    if isinstance(tables, Mapping):
        items = [(name, attrset(a)) for name, a in tables.items()]
    else:
        items = [(f"R{i}", attrset(a)) for i, a in enumerate(tables, 1)]
    names = [n for n, _ in items]
    if len(set(names)) != len(names):
        raise DecompositionError("duplicate table names")
    unknown = frozenset().union(*(a for _, a in items)) - schema.universe
    if unknown:
        raise SchemaError([UnknownAttribute(None, n) for n in ordered(unknown)])
    rels = tuple(RelationSchema.build(n, a, schema.fds) for n, a in items)
    if provenance is None:
        provenance = [None] * len(rels)
    d = Decomposition(rels, tuple(provenance))
    missing = schema.universe - d.attrs
    if missing:
        raise NotAttributePreserving(missing)
    return d
