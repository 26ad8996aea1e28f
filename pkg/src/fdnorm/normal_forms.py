"""Partial and transitive dependency witnesses and normal-form classification."""

from __future__ import annotations

import dataclasses
import enum
import itertools
from collections.abc import Iterable

from .closure import attribute_closure, project_fds
from .config import current_limits
from .model import FD, Decomposition, RelationSchema, Schema, ordered, render_attrs
from .verification import chase_lossless, preservation_check


class NormalForm(enum.IntEnum):
    NF1 = 1
    NF2 = 2
    NF3 = 3

    def __str__(self):
        return f"{self.value}NF"


@dataclasses.dataclass(frozen=True)
class PartialDependencyWitness:
    key: frozenset[str]
    part: frozenset[str]
    attribute: str

    def __str__(self):
        return f"{render_attrs(self.part)} → {self.attribute} (part of key {render_attrs(self.key)})"


@dataclasses.dataclass(frozen=True)
class TransitiveDependencyWitness:
    alpha: frozenset[str]
    beta: frozenset[str]
    attribute: str

    def __str__(self):
        return f"{render_attrs(self.alpha)} → {render_attrs(self.beta)} → {self.attribute}"


@dataclasses.dataclass(frozen=True)
class NormalFormLabel:
    """``level`` is the highest form satisfied; the witnesses say why the next
    one fails. ``lossless`` and ``preserving`` are None for a single table."""

    level: NormalForm
    table_witnesses: dict[str, tuple]
    lossless: bool | None = None
    preserving: bool | None = None
    table_levels: dict[str, NormalForm] = dataclasses.field(default_factory=dict)
    lost: tuple[FD, ...] = ()


def _proper_subsets(s: frozenset[str]):
    names = ordered(s)
    for size in range(1, len(names)):
        for combo in itertools.combinations(names, size):
            yield frozenset(combo)


def partial_dependency_witnesses(rel: RelationSchema, fds: Iterable[FD]) -> list[PartialDependencyWitness]:
    fds = frozenset(fds)
    nonprime = ordered(rel.attrs - rel.prime)
    out = []
    for key in rel.candidate_keys:
        for part in _proper_subsets(key):
            reach = attribute_closure(part, fds)
            out.extend(PartialDependencyWitness(key, part, a) for a in nonprime if a in reach)
    return out


def _beta_candidates(rel: RelationSchema, fds: frozenset[FD]) -> list[frozenset[str]]:
    if len(rel.attrs) <= current_limits().powerset_witness:
        names = ordered(rel.attrs)
        return [frozenset(c) for size in range(1, len(names) + 1) for c in itertools.combinations(names, size)]
    lhs = {f.lhs for f in project_fds(fds, rel.attrs)}
    return sorted(lhs, key=lambda s: (len(s), ordered(s)))


def transitive_dependency_witnesses(
    rel: RelationSchema, fds: Iterable[FD], *, include_prime: bool = False
) -> list[TransitiveDependencyWitness]:
    """Witnesses ``key → beta → A`` with beta not determining the key.

    Only non-prime targets are reported unless ``include_prime`` is set;
    transitivity into a prime attribute does not break 3NF.
    """
    fds = frozenset(fds)
    targets = rel.attrs if include_prime else rel.attrs - rel.prime
    out = []
    for alpha in rel.candidate_keys:
        alpha_reach = attribute_closure(alpha, fds)
        for beta in _beta_candidates(rel, fds):
            if beta <= alpha or not beta <= alpha_reach:
                continue
            beta_reach = attribute_closure(beta, fds)
            if alpha <= beta_reach:
                continue
            for a in ordered(targets & beta_reach - alpha - beta):
                out.append(TransitiveDependencyWitness(alpha, beta, a))
    return out


def classify_table(rel: RelationSchema, fds: Iterable[FD]) -> NormalFormLabel:
    fds = frozenset(fds)
    partial = partial_dependency_witnesses(rel, fds)
    if partial:
        return NormalFormLabel(NormalForm.NF1, {rel.name: tuple(partial)}, table_levels={rel.name: NormalForm.NF1})
    transitive = transitive_dependency_witnesses(rel, fds)
    level = NormalForm.NF2 if transitive else NormalForm.NF3
    return NormalFormLabel(level, {rel.name: tuple(transitive)}, table_levels={rel.name: level})


def classify_database(d: Decomposition, schema: Schema) -> NormalFormLabel:
    witnesses: dict[str, tuple] = {}
    levels: dict[str, NormalForm] = {}
    for rel in d.relations:
        label = classify_table(rel, schema.fds)
        witnesses.update(label.table_witnesses)
        levels[rel.name] = label.level
    lossless = chase_lossless(d, schema)
    pres = preservation_check(d, schema)
    level = min(levels.values())
    if not (lossless and pres.preserved):
        level = NormalForm.NF1
    return NormalFormLabel(level, witnesses, lossless, pres.preserved, levels, pres.lost)
