"""Implication machinery over functional dependencies.

F+ is never materialized; every question about it is answered through
:func:`attribute_closure`.
"""

from __future__ import annotations

import dataclasses
import itertools
from collections.abc import Iterable

from .config import check_size, current_limits
from .model import FD, attrset, ordered, sorted_fds


def attribute_closure(x: Iterable[str], fds: Iterable[FD]) -> frozenset[str]:
    closure = set(attrset(x))
    pending = list(fds)
    changed = True
    while changed:
        changed = False
        rest = []
        for f in pending:
            if f.lhs <= closure:
                if not f.rhs <= closure:
                    closure |= f.rhs
                    changed = True
            else:
                rest.append(f)
        pending = rest
    return frozenset(closure)


def implies(fds: Iterable[FD], candidate: FD) -> bool:
    return candidate.rhs <= attribute_closure(candidate.lhs, fds)


def equivalent(f: Iterable[FD], g: Iterable[FD]) -> bool:
    f, g = frozenset(f), frozenset(g)
    return all(implies(g, x) for x in f) and all(implies(f, x) for x in g)


def is_superkey(x: Iterable[str], attrs: frozenset[str], fds: Iterable[FD]) -> bool:
    return attrs <= attribute_closure(x, fds)


def split_rhs(fds: Iterable[FD]) -> list[FD]:
    out = {FD(f.lhs, {a}) for f in fds for a in f.rhs if a not in f.lhs}
    return sorted_fds(out)


def minimal_cover(fds: Iterable[FD]) -> frozenset[FD]:
    """Canonical cover: singleton right sides, no extraneous determinant
    attributes, no redundant dependencies. Ties are broken in canonical order,
    so the result is deterministic."""
    work = split_rhs(fds)

    reduced = []
    for f in work:
        lhs = set(f.lhs)
        for a in ordered(f.lhs):
            if len(lhs) > 1 and f.rhs <= attribute_closure(lhs - {a}, work):
                lhs.discard(a)
        reduced.append(FD(frozenset(lhs), f.rhs))
    work = sorted_fds(set(reduced))

    for f in list(work):
        others = [g for g in work if g != f]
        if implies(others, f):
            work = others
    return frozenset(work)


def candidate_keys(attrs: Iterable[str], fds: Iterable[FD]) -> list[frozenset[str]]:
    """All minimal subsets of ``attrs`` whose closure covers ``attrs``.

    Attributes not derivable from the rest of ``attrs`` seed every key; the
    remaining search walks supersets of that core in increasing size.
    """
    attrs = attrset(attrs)
    fds = frozenset(fds)
    check_size("candidate key search", len(attrs), current_limits().keys)

    core = frozenset(a for a in attrs if a not in attribute_closure(attrs - {a}, fds))
    reached = attribute_closure(core, fds)
    if attrs <= reached:
        return [core]

    # an attribute already implied by the core can never sit in a minimal key
    optional = ordered(attrs - reached)
    keys: list[frozenset[str]] = []
    for size in range(1, len(optional) + 1):
        for extra in itertools.combinations(optional, size):
            cand = core | frozenset(extra)
            if any(k <= cand for k in keys):
                continue
            if attrs <= attribute_closure(cand, fds):
                keys.append(cand)
    return sorted(keys, key=lambda k: (len(k), ordered(k)))


def prime_attributes(attrs: Iterable[str], fds: Iterable[FD]) -> frozenset[str]:
    return frozenset().union(*candidate_keys(attrs, fds))


@dataclasses.dataclass(frozen=True)
class ProjectedFDSet:
    """A reduced, entailment-equivalent representative of F+ restricted to ``scope``."""

    base: frozenset[FD]
    scope: frozenset[str]
    fds: frozenset[FD]

    def __iter__(self):
        return iter(sorted_fds(self.fds))

    def __len__(self):
        return len(self.fds)


def project_fds(fds: Iterable[FD], scope: Iterable[str]) -> ProjectedFDSet:
    """Project the closure of ``fds`` onto ``scope``.

    Emits ``X -> (X+ & scope) - X`` for each subset X, dropping X when a
    proper subset already yields the same right side together with X itself.
    """
    base = frozenset(fds)
    scope = attrset(scope)
    check_size("dependency projection", len(scope), current_limits().projection)

    names = ordered(scope)
    reach: dict[frozenset[str], frozenset[str]] = {}
    out = []
    for size in range(1, len(names) + 1):
        for combo in itertools.combinations(names, size):
            x = frozenset(combo)
            reach[x] = attribute_closure(x, base) & scope
            rhs = reach[x] - x
            if not rhs:
                continue
            if any(reach[x - {a}] | x >= reach[x] for a in x if len(x) > 1):
                continue
            out.append(FD(x, rhs))
    return ProjectedFDSet(base, scope, frozenset(out))
