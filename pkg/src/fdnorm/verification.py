"""Legitimacy checks for decompositions.

Dependency preservation uses the restricted-closure algorithm; losslessness
is decided by the binary intersection rule for two tables and by the chase in
general. A tuple-level oracle builds concrete instances and joins their
projections so that spurious tuples can be counted directly.
"""

from __future__ import annotations

import dataclasses
import itertools
import random
from collections.abc import Iterable, Sequence

from .closure import attribute_closure, candidate_keys, minimal_cover
from .errors import CyclicCover
from .model import FD, Decomposition, RelationSchema, Schema, attrset, ordered, sorted_fds

# -- dependency preservation ------------------------------------------------


@dataclasses.dataclass(frozen=True)
class PreservationReport:
    preserved: bool
    lost: tuple[FD, ...]


def restricted_closure(x: Iterable[str], scopes: Sequence[frozenset[str]], fds: Iterable[FD]) -> frozenset[str]:
    """Closure of ``x`` under the union of the projections of ``fds`` onto ``scopes``."""
    fds = frozenset(fds)
    z = set(x)
    changed = True
    while changed:
        changed = False
        for scope in scopes:
            gained = attribute_closure(z & scope, fds) & scope
            if not gained <= z:
                z |= gained
                changed = True
    return frozenset(z)


def preservation_check(d: Decomposition, schema: Schema) -> PreservationReport:
    scopes = d.attr_sets()
    lost = [
        f
        for f in sorted_fds(minimal_cover(schema.fds))
        if not f.rhs <= restricted_closure(f.lhs, scopes, schema.fds)
    ]
    return PreservationReport(not lost, tuple(lost))


# -- lossless join ----------------------------------------------------------


def binary_lossless(r1: RelationSchema | Iterable[str], r2: RelationSchema | Iterable[str], fds: Iterable[FD]) -> bool:
    a1 = r1.attrs if isinstance(r1, RelationSchema) else attrset(r1)
    a2 = r2.attrs if isinstance(r2, RelationSchema) else attrset(r2)
    common = attribute_closure(a1 & a2, fds)
    return a1 <= common or a2 <= common


DISTINGUISHED = 0


@dataclasses.dataclass(frozen=True)
class ChaseStep:
    fd: FD
    rows: tuple[int, int]
    column: str
    replaced: int
    by: int


@dataclasses.dataclass(frozen=True)
class ChaseTableau:
    """Rows follow the decomposition's relations, columns the sorted universe.

    Symbol 0 is the distinguished symbol; row ``i`` starts with the unique
    symbol ``i + 1`` in every column outside its relation.
    """

    columns: tuple[str, ...]
    initial: tuple[tuple[int, ...], ...]
    rows: tuple[tuple[int, ...], ...]
    trace: tuple[ChaseStep, ...]

    @property
    def lossless(self) -> bool:
        return any(all(s == DISTINGUISHED for s in row) for row in self.rows)

    def replay(self) -> tuple[tuple[int, ...], ...]:
        col = {c: j for j, c in enumerate(self.columns)}
        rows = [list(r) for r in self.initial]
        for step in self.trace:
            j = col[step.column]
            for row in rows:
                if row[j] == step.replaced:
                    row[j] = step.by
        return tuple(tuple(r) for r in rows)

    def render(self) -> str:
        def sym(s):
            return "a" if s == DISTINGUISHED else f"b{s}"

        lines = ["\t".join(self.columns)]
        lines += ["\t".join(sym(s) for s in row) for row in self.rows]
        return "\n".join(lines)


def chase_tableau(d: Decomposition, schema: Schema) -> ChaseTableau:
    columns = tuple(ordered(schema.universe))
    col = {c: j for j, c in enumerate(columns)}
    initial = tuple(
        tuple(DISTINGUISHED if c in rel.attrs else i + 1 for c in columns) for i, rel in enumerate(d.relations)
    )
    rows = [list(r) for r in initial]
    cover = sorted_fds(minimal_cover(schema.fds))
    trace: list[ChaseStep] = []

    changed = True
    while changed:
        changed = False
        for f in cover:
            lhs = [col[a] for a in ordered(f.lhs)]
            (target,) = f.rhs
            j = col[target]
            for p, q in itertools.combinations(range(len(rows)), 2):
                rp, rq = rows[p], rows[q]
                if rp[j] == rq[j] or any(rp[k] != rq[k] for k in lhs):
                    continue
                keep, drop = min(rp[j], rq[j]), max(rp[j], rq[j])
                for row in rows:
                    if row[j] == drop:
                        row[j] = keep
                trace.append(ChaseStep(f, (p, q), target, drop, keep))
                changed = True
    return ChaseTableau(columns, initial, tuple(tuple(r) for r in rows), tuple(trace))


def chase_lossless(d: Decomposition, schema: Schema) -> bool:
    return chase_tableau(d, schema).lossless


# -- instance oracle --------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class RelationInstance:
    """Tuples over ``relation.attrs``; each row is ordered like ``columns``."""

    relation: RelationSchema
    columns: tuple[str, ...]
    rows: frozenset[tuple[int, ...]]

    def __len__(self):
        return len(self.rows)

    def as_dicts(self) -> list[dict[str, int]]:
        return [dict(zip(self.columns, r)) for r in sorted(self.rows)]

    def satisfies(self, fd: FD) -> bool:
        idx = {c: j for j, c in enumerate(self.columns)}
        seen: dict[tuple, tuple] = {}
        for row in self.rows:
            left = tuple(row[idx[a]] for a in ordered(fd.lhs))
            right = tuple(row[idx[a]] for a in ordered(fd.rhs))
            if seen.setdefault(left, right) != right:
                return False
        return True

    def project(self, attrs: Iterable[str]) -> frozenset[tuple[int, ...]]:
        idx = [self.columns.index(a) for a in ordered(attrs)]
        return frozenset(tuple(row[j] for j in idx) for row in self.rows)


def _topological_order(universe: frozenset[str], cover: frozenset[FD]) -> list[str]:
    deps: dict[str, set[str]] = {a: set() for a in universe}
    for f in cover:
        for b in f.rhs:
            deps[b] |= f.lhs
    order: list[str] = []
    state: dict[str, int] = {}

    def visit(a, path):
        if state.get(a) == 2:
            return
        if state.get(a) == 1:
            raise CyclicCover(path[path.index(a):] + [a])
        state[a] = 1
        for b in ordered(deps[a]):
            visit(b, path + [a])
        state[a] = 2
        order.append(a)

    for a in ordered(universe):
        visit(a, [])
    return order


def generate_instance(
    schema: Schema,
    n_keys: int = 3,
    seed: int = 0,
    *,
    domain_size: int = 3,
    key_rows: Iterable[Sequence[int]] | None = None,
) -> RelationInstance:
    """Build a small instance over the whole universe that satisfies the FDs.

    Attributes on no right side of the minimal cover (the key of an acyclic
    cover) get ``n_keys`` distinct value combinations, or exactly ``key_rows``
    when given (values in sorted attribute order). Dependent attributes are
    filled in topological order: tuples that agree on some determinant of the
    attribute are grouped together, and each group draws one seeded value.
    """
    cover = minimal_cover(schema.fds)
    order = _topological_order(schema.universe, cover)
    dependents = frozenset().union(*(f.rhs for f in cover))
    sources = ordered(schema.universe - dependents)
    rng = random.Random(seed)

    if key_rows is not None:
        keys = [tuple(r) for r in key_rows]
        if any(len(r) != len(sources) for r in keys):
            raise ValueError(f"key rows must give one value per attribute of {sources}")
        keys = list(dict.fromkeys(keys))
    else:
        if n_keys < 1:
            raise ValueError("n_keys must be at least 1")
        space = domain_size ** len(sources)
        if n_keys > space:
            raise ValueError(f"cannot draw {n_keys} distinct keys from a space of {space}")
        picks = rng.sample(range(space), n_keys)
        keys = []
        for p in sorted(picks):
            digits = []
            for _ in sources:
                p, r = divmod(p, domain_size)
                digits.append(r)
            keys.append(tuple(reversed(digits)))

    values: list[dict[str, int]] = [dict(zip(sources, k)) for k in keys]
    determinants: dict[str, list[FD]] = {}
    for f in sorted_fds(cover):
        for b in f.rhs:
            determinants.setdefault(b, []).append(f)

    for attr in order:
        if attr not in determinants:
            continue
        parent = list(range(len(values)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for f in determinants[attr]:
            first: dict[tuple, int] = {}
            for i, row in enumerate(values):
                left = tuple(row[a] for a in ordered(f.lhs))
                j = first.setdefault(left, i)
                parent[find(i)] = find(j)
        chosen: dict[int, int] = {}
        for i, row in enumerate(values):
            root = find(i)
            if root not in chosen:
                chosen[root] = rng.randrange(domain_size)
            row[attr] = chosen[root]

    columns = tuple(ordered(schema.universe))
    rel = RelationSchema("R_Omega", schema.universe, tuple(candidate_keys(schema.universe, schema.fds)))
    inst = RelationInstance(rel, columns, frozenset(tuple(row[c] for c in columns) for row in values))
    assert all(inst.satisfies(f) for f in cover)
    return inst


@dataclasses.dataclass(frozen=True)
class JoinReport:
    lossless_observed: bool
    spurious_count: int
    original_size: int
    join_size: int
    spurious: tuple[tuple[int, ...], ...]


def natural_join(parts: Sequence[tuple[tuple[str, ...], frozenset[tuple]]]) -> tuple[tuple[str, ...], set[tuple]]:
    """Join (columns, rows) pairs left to right on their shared columns."""
    cols, rows = parts[0][0], set(parts[0][1])
    for other_cols, other_rows in parts[1:]:
        shared = [c for c in cols if c in other_cols]
        extra = [c for c in other_cols if c not in cols]
        li = [cols.index(c) for c in shared]
        ri = [other_cols.index(c) for c in shared]
        xi = [other_cols.index(c) for c in extra]
        index: dict[tuple, list[tuple]] = {}
        for r in other_rows:
            index.setdefault(tuple(r[k] for k in ri), []).append(r)
        rows = {
            left + tuple(right[k] for k in xi)
            for left in rows
            for right in index.get(tuple(left[k] for k in li), ())
        }
        cols = cols + tuple(extra)
    return cols, rows


def instance_join_test(inst: RelationInstance, d: Decomposition) -> JoinReport:
    parts = [(tuple(ordered(r.attrs)), inst.project(r.attrs)) for r in d.relations]
    cols, joined = natural_join(parts)
    perm = [cols.index(c) for c in inst.columns]
    joined = {tuple(row[k] for k in perm) for row in joined}
    spurious = sorted(joined - inst.rows)
    return JoinReport(not spurious, len(joined) - len(inst.rows), len(inst.rows), len(joined), tuple(spurious))


def find_spurious_instance(
    schema: Schema, d: Decomposition, *, n_keys: int = 4, seeds: Iterable[int] = range(20), domain_size: int = 2
) -> tuple[int, RelationInstance, JoinReport] | None:
    """Search seeded instances for one whose join exhibits a spurious tuple.

    Returns ``(seed, instance, report)`` for the lowest successful seed.
    """
    sources = len(schema.universe - frozenset().union(*(f.rhs for f in minimal_cover(schema.fds))))
    for seed in seeds:
        # drawing every key combination gives a full product, which no join can exceed
        space = domain_size**sources
        n = min(n_keys, space - 1 if space > 1 else 1)
        inst = generate_instance(schema, n, seed, domain_size=domain_size)
        report = instance_join_test(inst, d)
        if report.spurious_count:
            return seed, inst, report
    return None

