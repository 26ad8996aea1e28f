"""Brute-force oracles and random schema generators shared by the tests.

The oracles deliberately avoid the package's closure routine. Entailment is
decided semantically: F implies X -> Y iff every two-tuple relation that
satisfies F also satisfies X -> Y. A two-tuple relation is characterised by
the set S of attributes on which its tuples agree, so it is enough to scan
all subsets S of the universe.
"""

from __future__ import annotations

import itertools
import random
from pathlib import Path

from fdnorm import FD, Schema

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def powerset(items, min_size=0):
    items = sorted(items)
    for r in range(min_size, len(items) + 1):
        for c in itertools.combinations(items, r):
            yield frozenset(c)


def agreement_sets(universe, fds):
    """Agreement sets of all two-tuple relations satisfying ``fds``."""
    return [s for s in powerset(universe) if all(not f.lhs <= s or f.rhs <= s for f in fds)]


def oracle_implies(universe, fds, candidate: FD, _cache={}) -> bool:
    key = (frozenset(universe), frozenset(fds))
    if key not in _cache:
        _cache.clear()
        _cache[key] = agreement_sets(universe, fds)
    return all(not candidate.lhs <= s or candidate.rhs <= s for s in _cache[key])


def oracle_closure(universe, fds, x) -> frozenset:
    return frozenset(a for a in universe if oracle_implies(universe, fds, FD(x, {a})) or a in x)


def oracle_keys(attrs, universe, fds) -> set[frozenset]:
    supers = [x for x in powerset(attrs, 1) if attrs <= oracle_closure(universe, fds, x)]
    if not supers:
        supers = [frozenset(attrs)]
    return {x for x in supers if not any(y < x for y in supers)}


def oracle_pair_exists(schema: Schema) -> bool:
    """Two-node chain pairs over the full powerset, rooted at the halves of the
    single key, with the meeting target fully dependent on the key."""
    u, fds = schema.universe, schema.fds
    (key,) = oracle_keys(u, u, fds)
    clo = {x: oracle_closure(u, fds, x) for x in powerset(u, 1)}
    for a1 in powerset(key, 1):
        b1 = key - a1
        if not b1:
            continue
        for p in powerset(u - key, 1):
            if not p <= clo[a1]:
                continue
            for q in powerset(u - key - p, 1):
                if not q <= clo[b1]:
                    continue
                m = p | q
                for g in u - key - m:
                    if g in clo[a1] or g in clo[b1] or g not in clo[m]:
                        continue
                    if all(g not in clo[d] for d in powerset(m, 1) if d != m):
                        return True
    return False


# -- generators -------------------------------------------------------------


def names(n: int) -> list[str]:
    return [f"A{i}" for i in range(1, n + 1)]


def random_schema(rng: random.Random, max_attrs: int = 6, max_fds: int = 6, min_attrs: int = 1) -> Schema:
    u = names(rng.randint(min_attrs, max_attrs))
    fds = []
    for _ in range(rng.randint(0, max_fds)):
        lhs = rng.sample(u, rng.randint(1, min(3, len(u))))
        rhs = rng.sample(u, rng.randint(1, min(2, len(u))))
        fds.append(FD(lhs, rhs))
    return Schema(frozenset(u), frozenset(fds))


def random_decomposition_tables(rng: random.Random, universe, max_tables: int = 4) -> list[frozenset]:
    u = sorted(universe)
    tables = [frozenset(rng.sample(u, rng.randint(1, len(u)))) for _ in range(rng.randint(1, max_tables))]
    missing = set(u) - frozenset().union(*tables)
    for a in sorted(missing):
        i = rng.randrange(len(tables))
        tables[i] = tables[i] | {a}
    return tables


def principal_case_schema(rng: random.Random, max_attrs: int = 7) -> Schema:
    """Key {A1, A2}; every other attribute hangs off A1's side, A2's side,
    both sides, or the whole key. Determinants stay inside one side or contain
    the whole key, so no dependency straddles the two sides below the key."""
    n = rng.randint(3, max_attrs)
    u = names(n)
    rest = u[2:]
    side: dict[str, str] = {}
    fds = []
    for a in rest:
        side[a] = rng.choice(["1", "2", "12", "K"])
    for a in rest:
        s = side[a]
        if s in ("1", "2", "12"):
            for root in s:
                pool = ["A" + root] + [b for b in rest if b != a and root in side[b] and side[b] != "K" and b < a]
                fds.append(FD(rng.sample(pool, rng.randint(1, min(2, len(pool)))), {a}))
        else:
            pool = [b for b in rest if b < a]
            extra = rng.sample(pool, rng.randint(0, min(1, len(pool))))
            fds.append(FD({"A1", "A2", *extra}, {a}))
    return Schema(frozenset(u), frozenset(fds))


def planted_pair_schema(rng: random.Random) -> tuple[Schema, tuple]:
    """Key {K1, K2}; chains K1 -> X1 -> ... and K2 -> Y1 -> ..., whose last
    nodes jointly determine G. Random extra attributes and dependencies are
    added on the side. Returns the schema and the planted (chain_a, chain_b, gamma)."""
    la, lb = rng.randint(1, 3), rng.randint(1, 3)
    xs = [f"X{i}" for i in range(1, la + 1)]
    ys = [f"Y{i}" for i in range(1, lb + 1)]
    extras = [f"E{i}" for i in range(1, rng.randint(0, 3) + 1)]
    u = ["K1", "K2", *xs, *ys, "G", *extras]
    chain_a = ["K1", *xs]
    chain_b = ["K2", *ys]
    fds = [FD({p}, {q}) for p, q in zip(chain_a, chain_a[1:])]
    fds += [FD({p}, {q}) for p, q in zip(chain_b, chain_b[1:])]
    fds.append(FD({xs[-1], ys[-1]}, {"G"}))
    for e in extras:
        det = rng.choice([["K1"], ["K2"], ["K1", "K2"], [rng.choice(xs)], [rng.choice(ys)], ["G"]])
        fds.append(FD(det, {e}))
    return Schema(frozenset(u), frozenset(fds)), (chain_a, chain_b, "G")
