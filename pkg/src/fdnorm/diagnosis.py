"""Transitive chains and partially overlapping chain pairs.

A chain pair starts at the two halves of the single candidate key and ends in
two node sets that together, and only together, determine a further set of
attributes (the meeting point). When such a pair exists, no decomposition
reached by the 2NF rule alone is both lossless and dependency preserving.
"""

from __future__ import annotations

import dataclasses
import itertools
from collections.abc import Iterable

from .closure import attribute_closure, candidate_keys, implies, minimal_cover
from .config import check_size, current_limits
from .errors import AssumptionViolated
from .model import FD, Schema, attrset, ordered, render_attrs


@dataclasses.dataclass(frozen=True)
class TransitiveChain:
    nodes: tuple[frozenset[str], ...]
    links: tuple[FD, ...]

    @classmethod
    def through(cls, nodes: Iterable[Iterable[str]]) -> TransitiveChain:
        nodes = tuple(attrset(n) for n in nodes)
        return cls(nodes, tuple(FD(a, b) for a, b in zip(nodes, nodes[1:])))

    @property
    def attrs(self) -> frozenset[str]:
        return frozenset().union(*self.nodes)

    @property
    def last(self) -> frozenset[str]:
        return self.nodes[-1]

    def sort_key(self):
        return [ordered(n) for n in self.nodes]

    def __str__(self):
        return " → ".join(render_attrs(n) for n in self.nodes)


@dataclasses.dataclass(frozen=True)
class ChainPair:
    chain_a: TransitiveChain
    chain_b: TransitiveChain
    meeting: FD
    gamma: frozenset[str]

    def sort_key(self):
        return (self.chain_a.sort_key(), self.chain_b.sort_key(), ordered(self.gamma))

    def __str__(self):
        return f"[{self.chain_a}] and [{self.chain_b}] meet at {self.meeting}"


@dataclasses.dataclass(frozen=True)
class AssumptionCheck:
    single_table: bool
    key_count: int
    key: frozenset[str] | None

    @property
    def ok(self) -> bool:
        return self.single_table and self.key_count == 1


KEY_TABLE_BRANCH = "placing {gamma} with the key {key} loses {meeting}"
MEETING_TABLE_BRANCH = (
    "placing {gamma} with {lhs} separates {key} → {lhs} from {meeting}: "
    "a decomposition based on transitivity took place"
)


@dataclasses.dataclass(frozen=True)
class Theorem1Verdict:
    """``impossible`` is None when the single-key precondition fails.

    False only means that no witness was found; the condition is sufficient,
    not necessary.
    """

    impossible: bool | None
    witness: ChainPair | None
    assumption_check: AssumptionCheck
    pairs: tuple[ChainPair, ...] = ()
    branches: tuple[str, ...] = ()


def chain_pair_violations(pair: ChainPair, fds: Iterable[FD]) -> list[str]:
    """Re-check every clause of the chain-pair definition; empty means valid."""
    fds = frozenset(fds)
    problems = []
    for chain in (pair.chain_a, pair.chain_b):
        if len(chain.nodes) < 2:
            problems.append(f"chain {chain} has fewer than two nodes")
        for link in chain.links:
            if not implies(fds, link):
                problems.append(f"link {link} is not implied")
    parts = [*pair.chain_a.nodes, *pair.chain_b.nodes, pair.gamma]
    if any(not p for p in parts):
        problems.append("empty node")
    for p, q in itertools.combinations(parts, 2):
        if p & q:
            problems.append(f"{render_attrs(p)} and {render_attrs(q)} overlap")
    lhs = pair.chain_a.last | pair.chain_b.last
    if pair.meeting.lhs != lhs or pair.meeting.rhs != pair.gamma:
        problems.append("meeting dependency does not join the chain ends to gamma")
    if not implies(fds, pair.meeting):
        problems.append(f"meeting {pair.meeting} is not implied")
    names = ordered(lhs)
    for size in range(1, len(names)):
        for delta in itertools.combinations(names, size):
            if pair.gamma <= attribute_closure(delta, fds):
                problems.append(f"{render_attrs(delta)} → {render_attrs(pair.gamma)} already holds")
    return problems


def _vocabulary(schema: Schema) -> list[frozenset[str]]:
    nodes = {f.lhs for f in minimal_cover(schema.fds)} | {frozenset({a}) for a in schema.universe}
    return sorted(nodes, key=lambda s: (len(s), ordered(s)))


def _step(x: frozenset[str], y: frozenset[str], reach: dict) -> bool:
    # strict progress keeps chains acyclic: y+ is a proper subset of x+
    return not (x & y) and y <= reach[x] and not x <= reach[y]


def _closures(schema: Schema, nodes) -> dict:
    return {n: attribute_closure(n, schema.fds) for n in nodes}


def find_chains(schema: Schema, origin: Iterable[str]) -> list[TransitiveChain]:
    """Maximal chains from ``origin`` through cover determinants and single
    attributes. A chain is maximal when no node can be appended or inserted."""
    origin = attrset(origin)
    check_size("chain search", len(schema.universe), current_limits().keys)
    vocab = [n for n in _vocabulary(schema) if not n & origin]
    reach = _closures(schema, vocab + [origin])

    paths: list[tuple[frozenset[str], ...]] = []

    def extend(path, used):
        grown = False
        for n in vocab:
            if not n & used and _step(path[-1], n, reach):
                extend(path + (n,), used | n)
                grown = True
        if not grown and len(path) >= 2:
            paths.append(path)

    extend((origin,), origin)

    def is_subsequence(short, long):
        it = iter(long)
        return all(any(n == m for m in it) for n in short)

    maximal = {
        p for p in paths if not any(len(q) > len(p) and q[0] == p[0] and is_subsequence(p, q) for q in paths)
    }
    chains = [TransitiveChain.through(p) for p in maximal]
    return sorted(chains, key=TransitiveChain.sort_key)


def _expand(origin, end, avoid, vocab, reach) -> tuple[frozenset[str], ...]:
    """Longest disjoint path origin → ... → end; the direct link always qualifies."""
    best = (origin, end)
    blocked = origin | end | avoid
    inner = [n for n in vocab if not n & blocked]

    def walk(path, used):
        nonlocal best
        if len(path) > 1 and not (path[-1] & end) and end <= reach[path[-1]]:
            cand = path + (end,)
            if len(cand) > len(best) or (
                len(cand) == len(best) and [ordered(n) for n in cand] < [ordered(n) for n in best]
            ):
                best = cand
        for n in inner:
            if not n & used and _step(path[-1], n, reach) and end <= reach[n]:
                walk(path + (n,), used | n)

    walk((origin,), origin)
    return best


def key_halves(key: frozenset[str]):
    """Unordered splits of ``key`` into two non-empty parts; the part holding
    the smallest attribute comes first."""
    first, *rest = ordered(key)
    for size in range(0, len(rest)):
        for extra in itertools.combinations(rest, size):
            a = frozenset((first, *extra))
            yield a, key - a


def _minimal_determinants(target: str, region: list[str], fds) -> list[frozenset[str]]:
    found: list[frozenset[str]] = []
    for size in range(1, len(region) + 1):
        for combo in itertools.combinations(region, size):
            x = frozenset(combo)
            if any(m <= x for m in found):
                continue
            if target in attribute_closure(x, fds):
                found.append(x)
    return found


def _single_key(schema: Schema) -> frozenset[str]:
    keys = candidate_keys(schema.universe, schema.fds)
    if len(keys) != 1:
        raise AssumptionViolated(
            "multiple candidate keys", ", ".join(render_attrs(k) for k in keys)
        )
    return keys[0]


def find_overlapping_pairs(schema: Schema) -> list[ChainPair]:
    """Every chain pair rooted at the two halves of the single candidate key.

    Beyond the disjointness and full-dependence clauses, the meeting target
    must not be reachable from either key half on its own: it has to depend
    fully on the key, as well as on the pair of chain ends.
    """
    key = _single_key(schema)
    fds = schema.fds
    vocab = _vocabulary(schema)
    reach = _closures(schema, vocab)

    pairs: list[ChainPair] = []
    for a1, b1 in key_halves(key):
        ra, rb = attribute_closure(a1, fds), attribute_closure(b1, fds)
        side_a, side_b = ra - a1, rb - b1
        region = ordered(side_a | side_b)
        check_size("meeting-point search", len(region), current_limits().keys)

        meetings: dict[tuple[frozenset[str], frozenset[str]], set[str]] = {}
        for g in ordered(schema.universe - key - ra - rb):
            for m in _minimal_determinants(g, region, fds):
                names = ordered(m)
                options = [[side for side, s in (("a", side_a), ("b", side_b)) if n in s] for n in names]
                for assign in itertools.product(*options):
                    p = frozenset(n for n, s in zip(names, assign) if s == "a")
                    q = m - p
                    if p and q:
                        meetings.setdefault((p, q), set()).add(g)

        local_reach = dict(reach)
        local_reach.update(_closures(schema, [a1, b1]))
        for (p, q), gs in meetings.items():
            gamma = frozenset(gs)
            local_reach.setdefault(p, attribute_closure(p, fds))
            local_reach.setdefault(q, attribute_closure(q, fds))
            nodes_a = _expand(a1, p, b1 | q | gamma, vocab, local_reach)
            used = frozenset().union(*nodes_a)
            nodes_b = _expand(b1, q, used | gamma, vocab, local_reach)
            pairs.append(
                ChainPair(
                    TransitiveChain.through(nodes_a),
                    TransitiveChain.through(nodes_b),
                    FD(p | q, gamma),
                    gamma,
                )
            )
    return sorted(pairs, key=ChainPair.sort_key)


def theorem1_verdict(schema: Schema) -> Theorem1Verdict:
    keys = candidate_keys(schema.universe, schema.fds)
    check = AssumptionCheck(True, len(keys), keys[0] if len(keys) == 1 else None)
    if not check.ok:
        return Theorem1Verdict(None, None, check)
    pairs = tuple(find_overlapping_pairs(schema))
    if not pairs:
        return Theorem1Verdict(False, None, check, ())
    w = pairs[0]
    fmt = dict(
        gamma=render_attrs(w.gamma),
        key=render_attrs(check.key),
        lhs=render_attrs(w.meeting.lhs),
        meeting=str(w.meeting),
    )
    branches = (KEY_TABLE_BRANCH.format(**fmt), MEETING_TABLE_BRANCH.format(**fmt))
    return Theorem1Verdict(True, w, check, pairs, branches)
