import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdnorm import (
    FD,
    CyclicCover,
    binary_lossless,
    chase_lossless,
    chase_tableau,
    generate_instance,
    implies,
    instance_join_test,
    make_decomposition,
    minimal_cover,
    parse_decomposition,
    preservation_check,
    project_fds,
)
from fdnorm.verification import DISTINGUISHED, find_spurious_instance, natural_join, restricted_closure
from helpers import fixture_text, random_decomposition_tables, random_schema


@st.composite
def schema_and_tables(draw, max_attrs=5):
    rng = random.Random(draw(st.integers(0, 2**32)))
    schema = random_schema(rng, max_attrs, 5)
    return schema, random_decomposition_tables(rng, schema.universe)


# -- preservation -----------------------------------------------------------


def test_example2_fixtures_preserve(ex2):
    for name in ("example2_ra.dec", "example2_rb.dec", "example2_rc.dec"):
        d = parse_decomposition(fixture_text(name), ex2)
        assert preservation_check(d, ex2).preserved, name


def test_lost_dependency_is_named(minimal_overlap):
    d = make_decomposition(minimal_overlap, ["A1 A2 A5", "A1 A3", "A2 A4"])
    report = preservation_check(d, minimal_overlap)
    assert report.lost == (FD("A3 A4", "A5"),)


def test_restricted_closure_chains_through_tables():
    fds = {FD("A", "B"), FD("B", "C")}
    assert restricted_closure({"A"}, [frozenset("AB"), frozenset("BC")], fds) == frozenset("ABC")
    assert restricted_closure({"A"}, [frozenset("AC"), frozenset("BC")], fds) == frozenset("AC")


@given(schema_and_tables())
def test_preservation_matches_materialized_projections(case):
    schema, tables = case
    d = make_decomposition(schema, tables)
    union = frozenset().union(*(project_fds(schema.fds, t).fds for t in tables))
    expected = [f for f in minimal_cover(schema.fds) if not implies(union, f)]
    assert set(preservation_check(d, schema).lost) == set(expected)


# -- lossless join ----------------------------------------------------------


def test_binary_rule_example4(ex4):
    assert not binary_lossless({"A1", "A3"}, {"A2", "A4"}, ex4.fds)
    assert binary_lossless({"A1", "A3"}, {"A1", "A2", "A4"}, ex4.fds)


def test_chase_example2_fixtures(ex2):
    for name in ("example2_ra.dec", "example2_rb.dec", "example2_rc.dec"):
        assert chase_lossless(parse_decomposition(fixture_text(name), ex2), ex2), name


def test_chase_without_key_table(ex4):
    d = parse_decomposition(fixture_text("example4_without_key_table.dec"), ex4)
    tab = chase_tableau(d, ex4)
    assert not tab.lossless
    assert tab.replay() == tab.rows


def test_chase_trace_replays_and_renders(ex2):
    d = parse_decomposition(fixture_text("example2_rb.dec"), ex2)
    tab = chase_tableau(d, ex2)
    assert tab.lossless and tab.trace
    assert tab.replay() == tab.rows
    assert tab.render().splitlines()[0].split("\t") == list(tab.columns)


def test_single_table_is_lossless(ex1):
    assert chase_lossless(make_decomposition(ex1, ["A1 A2 A3"]), ex1)


@given(schema_and_tables())
def test_binary_rule_agrees_with_chase(case):
    schema, tables = case
    if len(tables) < 2:
        return
    tables = tables[:2]
    covered = tables[0] | tables[1]
    tables[1] |= schema.universe - covered
    d = make_decomposition(schema, tables)
    assert binary_lossless(tables[0], tables[1], schema.fds) == chase_lossless(d, schema)


@settings(max_examples=150)
@given(schema_and_tables())
def test_lossy_tableau_is_a_counterexample(case):
    schema, tables = case
    d = make_decomposition(schema, tables)
    tab = chase_tableau(d, schema)
    # the final tableau is itself an instance satisfying the FDs
    for f in schema.fds:
        seen = {}
        for row in tab.rows:
            left = tuple(row[tab.columns.index(a)] for a in sorted(f.lhs))
            right = tuple(row[tab.columns.index(a)] for a in sorted(f.rhs))
            assert seen.setdefault(left, right) == right
    if not tab.lossless:
        parts = []
        for rel in d.relations:
            idx = [tab.columns.index(a) for a in sorted(rel.attrs)]
            parts.append((tuple(sorted(rel.attrs)), frozenset(tuple(r[i] for i in idx) for r in tab.rows)))
        cols, joined = natural_join(parts)
        perm = [cols.index(c) for c in tab.columns]
        joined = {tuple(r[k] for k in perm) for r in joined}
        assert (DISTINGUISHED,) * len(tab.columns) in joined


# -- instances --------------------------------------------------------------


def test_example4_spurious_tuple(ex4):
    d = parse_decomposition(fixture_text("example4_without_key_table.dec"), ex4)
    inst = generate_instance(ex4, key_rows=[(0, 0), (0, 1), (1, 0)])
    report = instance_join_test(inst, d)
    assert report.original_size == 3
    assert report.join_size == 4
    assert report.spurious_count == 1


def test_generated_instance_is_deterministic(ex3):
    a = generate_instance(ex3, 4, seed=7)
    b = generate_instance(ex3, 4, seed=7)
    assert a == b and len(a) == 4
    assert all(a.satisfies(f) for f in ex3.fds)


def test_cyclic_cover_is_refused():
    from fdnorm import Schema

    s = Schema("A B", [("A", "B"), ("B", "A")])
    with pytest.raises(CyclicCover):
        generate_instance(s)


def test_find_spurious_instance(ex4):
    d = parse_decomposition(fixture_text("example4_without_key_table.dec"), ex4)
    seed, inst, report = find_spurious_instance(ex4, d)
    assert report.spurious_count >= 1 and report.join_size > len(inst)
    lossless = make_decomposition(ex4, ["A1 A3", "A2 A4", "A1 A2"])
    assert find_spurious_instance(ex4, lossless) is None


@given(st.integers(0, 10_000), st.integers(1, 4))
def test_instance_satisfies_cover(seed, n_keys):
    rng = random.Random(seed)
    schema = random_schema(rng, 5, 4)
    try:
        inst = generate_instance(schema, min(n_keys, 2), seed, domain_size=2)
    except CyclicCover:
        return
    assert all(inst.satisfies(f) for f in schema.fds)
