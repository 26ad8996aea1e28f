import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdnorm import (
    FD,
    Schema,
    SizeLimitExceeded,
    attribute_closure,
    attrset,
    candidate_keys,
    equivalent,
    implies,
    minimal_cover,
    prime_attributes,
    project_fds,
    size_limits,
)
from helpers import oracle_closure, oracle_implies, oracle_keys, powerset, random_schema


@st.composite
def schemas(draw, max_attrs=6, max_fds=6):
    return random_schema(random.Random(draw(st.integers(0, 2**32))), max_attrs, max_fds)


# -- attribute_closure ------------------------------------------------------


def test_closure_example1(ex1):
    assert attribute_closure({"A1"}, ex1.fds) == {"A1", "A2", "A3"}


def test_closure_example3_oracle_value(ex3):
    # oracle: agreement-set scan gives {A2, A4}
    assert attribute_closure({"A2"}, ex3.fds) == {"A2", "A4"}


def test_closure_without_fds_is_identity():
    assert attribute_closure({"A1", "A2"}, frozenset()) == {"A1", "A2"}


@given(schemas(), st.data())
def test_closure_monotone_and_idempotent(schema, data):
    names = sorted(schema.universe)
    x = frozenset(data.draw(st.lists(st.sampled_from(names), unique=True)))
    y = x | frozenset(data.draw(st.lists(st.sampled_from(names), unique=True)))
    cx = attribute_closure(x, schema.fds)
    assert cx <= attribute_closure(y, schema.fds)
    assert attribute_closure(cx, schema.fds) == cx
    assert x <= cx


# -- implies ----------------------------------------------------------------


def test_implies_minimal_overlap(minimal_overlap):
    assert implies(minimal_overlap.fds, FD("A1 A2", "A5"))


def test_implies_reflexivity(students):
    assert implies(students.fds, FD("st cr", "cr"))


def test_implies_example1_negative(ex1):
    assert not implies(ex1.fds, FD("A2", "A3"))


@settings(max_examples=200)
@given(schemas(), st.data())
def test_implies_matches_semantic_oracle(schema, data):
    names = sorted(schema.universe)
    lhs = data.draw(st.lists(st.sampled_from(names), min_size=1, unique=True))
    rhs = data.draw(st.lists(st.sampled_from(names), min_size=1, unique=True))
    cand = FD(lhs, rhs)
    assert implies(schema.fds, cand) == oracle_implies(schema.universe, schema.fds, cand)


# -- minimal_cover ----------------------------------------------------------


def test_minimal_cover_already_minimal(ex1):
    assert minimal_cover(ex1.fds) == {FD("A1", "A2"), FD("A1", "A3")}


def test_minimal_cover_drops_duplicate_after_split():
    assert minimal_cover({FD("A1", "A2 A3"), FD("A1", "A2")}) == {FD("A1", "A2"), FD("A1", "A3")}


def test_minimal_cover_removes_extraneous_lhs():
    assert minimal_cover({FD("A1", "A2"), FD("A1 A2", "A3")}) == {FD("A1", "A2"), FD("A1", "A3")}


@given(schemas())
def test_minimal_cover_properties(schema):
    cover = minimal_cover(schema.fds)
    assert equivalent(cover, schema.fds)
    for f in cover:
        assert len(f.rhs) == 1 and not f.is_trivial()
        assert not implies(cover - {f}, f), f"{f} is redundant"
        for a in f.lhs:
            if len(f.lhs) > 1:
                assert not implies(cover, FD(f.lhs - {a}, f.rhs)), f"{a} extraneous in {f}"


# -- candidate keys ---------------------------------------------------------


def test_keys_example2(ex2):
    assert candidate_keys(ex2.universe, ex2.fds) == [attrset("A1 A2")]


def test_keys_of_projected_table_example2(ex2):
    assert candidate_keys({"A4", "A5", "A6"}, ex2.fds) == [attrset("A4")]


def test_keys_without_fds():
    assert candidate_keys({"A1", "A2", "A3"}, frozenset()) == [attrset("A1 A2 A3")]


def test_keys_multiple():
    fds = {FD("A", "B"), FD("B", "A"), FD("A", "C")}
    assert candidate_keys({"A", "B", "C"}, fds) == [attrset("A"), attrset("B")]


@given(schemas(), st.data())
def test_keys_match_brute_force(schema, data):
    names = sorted(schema.universe)
    attrs = frozenset(data.draw(st.lists(st.sampled_from(names), min_size=1, unique=True)))
    keys = candidate_keys(attrs, schema.fds)
    assert set(keys) == oracle_keys(attrs, schema.universe, schema.fds)
    for k in keys:
        assert attrs <= attribute_closure(k, schema.fds)
        for a in k:
            assert not attrs <= attribute_closure(k - {a}, schema.fds)


def test_key_search_bound():
    big = {f"A{i}" for i in range(25)}
    with pytest.raises(SizeLimitExceeded):
        candidate_keys(big, frozenset())
    with size_limits(keys=30):
        assert candidate_keys(big, frozenset()) == [frozenset(big)]


# -- prime attributes -------------------------------------------------------


def test_prime_example2(ex2):
    assert prime_attributes(ex2.universe, ex2.fds) == {"A1", "A2"}


def test_prime_students(students):
    assert prime_attributes(students.universe, students.fds) == {"sid", "cid"}


def test_prime_without_fds():
    assert prime_attributes({"A1", "A2"}, frozenset()) == {"A1", "A2"}


# -- projection -------------------------------------------------------------


def test_projection_example2_r3(ex2):
    assert project_fds(ex2.fds, {"A2", "A4"}).fds == {FD("A2", "A4")}


def test_projection_without_nontrivial_members(ex2):
    # oracle: closures within {A1, A4} are {A1}, {A4}, {A1, A4}
    assert project_fds(ex2.fds, {"A1", "A4"}).fds == frozenset()


def test_projection_singleton_scope(students):
    assert len(project_fds(students.fds, {"rd"})) == 0


@given(schemas(max_attrs=5), st.data())
def test_projection_sound_and_complete(schema, data):
    names = sorted(schema.universe)
    scope = frozenset(data.draw(st.lists(st.sampled_from(names), min_size=1, unique=True)))
    proj = project_fds(schema.fds, scope)
    for f in proj.fds:
        assert f.attrs <= scope
        assert f.rhs <= attribute_closure(f.lhs, schema.fds) & scope
    for x in powerset(scope, 1):
        expected = oracle_closure(schema.universe, schema.fds, x) & scope
        assert attribute_closure(x, proj.fds) & scope == expected


def test_projection_bound():
    with pytest.raises(SizeLimitExceeded):
        project_fds(frozenset(), {f"A{i}" for i in range(17)})
