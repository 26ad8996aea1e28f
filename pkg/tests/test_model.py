import pytest
from hypothesis import given
from hypothesis import strategies as st

from fdnorm import FD, Schema, SchemaError, attrset, make_decomposition, render_attrs, validate_schema
from fdnorm.errors import DecompositionError, NotAttributePreserving
from fdnorm.model import EmptyFdSide, EmptyUniverse, InvalidAttributeName, UnknownAttribute, fdset


def test_valid_schema_example1():
    s = validate_schema("A1 A2 A3", [("A1", "A2"), ("A1", "A3")])
    assert s.universe == {"A1", "A2", "A3"}
    assert s.fds == {FD("A1", "A2"), FD("A1", "A3")}


def test_schema_without_fds():
    assert validate_schema("A1").fds == frozenset()


def test_unknown_attribute_reported():
    with pytest.raises(SchemaError) as err:
        validate_schema("A1", [("A1", "A9")])
    assert err.value.issues == (UnknownAttribute(FD("A1", "A9"), "A9"),)


def test_every_violation_is_reported():
    with pytest.raises(SchemaError) as err:
        validate_schema("", [FD("", "B"), FD("A", "")])
    kinds = [type(i) for i in err.value.issues]
    assert EmptyUniverse in kinds
    assert kinds.count(EmptyFdSide) == 2
    assert kinds.count(UnknownAttribute) == 2


def test_attribute_names_are_case_sensitive_identifiers():
    s = Schema("a A", [("a", "A")])
    assert s.universe == {"a", "A"}
    with pytest.raises(SchemaError) as err:
        Schema(["1x", "ok"])
    assert err.value.issues == (InvalidAttributeName("1x"),)


def test_fdset_is_order_and_duplicate_insensitive():
    a = fdset([("A1", "A2"), ("A2", "A3"), ("A1", "A2")])
    b = fdset([FD("A2", "A3"), FD("A1", "A2")])
    assert a == b and len(a) == 2


@given(st.sets(st.from_regex(r"[A-Za-z][A-Za-z0-9_]{0,3}", fullmatch=True), min_size=1, max_size=8))
def test_rendering_is_canonical(names):
    shuffled = list(names)[::-1]
    assert render_attrs(names) == render_attrs(shuffled) == render_attrs(attrset(" ".join(shuffled)))


def test_decomposition_must_cover_universe(ex2):
    with pytest.raises(NotAttributePreserving) as err:
        make_decomposition(ex2, [{"A1", "A2"}, {"A1", "A3"}, {"A2", "A4", "A5", "A6"}])
    assert err.value.missing == ("A7",)


def test_decomposition_keys_are_computed(ex2):
    d = make_decomposition(ex2, {"R1": "A1 A2 A7", "R2": "A1 A3", "R3": "A2 A4 A5 A6"})
    assert [r.candidate_keys for r in d] == [(attrset("A1 A2"),), (attrset("A1"),), (attrset("A2"),)]
    assert d.attrs == ex2.universe


def test_decomposition_rejects_empty_and_duplicate_tables(ex1):
    with pytest.raises(DecompositionError):
        make_decomposition(ex1, {"R1": "", "R2": "A1 A2 A3"})
    with pytest.raises(SchemaError):
        make_decomposition(ex1, {"R1": "A1 A2 A3 A9"})


def test_rename_keeps_structure(students):
    renamed = students.rename({"sid": "s", "rd": "r"})
    assert "s" in renamed.universe and FD("s", "st") in renamed.fds
