import pytest

from bagcq import (
    MARS,
    VENUS,
    Atom,
    Const,
    Database,
    Fact,
    Query,
    Schema,
    SchemaMismatchError,
    ValidationError,
    canonical_structure,
    is_nontrivial,
    map_elements,
    union_databases,
)


def test_schema_accepts_mapping_and_pairs():
    a = Schema({"E": 2, "U": 1})
    b = Schema((("U", 1), ("E", 2)))
    assert a == b
    assert a.relations == (("E", 2), ("U", 1))


def test_schema_always_carries_the_distinguished_constants():
    s = Schema({"E": 2})
    assert MARS in s.constants and VENUS in s.constants


def test_schema_merge_unions_and_rejects_arity_conflicts():
    s = Schema({"E": 2}).merge(Schema({"U": 1}))
    assert s.relations == (("E", 2), ("U", 1))
    with pytest.raises(SchemaMismatchError):
        Schema({"E": 2}).merge(Schema({"E": 3}))


def test_query_checks_arity_and_relation():
    s = Schema({"E": 2})
    with pytest.raises(ValidationError):
        Query(s, (Atom("E", ("x",)),))
    with pytest.raises(SchemaMismatchError):
        Query(s, (Atom("F", ("x", "y")),))


def test_query_variables_sorted_and_atoms_deduplicated():
    s = Schema({"E": 2})
    q = Query(s, (Atom("E", ("y", "x")), Atom("E", ("y", "x")), Atom("E", ("x", "x"))))
    assert q.variables == ("x", "y")
    assert len(q.atoms) == 2


def test_variable_may_not_shadow_a_constant():
    s = Schema({"E": 2})
    with pytest.raises(ValidationError):
        Query(s, (Atom("E", ("mars", "x")),))
    # the constant form is fine
    Query(s, (Atom("E", (Const("mars"), "x")),))


def test_inequalities_are_normalized():
    s = Schema({"E": 2})
    q1 = Query(s, (Atom("E", ("x", "y")),), (("y", "x"),))
    q2 = Query(s, (Atom("E", ("x", "y")),), (("x", "y"),))
    assert q1.inequalities == q2.inequalities == (("x", "y"),)


def test_database_validates_facts_against_schema():
    s = Schema({"E": 2})
    with pytest.raises(ValidationError):
        Database(s, frozenset({"e1"}), frozenset({Fact("E", ("e1",))}), {})
    with pytest.raises(ValidationError):
        Database(s, frozenset({"e1"}), frozenset({Fact("E", ("e1", "ghost"))}), {})


def test_const_interp_must_point_at_elements():
    s = Schema({"E": 2})
    with pytest.raises(ValidationError):
        Database(s, frozenset({"e1"}), frozenset(), {"mars": "ghost"})


def test_canonical_structure_drops_inequalities_and_keeps_constants():
    s = Schema({"E": 2})
    q = Query(
        s,
        (Atom("E", ("x", Const("mars"))),),
        (("x", Const("mars")),),
    )
    d = canonical_structure(q)
    assert d.elements == frozenset({"x", "mars"})
    assert d.facts == frozenset({Fact("E", ("x", "mars"))})
    assert d.const_interp == {"mars": "mars"}


def test_nontriviality_is_about_mars_and_venus():
    s = Schema({"E": 2})
    d = Database(s, frozenset({"e1", "e2"}), frozenset(), {"mars": "e1", "venus": "e2"})
    assert is_nontrivial(d)
    assert not is_nontrivial(map_elements(d, {"e2": "e1"}))
    with pytest.raises(ValidationError):
        is_nontrivial(Database(s, frozenset({"e1"}), frozenset(), {}))


def test_union_merges_by_name_and_rejects_interp_conflicts():
    s = Schema({"E": 2})
    d1 = Database(s, frozenset({"e1", "e2"}), frozenset({Fact("E", ("e1", "e2"))}),
                  {"mars": "e1"})
    d2 = Database(s, frozenset({"e2", "e3"}), frozenset({Fact("E", ("e2", "e3"))}),
                  {"venus": "e3"})
    u = union_databases(d1, d2)
    assert u.elements == frozenset({"e1", "e2", "e3"})
    assert len(u.facts) == 2
    assert u.const_interp == {"mars": "e1", "venus": "e3"}
    d3 = Database(s, frozenset({"e9"}), frozenset(), {"mars": "e9"})
    with pytest.raises(ValidationError):
        union_databases(d1, d3)


def test_map_elements_merges_facts():
    s = Schema({"E": 2})
    d = Database(
        s,
        frozenset({"e1", "e2"}),
        frozenset({Fact("E", ("e1", "e2")), Fact("E", ("e2", "e1"))}),
        {"mars": "e1", "venus": "e2"},
    )
    m = map_elements(d, {"e2": "e1"})
    assert m.elements == frozenset({"e1"})
    assert m.facts == frozenset({Fact("E", ("e1", "e1"))})
    assert m.const_interp == {"mars": "e1", "venus": "e1"}
