import pytest

from bagcq import (
    Atom,
    CapExceededError,
    Const,
    Count,
    Database,
    DisjointAnd,
    Fact,
    Leaf,
    Power,
    Query,
    Schema,
    ValidationError,
    blowup,
    conjoin_disjoint,
    conjoin_shared,
    count_homomorphisms,
    eval_expr,
    expr_schema,
    flatten,
    inequality_elimination_witness,
    power_product,
    product,
    strip_inequalities,
)

S = Schema({"R": 2})
EDGE = Query(S, (Atom("R", ("x", "y")),))
LOOP = Query(S, (Atom("R", ("z", "z")),))


def db(pairs, elements=None, interp=None):
    els = set(elements or [])
    facts = {Fact("R", p) for p in pairs}
    for f in facts:
        els.update(f.elements)
    return Database(S, frozenset(els), frozenset(facts), interp or {})


def test_eval_multiplies_and_exponentiates():
    d = db([("1", "1"), ("1", "2"), ("2", "1")])
    e = DisjointAnd((Leaf(EDGE), Power(Leaf(LOOP), 2)))
    assert eval_expr(e, d) == Count.of(3).mul(Count.of(1))
    assert eval_expr(Power(Leaf(EDGE), 0), d) == Count.of(1)
    # zero absorbs without evaluating the sibling to a weird state
    empty = db([], elements={"1"})
    assert eval_expr(DisjointAnd((Leaf(LOOP), Leaf(EDGE))), empty).is_zero()


def test_flatten_matches_eval_and_is_deterministic():
    d = db([("1", "2"), ("2", "2")])
    e = DisjointAnd((Leaf(EDGE), Leaf(EDGE), Power(Leaf(LOOP), 2)))
    flat = flatten(e)
    assert count_homomorphisms(flat, d) == eval_expr(e, d).value()
    assert flatten(e) == flat
    assert len(flat.variables) == 2 + 2 + 2


def test_flatten_cap():
    e = Power(Leaf(EDGE), 10_000)
    with pytest.raises(CapExceededError):
        flatten(e, max_variables=100)


def test_expr_schema_merges_leaf_schemas():
    q_other = Query(Schema({"U": 1}), (Atom("U", ("w",)),))
    merged = expr_schema(DisjointAnd((Leaf(EDGE), Leaf(q_other))))
    assert merged.relations == (("R", 2), ("U", 1))


def test_conjoin_shared_keeps_shared_names():
    q = conjoin_shared(EDGE, Query(S, (Atom("R", ("y", "x")),)))
    d = db([("1", "2"), ("2", "1"), ("1", "1")])
    # homs are the 2-cycles plus the loop
    assert count_homomorphisms(q, d) == 3


def test_conjoin_disjoint_renames_collisions():
    q = conjoin_disjoint(EDGE, Query(S, (Atom("R", ("x", "y")),)))
    assert len(q.variables) == 4
    d = db([("1", "2"), ("2", "1")])
    assert count_homomorphisms(q, d) == 4


def test_blowup_law_with_and_without_constants():
    d = db([("1", "1"), ("1", "2")], interp={"mars": "1", "venus": "2"})
    assert count_homomorphisms(EDGE, blowup(d, 3)) == 9 * 2
    ground = Query(S, (Atom("R", (Const("mars"), Const("venus"))),))
    assert count_homomorphisms(ground, blowup(d, 3)) == 1
    half = Query(S, (Atom("R", (Const("mars"), "v")),))
    assert count_homomorphisms(half, blowup(d, 3)) == 3 * 2


def test_blowup_element_names_stay_distinct_when_nested():
    d = db([("1", "2")])
    twice = blowup(blowup(d, 2), 2)
    assert len(twice.elements) == 2 * 4
    assert count_homomorphisms(EDGE, twice) == 16


def test_blowup_rejects_nonpositive():
    with pytest.raises(ValidationError):
        blowup(db([("1", "2")]), 0)


def test_product_squares_counts():
    d = db([("1", "1"), ("1", "2")], interp={"mars": "1", "venus": "2"})
    sq = product(d, d)
    assert count_homomorphisms(EDGE, sq) == 4
    assert count_homomorphisms(LOOP, sq) == 1
    cube = power_product(d, 3)
    assert count_homomorphisms(EDGE, cube) == 8


def test_product_interprets_only_shared_constants():
    d1 = db([("1", "2")], interp={"mars": "1"})
    d2 = db([("1", "2")], interp={"venus": "2"})
    p = product(d1, d2)
    assert p.const_interp == {}


def test_strip_removes_only_inequalities():
    q = Query(S, (Atom("R", ("x", "y")),), (("x", "y"),))
    plain = strip_inequalities(q)
    assert plain.atoms == q.atoms
    assert plain.inequalities == ()
    d = db([("1", "1"), ("1", "2")])
    assert count_homomorphisms(q, d) == 1
    assert count_homomorphisms(plain, d) == 2


def test_inequality_elimination_witness_still_separates():
    schema = Schema({"R": 2, "S": 2})
    q_s = Query(schema, (Atom("R", ("x", "y")),), (("x", "y"),))
    q_b = Query(schema, (Atom("S", ("z", "z")),))
    d0 = Database(
        schema,
        frozenset({"mars", "venus"}),
        frozenset({Fact("R", ("mars", "venus"))}),
        {"mars": "mars", "venus": "venus"},
    )
    d = inequality_elimination_witness(q_s, q_b, d0)
    assert count_homomorphisms(q_s, d) > count_homomorphisms(q_b, d)
    # and the inequality-free query still dominates on the same database
    assert count_homomorphisms(strip_inequalities(q_s), d) >= count_homomorphisms(
        q_s, d
    )


def test_inequality_elimination_checks_its_precondition():
    schema = Schema({"R": 2, "S": 2})
    q_s = Query(schema, (Atom("R", ("x", "y")),), (("x", "y"),))
    q_b = Query(schema, (Atom("S", ("z", "z")),))
    bad = Database(
        schema,
        frozenset({"mars", "venus"}),
        frozenset({Fact("S", ("mars", "mars"))}),
        {"mars": "mars", "venus": "venus"},
    )
    with pytest.raises(ValidationError):
        inequality_elimination_witness(q_s, q_b, bad)


def test_no_single_multiplier_fits_every_database():
    """The pair (edge, loop) admits no q with edge <= q*loop everywhere:
    q would have to be 2 on one database, but its square then violates
    the bound, which is exactly why the gadgets below need care."""
    d = db([("1", "1"), ("1", "2")])
    assert (count_homomorphisms(EDGE, d), count_homomorphisms(LOOP, d)) == (2, 1)
    sq = product(d, d)
    assert (count_homomorphisms(EDGE, sq), count_homomorphisms(LOOP, sq)) == (4, 1)
