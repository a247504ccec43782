from fractions import Fraction

import pytest

from bagcq import (
    Database,
    Fact,
    Schema,
    ValidationError,
    alpha_witness,
    beta_witness,
    build_alpha,
    build_beta,
    build_cycliq,
    build_gamma,
    classify_cycliques,
    count_homomorphisms,
    gamma_witness,
    is_nontrivial,
)
from bagcq.gadgets import BETA_RELATION, GAMMA_RELATION
from bagcq.harness.generators import derive_seed, random_database


def test_cycliq_shape():
    q = build_cycliq(3, "x1", ("x2", "x3"))
    assert len(q.atoms) == 3
    assert all(a.relation == "R" for a in q.atoms)
    filtered = build_cycliq(3, "x1", ("x2", "x3"), relation="P", filter_relation="A")
    assert sum(a.relation == "A" for a in filtered.atoms) == 3


def test_cycliq_rejects_short_cycles_and_bad_tails():
    with pytest.raises(ValidationError):
        build_cycliq(2, "x1", ("x2",))
    with pytest.raises(ValidationError):
        build_cycliq(4, "x1", ("x2", "x3"))


@pytest.mark.parametrize("n,s,b", [(3, 16, 6), (5, 36, 10), (9, 100, 18)])
def test_beta_witness_counts(n, s, b):
    pair = build_beta(n)
    w = beta_witness(n)
    assert count_homomorphisms(pair.q_s, w) == s
    assert count_homomorphisms(pair.q_b, w) == b
    assert pair.multiplier == Fraction((n + 1) ** 2, 2 * n)
    assert Fraction(s, b) == pair.multiplier
    assert is_nontrivial(w)


def test_beta_witness_has_the_two_named_cycliques():
    w = beta_witness(3)
    assert len(w.facts) == 4  # one homogeneous loop plus a 3-cycle orbit
    assert len(beta_witness(4).facts) == 5


def test_beta_even_length_rejected_below_three():
    with pytest.raises(ValidationError):
        build_beta(2)


def test_beta_upper_bound_on_random_databases():
    pair = build_beta(3)
    for trial in range(300):
        d = random_database(pair.schema, 2 + trial % 3, 0.3, derive_seed(5, trial))
        s = count_homomorphisms(pair.q_s, d)
        b = count_homomorphisms(pair.q_b, d)
        assert 6 * s <= 16 * b


@pytest.mark.parametrize("m,s,b", [(3, 2, 3), (4, 3, 4)])
def test_gamma_witness_counts(m, s, b):
    pair = build_gamma(m)
    w = gamma_witness(m)
    assert count_homomorphisms(pair.q_s, w) == s
    assert count_homomorphisms(pair.q_b, w) == b
    assert pair.multiplier == Fraction(m - 1, m)
    assert is_nontrivial(w)


def test_gamma_upper_bound_on_random_databases():
    pair = build_gamma(3)
    for trial in range(300):
        d = random_database(pair.schema, 2 + trial % 2, 0.3, derive_seed(9, trial))
        s = count_homomorphisms(pair.q_s, d)
        b = count_homomorphisms(pair.q_b, d)
        assert 3 * s <= 2 * b


@pytest.mark.parametrize("c,s,b", [(2, 48, 24), (3, 180, 60)])
def test_alpha_witness_counts(c, s, b):
    pair = build_alpha(c)
    w = alpha_witness(c)
    assert count_homomorphisms(pair.q_s, w) == s
    assert count_homomorphisms(pair.q_b, w) == b
    assert s == c * b
    assert pair.multiplier == Fraction(c)


def test_alpha_one_is_the_empty_pair():
    pair = build_alpha(1)
    w = alpha_witness(1)
    assert pair.q_s.atoms == () and pair.q_b.atoms == ()
    assert count_homomorphisms(pair.q_s, w) == 1 == count_homomorphisms(pair.q_b, w)
    assert is_nontrivial(w)


def test_alpha_rejects_nonpositive():
    with pytest.raises(ValidationError):
        build_alpha(0)


def test_classify_cycliques_on_the_beta_witness():
    classes = classify_cycliques(beta_witness(3), BETA_RELATION)
    by_kind = {c.kind: c for c in classes}
    assert set(by_kind) == {"homogeneous", "normal"}
    assert len(by_kind["homogeneous"].members) == 1
    assert len(by_kind["normal"].members) == 3


def test_classify_cycliques_degenerate():
    s = Schema({"P": 4})
    t1 = ("a", "b", "a", "b")
    facts = frozenset({Fact("P", t1), Fact("P", ("b", "a", "b", "a"))})
    d = Database(s, frozenset({"a", "b"}), facts, {})
    (cls,) = classify_cycliques(d, "P")
    assert cls.kind == "degenerate"
    assert len(cls.members) == 2


def test_classify_cycliques_requires_closed_orbits():
    s = Schema({"P": 3})
    d = Database(s, frozenset({"a", "b"}), frozenset({Fact("P", ("a", "a", "b"))}), {})
    assert classify_cycliques(d, "P") == []


def test_classify_cycliques_respects_filter():
    s = Schema({"P": 3, "A": 1})
    shifts = {("a", "a", "b"), ("a", "b", "a"), ("b", "a", "a")}
    facts = {Fact("P", t) for t in shifts} | {Fact("A", ("a",))}
    d = Database(s, frozenset({"a", "b"}), frozenset(facts), {})
    assert classify_cycliques(d, "P", "A") == []
    d2 = Database(s, d.elements, d.facts | {Fact("A", ("b",))}, {})
    (cls,) = classify_cycliques(d2, "P", "A")
    assert cls.kind == "normal"


def test_gamma_relation_names_are_stable():
    assert BETA_RELATION == "R_beta"
    assert GAMMA_RELATION == "P_gamma"
