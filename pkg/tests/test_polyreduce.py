import pytest

from bagcq import (
    Polynomial,
    ValidationError,
    eval_poly,
    find_root_bruteforce,
    normalize_hilbert,
    validate_instance,
)

X1 = Polynomial(2, ((1, (2,)), (-1, ())))  # x - 1 in the second variable
ONE = Polynomial(1, ((1, ()),))
TWOX1 = Polynomial(2, ((2, (2,)), (1, ())))
XY6 = Polynomial(3, ((1, (2, 3)), (-6, ())))
SQ1 = Polynomial(2, ((1, (2, 2)), (1, ())))


def test_terms_are_merged_sorted_and_zero_free():
    p = Polynomial(2, ((1, (2, 2)), (2, (2, 2)), (0, (2,)), (5, ())))
    assert p.terms == ((3, (2, 2)), (5, ()))
    assert Polynomial(2, ((1, (2,)), (-1, (2,)))).is_zero()


def test_monomials_are_canonicalized():
    p = Polynomial(3, ((1, (3, 2)),))
    assert p.terms == ((1, (2, 3)),)
    with pytest.raises(ValidationError):
        Polynomial(2, ((1, (3,)),))
    with pytest.raises(ValidationError):
        Polynomial(2, ((1, (0,)),))


def test_arithmetic():
    p = Polynomial(2, ((1, (2,)),))
    q = Polynomial(2, ((1, ()),))
    assert (p + q).terms == ((1, (2,)), (1, ()))
    assert (p - p).is_zero()
    assert (p * p).terms == ((1, (2, 2)),)
    assert p.scale(3).terms == ((3, (2,)),)
    assert (p * q).degree() == 1


def test_eval_poly_checks_its_valuation():
    assert eval_poly(X1, {1: 0, 2: 4}) == 3
    # only the variables the polynomial actually uses are required
    assert eval_poly(X1, {2: 4}) == 3
    with pytest.raises(ValidationError):
        eval_poly(X1, {1: 0})
    with pytest.raises(ValidationError):
        eval_poly(X1, {2: -1})


def test_find_root_bruteforce():
    assert find_root_bruteforce(X1, 3) == {2: 1}
    assert find_root_bruteforce(SQ1, 5) is None
    assert find_root_bruteforce(XY6, 6) == {2: 1, 3: 6}
    assert find_root_bruteforce(XY6, 4) == {2: 2, 3: 3}


def test_normalization_of_x_minus_one():
    inst = normalize_hilbert(X1)
    assert inst.degree == 3 and inst.m_count == 3 and inst.n_count == 2
    assert inst.monomials == ((1, 2, 2), (1, 1, 2), (1, 1, 1))
    assert inst.p_s.terms == ((1, (1, 2, 2)), (3, (1, 1, 2)), (2, (1, 1, 1)))
    assert inst.c_frak == 3
    assert inst.p_b.terms == ((6, (1, 2, 2)), (3, (1, 1, 2)), (6, (1, 1, 1)))
    assert eval_poly(inst.p_s, {1: 1, 2: 1}) == 6
    assert eval_poly(inst.p_b, {1: 1, 2: 1}) == 15
    assert validate_instance(inst) == []


def test_normalization_of_the_constant_one():
    inst = normalize_hilbert(ONE)
    assert inst.degree == 1
    assert inst.p_s.terms == ((2, (1,)),)
    assert inst.c_frak == 2
    assert inst.p_b.terms == ((4, (1,)),)
    assert validate_instance(inst) == []


def test_normalization_of_two_x_plus_one():
    inst = normalize_hilbert(TWOX1)
    assert inst.c_frak == 2
    assert [c for c, _ in inst.p_s.terms] == [1, 1, 2]
    assert [c for c, _ in inst.p_b.terms] == [10, 10, 4]
    assert validate_instance(inst) == []


def test_rootedness_is_preserved_by_the_intermediate_pair():
    for q in (X1, ONE, TWOX1, XY6, SQ1):
        inst = normalize_hilbert(q)
        used = q.variables_used()
        for values in _box(len(used), 4):
            v = dict(zip(used, values))
            assert (eval_poly(q, v) == 0) == (
                eval_poly(inst.p1, v) > eval_poly(inst.p2, v)
            )


def _box(n, bound):
    import itertools

    return itertools.product(range(bound + 1), repeat=n)


def test_position_relation_of_the_tiny_instance():
    inst = normalize_hilbert(X1)
    assert inst.position_rel == frozenset(
        {
            (1, 1, 1), (2, 2, 1), (2, 3, 1),
            (1, 1, 2), (1, 2, 2), (2, 3, 2),
            (1, 1, 3), (1, 2, 3), (1, 3, 3),
        }
    )


def test_coefficientwise_bound_holds():
    for q in (X1, ONE, TWOX1, XY6, SQ1):
        inst = normalize_hilbert(q)
        assert inst.c_frak >= 2
        for (cs, ms), (cb, mb) in zip(inst.p_s.terms, inst.p_b.terms):
            assert ms == mb
            assert 1 <= cs <= cb


def test_validator_flags_malformed_instances():
    import dataclasses

    inst = normalize_hilbert(X1)
    # sides swapped: the coefficientwise bound cs <= cb breaks
    assert validate_instance(dataclasses.replace(inst, p_s=inst.p_b, p_b=inst.p_s))
    # wrong degree
    assert validate_instance(dataclasses.replace(inst, degree=inst.degree + 1))
    # monomial lists out of sync
    clipped = Polynomial(inst.p_b.num_vars, inst.p_b.terms[:-1])
    assert validate_instance(dataclasses.replace(inst, p_b=clipped))
    # position relation missing a triple
    smaller = frozenset(list(inst.position_rel)[:-1])
    assert validate_instance(dataclasses.replace(inst, position_rel=smaller))
    # scale below the minimum
    assert validate_instance(dataclasses.replace(inst, c_frak=1))


def test_normalize_rejects_zero_and_reserved_index():
    with pytest.raises(ValidationError):
        normalize_hilbert(Polynomial(2, ()))
    with pytest.raises(ValidationError):
        normalize_hilbert(Polynomial(2, ((1, (1,)),)))
