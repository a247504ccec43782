import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bagcq import Count, compare_counts


def test_construction_normalizes_to_prime_powers():
    assert Count.of(12).factors == ((2, 2), (3, 1))
    assert Count.of(12) == Count(((2, 1), (6, 1)))
    assert Count.of(1).factors == ((1, 1),)
    assert Count.of(0).factors == ((0, 1),)


def test_zero_absorbs_and_one_is_neutral():
    assert (Count.of(0) * Count.of(7)).is_zero()
    assert Count.of(7) * Count.of(1) == Count.of(7)
    assert Count.of(0).pow(0) == Count.of(1)
    assert Count.of(5).pow(0) == Count.of(1)


def test_negative_inputs_are_rejected():
    with pytest.raises(ValueError):
        Count.of(-1)
    with pytest.raises(ValueError):
        Count.of(4).pow(-1)


def test_value_materializes_and_refuses_huge():
    assert Count.of(3).pow(4).value() == 81
    huge = Count.of(2).pow(10**9)
    with pytest.raises(OverflowError):
        huge.value(max_bits=256)


def test_compare_huge_same_base():
    a = Count.of(2).pow(10**18)
    b = Count.of(2).pow(10**18 + 1)
    assert compare_counts(a, b) == "less"
    assert compare_counts(b, a) == "greater"
    assert compare_counts(a, a) == "equal"


def test_compare_huge_mixed_bases():
    # 3^1000 vs 2^1585: log2(3)*1000 = 1584.96..., so the power of two wins
    a = Count.of(3).pow(1000)
    b = Count.of(2).pow(1585)
    assert compare_counts(a, b) == "less"
    assert compare_counts(a, Count.of(2).pow(1584)) == "greater"


def test_str_representation():
    assert str(Count.of(0)) == "0"
    assert str(Count.of(1)) == "1"
    assert str(Count.of(12)) == "2^2*3^1"


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**40), st.integers(0, 2**40))
def test_compare_agrees_with_integers(x, y):
    want = "less" if x < y else "greater" if x > y else "equal"
    assert compare_counts(Count.of(x), Count.of(y)) == want


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.tuples(st.integers(2, 50), st.integers(0, 12)), max_size=4),
    st.lists(st.tuples(st.integers(2, 50), st.integers(0, 12)), max_size=4),
)
def test_factored_compare_agrees_with_materialized(fs1, fs2):
    a, b = Count(tuple(fs1)), Count(tuple(fs2))
    x, y = a.value(max_bits=4096), b.value(max_bits=4096)
    want = "less" if x < y else "greater" if x > y else "equal"
    assert compare_counts(a, b) == want


def test_equal_values_in_different_composite_forms_still_compare():
    # a prime larger than the factoring bound keeps both forms composite;
    # exponent-gcd reduction plus materialization must still decide them
    p = (1 << 89) - 1
    assert compare_counts(Count(((p * p, 2),)), Count(((p, 4),))) == "equal"
    big = 1 << 20
    assert compare_counts(Count(((p * p, big),)), Count(((p, 2 * big),))) == "equal"
    assert (
        compare_counts(Count(((p * p, big),)), Count(((p, 2 * big - 1),))) == "greater"
    )
