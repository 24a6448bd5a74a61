import pytest

from tnumlab.core import (
    EmptySet, Tnum, WidthMismatch, WidthTooLargeForEnumeration, const,
    enumerate_tnums, make, top,
)
from tnumlab.galois import (
    CONCRETE_OPS, ConcreteSet, alpha, check_alpha_monotonic,
    check_bitwise_exact, check_extensive, check_gamma_monotonic,
    check_reductive_exact, check_value_is_min, concrete_image, gamma,
    optimal_abstract, subset,
)


def test_gamma_examples():
    assert sorted(gamma(make(0b10, 0b01, 2)).members()) == [2, 3]
    assert sorted(gamma(const(9, 4)).members()) == [9]
    assert sorted(gamma(top(2)).members()) == [0, 1, 2, 3]


def test_gamma_size_is_cardinality():
    for t in enumerate_tnums(5):
        assert len(gamma(t)) == 1 << t.mask.bit_count()


def test_gamma_rejects_wide_tnums():
    with pytest.raises(WidthTooLargeForEnumeration):
        gamma(top(17))


def test_alpha_examples():
    assert alpha(ConcreteSet.of([1, 2], 4)) == make(0, 0b0011, 4)
    assert alpha(ConcreteSet.of([13], 4)) == const(13, 4)
    assert alpha(ConcreteSet.of([2, 3], 2)) == make(0b10, 0b01, 2)
    assert sorted(gamma(alpha(ConcreteSet.of([2, 3], 2))).members()) == [2, 3]


def test_concrete_set_rejects_empty():
    with pytest.raises(EmptySet):
        ConcreteSet(4, 0)


def test_concrete_image_examples():
    add, sub, mul = (CONCRETE_OPS[k] for k in ("add", "sub", "mul"))
    assert sorted(concrete_image(add, const(2, 3), const(3, 3)).members()) == [5]
    assert sorted(concrete_image(
        mul, make(1, 4, 5), make(2, 4, 5)).members()) == [2, 6, 10, 30]
    # 0 - 1 wraps around
    assert sorted(concrete_image(sub, const(0, 3), const(1, 3)).members()) == [7]
    with pytest.raises(WidthMismatch):
        concrete_image(add, const(0, 3), const(0, 4))


def test_optimal_abstract_examples():
    add, mul = CONCRETE_OPS["add"], CONCRETE_OPS["mul"]
    # image of (u1u + 001) is {3,4,7,0}: AND=0, OR=7
    assert optimal_abstract(add, make(0b010, 0b101, 3), const(1, 3)) == \
        make(0, 0b111, 3)
    assert optimal_abstract(mul, make(1, 4, 5), make(2, 4, 5)) == \
        make(0b00010, 0b11100, 5)
    assert optimal_abstract(mul, const(3, 6), const(7, 6)) == const(21, 6)


def test_subset():
    a = ConcreteSet.of([1, 2], 3)
    b = ConcreteSet.of([0, 1, 2, 3], 3)
    assert subset(a, b)
    assert not subset(b, a)
    assert subset(a, a)


def test_alpha_monotonic_small():
    assert check_alpha_monotonic(3) == []
    assert check_alpha_monotonic(4, samples=500, seed=7) == []


def test_gamma_monotonic_small():
    assert check_gamma_monotonic(4) == []


def test_extensive_small():
    assert check_extensive(3) == []


def test_reductive_exact_small():
    assert check_reductive_exact(5) == []


def test_bitwise_exact_small():
    assert check_bitwise_exact(3) == []


def test_value_is_min_small():
    assert check_value_is_min(5) == []


def test_mixed_constant_image_is_constant():
    f = CONCRETE_OPS["mul"]
    for x in range(8):
        for y in range(8):
            t = optimal_abstract(f, const(x, 3), const(y, 3))
            assert t == const((x * y) & 7, 3)
