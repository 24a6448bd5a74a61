import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tnumlab.core import (
    BitsAboveWidth, IllFormed, IndexRange, Order, ParseError, Tnum, Trit,
    WidthMismatch, WidthRange, cardinality, compare, const, enumerate_tnums,
    format, format_hex, is_member, make, parse, top, trit_at,
)
from tnumlab.galois import gamma


def test_make_basic():
    t = make(0b010, 0b100, 3)
    assert (t.value, t.mask, t.width) == (2, 4, 3)
    assert format(t) == "x10"


def test_make_rejects_ill_formed():
    with pytest.raises(IllFormed):
        make(0b001, 0b001, 3)


def test_make_zero_constant():
    t = make(0, 0, 64)
    assert t.is_const() and t.value == 0


@pytest.mark.parametrize("width", [0, -1, 65, 100])
def test_make_rejects_bad_width(width):
    with pytest.raises(WidthRange):
        make(0, 0, width)


def test_make_rejects_bits_above_width():
    with pytest.raises(BitsAboveWidth):
        make(8, 0, 3)
    with pytest.raises(BitsAboveWidth):
        make(0, 16, 4)


def test_trit_at():
    t = make(0b010, 0b100, 3)
    assert trit_at(t, 2) is Trit.UNKNOWN
    assert trit_at(t, 1) is Trit.ONE
    assert trit_at(t, 0) is Trit.ZERO
    with pytest.raises(IndexRange):
        trit_at(t, 3)


def test_is_member():
    t = make(0b010, 0b100, 3)
    # gamma((010,100)) enumerates to {0b010, 0b110}
    assert sorted(gamma(t).members()) == [2, 6]
    assert is_member(6, t)
    assert is_member(t.value, t)
    assert not is_member(2, make(0b001, 0b110, 3))
    with pytest.raises(BitsAboveWidth):
        is_member(8, t)


def test_membership_matches_enumerated_gamma():
    # small widths scalar, width 8 vectorized over every word
    for width in range(1, 7):
        for t in enumerate_tnums(width):
            members = set(gamma(t).members())
            for x in range(1 << width):
                assert is_member(x, t) == (x in members)
    for width, sample_every in ((8, 1), (10, 59)):
        full = (1 << width) - 1
        xs = np.arange(1 << width, dtype=np.uint64)
        for i, t in enumerate(enumerate_tnums(width)):
            if i % sample_every:
                continue
            match = (xs & np.uint64(~t.mask & full)) == np.uint64(t.value)
            assert int(match.sum()) == cardinality(t)
            members = set(int(x) for x in xs[match])
            assert members == set(gamma(t).members())
            assert all(is_member(x, t) for x in members)


def test_compare_examples():
    a = make(0b10, 0b01, 2)
    b = make(0b00, 0b11, 2)
    assert compare(a, b) is Order.LEFT_MORE_PRECISE
    assert compare(b, a) is Order.RIGHT_MORE_PRECISE
    assert compare(a, a) is Order.EQUAL
    assert compare(const(2, 2), const(1, 2)) is Order.INCOMPARABLE
    with pytest.raises(WidthMismatch):
        compare(const(0, 2), const(0, 3))


def test_compare_is_partial_order_width_le_4():
    for width in (2, 3, 4):
        ts = list(enumerate_tnums(width))
        sets = [gamma(t).bits for t in ts]
        below = {}
        for i, a in enumerate(ts):
            for j, b in enumerate(ts):
                rel = compare(a, b)
                # classification agrees with concrete subset semantics
                subset_ab = sets[i] & ~sets[j] == 0
                subset_ba = sets[j] & ~sets[i] == 0
                if rel is Order.EQUAL:
                    assert i == j
                elif rel is Order.LEFT_MORE_PRECISE:
                    assert subset_ab and not subset_ba
                elif rel is Order.RIGHT_MORE_PRECISE:
                    assert subset_ba and not subset_ab
                else:
                    assert not subset_ab and not subset_ba
                below[i, j] = rel in (Order.EQUAL, Order.LEFT_MORE_PRECISE)
        n = len(ts)
        # antisymmetry and transitivity on the comparable fragment
        for i, j in itertools.product(range(n), repeat=2):
            if below[i, j] and below[j, i]:
                assert i == j
        if width <= 3:
            for i, j, k in itertools.product(range(n), repeat=3):
                if below[i, j] and below[j, k]:
                    assert below[i, k]


def test_parse_format_examples():
    assert parse("x10", 3) == make(0b010, 0b100, 3)
    assert format(make(0, 0b1111, 4)) == "xxxx"
    assert parse("v=0x2,m=0x4", 3) == make(2, 4, 3)
    assert parse("μ10", 3) == parse("?10", 3) == parse("x10", 3)
    assert format_hex(make(2, 4, 3)) == "v=0x2,m=0x4"


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse("x1z", 3)
    assert err.value.position == 2
    # shorter strings zero-extend on the left; longer ones are rejected
    assert parse("x10", 4) == parse("0x10", 4)
    with pytest.raises(ParseError):
        parse("x100x", 4)
    with pytest.raises(ParseError):
        parse("", 4)
    with pytest.raises(IllFormed):
        parse("v=0x3,m=0x1", 3)
    with pytest.raises(ParseError):
        parse("v=0xg,m=0x0", 3)


def test_parse_format_round_trip_exhaustive():
    for width in range(1, 7):
        for t in enumerate_tnums(width):
            assert parse(format(t), width) == t
            assert parse(format_hex(t), width) == t


def test_top_const_cardinality():
    assert top(2) == make(0, 0b11, 2)
    assert cardinality(top(2)) == 4
    assert sorted(gamma(top(2)).members()) == [0, 1, 2, 3]
    assert const(5, 4) == make(5, 0, 4)
    assert cardinality(const(5, 4)) == 1
    assert cardinality(make(0b010, 0b100, 3)) == 2


@pytest.mark.parametrize("width", [1, 2, 3, 4, 5])
def test_enumeration_counts_match_filtering(width):
    listed = set((t.value, t.mask) for t in enumerate_tnums(width))
    assert len(listed) == 3 ** width
    brute = {
        (v, m)
        for v in range(1 << width)
        for m in range(1 << width)
        if v & m == 0
    }
    assert listed == brute


@given(st.integers(1, 64), st.data())
def test_tnum_construction_never_ill_formed(width, data):
    mask = data.draw(st.integers(0, (1 << width) - 1))
    value = data.draw(st.integers(0, (1 << width) - 1)) & ~mask
    t = Tnum(value, mask, width)
    assert t.value & t.mask == 0
    assert is_member(t.value, t)
    assert cardinality(t) == 1 << t.mask.bit_count()
