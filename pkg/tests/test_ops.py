import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tnumlab import get_kernels
from tnumlab._opcodes import BITWISE_MUL, BITWISE_MUL_OPT
from tnumlab.core import Tnum, WidthMismatch, const, enumerate_tnums, make, top
from tnumlab.galois import CONCRETE_OPS, gamma, optimal_abstract
from tnumlab.ops import (
    OpId, apply_op, bitwise_mul, bitwise_mul_opt, kern_mul, our_mul,
    our_mul_simplified, tnum_add, tnum_and, tnum_arsh, tnum_lshift, tnum_or,
    tnum_rshift, tnum_sub, tnum_xor,
)

MULS = [kern_mul, bitwise_mul, bitwise_mul_opt, our_mul, our_mul_simplified]


def test_add_examples():
    assert tnum_add(const(2, 8), const(3, 8)) == const(5, 8)
    # sv=011 sm=101 sigma=000 chi=011 eta=111
    assert tnum_add(make(0b010, 0b101, 3), const(1, 3)) == make(0, 0b111, 3)
    assert tnum_add(top(4), const(0, 4)) == top(4)


def test_add_matches_oracle_exhaustively_width_3():
    f = CONCRETE_OPS["add"]
    ts = list(enumerate_tnums(3))
    for p, q in itertools.product(ts, ts):
        assert tnum_add(p, q) == optimal_abstract(f, p, q)


def test_sub_examples():
    assert tnum_sub(const(5, 8), const(3, 8)) == const(2, 8)
    # image of (00x - 001) is {7, 0}: the borrow wraps the top bit
    assert tnum_sub(make(0, 0b001, 3), const(1, 3)) == make(0, 0b111, 3)


def test_sub_zero_is_identity():
    for width in range(1, 7):
        zero = const(0, width)
        for t in enumerate_tnums(width):
            assert tnum_sub(t, zero) == t


def test_mul_variants_agree_on_derived_pair():
    p, q = make(1, 4, 5), make(2, 4, 5)
    expected = make(0b00010, 0b11100, 5)
    assert optimal_abstract(CONCRETE_OPS["mul"], p, q) == expected
    for mul in MULS:
        assert mul(p, q) == expected
    for mul in MULS:
        assert mul(const(3, 8), const(2, 8)) == const(6, 8)


def test_width9_pair_outputs():
    # multiplier 000000011 by multiplicand 011x011xx
    p = make(0b000000011, 0, 9)
    q = make(0b011001100, 0b000100011, 9)
    assert kern_mul(p, q) == make(0, 0b111101111, 9)
    assert our_mul(p, q) == make(0, 0b011111111, 9)
    assert our_mul_simplified(p, q) == make(0, 0b011111111, 9)


def test_our_mul_zero_short_circuits():
    for width in (1, 5, 64):
        z = const(0, width)
        assert our_mul(z, top(width)) == z


def test_our_mul_simplified_accumulator_decomposition():
    # For u01 * u10 the per-iteration partial products decompose into the
    # value parts [010, 0, 0] and mask parts [u00, 0, uu000]; folding each
    # with tnum_add and adding the two folds is the operator's result.
    p, q = make(1, 4, 5), make(2, 4, 5)
    acc_v = const(0, 5)
    for term in (const(2, 5), const(0, 5), const(0, 5)):
        acc_v = tnum_add(acc_v, term)
    acc_m = const(0, 5)
    for term in (make(0, 4, 5), const(0, 5), make(0, 24, 5)):
        acc_m = tnum_add(acc_m, term)
    assert acc_v == const(2, 5)
    assert acc_m == make(0, 28, 5)
    assert tnum_add(acc_v, acc_m) == our_mul_simplified(p, q)


def test_strength_reduction_small_width():
    for width in (1, 2, 3, 4):
        ts = list(enumerate_tnums(width))
        for p, q in itertools.product(ts, ts):
            assert our_mul(p, q) == our_mul_simplified(p, q)


def test_bitwise_mul_kill_rewrite_equivalence():
    kernels = get_kernels()
    pairs, mismatches, _ = kernels.equivalence_sweep(
        BITWISE_MUL, BITWISE_MUL_OPT, 5, 0, (3 ** 5) ** 2, 5)
    assert pairs == (3 ** 5) ** 2
    assert mismatches == 0


def test_bitop_examples():
    assert tnum_and(make(0b01, 0b10, 2), make(0b11, 0, 2)) == make(0b01, 0b10, 2)
    assert tnum_or(make(0b00, 0b01, 2), make(0b10, 0, 2)) == make(0b10, 0b01, 2)
    for width in range(1, 7):
        zero = const(0, width)
        for t in enumerate_tnums(width):
            assert tnum_xor(t, zero) == t


def test_shift_examples():
    assert tnum_lshift(make(0b001, 0b010, 3), 1) == make(0b010, 0b100, 3)
    assert tnum_rshift(make(0b010, 0b100, 3), 1) == make(0b001, 0b010, 3)
    t = make(0b0101, 0b1010, 4)
    assert tnum_lshift(t, 4) == const(0, 4)
    assert tnum_lshift(t, 100) == const(0, 4)
    assert tnum_rshift(t, 4) == const(0, 4)


def test_arsh_examples():
    assert tnum_arsh(const(0b1000, 4), 1) == const(0b1100, 4)
    # sign trit unknown: unknownness floods in ({0,8} >> 1 signed = {0,12})
    assert tnum_arsh(make(0, 0b1000, 4), 1) == make(0, 0b1100, 4)
    assert tnum_arsh(const(0b0100, 4), 1) == const(0b0010, 4)
    # saturation at and beyond the width
    assert tnum_arsh(const(0b1000, 4), 9) == const(0b1111, 4)
    assert tnum_arsh(make(0, 0b1000, 4), 9) == make(0, 0b1111, 4)
    assert tnum_arsh(const(0b0111, 4), 9) == const(0, 4)


def test_width_mismatch_rejected():
    with pytest.raises(WidthMismatch):
        tnum_add(const(0, 3), const(0, 4))
    with pytest.raises(WidthMismatch):
        our_mul(const(0, 8), const(0, 9))


def test_apply_op_dispatch():
    p, q = make(1, 4, 5), make(2, 4, 5)
    assert apply_op(OpId.OUR_MUL, p, q) == our_mul(p, q)
    assert apply_op(OpId.LSHIFT, p, shift=1) == tnum_lshift(p, 1)
    with pytest.raises(ValueError):
        apply_op(OpId.ADD, p)
    with pytest.raises(ValueError):
        apply_op(OpId.LSHIFT, p)
    assert OpId.from_name("kern_mul") is OpId.KERN_MUL
    with pytest.raises(ValueError):
        OpId.from_name("div")


def test_all_ops_sound_against_oracle_width_3():
    ts = list(enumerate_tnums(3))
    concrete = {
        OpId.ADD: CONCRETE_OPS["add"], OpId.SUB: CONCRETE_OPS["sub"],
        OpId.AND: CONCRETE_OPS["and"], OpId.OR: CONCRETE_OPS["or"],
        OpId.XOR: CONCRETE_OPS["xor"],
    }
    for op in OpId:
        if op.is_shift:
            continue
        f = concrete.get(op, CONCRETE_OPS["mul"])
        for p, q in itertools.product(ts, ts):
            r = apply_op(op, p, q)
            for x in gamma(p).members():
                for y in gamma(q).members():
                    assert (f(x, y, 3) & ~r.mask) == r.value, (op, p, q)


@st.composite
def tnums64(draw):
    mask = draw(st.integers(0, (1 << 64) - 1))
    value = draw(st.integers(0, (1 << 64) - 1)) & ~mask
    return Tnum(value, mask, 64)


@settings(max_examples=200)
@given(tnums64(), tnums64(), st.integers(0, 80))
def test_closure_at_width_64(p, q, k):
    for op in OpId:
        r = apply_op(op, p, q=q, shift=k)
        assert r.value & r.mask == 0
        assert r.width == 64
