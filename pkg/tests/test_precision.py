import io

import pytest

from tnumlab.core import Order, WidthTooLargeForEnumeration, const, make
from tnumlab.galois import gamma
from tnumlab.ops import OpId
from tnumlab.precision import (
    compare_pair, summary_to_row, sweep_bitwidths, sweep_exhaustive,
    sweep_joint, write_bitwidth_csv, write_summary_csv,
)


def test_compare_pair_width9_incomparable():
    p = make(0b000000011, 0, 9)
    q = make(0b011001100, 0b000100011, 9)
    rec = compare_pair(OpId.KERN_MUL, OpId.OUR_MUL, p, q)
    assert rec.relation is Order.INCOMPARABLE
    assert rec.log2_ratio is None
    assert rec.result_a == make(0, 0b111101111, 9)
    assert rec.result_b == make(0, 0b011111111, 9)


def test_compare_pair_identical_ops():
    p, q = make(1, 4, 5), make(2, 4, 5)
    rec = compare_pair(OpId.OUR_MUL, OpId.OUR_MUL, p, q)
    assert rec.relation is Order.EQUAL
    assert rec.log2_ratio == 0


def test_compare_pair_constants_all_muls_equal():
    for x in range(16):
        for y in range(16):
            rec = compare_pair(OpId.KERN_MUL, OpId.BITWISE_MUL,
                               const(x, 4), const(y, 4))
            assert rec.relation is Order.EQUAL
            assert rec.result_a == const((x * y) & 15, 4)


def test_log2_ratio_matches_cardinality():
    p = make(0b00011, 0, 5)
    q = make(0b01100, 0b10011, 5)
    rec = compare_pair(OpId.KERN_MUL, OpId.OUR_MUL, p, q)
    if rec.relation is not Order.INCOMPARABLE:
        ratio = len(gamma(rec.result_a)) / len(gamma(rec.result_b))
        assert ratio == 2.0 ** rec.log2_ratio


def test_sweep_exhaustive_self_comparison():
    s = sweep_exhaustive(OpId.OUR_MUL, OpId.OUR_MUL, 4)
    assert s.equal_count == s.total_pairs == 3 ** 4 * 3 ** 4
    assert s.histogram == {}
    assert s.distinct_differing_inputs == 0


def test_sweep_exhaustive_width5_our_vs_kern():
    s = sweep_exhaustive(OpId.OUR_MUL, OpId.KERN_MUL, 5)
    assert s.total_pairs == 9 ** 5
    assert s.total_pairs - s.equal_count == 16
    assert s.incomparable == 0
    assert s.a_more_precise == 12 and s.b_more_precise == 4
    # counts and histogram are internally consistent by construction
    assert sum(s.histogram.values()) == 16


def test_sweep_swap_symmetry():
    a = sweep_exhaustive(OpId.OUR_MUL, OpId.KERN_MUL, 5)
    b = sweep_exhaustive(OpId.KERN_MUL, OpId.OUR_MUL, 5)
    assert a.a_more_precise == b.b_more_precise
    assert a.b_more_precise == b.a_more_precise
    assert a.incomparable == b.incomparable
    assert a.equal_count == b.equal_count
    assert a.histogram == {-k: v for k, v in b.histogram.items()}
    assert a.distinct_differing_inputs == b.distinct_differing_inputs


def test_sweep_parallel_equals_serial():
    a = sweep_exhaustive(OpId.OUR_MUL, OpId.KERN_MUL, 5, workers=1)
    b = sweep_exhaustive(OpId.OUR_MUL, OpId.KERN_MUL, 5, workers=3)
    assert a.to_dict() == b.to_dict()


def test_sweep_width_guard():
    with pytest.raises(WidthTooLargeForEnumeration):
        sweep_exhaustive(OpId.OUR_MUL, OpId.KERN_MUL, 9)
    with pytest.raises(WidthTooLargeForEnumeration):
        sweep_exhaustive(OpId.OUR_MUL, OpId.KERN_MUL, 11, long_running=True)


def test_bitwidth_rows():
    rows = sweep_bitwidths(OpId.OUR_MUL, OpId.KERN_MUL, range(3, 6))
    assert [r.width for r in rows] == [3, 4, 5]
    assert all(r.total_pairs == 9 ** r.width for r in rows)
    assert all(0 <= r.pct_equal <= 100 for r in rows)
    # identical outputs below width 5
    assert rows[0].pct_equal == rows[1].pct_equal == 100.0
    assert rows[2].pct_equal < 100.0
    assert rows[2].pct_differing_comparable == 100.0


def test_joint_sweep_width5():
    j = sweep_joint(OpId.OUR_MUL, OpId.KERN_MUL, OpId.BITWISE_MUL_OPT, 5)
    assert j.total_pairs == 9 ** 5
    assert j.differing_b1 == 16
    assert j.differing_both <= min(j.differing_b1, j.differing_b2)
    assert 0 <= j.joint_fraction() <= 1


def test_csv_output_shapes():
    s = sweep_exhaustive(OpId.OUR_MUL, OpId.KERN_MUL, 5)
    buf = io.StringIO()
    write_summary_csv(s, buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "width,op_a,op_b,kind,log2_ratio,count"
    assert any(",bucket," in line for line in lines)
    assert lines[-1].startswith("5,our_mul,kern_mul,total")

    rows = [summary_to_row(s)]
    buf = io.StringIO()
    write_bitwidth_csv(rows, buf)
    lines = buf.getvalue().strip().splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("width,total_pairs,pct_equal")
