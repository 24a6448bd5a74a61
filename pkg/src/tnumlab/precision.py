"""Pairwise operator precision comparison.

For a pair of operators and one input pair, the two results either match,
one strictly refines the other, or they are incomparable.  When they are
comparable the cardinality ratio of their concretizations is exactly
``2**(popcount(mask_a) - popcount(mask_b))``, so the set-size ratio is
tracked as that integer exponent, never as a float.

Exhaustive sweeps walk all ``9**width`` ordered tnum pairs (``3**width``
tnums squared).  Incomparable pairs are counted separately and excluded
from the exponent histogram.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

from ._backend import kernels
from .core import Order, Tnum, WidthMismatch, WidthTooLargeForEnumeration, compare
from .ops import OpId, apply_op
from .verify import _run_spans

__all__ = ["PrecisionRecord", "PrecisionSummary", "JointPrecisionSummary",
           "BitwidthRow", "compare_pair", "sweep_exhaustive", "sweep_joint",
           "sweep_bitwidths", "write_summary_csv", "write_bitwidth_csv"]

EXHAUSTIVE_WIDTH_LIMIT = 8
LONG_RUN_WIDTH_LIMIT = 10


@dataclass(frozen=True)
class PrecisionRecord:
    p: Tnum
    q: Tnum
    op_a: OpId
    op_b: OpId
    result_a: Tnum
    result_b: Tnum
    relation: Order
    log2_ratio: int | None          # popcount(ma) - popcount(mb); None when
                                    # incomparable

    def to_dict(self) -> dict:
        return {
            "p": str(self.p), "q": str(self.q),
            "op_a": self.op_a.value, "op_b": self.op_b.value,
            "result_a": str(self.result_a), "result_b": str(self.result_b),
            "relation": self.relation.value, "log2_ratio": self.log2_ratio,
        }


def compare_pair(op_a: OpId, op_b: OpId, p: Tnum, q: Tnum) -> PrecisionRecord:
    """Run both operators on one pair and classify the outcome."""
    if p.width != q.width:
        raise WidthMismatch(f"operand widths differ: {p.width} vs {q.width}")
    ra = apply_op(op_a, p, q)
    rb = apply_op(op_b, p, q)
    relation = compare(ra, rb)
    if relation is Order.INCOMPARABLE:
        ratio = None
    else:
        ratio = ra.mask.bit_count() - rb.mask.bit_count()
    return PrecisionRecord(p, q, op_a, op_b, ra, rb, relation, ratio)


@dataclass
class PrecisionSummary:
    width: int
    op_a: str
    op_b: str
    total_pairs: int
    equal_count: int
    a_more_precise: int
    b_more_precise: int
    incomparable: int
    histogram: dict[int, int]       # log2_ratio -> count, differing
                                    # comparable pairs only
    swap_also_differs: int = 0      # differing pairs whose swapped
                                    # orientation also differs
    diagonal_differing: int = 0     # differing pairs with p == q

    def __post_init__(self) -> None:
        parts = (self.equal_count + self.a_more_precise
                 + self.b_more_precise + self.incomparable)
        if parts != self.total_pairs:
            raise ValueError("summary counts do not add up")
        if sum(self.histogram.values()) != (
                self.total_pairs - self.equal_count - self.incomparable):
            raise ValueError("histogram mass != differing comparable pairs")
        if (self.swap_also_differs - self.diagonal_differing) % 2:
            raise ValueError("off-diagonal both-orientation count must be even")

    @property
    def differing_comparable(self) -> int:
        return self.a_more_precise + self.b_more_precise

    @property
    def equal_fraction(self) -> float:
        return self.equal_count / self.total_pairs

    @property
    def distinct_differing_inputs(self) -> int:
        """Unordered input sets {P, Q} that differ in at least one order.

        Derived from the ordered sweep: both-orientation off-diagonal pairs
        collapse two ordered pairs into one set, one-sided pairs and
        diagonal pairs contribute one each.
        """
        differing = self.total_pairs - self.equal_count
        both_off_diag = self.swap_also_differs - self.diagonal_differing
        one_sided = differing - self.swap_also_differs
        return self.diagonal_differing + both_off_diag // 2 + one_sided

    def equal_fraction_distinct_inputs(self) -> float:
        """1 - distinct_differing_inputs / total ordered pairs.

        This is the counting convention behind the headline agreement
        figure: each differing input set is counted once while the total
        remains the full 9**width ordered-pair count.
        """
        return 1.0 - self.distinct_differing_inputs / self.total_pairs

    def a_more_precise_fraction(self) -> float:
        """Fraction of differing comparable pairs where op_a refines op_b."""
        if self.differing_comparable == 0:
            return 0.0
        return self.a_more_precise / self.differing_comparable

    def to_dict(self) -> dict:
        return {
            "width": self.width, "op_a": self.op_a, "op_b": self.op_b,
            "total_pairs": self.total_pairs,
            "equal_count": self.equal_count,
            "a_more_precise": self.a_more_precise,
            "b_more_precise": self.b_more_precise,
            "incomparable": self.incomparable,
            "swap_also_differs": self.swap_also_differs,
            "diagonal_differing": self.diagonal_differing,
            "distinct_differing_inputs": self.distinct_differing_inputs,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def sweep_exhaustive(op_a: OpId, op_b: OpId, width: int,
                     workers: int | None = None,
                     long_running: bool = False) -> PrecisionSummary:
    """Aggregate compare_pair over every ordered tnum pair of the width."""
    limit = LONG_RUN_WIDTH_LIMIT if long_running else EXHAUSTIVE_WIDTH_LIMIT
    if width > limit:
        raise WidthTooLargeForEnumeration(
            f"exhaustive precision sweeps are limited to width {limit}"
            + ("" if long_running else " (pass long_running for 9..10)"))
    if op_a.is_shift or op_b.is_shift:
        raise ValueError("precision sweeps compare binary operators")
    count = 3 ** width
    parts = _run_spans(
        lambda s, e: kernels.precision_sweep(op_a.code, op_b.code, width, s, e),
        count * count, workers)
    total = sum(p[0] for p in parts)
    equal = sum(p[1] for p in parts)
    a_more = sum(p[2] for p in parts)
    b_more = sum(p[3] for p in parts)
    incomparable = sum(p[4] for p in parts)
    swap_also = sum(p[5] for p in parts)
    hist: dict[int, int] = {}
    for part in parts:
        for bucket, n in enumerate(part[6]):
            if n:
                hist[bucket - 64] = hist.get(bucket - 64, 0) + n
    diag = _diagonal_differing(op_a, op_b, width)
    return PrecisionSummary(width, op_a.value, op_b.value, total, equal,
                            a_more, b_more, incomparable, hist,
                            swap_also_differs=swap_also,
                            diagonal_differing=diag)


def _diagonal_differing(op_a: OpId, op_b: OpId, width: int) -> int:
    vs, ms = kernels.tnum_table(width)
    av, am = kernels.batch_apply(op_a.code, vs, ms, vs, ms, width)
    bv, bm = kernels.batch_apply(op_b.code, vs, ms, vs, ms, width)
    import numpy as np
    return int(((av != bv) | (am != bm)).sum())


@dataclass
class JointPrecisionSummary:
    """Three-way comparison: does op_a refine two rivals at once?

    ``a_refines_both`` counts ordered pairs where op_a's output differs
    from both rivals' outputs and strictly refines each of them; the
    fraction is taken over ``differing_both``.
    """

    width: int
    op_a: str
    op_b1: str
    op_b2: str
    total_pairs: int
    differing_b1: int
    differing_b2: int
    differing_both: int
    differing_any: int
    a_refines_both: int

    def joint_fraction(self) -> float:
        if self.differing_both == 0:
            return 0.0
        return self.a_refines_both / self.differing_both

    def to_dict(self) -> dict:
        return {
            "width": self.width, "op_a": self.op_a, "op_b1": self.op_b1,
            "op_b2": self.op_b2, "total_pairs": self.total_pairs,
            "differing_b1": self.differing_b1,
            "differing_b2": self.differing_b2,
            "differing_both": self.differing_both,
            "differing_any": self.differing_any,
            "a_refines_both": self.a_refines_both,
        }


def sweep_joint(op_a: OpId, op_b1: OpId, op_b2: OpId, width: int,
                long_running: bool = False) -> JointPrecisionSummary:
    """Exhaustive three-operator sweep, row-vectorized over the pair space."""
    import numpy as np

    limit = LONG_RUN_WIDTH_LIMIT if long_running else EXHAUSTIVE_WIDTH_LIMIT
    if width > limit:
        raise WidthTooLargeForEnumeration(
            f"exhaustive precision sweeps are limited to width {limit}")
    vs, ms = kernels.tnum_table(width)
    n = len(vs)
    d1 = d2 = dboth = dany = wins = 0
    for i in range(n):
        pv = np.full(n, vs[i], dtype=np.uint64)
        pm = np.full(n, ms[i], dtype=np.uint64)
        av, am = kernels.batch_apply(op_a.code, pv, pm, vs, ms, width)
        b1v, b1m = kernels.batch_apply(op_b1.code, pv, pm, vs, ms, width)
        b2v, b2m = kernels.batch_apply(op_b2.code, pv, pm, vs, ms, width)
        diff1 = (av != b1v) | (am != b1m)
        diff2 = (av != b2v) | (am != b2m)
        ref1 = diff1 & ((am & ~b1m) == 0) & ((av & ~b1m) == b1v)
        ref2 = diff2 & ((am & ~b2m) == 0) & ((av & ~b2m) == b2v)
        d1 += int(diff1.sum())
        d2 += int(diff2.sum())
        dboth += int((diff1 & diff2).sum())
        dany += int((diff1 | diff2).sum())
        wins += int((ref1 & ref2).sum())
    return JointPrecisionSummary(width, op_a.value, op_b1.value, op_b2.value,
                                 n * n, d1, d2, dboth, dany, wins)


@dataclass
class BitwidthRow:
    width: int
    total_pairs: int
    pct_equal: float
    pct_differing_comparable: float     # of differing pairs
    pct_a_more_precise: float           # of comparable differing pairs

    def to_dict(self) -> dict:
        return {
            "width": self.width, "total_pairs": self.total_pairs,
            "pct_equal": self.pct_equal,
            "pct_differing_comparable": self.pct_differing_comparable,
            "pct_a_more_precise": self.pct_a_more_precise,
        }


def summary_to_row(summary: PrecisionSummary) -> BitwidthRow:
    differing = summary.total_pairs - summary.equal_count
    comparable = summary.differing_comparable
    return BitwidthRow(
        width=summary.width,
        total_pairs=summary.total_pairs,
        pct_equal=100.0 * summary.equal_count / summary.total_pairs,
        pct_differing_comparable=(100.0 * comparable / differing
                                  if differing else 100.0),
        pct_a_more_precise=(100.0 * summary.a_more_precise / comparable
                            if comparable else 0.0),
    )


def sweep_bitwidths(op_a: OpId, op_b: OpId, widths: Iterable[int],
                    workers: int | None = None,
                    long_running: bool = False) -> list[BitwidthRow]:
    """One summary row per width, ascending."""
    rows = []
    for width in sorted(widths):
        summary = sweep_exhaustive(op_a, op_b, width, workers=workers,
                                   long_running=long_running)
        rows.append(summary_to_row(summary))
    return rows


def write_summary_csv(summary: PrecisionSummary, fh: TextIO) -> None:
    """Histogram buckets plus the aggregate counts, one row each."""
    writer = csv.writer(fh)
    writer.writerow(["width", "op_a", "op_b", "kind", "log2_ratio", "count"])
    base = [summary.width, summary.op_a, summary.op_b]
    for ratio in sorted(summary.histogram):
        writer.writerow(base + ["bucket", ratio, summary.histogram[ratio]])
    writer.writerow(base + ["equal", "", summary.equal_count])
    writer.writerow(base + ["a_more_precise", "", summary.a_more_precise])
    writer.writerow(base + ["b_more_precise", "", summary.b_more_precise])
    writer.writerow(base + ["incomparable", "", summary.incomparable])
    writer.writerow(base + ["total", "", summary.total_pairs])


def write_bitwidth_csv(rows: Sequence[BitwidthRow], fh: TextIO) -> None:
    writer = csv.writer(fh)
    writer.writerow(["width", "total_pairs", "pct_equal",
                     "pct_differing_comparable", "pct_a_more_precise"])
    for row in rows:
        writer.writerow([row.width, row.total_pairs, f"{row.pct_equal:.6f}",
                         f"{row.pct_differing_comparable:.6f}",
                         f"{row.pct_a_more_precise:.6f}"])
