"""Soundness, optimality, lemma, and negative-property verification.

Exhaustive sweeps enumerate every well-formed tnum pair at a small width
and check every concrete member pair; sampled sweeps draw seeded random
pairs at any width up to 64.  Pair spaces are split into fixed chunks that
may run on a thread pool; chunk results are merged in index order, so
parallel and serial runs produce identical reports.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import _opcodes
from ._backend import kernels
from .core import (
    Tnum, WidthTooLargeForEnumeration, word_mask,
)
from .ops import OpId, apply_op, tnum_add, tnum_sub

__all__ = [
    "SoundnessReport", "OptimalityReport", "LemmaReport", "Counterexample",
    "check_soundness", "check_optimality", "check_add_lemmas",
    "check_sub_lemmas", "find_counterexamples", "carry_in_bits",
    "borrow_in_bits", "worker_count",
]

MAX_WITNESSES = 100
EXHAUSTIVE_SOUNDNESS_LIMIT = 8
OPTIMALITY_LIMIT = 6
LEMMA_LIMIT = 6
_CHUNK = 1 << 16


def worker_count(workers: int | None = None) -> int:
    """Worker cap: explicit argument, else TNUMLAB_THREADS, else cpu count."""
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("TNUMLAB_THREADS")
    if env:
        return max(1, int(env))
    return min(4, os.cpu_count() or 1)


def _spans(total: int, chunk: int = _CHUNK) -> list[tuple[int, int]]:
    return [(s, min(s + chunk, total)) for s in range(0, total, chunk)]


def _run_spans(fn, total: int, workers: int | None):
    """Run fn(start, stop) over fixed chunks; results in chunk order."""
    spans = _spans(total)
    n = worker_count(workers)
    if n <= 1 or len(spans) <= 1:
        return [fn(s, e) for s, e in spans]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(lambda span: fn(*span), spans))


def carry_in_bits(p: int, q: int, width: int) -> int:
    """Bit k set iff the addition p+q carries into position k."""
    return (p ^ q ^ (p + q)) & word_mask(width)


def borrow_in_bits(p: int, q: int, width: int) -> int:
    """Bit k set iff the subtraction p-q borrows into position k."""
    return (p ^ q ^ (p - q)) & word_mask(width)


def _tnum_dict(v: int, m: int, width: int) -> dict:
    return {"v": f"{v:#x}", "m": f"{m:#x}", "width": width}


# ---------------------------------------------------------------------------
# Soundness.

@dataclass
class SoundnessReport:
    op: str
    width: int
    mode: str                       # "exhaustive" or "sampled"
    pairs_checked: int
    members_checked: int
    total_violations: int
    violations: list[dict]          # bounded to MAX_WITNESSES
    samples: int | None = None
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return self.total_violations == 0

    def to_dict(self) -> dict:
        return {
            "op": self.op, "width": self.width, "mode": self.mode,
            "samples": self.samples, "seed": self.seed,
            "pairs_checked": self.pairs_checked,
            "members_checked": self.members_checked,
            "total_violations": self.total_violations,
            "violations": self.violations,
        }


def _binary_witness(width, row):
    pv, pm, qv, qm, x, y, z, rv, rm = row
    return {
        "p": _tnum_dict(pv, pm, width), "q": _tnum_dict(qv, qm, width),
        "x": f"{x:#x}", "y": f"{y:#x}", "z": f"{z:#x}",
        "r": _tnum_dict(rv, rm, width),
    }


def _shift_witness(width, row):
    v, m, k, x, z, rv, rm = row
    return {
        "p": _tnum_dict(v, m, width), "shift": int(k),
        "x": f"{x:#x}", "z": f"{z:#x}", "r": _tnum_dict(rv, rm, width),
    }


def check_soundness(op: OpId | Callable, width: int, mode: str = "exhaustive",
                    samples: int | None = None, seed: int | None = None,
                    max_witnesses: int = MAX_WITNESSES,
                    workers: int | None = None) -> SoundnessReport:
    """Assert membership of every concrete result in the abstract result.

    ``op`` may also be a raw kernel callable ``(pv, pm, qv, qm, width) ->
    (rv, rm)``, which is swept against concrete addition; that path exists
    so the harness can be self-tested with deliberately broken operators.
    """
    if callable(op) and not isinstance(op, OpId):
        return _soundness_fn(op, width, max_witnesses)
    if mode == "exhaustive":
        if width > EXHAUSTIVE_SOUNDNESS_LIMIT:
            raise WidthTooLargeForEnumeration(
                f"exhaustive soundness is limited to width "
                f"{EXHAUSTIVE_SOUNDNESS_LIMIT}")
        return _soundness_exhaustive(op, width, max_witnesses, workers)
    if mode != "sampled":
        raise ValueError(f"mode must be exhaustive or sampled, got {mode!r}")
    return _soundness_sampled(op, width, samples or 100_000, seed or 0,
                              max_witnesses)


def _soundness_exhaustive(op, width, max_witnesses, workers):
    if op.is_shift:
        pairs, members, violations, rows = kernels.soundness_sweep_shift(
            op.code, width, max_witnesses)
        witness_dicts = [_shift_witness(width, r) for r in rows]
    else:
        count = 3 ** width

        def chunk(start, stop):
            return kernels.soundness_sweep_binary(
                op.code, width, start, stop, max_witnesses)

        parts = _run_spans(chunk, count * count, workers)
        pairs = sum(p[0] for p in parts)
        members = sum(p[1] for p in parts)
        violations = sum(p[2] for p in parts)
        rows = [r for p in parts for r in p[3]][:max_witnesses]
        witness_dicts = [_binary_witness(width, r) for r in rows]
    return SoundnessReport(op.value, width, "exhaustive", pairs, members,
                           violations, witness_dicts)


def _soundness_fn(fn, width, max_witnesses):
    # Self-test path: sweep an arbitrary (broken) addition kernel.
    from ._kernels_py import _pair_table, _members
    table = _pair_table(width)
    m = word_mask(width)
    pairs = members = violations = 0
    witnesses = []
    for pv, pm in table:
        for qv, qm in table:
            pairs += 1
            rv, rm = fn(pv, pm, qv, qm, width)
            for x in _members(pv, pm):
                for y in _members(qv, qm):
                    members += 1
                    z = (x + y) & m
                    if z & ~rm != rv:
                        violations += 1
                        if len(witnesses) < max_witnesses:
                            witnesses.append(_binary_witness(
                                width, (pv, pm, qv, qm, x, y, z, rv, rm)))
    name = getattr(fn, "__name__", "custom")
    return SoundnessReport(name, width, "exhaustive", pairs, members,
                           violations, witnesses)


def _vec_concrete(code: int, xs, ys, width: int):
    m = np.uint64(word_mask(width))
    if code == _opcodes.ADD:
        return (xs + ys) & m
    if code == _opcodes.SUB:
        return (xs - ys) & m
    if code == _opcodes.AND:
        return xs & ys
    if code == _opcodes.OR:
        return xs | ys
    if code == _opcodes.XOR:
        return xs ^ ys
    return (xs * ys) & m


def _soundness_sampled(op, width, samples, seed, max_witnesses):
    from .bench import generate_pairs
    pv, pm, qv, qm = generate_pairs(width, samples, seed)
    pairs = samples
    members = 0
    violations = 0
    witnesses: list[dict] = []
    if op.is_shift:
        ks = (qv % np.uint64(width + 1)).astype(np.uint64)
        for i in range(samples):
            v, m, k = int(pv[i]), int(pm[i]), int(ks[i])
            rv, rm = kernels.apply_shift(op.code, v, m, width, k)
            for x in (v, (v + m) & word_mask(width),
                      v | (int(qm[i]) & m)):
                members += 1
                z = kernels.concrete_shift(op.code, x, width, k)
                if z & ~rm != rv:
                    violations += 1
                    if len(witnesses) < max_witnesses:
                        witnesses.append(_shift_witness(
                            width, (v, m, k, x, z, rv, rm)))
        return SoundnessReport(op.value, width, "sampled", pairs, members,
                               violations, witnesses, samples, seed)
    rv, rm = kernels.batch_apply(op.code, pv, pm, qv, qm, width)
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0xF00D]))
    hi = np.iinfo(np.uint64).max
    # member choices per pair: both extremes plus two random picks
    member_picks = [
        (pv, qv),
        (pv | pm, qv | qm),
    ]
    for _ in range(2):
        rx = rng.integers(0, hi, size=samples, dtype=np.uint64, endpoint=True)
        ry = rng.integers(0, hi, size=samples, dtype=np.uint64, endpoint=True)
        member_picks.append((pv | (rx & pm), qv | (ry & qm)))
    not_rm = ~rm
    for xs, ys in member_picks:
        zs = _vec_concrete(op.code, xs, ys, width)
        bad = (zs & not_rm) != rv
        members += samples
        violations += int(bad.sum())
        for i in np.flatnonzero(bad)[:max(0, max_witnesses - len(witnesses))]:
            witnesses.append(_binary_witness(width, (
                int(pv[i]), int(pm[i]), int(qv[i]), int(qm[i]),
                int(xs[i]), int(ys[i]), int(zs[i]), int(rv[i]), int(rm[i]))))
    return SoundnessReport(op.value, width, "sampled", pairs, members,
                           violations, witnesses, samples, seed)


# ---------------------------------------------------------------------------
# Optimality against the enumerated oracle.

@dataclass
class OptimalityReport:
    op: str
    width: int
    pairs: int
    equal_pairs: int
    strictly_worse_pairs: int
    unsound_pairs: int              # oracle not contained in result: bug
    examples: list[dict] = field(default_factory=list)

    @property
    def always_optimal(self) -> bool:
        return self.equal_pairs == self.pairs

    def to_dict(self) -> dict:
        return {
            "op": self.op, "width": self.width, "pairs": self.pairs,
            "equal_pairs": self.equal_pairs,
            "strictly_worse_pairs": self.strictly_worse_pairs,
            "unsound_pairs": self.unsound_pairs, "examples": self.examples,
        }


def check_optimality(op: OpId, width: int, max_examples: int = 10,
                     workers: int | None = None) -> OptimalityReport:
    """Compare an operator against alpha . f . gamma over every pair."""
    if width > OPTIMALITY_LIMIT:
        raise WidthTooLargeForEnumeration(
            f"optimality sweeps are limited to width {OPTIMALITY_LIMIT}")
    if op.is_shift:
        pairs, equal, worse, unsound, rows = kernels.optimality_sweep_shift(
            op.code, width, max_examples)
        examples = [
            {"p": _tnum_dict(r[0], r[1], width), "shift": int(r[2]),
             "r": _tnum_dict(r[3], r[4], width),
             "optimal": _tnum_dict(r[5], r[6], width)}
            for r in rows
        ]
    else:
        count = 3 ** width

        def chunk(start, stop):
            return kernels.optimality_sweep_binary(
                op.code, width, start, stop, max_examples)

        parts = _run_spans(chunk, count * count, workers)
        pairs = sum(p[0] for p in parts)
        equal = sum(p[1] for p in parts)
        worse = sum(p[2] for p in parts)
        unsound = sum(p[3] for p in parts)
        rows = [r for p in parts for r in p[4]][:max_examples]
        examples = [
            {"p": _tnum_dict(r[0], r[1], width),
             "q": _tnum_dict(r[2], r[3], width),
             "r": _tnum_dict(r[4], r[5], width),
             "optimal": _tnum_dict(r[6], r[7], width)}
            for r in rows
        ]
    return OptimalityReport(op.value, width, pairs, equal, worse, unsound,
                            examples)


# ---------------------------------------------------------------------------
# Input-output equivalence and closure.

@dataclass
class EquivalenceReport:
    op_a: str
    op_b: str
    width: int
    mode: str
    pairs: int
    mismatches: int
    witnesses: list[dict]
    samples: int | None = None
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return self.mismatches == 0

    def to_dict(self) -> dict:
        return {"op_a": self.op_a, "op_b": self.op_b, "width": self.width,
                "mode": self.mode, "pairs": self.pairs,
                "mismatches": self.mismatches, "samples": self.samples,
                "seed": self.seed, "witnesses": self.witnesses}


def check_equivalence(op_a: OpId, op_b: OpId, width: int,
                      max_witnesses: int = MAX_WITNESSES,
                      workers: int | None = None) -> EquivalenceReport:
    """Exhaustively compare two operators' outputs at a small width."""
    if width > EXHAUSTIVE_SOUNDNESS_LIMIT:
        raise WidthTooLargeForEnumeration(
            f"exhaustive equivalence is limited to width "
            f"{EXHAUSTIVE_SOUNDNESS_LIMIT}")
    count = 3 ** width
    parts = _run_spans(
        lambda s, e: kernels.equivalence_sweep(op_a.code, op_b.code, width,
                                               s, e, max_witnesses),
        count * count, workers)
    pairs = sum(p[0] for p in parts)
    mismatches = sum(p[1] for p in parts)
    rows = [r for p in parts for r in p[2]][:max_witnesses]
    witnesses = [
        {"p": _tnum_dict(r[0], r[1], width), "q": _tnum_dict(r[2], r[3], width),
         "a": _tnum_dict(r[4], r[5], width), "b": _tnum_dict(r[6], r[7], width)}
        for r in rows
    ]
    return EquivalenceReport(op_a.value, op_b.value, width, "exhaustive",
                             pairs, mismatches, witnesses)


def check_equivalence_sampled(op_a: OpId, op_b: OpId, width: int,
                              samples: int, seed: int = 0,
                              max_witnesses: int = MAX_WITNESSES,
                              ) -> EquivalenceReport:
    """Compare two operators on seeded random pairs at any width."""
    from .bench import generate_pairs
    pv, pm, qv, qm = generate_pairs(width, samples, seed)
    av, am = kernels.batch_apply(op_a.code, pv, pm, qv, qm, width)
    bv, bm = kernels.batch_apply(op_b.code, pv, pm, qv, qm, width)
    bad = (av != bv) | (am != bm)
    witnesses = [
        {"p": _tnum_dict(int(pv[i]), int(pm[i]), width),
         "q": _tnum_dict(int(qv[i]), int(qm[i]), width),
         "a": _tnum_dict(int(av[i]), int(am[i]), width),
         "b": _tnum_dict(int(bv[i]), int(bm[i]), width)}
        for i in np.flatnonzero(bad)[:max_witnesses]
    ]
    return EquivalenceReport(op_a.value, op_b.value, width, "sampled",
                             samples, int(bad.sum()), witnesses,
                             samples, seed)


def check_closure(op: OpId, width: int, samples: int | None = None,
                  seed: int = 0, workers: int | None = None) -> dict:
    """Well-formedness of every output (exhaustive small width or sampled)."""
    if samples is None:
        if op.is_shift:
            bad = 0
            pairs = 0
            for v, m in zip(*_table_arrays(width)):
                for k in range(width + 1):
                    pairs += 1
                    rv, rm = kernels.apply_shift(op.code, int(v), int(m),
                                                 width, k)
                    if rv & rm or rv > word_mask(width) or rm > word_mask(width):
                        bad += 1
            return {"op": op.value, "width": width, "pairs": pairs, "bad": bad}
        count = 3 ** width
        parts = _run_spans(
            lambda s, e: kernels.closure_sweep(op.code, width, s, e, 5),
            count * count, workers)
        return {"op": op.value, "width": width,
                "pairs": sum(p[0] for p in parts),
                "bad": sum(p[1] for p in parts)}
    from .bench import generate_pairs
    pv, pm, qv, qm = generate_pairs(width, samples, seed)
    if op.is_shift:
        ks = (qv % np.uint64(width + 1)).astype(np.uint64)
        bad = 0
        for i in range(samples):
            rv, rm = kernels.apply_shift(op.code, int(pv[i]), int(pm[i]),
                                         width, int(ks[i]))
            if rv & rm:
                bad += 1
        return {"op": op.value, "width": width, "pairs": samples, "bad": bad}
    rv, rm = kernels.batch_apply(op.code, pv, pm, qv, qm, width)
    bad = int(((rv & rm) != 0).sum())
    if width < 64:
        limit = np.uint64(word_mask(width))
        bad += int((rv > limit).sum()) + int((rm > limit).sum())
    return {"op": op.value, "width": width, "pairs": samples, "bad": bad}


def _table_arrays(width):
    return kernels.tnum_table(width)


# ---------------------------------------------------------------------------
# Carry/borrow lemma sweeps.

@dataclass
class LemmaReport:
    kind: str
    width: int
    pairs: int
    total_violations: int
    violations: list[dict]

    @property
    def ok(self) -> bool:
        return self.total_violations == 0

    def to_dict(self) -> dict:
        return {"kind": self.kind, "width": self.width, "pairs": self.pairs,
                "total_violations": self.total_violations,
                "violations": self.violations}


def _lemma_report(kind, width, parts, max_witnesses):
    pairs = sum(p[0] for p in parts)
    violations = sum(p[1] for p in parts)
    rows = [r for p in parts for r in p[2]][:max_witnesses]
    dicts = [
        {"p": _tnum_dict(r[0], r[1], width), "q": _tnum_dict(r[2], r[3], width),
         "fold_and": f"{r[4]:#x}", "fold_or": f"{r[5]:#x}",
         "bound_min": f"{r[6]:#x}", "bound_max": f"{r[7]:#x}"}
        for r in rows
    ]
    return LemmaReport(kind, width, pairs, violations, dicts)


def check_add_lemmas(width: int, max_witnesses: int = MAX_WITNESSES,
                     workers: int | None = None,
                     swap_bounds: bool = False) -> LemmaReport:
    """Carry bounds over all member pairs, plus the mask identity.

    Per pair: the AND-fold of the concrete carry words equals the carries
    of value+value (fewest possible ones), the OR-fold equals the carries
    of the max-member addition (most possible ones), and the result mask
    derived from the sums equals the one derived from the carry words.
    Bits where the two bounds differ therefore vary across concrete
    additions, which is exactly where the sum mask is unknown.
    ``swap_bounds`` inverts the two bounds to prove the harness can fail.
    """
    if width > LEMMA_LIMIT:
        raise WidthTooLargeForEnumeration(
            f"lemma sweeps are limited to width {LEMMA_LIMIT}")
    count = 3 ** width
    parts = _run_spans(
        lambda s, e: kernels.add_lemma_sweep(width, s, e, max_witnesses,
                                             swap_bounds),
        count * count, workers)
    return _lemma_report("add_carry_lemmas", width, parts, max_witnesses)


def check_sub_lemmas(width: int, max_witnesses: int = MAX_WITNESSES,
                     workers: int | None = None,
                     swap_bounds: bool = False) -> LemmaReport:
    """Borrow analogue: fewest borrows from (max of P) - (min of Q),
    most from (min of P) - (max of Q)."""
    if width > LEMMA_LIMIT:
        raise WidthTooLargeForEnumeration(
            f"lemma sweeps are limited to width {LEMMA_LIMIT}")
    count = 3 ** width
    parts = _run_spans(
        lambda s, e: kernels.sub_lemma_sweep(width, s, e, max_witnesses,
                                             swap_bounds),
        count * count, workers)
    return _lemma_report("sub_borrow_lemmas", width, parts, max_witnesses)


# ---------------------------------------------------------------------------
# Negative properties.

@dataclass
class Counterexample:
    property: str
    operands: tuple[Tnum, ...]
    lhs: Tnum
    rhs: Tnum

    def replay(self) -> bool:
        """Recompute both sides from the operands; True if still unequal."""
        if self.property == "nonassoc_add":
            a, b, c = self.operands
            lhs = tnum_add(tnum_add(a, b), c)
            rhs = tnum_add(a, tnum_add(b, c))
        elif self.property == "noninverse_add_sub":
            p, q = self.operands
            lhs = tnum_sub(tnum_add(p, q), q)
            rhs = p
        elif self.property.startswith("noncomm_"):
            op = OpId.from_name(self.property.removeprefix("noncomm_"))
            p, q = self.operands
            lhs = apply_op(op, p, q)
            rhs = apply_op(op, q, p)
        else:
            raise ValueError(f"unknown property {self.property!r}")
        return lhs == self.lhs and rhs == self.rhs and lhs != rhs

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "operands": [_tnum_dict(t.value, t.mask, t.width)
                         for t in self.operands],
            "lhs": _tnum_dict(self.lhs.value, self.lhs.mask, self.lhs.width),
            "rhs": _tnum_dict(self.rhs.value, self.rhs.mask, self.rhs.width),
        }


_DEFAULT_PROPERTIES = ("nonassoc_add", "noninverse_add_sub",
                       "noncomm_kern_mul", "noncomm_our_mul")


def find_counterexamples(width: int, budget: int = 1_000_000,
                         properties: Sequence[str] = _DEFAULT_PROPERTIES,
                         limit: int = 1, seed: int = 0,
                         workers: int | None = None,
                         ) -> dict[str, list[Counterexample]]:
    """Search for property violations; exhaustive at width <= 6, seeded
    random sampling otherwise.  Empty lists are a recorded outcome, not an
    error."""
    results: dict[str, list[Counterexample]] = {}
    for prop in properties:
        if width <= 6:
            results[prop] = _find_exhaustive(prop, width, limit, workers)
        else:
            results[prop] = _find_randomized(prop, width, budget, limit, seed)
    return results


def _find_exhaustive(prop, width, limit, workers):
    count = 3 ** width
    found: list[Counterexample] = []

    def tn(v, m):
        return Tnum(v, m, width)

    if prop == "nonassoc_add":
        rows = []
        for s, e in _spans(count ** 3):
            rows.extend(kernels.assoc_search(width, s, e, limit - len(rows)))
            if len(rows) >= limit:
                break
        for av, am, bv, bm, cv, cm, lv, lm, rv, rm in rows[:limit]:
            found.append(Counterexample(
                prop, (tn(av, am), tn(bv, bm), tn(cv, cm)),
                tn(lv, lm), tn(rv, rm)))
    elif prop == "noninverse_add_sub":
        rows = []
        for s, e in _spans(count ** 2):
            rows.extend(kernels.inverse_search(width, s, e, limit - len(rows)))
            if len(rows) >= limit:
                break
        for pv, pm, qv, qm, lv, lm in rows[:limit]:
            found.append(Counterexample(
                prop, (tn(pv, pm), tn(qv, qm)), tn(lv, lm), tn(pv, pm)))
    elif prop.startswith("noncomm_"):
        op = OpId.from_name(prop.removeprefix("noncomm_"))
        rows = []
        for s, e in _spans(count ** 2):
            rows.extend(kernels.comm_search(op.code, width, s, e,
                                            limit - len(rows)))
            if len(rows) >= limit:
                break
        for pv, pm, qv, qm, lv, lm, rv, rm in rows[:limit]:
            found.append(Counterexample(
                prop, (tn(pv, pm), tn(qv, qm)), tn(lv, lm), tn(rv, rm)))
    else:
        raise ValueError(f"unknown property {prop!r}")
    return found


def _find_randomized(prop, width, budget, limit, seed):
    from .bench import generate_pairs
    found: list[Counterexample] = []

    def tn(v, m):
        return Tnum(int(v), int(m), width)

    if prop == "nonassoc_add":
        av, am, bv, bm = generate_pairs(width, budget, seed)
        cv, cm, _, _ = generate_pairs(width, budget, seed + 1)
        l1v, l1m = kernels.batch_apply(_opcodes.ADD, av, am, bv, bm, width)
        lv, lm = kernels.batch_apply(_opcodes.ADD, l1v, l1m, cv, cm, width)
        r1v, r1m = kernels.batch_apply(_opcodes.ADD, bv, bm, cv, cm, width)
        rv, rm = kernels.batch_apply(_opcodes.ADD, av, am, r1v, r1m, width)
        bad = (lv != rv) | (lm != rm)
        for i in np.flatnonzero(bad)[:limit]:
            found.append(Counterexample(
                prop, (tn(av[i], am[i]), tn(bv[i], bm[i]), tn(cv[i], cm[i])),
                tn(lv[i], lm[i]), tn(rv[i], rm[i])))
        return found
    pv, pm, qv, qm = generate_pairs(width, budget, seed)
    if prop == "noninverse_add_sub":
        sv, sm = kernels.batch_apply(_opcodes.ADD, pv, pm, qv, qm, width)
        lv, lm = kernels.batch_apply(_opcodes.SUB, sv, sm, qv, qm, width)
        bad = (lv != pv) | (lm != pm)
        for i in np.flatnonzero(bad)[:limit]:
            found.append(Counterexample(
                prop, (tn(pv[i], pm[i]), tn(qv[i], qm[i])),
                tn(lv[i], lm[i]), tn(pv[i], pm[i])))
        return found
    if prop.startswith("noncomm_"):
        op = OpId.from_name(prop.removeprefix("noncomm_"))
        lv, lm = kernels.batch_apply(op.code, pv, pm, qv, qm, width)
        rv, rm = kernels.batch_apply(op.code, qv, qm, pv, pm, width)
        bad = (lv != rv) | (lm != rm)
        for i in np.flatnonzero(bad)[:limit]:
            found.append(Counterexample(
                prop, (tn(pv[i], pm[i]), tn(qv[i], qm[i])),
                tn(lv[i], lm[i]), tn(rv[i], rm[i])))
        return found
    raise ValueError(f"unknown property {prop!r}")
