"""Operator microbenchmarks on random width-64 tnum pairs.

For every input pair each operator runs ``trials`` times and the minimum
timing is kept, which suppresses interrupt/scheduling noise; the report
aggregates the per-pair minimums.  The compiled backend reads the CPU
cycle counter where the platform has one and falls back to the monotonic
clock; the report names the source, its unit, and its measured resolution.

Two input samplers are provided because "random tnum" is ambiguous:
``per_trit_uniform`` draws every trit 0/1/unknown with probability 1/3
(uniform over well-formed tnums); ``uniform_vm_normalized`` draws two
uniform words and clears value bits under the mask, which weights dense
masks more heavily.  Reports carry the sampler, seed, and an input
checksum so a run can be replayed bit for bit, and results are folded
into a checksum so the timed calls cannot be elided.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from ._backend import get_kernels
from .core import TimerUnavailable, Tnum
from .ops import OpId

__all__ = ["BenchConfig", "OpBenchResult", "BenchReport", "SAMPLERS",
           "sample_tnum", "generate_pairs", "input_checksum", "run_bench",
           "write_csv"]

SAMPLERS = ("per_trit_uniform", "uniform_vm_normalized")

# One rng call covers this many pairs; fixed so that a seed defines one
# input stream regardless of how many pairs are requested.
_GEN_CHUNK = 1 << 16

_U64 = (1 << 64) - 1


def _pack_trits(digits: np.ndarray, width: int):
    """digits: (n, width) array over {0,1,2} -> (values, masks) uint64."""
    values = np.zeros(digits.shape[0], dtype=np.uint64)
    masks = np.zeros(digits.shape[0], dtype=np.uint64)
    for k in range(width):
        col = digits[:, k]
        values |= (col == 1).astype(np.uint64) << np.uint64(k)
        masks |= (col == 2).astype(np.uint64) << np.uint64(k)
    return values, masks


def sample_tnum(width: int, rng: np.random.Generator,
                sampler: str = "per_trit_uniform") -> Tnum:
    """Draw one random well-formed tnum."""
    if sampler == "per_trit_uniform":
        digits = rng.integers(0, 3, size=(1, width), dtype=np.uint8)
        v, m = _pack_trits(digits, width)
        return Tnum(int(v[0]), int(m[0]), width)
    if sampler == "uniform_vm_normalized":
        hi = np.iinfo(np.uint64).max
        raw = rng.integers(0, hi, size=2, dtype=np.uint64, endpoint=True)
        full = (1 << width) - 1
        m = int(raw[1]) & full
        v = int(raw[0]) & ~m & full
        return Tnum(v, m, width)
    raise ValueError(f"unknown sampler {sampler!r}")


def generate_pairs(width: int, count: int, seed: int,
                   sampler: str = "per_trit_uniform"):
    """(pv, pm, qv, qm) arrays for ``count`` seeded random pairs.

    The stream is generated in fixed-size chunks, P and Q interleaved, so
    the same seed always yields the same prefix.
    """
    if sampler not in SAMPLERS:
        raise ValueError(f"unknown sampler {sampler!r}")
    rng = np.random.default_rng(seed)
    pv = np.empty(count, dtype=np.uint64)
    pm = np.empty(count, dtype=np.uint64)
    qv = np.empty(count, dtype=np.uint64)
    qm = np.empty(count, dtype=np.uint64)
    full = np.uint64((1 << width) - 1)
    done = 0
    while done < count:
        n = min(_GEN_CHUNK, count - done)
        if sampler == "per_trit_uniform":
            digits = rng.integers(0, 3, size=(2 * n, width), dtype=np.uint8)
            vs, ms = _pack_trits(digits, width)
        else:
            hi = np.iinfo(np.uint64).max
            raw = rng.integers(0, hi, size=(2 * n, 2), dtype=np.uint64,
                               endpoint=True)
            ms = raw[:, 1] & full
            vs = raw[:, 0] & ~ms & full
        pv[done:done + n] = vs[0::2]
        pm[done:done + n] = ms[0::2]
        qv[done:done + n] = vs[1::2]
        qm[done:done + n] = ms[1::2]
        done += n
    return pv, pm, qv, qm


def _rotl(a, r: int):
    return (a << np.uint64(r)) | (a >> np.uint64(64 - r))


def input_checksum(pv, pm, qv, qm) -> int:
    """Order-sensitive fold of the input stream (for replay comparison)."""
    mix = pv ^ _rotl(pm, 16) ^ _rotl(qv, 32) ^ _rotl(qm, 48)
    idx = np.arange(1, len(pv) + 1, dtype=np.uint64)
    x = int(np.bitwise_xor.reduce(mix * idx))
    s = int(np.sum(mix, dtype=np.uint64))
    return (x * 0x9E3779B97F4A7C15 + s) & _U64


@dataclass
class BenchConfig:
    ops: list[OpId]
    n_pairs: int = 4_000_000
    trials: int = 10
    seed: int = 1
    sampler: str = "per_trit_uniform"
    width: int = 64
    pin_hint: int | None = None
    audit_n: int = 1000
    backend: str | None = None      # None/auto, "c", or "py"

    def validate(self) -> None:
        if not self.ops:
            raise ValueError("ops must be nonempty")
        if self.n_pairs < 1:
            raise ValueError("n_pairs must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.sampler not in SAMPLERS:
            raise ValueError(f"unknown sampler {self.sampler!r}")
        if not 1 <= self.width <= 64:
            raise ValueError("width must be in 1..64")


@dataclass
class OpBenchResult:
    op: str
    count: int
    mean: float
    percentiles: dict[str, float]
    checksum: int
    audit_ok: bool
    mins: np.ndarray = field(repr=False)

    def to_dict(self) -> dict:
        return {"op": self.op, "count": self.count, "mean": self.mean,
                "percentiles": self.percentiles,
                "checksum": f"{self.checksum:#x}", "audit_ok": self.audit_ok}


@dataclass
class BenchReport:
    config: BenchConfig
    backend: str
    timer_name: str
    timer_unit: str
    timer_resolution: int
    input_checksum: int
    pinned: bool
    results: dict[str, OpBenchResult]

    def mean(self, op: OpId | str) -> float:
        return self.results[op.value if isinstance(op, OpId) else op].mean

    def to_dict(self) -> dict:
        return {
            "config": {
                "ops": [o.value for o in self.config.ops],
                "n_pairs": self.config.n_pairs,
                "trials": self.config.trials,
                "seed": self.config.seed,
                "sampler": self.config.sampler,
                "width": self.config.width,
                "pin_hint": self.config.pin_hint,
            },
            "backend": self.backend,
            "timer": {"name": self.timer_name, "unit": self.timer_unit,
                      "resolution": self.timer_resolution},
            "input_checksum": f"{self.input_checksum:#x}",
            "pinned": self.pinned,
            "results": {k: v.to_dict() for k, v in self.results.items()},
        }


def _percentiles(mins: np.ndarray) -> dict[str, float]:
    ps = np.percentile(mins.astype(np.float64), [10, 50, 90, 99])
    return {"p10": float(ps[0]), "p50": float(ps[1]),
            "p90": float(ps[2]), "p99": float(ps[3])}


def run_bench(cfg: BenchConfig) -> BenchReport:
    """Generate inputs, time every configured operator, audit results."""
    cfg.validate()
    kernels = get_kernels(cfg.backend)
    try:
        timer_name, timer_unit, resolution = kernels.timer_info()
    except Exception as exc:                     # pragma: no cover
        raise TimerUnavailable(str(exc)) from exc

    pv, pm, qv, qm = generate_pairs(cfg.width, cfg.n_pairs, cfg.seed,
                                    cfg.sampler)
    ks = (qv % np.uint64(cfg.width + 1)).astype(np.uint64)
    in_checksum = input_checksum(pv, pm, qv, qm)

    pinned = False
    old_affinity = None
    if cfg.pin_hint is not None and hasattr(os, "sched_setaffinity"):
        try:
            old_affinity = os.sched_getaffinity(0)
            os.sched_setaffinity(0, {cfg.pin_hint})
            pinned = True
        except OSError:
            pinned = False
    try:
        results: dict[str, OpBenchResult] = {}
        audit_n = min(cfg.audit_n, cfg.n_pairs)
        for op in cfg.ops:
            if op.is_shift:
                mins, checksum, arv, arm = kernels.bench_run_shift(
                    op.code, pv, pm, ks, cfg.width, cfg.trials, audit_n)
                audit_ok = all(
                    kernels.apply_shift(op.code, int(pv[i]), int(pm[i]),
                                        cfg.width, int(ks[i]))
                    == (int(arv[i]), int(arm[i]))
                    for i in range(audit_n))
            else:
                mins, checksum, arv, arm = kernels.bench_run(
                    op.code, pv, pm, qv, qm, cfg.width, cfg.trials, audit_n)
                rv, rm = kernels.batch_apply(
                    op.code, pv[:audit_n], pm[:audit_n], qv[:audit_n],
                    qm[:audit_n], cfg.width)
                audit_ok = bool(np.array_equal(rv, arv)
                                and np.array_equal(rm, arm))
            results[op.value] = OpBenchResult(
                op=op.value, count=cfg.n_pairs,
                mean=float(mins.astype(np.float64).mean()),
                percentiles=_percentiles(mins), checksum=int(checksum),
                audit_ok=audit_ok, mins=mins)
    finally:
        if pinned and old_affinity is not None:
            os.sched_setaffinity(0, old_affinity)

    return BenchReport(
        config=cfg, backend=kernels.BACKEND_NAME, timer_name=timer_name,
        timer_unit=timer_unit, timer_resolution=resolution,
        input_checksum=in_checksum, pinned=pinned, results=results)


def write_csv(report: BenchReport, path: str) -> None:
    """Per-pair minimums, one row per (op, pair) -- CDF-ready."""
    import csv

    column = f"min_time_{report.timer_unit}"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["op", "pair_index", column])
        for name, result in report.results.items():
            for idx, value in enumerate(result.mins):
                writer.writerow([name, idx, int(value)])
