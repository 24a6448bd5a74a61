# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend: hot tnum kernels and exhaustive sweep loops.

Function-for-function twin of ``tnumlab._kernels_py``; the test suite pins
the two backends to bit-identical results.  Sweep loops release the GIL so
callers can partition a pair-index range across threads.
"""

import numpy as np

from ._opcodes import (
    ADD as _ADD, SUB as _SUB, AND as _AND, OR as _OR, XOR as _XOR,
    LSHIFT as _LSHIFT, RSHIFT as _RSHIFT, ARSH as _ARSH,
    KERN_MUL as _KERN_MUL, BITWISE_MUL as _BITWISE_MUL,
    BITWISE_MUL_OPT as _BITWISE_MUL_OPT, OUR_MUL as _OUR_MUL,
    OUR_MUL_SIMPLIFIED as _OUR_MUL_SIMPLIFIED,
)

from libc.stdint cimport int64_t, uint64_t

cdef extern from *:
    """
    #include <stdint.h>
    #include <time.h>

    #if defined(__x86_64__) || defined(__amd64__) || defined(_M_X64)
      #include <x86intrin.h>
      #define TNUMLAB_TIMER_NAME "rdtsc"
      #define TNUMLAB_TIMER_UNIT "cycles"
      static inline uint64_t tnumlab_ticks(void) { return __rdtsc(); }
    #elif defined(__aarch64__)
      #define TNUMLAB_TIMER_NAME "cntvct_el0"
      #define TNUMLAB_TIMER_UNIT "ticks"
      static inline uint64_t tnumlab_ticks(void) {
          uint64_t v;
          __asm__ __volatile__("mrs %0, cntvct_el0" : "=r"(v));
          return v;
      }
    #else
      #define TNUMLAB_TIMER_NAME "clock_monotonic"
      #define TNUMLAB_TIMER_UNIT "ns"
      static inline uint64_t tnumlab_ticks(void) {
          struct timespec ts;
          clock_gettime(CLOCK_MONOTONIC, &ts);
          return (uint64_t)ts.tv_sec * 1000000000ull + (uint64_t)ts.tv_nsec;
      }
    #endif
    static inline int tnumlab_popcount(uint64_t x) {
        return __builtin_popcountll(x);
    }
    """
    const char* TNUMLAB_TIMER_NAME
    const char* TNUMLAB_TIMER_UNIT
    uint64_t tnumlab_ticks() nogil
    int tnumlab_popcount(uint64_t x) nogil

BACKEND_NAME = "c"

cdef uint64_t FNV_OFFSET = ((<uint64_t>0xCBF29CE4) << 32) | <uint64_t>0x84222325
cdef uint64_t FNV_PRIME = ((<uint64_t>0x100) << 32) | <uint64_t>0x000001B3

cdef int OP_ADD = _ADD
cdef int OP_SUB = _SUB
cdef int OP_AND = _AND
cdef int OP_OR = _OR
cdef int OP_XOR = _XOR
cdef int OP_LSHIFT = _LSHIFT
cdef int OP_RSHIFT = _RSHIFT
cdef int OP_ARSH = _ARSH
cdef int OP_KERN_MUL = _KERN_MUL
cdef int OP_BITWISE_MUL = _BITWISE_MUL
cdef int OP_BITWISE_MUL_OPT = _BITWISE_MUL_OPT
cdef int OP_OUR_MUL = _OUR_MUL
cdef int OP_OUR_MUL_SIMPLIFIED = _OUR_MUL_SIMPLIFIED


cdef inline uint64_t wmask(int width) noexcept nogil:
    if width >= 64:
        return ~(<uint64_t>0)
    return ((<uint64_t>1) << width) - 1


cdef struct TN:
    uint64_t v
    uint64_t m


cdef inline TN c_add(uint64_t pv, uint64_t pm, uint64_t qv, uint64_t qm,
                     uint64_t full) noexcept nogil:
    cdef uint64_t sv = (pv + qv) & full
    cdef uint64_t sm = (pm + qm) & full
    cdef uint64_t sigma = (sv + sm) & full
    cdef uint64_t chi = sigma ^ sv
    cdef uint64_t eta = chi | pm | qm
    cdef TN r
    r.v = sv & ~eta
    r.m = eta
    return r


cdef inline TN c_sub(uint64_t pv, uint64_t pm, uint64_t qv, uint64_t qm,
                     uint64_t full) noexcept nogil:
    cdef uint64_t dv = (pv - qv) & full
    cdef uint64_t a = (dv + pm) & full
    cdef uint64_t b = (dv - qm) & full
    cdef uint64_t chi = a ^ b
    cdef uint64_t mu = chi | pm | qm
    cdef TN r
    r.v = dv & ~mu
    r.m = mu
    return r


cdef inline TN c_hma(TN acc, uint64_t x, uint64_t y, uint64_t full) noexcept nogil:
    while y:
        if y & 1:
            acc = c_add(acc.v, acc.m, 0, x, full)
        y >>= 1
        x = (x << 1) & full
    return acc


cdef inline TN c_kern_mul(uint64_t pv, uint64_t pm, uint64_t qv, uint64_t qm,
                          int width, uint64_t full) noexcept nogil:
    cdef TN acc
    acc.v = (pv * qv) & full
    acc.m = 0
    acc = c_hma(acc, pm, qm | qv, full)
    return c_hma(acc, qm, pv, full)


cdef inline TN c_bitwise_mul(uint64_t pv, uint64_t pm, uint64_t qv,
                             uint64_t qm, int width, uint64_t full,
                             bint opt) noexcept nogil:
    cdef TN s
    cdef uint64_t prod_v, prod_m, kv, km
    cdef int i, j
    s.v = 0
    s.m = 0
    for i in range(width):
        if not (((pv >> i) & 1) or ((pm >> i) & 1)):
            prod_v = 0
            prod_m = 0
        elif (pv >> i) & 1:
            prod_v = qv
            prod_m = qm
        elif opt:
            prod_v = 0
            prod_m = qv | qm
        else:
            kv = qv
            km = qm
            for j in range(width):
                if ((kv >> j) & 1) and not ((km >> j) & 1):
                    kv &= ~((<uint64_t>1) << j)
                    km |= (<uint64_t>1) << j
            prod_v = kv
            prod_m = km
        s = c_add(s.v, s.m, (prod_v << i) & full, (prod_m << i) & full, full)
    return s


cdef inline TN c_our_mul(uint64_t pv, uint64_t pm, uint64_t qv, uint64_t qm,
                         int width, uint64_t full) noexcept nogil:
    cdef uint64_t acc_v = (pv * qv) & full
    cdef TN am
    am.v = 0
    am.m = 0
    while pv | pm:
        if (pv & 1) and not (pm & 1):
            am = c_add(am.v, am.m, 0, qm, full)
        elif pm & 1:
            am = c_add(am.v, am.m, 0, qv | qm, full)
        pv >>= 1
        pm >>= 1
        qv = (qv << 1) & full
        qm = (qm << 1) & full
    return c_add(acc_v, 0, am.v, am.m, full)


cdef inline TN c_our_mul_simplified(uint64_t pv, uint64_t pm, uint64_t qv,
                                    uint64_t qm, int width,
                                    uint64_t full) noexcept nogil:
    cdef TN av, am
    cdef int i
    av.v = 0
    av.m = 0
    am.v = 0
    am.m = 0
    for i in range(width):
        if (pv & 1) and not (pm & 1):
            av = c_add(av.v, av.m, qv, 0, full)
            am = c_add(am.v, am.m, 0, qm, full)
        elif pm & 1:
            am = c_add(am.v, am.m, 0, qv | qm, full)
        pv >>= 1
        pm >>= 1
        qv = (qv << 1) & full
        qm = (qm << 1) & full
    return c_add(av.v, av.m, am.v, am.m, full)


cdef inline TN c_binary(int op, uint64_t pv, uint64_t pm, uint64_t qv,
                        uint64_t qm, int width, uint64_t full) noexcept nogil:
    cdef TN r
    cdef uint64_t t
    if op == OP_ADD:
        return c_add(pv, pm, qv, qm, full)
    if op == OP_SUB:
        return c_sub(pv, pm, qv, qm, full)
    if op == OP_AND:
        r.v = pv & qv
        r.m = (pv | pm) & (qv | qm) & ~r.v
        return r
    if op == OP_OR:
        r.v = pv | qv
        r.m = (pm | qm) & ~r.v
        return r
    if op == OP_XOR:
        t = pm | qm
        r.v = (pv ^ qv) & ~t
        r.m = t
        return r
    if op == OP_KERN_MUL:
        return c_kern_mul(pv, pm, qv, qm, width, full)
    if op == OP_BITWISE_MUL:
        return c_bitwise_mul(pv, pm, qv, qm, width, full, False)
    if op == OP_BITWISE_MUL_OPT:
        return c_bitwise_mul(pv, pm, qv, qm, width, full, True)
    if op == OP_OUR_MUL:
        return c_our_mul(pv, pm, qv, qm, width, full)
    # OUR_MUL_SIMPLIFIED
    return c_our_mul_simplified(pv, pm, qv, qm, width, full)


cdef inline TN c_shift(int op, uint64_t v, uint64_t m, int width,
                       int64_t k) noexcept nogil:
    cdef TN r
    cdef uint64_t full = wmask(width)
    cdef int kk
    cdef int64_t ve, me
    if op == OP_LSHIFT:
        if k >= width:
            r.v = 0
            r.m = 0
        else:
            r.v = (v << k) & full
            r.m = (m << k) & full
        return r
    if op == OP_RSHIFT:
        if k >= width:
            r.v = 0
            r.m = 0
        else:
            r.v = v >> k
            r.m = m >> k
        return r
    # arithmetic right shift: sign-extend both fields from bit width-1
    ve = <int64_t>(v << (64 - width)) >> (64 - width)
    me = <int64_t>(m << (64 - width)) >> (64 - width)
    kk = <int>k if k < 63 else 63
    r.v = (<uint64_t>(ve >> kk)) & full
    r.m = (<uint64_t>(me >> kk)) & full
    return r


cdef inline uint64_t c_concrete(int op, uint64_t x, uint64_t y,
                                uint64_t full) noexcept nogil:
    if op == OP_ADD:
        return (x + y) & full
    if op == OP_SUB:
        return (x - y) & full
    if op == OP_AND:
        return x & y
    if op == OP_OR:
        return x | y
    if op == OP_XOR:
        return x ^ y
    return (x * y) & full


cdef inline uint64_t c_concrete_shift(int op, uint64_t x, int width,
                                      int64_t k, uint64_t full) noexcept nogil:
    cdef int64_t xe
    cdef int kk
    if op == OP_LSHIFT:
        if k >= width:
            return 0
        return (x << k) & full
    if op == OP_RSHIFT:
        if k >= width:
            return 0
        return x >> k
    xe = <int64_t>(x << (64 - width)) >> (64 - width)
    kk = <int>k if k < 63 else 63
    return (<uint64_t>(xe >> kk)) & full


cdef inline TN c_optimal(int op, uint64_t pv, uint64_t pm, uint64_t qv,
                         uint64_t qm, int width, uint64_t full) noexcept nogil:
    cdef uint64_t acc_and = full
    cdef uint64_t acc_or = 0
    cdef uint64_t subp = 0
    cdef uint64_t subq, z
    while True:
        subq = 0
        while True:
            z = c_concrete(op, pv | subp, qv | subq, full)
            acc_and &= z
            acc_or |= z
            subq = (subq - qm) & qm
            if subq == 0:
                break
        subp = (subp - pm) & pm
        if subp == 0:
            break
    cdef TN r
    r.v = acc_and
    r.m = acc_and ^ acc_or
    return r


# ---------------------------------------------------------------------------
# Python-visible scalar entry points.

def apply_binary(int op, pv, pm, qv, qm, int width):
    cdef uint64_t full = wmask(width)
    cdef TN r = c_binary(op, <uint64_t>pv, <uint64_t>pm, <uint64_t>qv,
                         <uint64_t>qm, width, full)
    return r.v, r.m


def apply_shift(int op, v, m, int width, k):
    cdef TN r = c_shift(op, <uint64_t>v, <uint64_t>m, width, <int64_t>k)
    return r.v, r.m


def concrete_binary(int op, x, y, int width):
    return c_concrete(op, <uint64_t>x, <uint64_t>y, wmask(width))


def concrete_shift(int op, x, int width, k):
    return c_concrete_shift(op, <uint64_t>x, width, <int64_t>k, wmask(width))


def carry_in_bits(p, q, int width):
    cdef uint64_t a = <uint64_t>p
    cdef uint64_t b = <uint64_t>q
    return (a ^ b ^ (a + b)) & wmask(width)


def borrow_in_bits(p, q, int width):
    cdef uint64_t a = <uint64_t>p
    cdef uint64_t b = <uint64_t>q
    return (a ^ b ^ (a - b)) & wmask(width)


def optimal_binary(int op, pv, pm, qv, qm, int width):
    cdef TN r = c_optimal(op, <uint64_t>pv, <uint64_t>pm, <uint64_t>qv,
                          <uint64_t>qm, width, wmask(width))
    return r.v, r.m


def optimal_shift(int op, v, m, int width, k):
    cdef uint64_t full = wmask(width)
    cdef uint64_t acc_and = full
    cdef uint64_t acc_or = 0
    cdef uint64_t vv = <uint64_t>v
    cdef uint64_t mm = <uint64_t>m
    cdef uint64_t sub = 0
    cdef uint64_t z
    cdef int64_t kk = <int64_t>k
    while True:
        z = c_concrete_shift(op, vv | sub, width, kk, full)
        acc_and &= z
        acc_or |= z
        sub = (sub - mm) & mm
        if sub == 0:
            break
    return acc_and, acc_and ^ acc_or


# ---------------------------------------------------------------------------
# Enumeration table.

_table_cache = {}


def tnum_table(int width):
    """uint64 arrays (values, masks) in canonical base-3 order (cached)."""
    if width in _table_cache:
        return _table_cache[width]
    cdef int64_t count = <int64_t>(3 ** <object>width)
    vs = np.empty(count, dtype=np.uint64)
    ms = np.empty(count, dtype=np.uint64)
    cdef uint64_t[::1] vs_view = vs
    cdef uint64_t[::1] ms_view = ms
    cdef int64_t i, digits
    cdef int k, d
    cdef uint64_t v, m
    for i in range(count):
        v = 0
        m = 0
        digits = i
        for k in range(width):
            d = digits % 3
            digits //= 3
            if d == 1:
                v |= (<uint64_t>1) << k
            elif d == 2:
                m |= (<uint64_t>1) << k
        vs_view[i] = v
        ms_view[i] = m
    _table_cache[width] = (vs, ms)
    return vs, ms


# ---------------------------------------------------------------------------
# Exhaustive sweeps.

def soundness_sweep_binary(int op, int width, start, stop, int max_witnesses):
    vs, ms = tnum_table(width)
    cdef uint64_t[::1] tv = vs
    cdef uint64_t[::1] tm = ms
    cdef int64_t count = tv.shape[0]
    cdef int64_t lo = start, hi = stop
    cdef uint64_t full = wmask(width)
    wit = np.zeros((max_witnesses, 9), dtype=np.uint64)
    cdef uint64_t[:, ::1] w = wit
    cdef int64_t members = 0, violations = 0
    cdef int n_wit = 0
    cdef int64_t pair, i, j
    cdef uint64_t pv, pm, qv, qm, subp, subq, x, y, z, not_rm
    cdef TN r
    with nogil:
        for pair in range(lo, hi):
            i = pair // count
            j = pair % count
            pv = tv[i]
            pm = tm[i]
            qv = tv[j]
            qm = tm[j]
            r = c_binary(op, pv, pm, qv, qm, width, full)
            not_rm = ~r.m
            subp = 0
            while True:
                x = pv | subp
                subq = 0
                while True:
                    y = qv | subq
                    members += 1
                    z = c_concrete(op, x, y, full)
                    if z & not_rm != r.v:
                        violations += 1
                        if n_wit < max_witnesses:
                            w[n_wit, 0] = pv
                            w[n_wit, 1] = pm
                            w[n_wit, 2] = qv
                            w[n_wit, 3] = qm
                            w[n_wit, 4] = x
                            w[n_wit, 5] = y
                            w[n_wit, 6] = z
                            w[n_wit, 7] = r.v
                            w[n_wit, 8] = r.m
                            n_wit += 1
                    subq = (subq - qm) & qm
                    if subq == 0:
                        break
                subp = (subp - pm) & pm
                if subp == 0:
                    break
    witnesses = [tuple(int(x) for x in row) for row in wit[:n_wit]]
    return hi - lo, members, violations, witnesses


def soundness_sweep_shift(int op, int width, int max_witnesses):
    vs, ms = tnum_table(width)
    cdef uint64_t[::1] tv = vs
    cdef uint64_t[::1] tm = ms
    cdef int64_t count = tv.shape[0]
    cdef uint64_t full = wmask(width)
    wit = np.zeros((max_witnesses, 7), dtype=np.uint64)
    cdef uint64_t[:, ::1] w = wit
    cdef int64_t members = 0, violations = 0, pairs = 0
    cdef int n_wit = 0
    cdef int64_t i
    cdef int k
    cdef uint64_t v, m, sub, x, z
    cdef TN r
    with nogil:
        for i in range(count):
            v = tv[i]
            m = tm[i]
            for k in range(width + 1):
                pairs += 1
                r = c_shift(op, v, m, width, k)
                sub = 0
                while True:
                    x = v | sub
                    members += 1
                    z = c_concrete_shift(op, x, width, k, full)
                    if z & ~r.m != r.v:
                        violations += 1
                        if n_wit < max_witnesses:
                            w[n_wit, 0] = v
                            w[n_wit, 1] = m
                            w[n_wit, 2] = <uint64_t>k
                            w[n_wit, 3] = x
                            w[n_wit, 4] = z
                            w[n_wit, 5] = r.v
                            w[n_wit, 6] = r.m
                            n_wit += 1
                    sub = (sub - m) & m
                    if sub == 0:
                        break
    witnesses = [tuple(int(x) for x in row) for row in wit[:n_wit]]
    return pairs, members, violations, witnesses


def optimality_sweep_binary(int op, int width, start, stop, int max_examples):
    vs, ms = tnum_table(width)
    cdef uint64_t[::1] tv = vs
    cdef uint64_t[::1] tm = ms
    cdef int64_t count = tv.shape[0]
    cdef int64_t lo = start, hi = stop
    cdef uint64_t full = wmask(width)
    ex = np.zeros((max_examples, 8), dtype=np.uint64)
    cdef uint64_t[:, ::1] e = ex
    cdef int64_t equal = 0, worse = 0, unsound = 0
    cdef int n_ex = 0
    cdef int64_t pair, i, j
    cdef uint64_t pv, pm, qv, qm
    cdef TN r, o
    with nogil:
        for pair in range(lo, hi):
            i = pair // count
            j = pair % count
            pv = tv[i]
            pm = tm[i]
            qv = tv[j]
            qm = tm[j]
            r = c_binary(op, pv, pm, qv, qm, width, full)
            o = c_optimal(op, pv, pm, qv, qm, width, full)
            if r.v == o.v and r.m == o.m:
                equal += 1
            else:
                if (o.m & ~r.m) == 0 and (o.v & ~r.m) == r.v:
                    worse += 1
                else:
                    unsound += 1
                if n_ex < max_examples:
                    e[n_ex, 0] = pv
                    e[n_ex, 1] = pm
                    e[n_ex, 2] = qv
                    e[n_ex, 3] = qm
                    e[n_ex, 4] = r.v
                    e[n_ex, 5] = r.m
                    e[n_ex, 6] = o.v
                    e[n_ex, 7] = o.m
                    n_ex += 1
    examples = [tuple(int(x) for x in row) for row in ex[:n_ex]]
    return hi - lo, equal, worse, unsound, examples


def optimality_sweep_shift(int op, int width, int max_examples):
    vs, ms = tnum_table(width)
    cdef uint64_t[::1] tv = vs
    cdef uint64_t[::1] tm = ms
    cdef int64_t count = tv.shape[0]
    cdef uint64_t full = wmask(width)
    ex = np.zeros((max_examples, 7), dtype=np.uint64)
    cdef uint64_t[:, ::1] e = ex
    cdef int64_t pairs = 0, equal = 0, worse = 0, unsound = 0
    cdef int n_ex = 0
    cdef int64_t i
    cdef int k
    cdef uint64_t v, m, acc_and, acc_or, sub, z
    cdef TN r
    with nogil:
        for i in range(count):
            v = tv[i]
            m = tm[i]
            for k in range(width + 1):
                pairs += 1
                r = c_shift(op, v, m, width, k)
                acc_and = full
                acc_or = 0
                sub = 0
                while True:
                    z = c_concrete_shift(op, v | sub, width, k, full)
                    acc_and &= z
                    acc_or |= z
                    sub = (sub - m) & m
                    if sub == 0:
                        break
                if r.v == acc_and and r.m == (acc_and ^ acc_or):
                    equal += 1
                else:
                    if ((acc_and ^ acc_or) & ~r.m) == 0 and (acc_and & ~r.m) == r.v:
                        worse += 1
                    else:
                        unsound += 1
                    if n_ex < max_examples:
                        e[n_ex, 0] = v
                        e[n_ex, 1] = m
                        e[n_ex, 2] = <uint64_t>k
                        e[n_ex, 3] = r.v
                        e[n_ex, 4] = r.m
                        e[n_ex, 5] = acc_and
                        e[n_ex, 6] = acc_and ^ acc_or
                        n_ex += 1
    examples = [tuple(int(x) for x in row) for row in ex[:n_ex]]
    return pairs, equal, worse, unsound, examples


def precision_sweep(int op_a, int op_b, int width, start, stop):
    vs, ms = tnum_table(width)
    cdef uint64_t[::1] tv = vs
    cdef uint64_t[::1] tm = ms
    cdef int64_t count = tv.shape[0]
    cdef int64_t lo = start, hi = stop
    cdef uint64_t full = wmask(width)
    hist = np.zeros(129, dtype=np.int64)
    cdef int64_t[::1] h = hist
    cdef int64_t equal = 0, a_more = 0, b_more = 0, incomparable = 0
    cdef int64_t swap_also = 0
    cdef int64_t pair, i, j
    cdef uint64_t pv, pm, qv, qm
    cdef TN ra, rb, sa, sb
    with nogil:
        for pair in range(lo, hi):
            i = pair // count
            j = pair % count
            pv = tv[i]
            pm = tm[i]
            qv = tv[j]
            qm = tm[j]
            ra = c_binary(op_a, pv, pm, qv, qm, width, full)
            rb = c_binary(op_b, pv, pm, qv, qm, width, full)
            if ra.v == rb.v and ra.m == rb.m:
                equal += 1
                continue
            sa = c_binary(op_a, qv, qm, pv, pm, width, full)
            sb = c_binary(op_b, qv, qm, pv, pm, width, full)
            if sa.v != sb.v or sa.m != sb.m:
                swap_also += 1
            if (ra.m & ~rb.m) == 0 and (ra.v & ~rb.m) == rb.v:
                a_more += 1
            elif (rb.m & ~ra.m) == 0 and (rb.v & ~ra.m) == ra.v:
                b_more += 1
            else:
                incomparable += 1
                continue
            h[tnumlab_popcount(ra.m) - tnumlab_popcount(rb.m) + 64] += 1
    return (hi - lo, equal, a_more, b_more, incomparable, swap_also,
            [int(x) for x in hist])


def equivalence_sweep(int op_a, int op_b, int width, start, stop,
                      int max_witnesses):
    vs, ms = tnum_table(width)
    cdef uint64_t[::1] tv = vs
    cdef uint64_t[::1] tm = ms
    cdef int64_t count = tv.shape[0]
    cdef int64_t lo = start, hi = stop
    cdef uint64_t full = wmask(width)
    wit = np.zeros((max_witnesses, 8), dtype=np.uint64)
    cdef uint64_t[:, ::1] w = wit
    cdef int64_t mismatches = 0
    cdef int n_wit = 0
    cdef int64_t pair, i, j
    cdef uint64_t pv, pm, qv, qm
    cdef TN ra, rb
    with nogil:
        for pair in range(lo, hi):
            i = pair // count
            j = pair % count
            pv = tv[i]
            pm = tm[i]
            qv = tv[j]
            qm = tm[j]
            ra = c_binary(op_a, pv, pm, qv, qm, width, full)
            rb = c_binary(op_b, pv, pm, qv, qm, width, full)
            if ra.v != rb.v or ra.m != rb.m:
                mismatches += 1
                if n_wit < max_witnesses:
                    w[n_wit, 0] = pv
                    w[n_wit, 1] = pm
                    w[n_wit, 2] = qv
                    w[n_wit, 3] = qm
                    w[n_wit, 4] = ra.v
                    w[n_wit, 5] = ra.m
                    w[n_wit, 6] = rb.v
                    w[n_wit, 7] = rb.m
                    n_wit += 1
    witnesses = [tuple(int(x) for x in row) for row in wit[:n_wit]]
    return hi - lo, mismatches, witnesses


def closure_sweep(int op, int width, start, stop, int max_witnesses):
    vs, ms = tnum_table(width)
    cdef uint64_t[::1] tv = vs
    cdef uint64_t[::1] tm = ms
    cdef int64_t count = tv.shape[0]
    cdef int64_t lo = start, hi = stop
    cdef uint64_t full = wmask(width)
    wit = np.zeros((max_witnesses, 6), dtype=np.uint64)
    cdef uint64_t[:, ::1] w = wit
    cdef int64_t bad = 0
    cdef int n_wit = 0
    cdef int64_t pair, i, j
    cdef uint64_t pv, pm, qv, qm
    cdef TN r
    with nogil:
        for pair in range(lo, hi):
            i = pair // count
            j = pair % count
            pv = tv[i]
            pm = tm[i]
            qv = tv[j]
            qm = tm[j]
            r = c_binary(op, pv, pm, qv, qm, width, full)
            if (r.v & r.m) or (r.v > full) or (r.m > full):
                bad += 1
                if n_wit < max_witnesses:
                    w[n_wit, 0] = pv
                    w[n_wit, 1] = pm
                    w[n_wit, 2] = qv
                    w[n_wit, 3] = qm
                    w[n_wit, 4] = r.v
                    w[n_wit, 5] = r.m
                    n_wit += 1
    witnesses = [tuple(int(x) for x in row) for row in wit[:n_wit]]
    return hi - lo, bad, witnesses


def add_lemma_sweep(int width, start, stop, int max_witnesses,
                    bint swap_bounds=False):
    vs, ms = tnum_table(width)
    cdef uint64_t[::1] tv = vs
    cdef uint64_t[::1] tm = ms
    cdef int64_t count = tv.shape[0]
    cdef int64_t lo = start, hi = stop
    cdef uint64_t full = wmask(width)
    wit = np.zeros((max_witnesses, 8), dtype=np.uint64)
    cdef uint64_t[:, ::1] w = wit
    cdef int64_t violations = 0
    cdef int n_wit = 0
    cdef int64_t pair, i, j
    cdef uint64_t pv, pm, qv, qm, losq, hisq, tmp, c_and, c_or
    cdef uint64_t subp, subq, x, y, c, sv, sigma, mask_sums, mask_carries
    with nogil:
        for pair in range(lo, hi):
            i = pair // count
            j = pair % count
            pv = tv[i]
            pm = tm[i]
            qv = tv[j]
            qm = tm[j]
            losq = (pv ^ qv ^ (pv + qv)) & full
            hisq = ((pv + pm) ^ (qv + qm) ^ (pv + pm + qv + qm)) & full
            if swap_bounds:
                tmp = losq
                losq = hisq
                hisq = tmp
            c_and = full
            c_or = 0
            subp = 0
            while True:
                x = pv | subp
                subq = 0
                while True:
                    y = qv | subq
                    c = (x ^ y ^ (x + y)) & full
                    c_and &= c
                    c_or |= c
                    subq = (subq - qm) & qm
                    if subq == 0:
                        break
                subp = (subp - pm) & pm
                if subp == 0:
                    break
            sv = (pv + qv) & full
            sigma = (sv + ((pm + qm) & full)) & full
            mask_sums = (sv ^ sigma) | pm | qm
            mask_carries = (losq ^ hisq) | pm | qm
            if c_and != losq or c_or != hisq or mask_sums != mask_carries:
                violations += 1
                if n_wit < max_witnesses:
                    w[n_wit, 0] = pv
                    w[n_wit, 1] = pm
                    w[n_wit, 2] = qv
                    w[n_wit, 3] = qm
                    w[n_wit, 4] = c_and
                    w[n_wit, 5] = c_or
                    w[n_wit, 6] = losq
                    w[n_wit, 7] = hisq
                    n_wit += 1
    witnesses = [tuple(int(x) for x in row) for row in wit[:n_wit]]
    return hi - lo, violations, witnesses


def sub_lemma_sweep(int width, start, stop, int max_witnesses,
                    bint swap_bounds=False):
    vs, ms = tnum_table(width)
    cdef uint64_t[::1] tv = vs
    cdef uint64_t[::1] tm = ms
    cdef int64_t count = tv.shape[0]
    cdef int64_t lo = start, hi = stop
    cdef uint64_t full = wmask(width)
    wit = np.zeros((max_witnesses, 8), dtype=np.uint64)
    cdef uint64_t[:, ::1] w = wit
    cdef int64_t violations = 0
    cdef int n_wit = 0
    cdef int64_t pair, i, j
    cdef uint64_t pv, pm, qv, qm, losq, hisq, tmp, b_and, b_or
    cdef uint64_t subp, subq, x, y, b, dv, a, bb, mask_diffs, mask_borrows
    with nogil:
        for pair in range(lo, hi):
            i = pair // count
            j = pair % count
            pv = tv[i]
            pm = tm[i]
            qv = tv[j]
            qm = tm[j]
            losq = ((pv + pm) ^ qv ^ (pv + pm - qv)) & full
            hisq = (pv ^ (qv + qm) ^ (pv - qv - qm)) & full
            if swap_bounds:
                tmp = losq
                losq = hisq
                hisq = tmp
            b_and = full
            b_or = 0
            subp = 0
            while True:
                x = pv | subp
                subq = 0
                while True:
                    y = qv | subq
                    b = (x ^ y ^ (x - y)) & full
                    b_and &= b
                    b_or |= b
                    subq = (subq - qm) & qm
                    if subq == 0:
                        break
                subp = (subp - pm) & pm
                if subp == 0:
                    break
            dv = (pv - qv) & full
            a = (dv + pm) & full
            bb = (dv - qm) & full
            mask_diffs = (a ^ bb) | pm | qm
            mask_borrows = (losq ^ hisq) | pm | qm
            if b_and != losq or b_or != hisq or mask_diffs != mask_borrows:
                violations += 1
                if n_wit < max_witnesses:
                    w[n_wit, 0] = pv
                    w[n_wit, 1] = pm
                    w[n_wit, 2] = qv
                    w[n_wit, 3] = qm
                    w[n_wit, 4] = b_and
                    w[n_wit, 5] = b_or
                    w[n_wit, 6] = losq
                    w[n_wit, 7] = hisq
                    n_wit += 1
    witnesses = [tuple(int(x) for x in row) for row in wit[:n_wit]]
    return hi - lo, violations, witnesses


def assoc_search(int width, start, stop, int limit):
    vs, ms = tnum_table(width)
    cdef uint64_t[::1] tv = vs
    cdef uint64_t[::1] tm = ms
    cdef int64_t count = tv.shape[0]
    cdef int64_t lo = start, hi = stop
    cdef uint64_t full = wmask(width)
    buf = np.zeros((limit, 10), dtype=np.uint64)
    cdef uint64_t[:, ::1] w = buf
    cdef int found = 0
    cdef int64_t idx, ij, i, j, k
    cdef TN l, r
    with nogil:
        for idx in range(lo, hi):
            ij = idx // count
            k = idx % count
            i = ij // count
            j = ij % count
            l = c_add(tv[i], tm[i], tv[j], tm[j], full)
            l = c_add(l.v, l.m, tv[k], tm[k], full)
            r = c_add(tv[j], tm[j], tv[k], tm[k], full)
            r = c_add(tv[i], tm[i], r.v, r.m, full)
            if l.v != r.v or l.m != r.m:
                w[found, 0] = tv[i]
                w[found, 1] = tm[i]
                w[found, 2] = tv[j]
                w[found, 3] = tm[j]
                w[found, 4] = tv[k]
                w[found, 5] = tm[k]
                w[found, 6] = l.v
                w[found, 7] = l.m
                w[found, 8] = r.v
                w[found, 9] = r.m
                found += 1
                if found >= limit:
                    break
    return [tuple(int(x) for x in row) for row in buf[:found]]


def inverse_search(int width, start, stop, int limit):
    vs, ms = tnum_table(width)
    cdef uint64_t[::1] tv = vs
    cdef uint64_t[::1] tm = ms
    cdef int64_t count = tv.shape[0]
    cdef int64_t lo = start, hi = stop
    cdef uint64_t full = wmask(width)
    buf = np.zeros((limit, 6), dtype=np.uint64)
    cdef uint64_t[:, ::1] w = buf
    cdef int found = 0
    cdef int64_t pair, i, j
    cdef TN s, l
    with nogil:
        for pair in range(lo, hi):
            i = pair // count
            j = pair % count
            s = c_add(tv[i], tm[i], tv[j], tm[j], full)
            l = c_sub(s.v, s.m, tv[j], tm[j], full)
            if l.v != tv[i] or l.m != tm[i]:
                w[found, 0] = tv[i]
                w[found, 1] = tm[i]
                w[found, 2] = tv[j]
                w[found, 3] = tm[j]
                w[found, 4] = l.v
                w[found, 5] = l.m
                found += 1
                if found >= limit:
                    break
    return [tuple(int(x) for x in row) for row in buf[:found]]


def comm_search(int op, int width, start, stop, int limit):
    vs, ms = tnum_table(width)
    cdef uint64_t[::1] tv = vs
    cdef uint64_t[::1] tm = ms
    cdef int64_t count = tv.shape[0]
    cdef int64_t lo = start, hi = stop
    cdef uint64_t full = wmask(width)
    buf = np.zeros((limit, 8), dtype=np.uint64)
    cdef uint64_t[:, ::1] w = buf
    cdef int found = 0
    cdef int64_t pair, i, j
    cdef TN l, r
    with nogil:
        for pair in range(lo, hi):
            i = pair // count
            j = pair % count
            l = c_binary(op, tv[i], tm[i], tv[j], tm[j], width, full)
            r = c_binary(op, tv[j], tm[j], tv[i], tm[i], width, full)
            if l.v != r.v or l.m != r.m:
                w[found, 0] = tv[i]
                w[found, 1] = tm[i]
                w[found, 2] = tv[j]
                w[found, 3] = tm[j]
                w[found, 4] = l.v
                w[found, 5] = l.m
                w[found, 6] = r.v
                w[found, 7] = r.m
                found += 1
                if found >= limit:
                    break
    return [tuple(int(x) for x in row) for row in buf[:found]]


# ---------------------------------------------------------------------------
# Array entry points.

def batch_apply(int op, pv, pm, qv, qm, int width):
    pv = np.ascontiguousarray(pv, dtype=np.uint64)
    pm = np.ascontiguousarray(pm, dtype=np.uint64)
    qv = np.ascontiguousarray(qv, dtype=np.uint64)
    qm = np.ascontiguousarray(qm, dtype=np.uint64)
    cdef int64_t n = pv.shape[0]
    rv = np.empty(n, dtype=np.uint64)
    rm = np.empty(n, dtype=np.uint64)
    cdef uint64_t[::1] a = pv, b = pm, c = qv, d = qm
    cdef uint64_t[::1] ov = rv, om = rm
    cdef uint64_t full = wmask(width)
    cdef int64_t idx
    cdef TN r
    with nogil:
        for idx in range(n):
            r = c_binary(op, a[idx], b[idx], c[idx], d[idx], width, full)
            ov[idx] = r.v
            om[idx] = r.m
    return rv, rm


def timer_info():
    cdef uint64_t best = 0, t0, t1
    cdef int i
    with nogil:
        for i in range(100000):
            t0 = tnumlab_ticks()
            t1 = tnumlab_ticks()
            if t1 > t0 and (best == 0 or t1 - t0 < best):
                best = t1 - t0
    name = (<bytes>TNUMLAB_TIMER_NAME).decode()
    unit = (<bytes>TNUMLAB_TIMER_UNIT).decode()
    return name, unit, int(best if best else 1)


def bench_run(int op, pv, pm, qv, qm, int width, int trials, audit_n):
    """Per-pair min-of-trials timing with an FNV-1a result checksum."""
    pv = np.ascontiguousarray(pv, dtype=np.uint64)
    pm = np.ascontiguousarray(pm, dtype=np.uint64)
    qv = np.ascontiguousarray(qv, dtype=np.uint64)
    qm = np.ascontiguousarray(qm, dtype=np.uint64)
    cdef int64_t n = pv.shape[0]
    cdef int64_t n_audit = min(int(audit_n), n)
    mins = np.empty(n, dtype=np.uint64)
    audit_rv = np.zeros(n_audit, dtype=np.uint64)
    audit_rm = np.zeros(n_audit, dtype=np.uint64)
    cdef uint64_t[::1] a = pv, b = pm, c = qv, d = qm
    cdef uint64_t[::1] out = mins
    cdef uint64_t[::1] arv = audit_rv
    cdef uint64_t[::1] arm = audit_rm
    cdef uint64_t full = wmask(width)
    cdef uint64_t checksum = FNV_OFFSET
    cdef int64_t idx
    cdef int t
    cdef uint64_t t0, t1, dt, best
    cdef TN r
    with nogil:
        for idx in range(n):
            best = ~(<uint64_t>0)
            r.v = 0
            r.m = 0
            for t in range(trials):
                t0 = tnumlab_ticks()
                r = c_binary(op, a[idx], b[idx], c[idx], d[idx], width, full)
                t1 = tnumlab_ticks()
                dt = t1 - t0
                if dt < best:
                    best = dt
            checksum = (checksum ^ r.v) * FNV_PRIME
            checksum = (checksum ^ r.m) * FNV_PRIME
            if idx < n_audit:
                arv[idx] = r.v
                arm[idx] = r.m
            out[idx] = best
    return mins, int(checksum), audit_rv, audit_rm


def bench_run_shift(int op, v, m, ks, int width, int trials, audit_n):
    """Shift-op analogue of bench_run; ks holds per-pair shift amounts."""
    v = np.ascontiguousarray(v, dtype=np.uint64)
    m = np.ascontiguousarray(m, dtype=np.uint64)
    ks = np.ascontiguousarray(ks, dtype=np.uint64)
    cdef int64_t n = v.shape[0]
    cdef int64_t n_audit = min(int(audit_n), n)
    mins = np.empty(n, dtype=np.uint64)
    audit_rv = np.zeros(n_audit, dtype=np.uint64)
    audit_rm = np.zeros(n_audit, dtype=np.uint64)
    cdef uint64_t[::1] a = v
    cdef uint64_t[::1] b = m
    cdef uint64_t[::1] kk = ks
    cdef uint64_t[::1] out = mins
    cdef uint64_t[::1] arv = audit_rv
    cdef uint64_t[::1] arm = audit_rm
    cdef uint64_t checksum = FNV_OFFSET
    cdef int64_t idx
    cdef int t
    cdef uint64_t t0, t1, dt, best
    cdef TN r
    with nogil:
        for idx in range(n):
            best = ~(<uint64_t>0)
            r.v = 0
            r.m = 0
            for t in range(trials):
                t0 = tnumlab_ticks()
                r = c_shift(op, a[idx], b[idx], width, <int64_t>kk[idx])
                t1 = tnumlab_ticks()
                dt = t1 - t0
                if dt < best:
                    best = dt
            checksum = (checksum ^ r.v) * FNV_PRIME
            checksum = (checksum ^ r.m) * FNV_PRIME
            if idx < n_audit:
                arv[idx] = r.v
                arm[idx] = r.m
            out[idx] = best
    return mins, int(checksum), audit_rv, audit_rm
